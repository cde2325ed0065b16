#include "mgb/model_json.hpp"

#include <set>
#include <stdexcept>

namespace mgb {

namespace {

using nlohmann::json;

void reject_unknown(const json& j, const std::set<std::string>& allowed, const std::string& where) {
    for (const auto& [key, value] : j.items()) {
        if (!allowed.count(key)) throw std::invalid_argument(where + ": unknown key '" + key + "'");
    }
}

double number(const json& j, const char* key) {
    if (!j.contains(key)) throw std::invalid_argument(std::string("model: missing '") + key + "'");
    if (!j.at(key).is_number()) throw std::invalid_argument(std::string("model: '") + key + "' must be a number");
    return j.at(key).get<double>();
}

std::vector<Atom> atoms_from(const json& j) {
    if (!j.contains("atoms") || !j.at("atoms").is_array()) {
        throw std::invalid_argument("model: 'atoms' must be an array of [value, probability] pairs");
    }
    std::vector<Atom> atoms;
    for (const auto& a : j.at("atoms")) {
        if (!a.is_array() || a.size() != 2 || !a[0].is_number() || !a[1].is_number()) {
            throw std::invalid_argument("model: each atom must be [value, probability]");
        }
        atoms.push_back({a[0].get<double>(), a[1].get<double>()});
    }
    return atoms;
}

json atoms_to(std::span<const Atom> atoms) {
    json out = json::array();
    for (const Atom& a : atoms) out.push_back({a.value, a.probability});
    return out;
}

}  // namespace

IncrementModel model_from_json(const json& j) {
    if (!j.is_object()) throw std::invalid_argument("model must be a JSON object");
    if (!j.contains("kind") || !j.at("kind").is_string()) throw std::invalid_argument("model: missing string 'kind'");
    const std::string kind = j.at("kind").get<std::string>();

    if (kind == "rademacher") {
        reject_unknown(j, {"kind", "id"}, "rademacher model");
        return IncrementModel::rademacher();
    }
    if (kind == "two_point_sym") {
        reject_unknown(j, {"kind", "id", "y", "p", "v", "n"}, "two_point_sym model");
        const double y = number(j, "y");
        if (j.contains("p")) {
            if (j.contains("v") || j.contains("n")) {
                throw std::invalid_argument("two_point_sym model: give either 'p' or ('v', 'n')");
            }
            return IncrementModel::two_point_sym(y, number(j, "p"));
        }
        if (!j.contains("n") || !j.at("n").is_number_unsigned()) {
            throw std::invalid_argument("two_point_sym model: 'n' must be a positive integer");
        }
        return IncrementModel::two_point_tightness(y, number(j, "v"), j.at("n").get<std::size_t>());
    }
    if (kind == "finite_support") {
        reject_unknown(j, {"kind", "id", "atoms"}, "finite_support model");
        return IncrementModel::finite_support(atoms_from(j));
    }
    if (kind == "bounded_supermg") {
        reject_unknown(j, {"kind", "id", "atoms", "a"}, "bounded_supermg model");
        return IncrementModel::bounded_supermartingale(atoms_from(j), number(j, "a"));
    }
    if (kind == "sym_pareto") {
        reject_unknown(j, {"kind", "id", "alpha", "scale"}, "sym_pareto model");
        const double scale = j.contains("scale") ? number(j, "scale") : 1.0;
        return IncrementModel::sym_pareto(number(j, "alpha"), scale);
    }
    throw std::invalid_argument("model: unknown kind '" + kind + "'");
}

json model_to_json(const IncrementModel& model) {
    json j;
    j["kind"] = model_kind_name(model.kind());
    switch (model.kind()) {
        case ModelKind::Rademacher:
            break;
        case ModelKind::TwoPointSym: {
            const auto& tp = *model.two_point();
            j["y"] = tp.y;
            if (tp.v && tp.n) {
                j["v"] = *tp.v;
                j["n"] = *tp.n;
            } else {
                j["p"] = tp.p;
            }
            break;
        }
        case ModelKind::FiniteSupport:
            j["atoms"] = atoms_to(model.atoms());
            break;
        case ModelKind::BoundedSupermg:
            j["a"] = model.bound_a();
            j["atoms"] = atoms_to(model.atoms());
            break;
        case ModelKind::SymPareto:
            j["alpha"] = model.pareto_alpha();
            j["scale"] = model.pareto_scale();
            break;
    }
    return j;
}

std::string model_id_from_json(const json& j) {
    if (j.contains("id")) {
        if (!j.at("id").is_string()) throw std::invalid_argument("model: 'id' must be a string");
        return j.at("id").get<std::string>();
    }
    return j.value("kind", std::string("model"));
}

}  // namespace mgb
