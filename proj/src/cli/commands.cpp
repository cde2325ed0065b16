#include <algorithm>
#include <cmath>
#include <fstream>
#include <optional>

#include "mgb/bounds.hpp"
#include "mgb/cli.hpp"
#include "mgb/csv.hpp"
#include "mgb/model_json.hpp"
#include "mgb/montecarlo.hpp"

namespace mgb::cli {

namespace {

using nlohmann::json;
using csv::format_double;

double number_or(const json& c, const char* key, double fallback) {
    return c.contains(key) ? c.at(key).get<double>() : fallback;
}

std::uint64_t integer_or(const json& c, const char* key, std::uint64_t fallback) {
    return c.contains(key) ? c.at(key).get<std::uint64_t>() : fallback;
}

double require_number(const json& c, const char* key, const std::string& command) {
    if (!c.contains(key)) throw ConfigError(command + ": '" + key + "' is required");
    return c.at(key).get<double>();
}

const json& require(const json& c, const char* key, const std::string& command) {
    if (!c.contains(key)) throw ConfigError(command + ": '" + key + "' is required");
    return c.at(key);
}

std::vector<double> number_list(const json& c, const char* key, std::vector<double> fallback) {
    if (!c.contains(key)) return fallback;
    std::vector<double> out;
    for (const auto& v : c.at(key)) {
        if (!v.is_number()) throw ConfigError(std::string("'") + key + "' must hold numbers");
        out.push_back(v.get<double>());
    }
    if (out.empty()) throw ConfigError(std::string("'") + key + "' must not be empty");
    return out;
}

// Reports go to the configured file or to the caller's stream.
class ReportSink {
public:
    ReportSink(const json& config, std::ostream& fallback) : stream_(&fallback) {
        if (config.contains("output")) {
            const auto path = config.at("output").get<std::string>();
            file_.open(path, std::ios::binary | std::ios::trunc);
            if (!file_) throw ConfigError("cannot open output file '" + path + "'");
            stream_ = &file_;
        }
    }

    std::ostream& stream() { return *stream_; }

private:
    std::ofstream file_;
    std::ostream* stream_;
};

SimulationOptions simulation_options(const json& c) {
    SimulationOptions o;
    o.trials = integer_or(c, "trials", o.trials);
    o.seed = integer_or(c, "seed", o.seed);
    o.delta = number_or(c, "delta", o.delta);
    o.workers = static_cast<unsigned>(integer_or(c, "workers", o.workers));
    if (o.trials == 0) throw ConfigError("'trials' must be positive");
    if (!(o.delta > 0.0 && o.delta < 1.0)) throw ConfigError("'delta' must lie in (0, 1)");
    if (o.workers == 0) throw ConfigError("'workers' must be positive");
    return o;
}

struct ParsedCell {
    EventSpec spec;
    std::optional<BoundName> bound;
};

ParsedCell parse_cell(const json& j) {
    static const std::vector<std::string> keys{"mode", "char", "param", "x", "budget", "n", "bound"};
    if (!j.is_object()) throw ConfigError("each cell must be an object");
    for (const auto& [key, value] : j.items()) {
        if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
            throw ConfigError("cell: unknown key '" + key + "'");
        }
    }
    ParsedCell cell;
    EventSpec& s = cell.spec;
    s.mode = j.contains("mode") ? parse_event_mode(j.at("mode").get<std::string>()) : EventMode::SomeK;
    if (j.contains("char")) {
        s.char_kind = parse_char_kind(j.at("char").get<std::string>());
    } else if (s.mode != EventMode::SelfNorm) {
        throw ConfigError("cell: 'char' is required");
    }
    if (j.contains("param")) {
        const auto& p = j.at("param");
        if (p.is_string() && p.get<std::string>() == "max") {
            s.char_param = kTruncationMax;
        } else if (p.is_number()) {
            s.char_param = p.get<double>();
        } else {
            throw ConfigError("cell: 'param' must be a number or \"max\"");
        }
    }
    if (!j.contains("x") || !j.at("x").is_number()) throw ConfigError("cell: numeric 'x' is required");
    s.x = j.at("x").get<double>();
    if (j.contains("budget")) {
        s.budget = j.at("budget").get<double>();
    } else if (s.mode != EventMode::SelfNorm) {
        throw ConfigError("cell: 'budget' is required");
    }
    const auto& n = j.contains("n") ? j.at("n") : throw ConfigError("cell: 'n' is required");
    if (!n.is_number_unsigned() || n.get<std::uint64_t>() == 0) throw ConfigError("cell: 'n' must be a positive integer");
    s.horizon = n.get<std::size_t>();
    if (j.contains("bound")) cell.bound = parse_bound_name(j.at("bound").get<std::string>());
    return cell;
}

std::vector<ParsedCell> parse_cells(const json& c, const std::string& command) {
    const auto& arr = require(c, "cells", command);
    if (arr.empty()) throw ConfigError(command + ": 'cells' must not be empty");
    std::vector<ParsedCell> cells;
    for (const auto& j : arr) cells.push_back(parse_cell(j));
    return cells;
}

const std::vector<std::string> kCellHeader{"model_id", "event_mode", "char_kind", "y_or_beta", "x",
                                           "budget",   "n",          "trials",    "hits",      "p_hat",
                                           "upper",    "bound_name", "bound_value", "margin", "status"};

std::vector<std::string> cell_fields(const std::string& model_id, const EventSpec& s, const MCEstimate& e) {
    return {model_id,
            event_mode_name(s.mode),
            s.mode == EventMode::SelfNorm ? std::string{} : char_kind_name(s.char_kind),
            format_double(s.char_param),
            format_double(s.x),
            format_double(s.budget),
            std::to_string(s.horizon),
            std::to_string(e.trials),
            std::to_string(e.hits),
            format_double(e.p_hat),
            format_double(e.upper)};
}

int cmd_bound(const json& c, std::ostream& out) {
    const std::string kind = require(c, "kind", "bound").get<std::string>();
    const double x = require_number(c, "x", "bound");
    const double y = number_or(c, "y", 0.0);
    const double v = number_or(c, "v", 1.0);
    double value = 0.0;
    if (kind == "b0" || kind == "b1" || kind == "b2") {
        const BoundParams p(x, y, v);
        value = kind == "b0" ? b0(p) : kind == "b1" ? b1(p) : b2(p);
    } else if (kind == "theorem2") {
        value = theorem2_bound(BetaParams(x, v, require_number(c, "beta", "bound")));
    } else if (kind == "selfnorm") {
        const std::string constant = c.contains("constant") ? c.at("constant").get<std::string>() : "derived";
        if (constant != "paper" && constant != "derived") throw ConfigError("bound: 'constant' must be paper or derived");
        value = selfnorm_bound(x, require_number(c, "beta", "bound"),
                               constant == "paper" ? SelfNormConstant::Paper : SelfNormConstant::Derived);
    } else {
        throw ConfigError("bound: unknown kind '" + kind + "'");
    }
    out << format_double(value) << "\n";
    return kExitSuccess;
}

int cmd_curve(const json& c, std::ostream& fallback) {
    const std::string name = require(c, "variant", "curve").get<std::string>();
    const double x = require_number(c, "x", "curve");
    const double y = number_or(c, "y", 0.0);
    const double v = number_or(c, "v", 1.0);
    std::optional<ExponentVariant> variant;
    if (name == "bennett") {
        variant = BennettExponent{BoundParams(x, y, v)};
    } else if (name == "cosh") {
        variant = CoshExponent{BoundParams(x, y, v)};
    } else if (name == "beta") {
        variant = BetaExponent{BetaParams(x, v, require_number(c, "beta", "curve"))};
    } else {
        throw ConfigError("curve: unknown variant '" + name + "'");
    }
    const double star = lambda_star(*variant);
    const double lambda_max = number_or(c, "lambda_max", 3.0 * star);
    const std::uint64_t points = integer_or(c, "points", 101);
    if (!(lambda_max > 0.0) || !std::isfinite(lambda_max)) throw ConfigError("curve: 'lambda_max' must be positive");
    if (points < 2) throw ConfigError("curve: 'points' must be at least 2");

    ReportSink sink(c, fallback);
    csv::Writer w(sink.stream());
    w.row({"lambda", "exponent", "is_lambda_star"});
    bool star_written = false;
    for (std::uint64_t i = 0; i < points; ++i) {
        const double lambda = lambda_max * static_cast<double>(i) / static_cast<double>(points - 1);
        if (!star_written && star <= lambda) {
            if (star < lambda) w.row({format_double(star), format_double(exponent_family(*variant, star)), "1"});
            star_written = true;
            if (star == lambda) {
                w.row({format_double(lambda), format_double(exponent_family(*variant, lambda)), "1"});
                continue;
            }
        }
        w.row({format_double(lambda), format_double(exponent_family(*variant, lambda)), "0"});
    }
    if (!star_written) w.row({format_double(star), format_double(exponent_family(*variant, star)), "1"});
    return kExitSuccess;
}

int cmd_simulate(const json& c, std::ostream& fallback) {
    const auto& model_json = require(c, "model", "simulate");
    const IncrementModel model = model_from_json(model_json);
    const std::string model_id = model_id_from_json(model_json);
    const auto cells = parse_cells(c, "simulate");
    const SimulationOptions options = simulation_options(c);
    for (const auto& cell : cells) {
        if (cell.bound) check_pairing(model, cell.spec, *cell.bound);
    }

    ReportSink sink(c, fallback);
    csv::Writer w(sink.stream());
    w.row(kCellHeader);
    for (const auto& cell : cells) {
        const MCEstimate e = estimate_event(model, cell.spec, options);
        auto fields = cell_fields(model_id, cell.spec, e);
        if (cell.bound) {
            const double bound = bound_value(*cell.bound, cell.spec);
            fields.insert(fields.end(), {bound_name(*cell.bound), format_double(bound), format_double(bound - e.upper),
                                         e.upper <= bound ? "PASS" : "FAIL"});
        } else {
            fields.insert(fields.end(), {"", "", "", "NA"});
        }
        w.row(fields);
    }
    return kExitSuccess;
}

int cmd_verify(const json& c, std::ostream& fallback, std::ostream& err) {
    const auto& model_json = require(c, "model", "verify");
    const IncrementModel model = model_from_json(model_json);
    const std::string model_id = model_id_from_json(model_json);
    std::vector<DominationCell> cells;
    for (const auto& cell : parse_cells(c, "verify")) {
        if (!cell.bound) throw ConfigError("verify: every cell needs a 'bound'");
        cells.push_back({cell.spec, *cell.bound});
    }
    const SimulationOptions options = simulation_options(c);
    const bool falsify = c.contains("falsify") && c.at("falsify").get<bool>();
    const double scale = falsify ? 0.1 : 1.0;
    const DominationReport report = verify_domination(model_id, model, cells, options, scale);

    ReportSink sink(c, fallback);
    csv::Writer w(sink.stream());
    w.row(kCellHeader);
    std::size_t failures = 0;
    for (const auto& row : report.rows) {
        auto fields = cell_fields(model_id, row.cell.spec, row.estimate);
        fields.insert(fields.end(), {bound_name(row.cell.bound), format_double(row.bound),
                                     format_double(row.margin), cell_status_name(row.status)});
        w.row(fields);
        if (row.status == CellStatus::Fail) ++failures;
    }
    if (!report.all_pass) {
        err << "verify: " << failures << " of " << report.rows.size() << " cells FAIL\n";
        return kExitVerificationFailed;
    }
    return kExitSuccess;
}

int cmd_tightness(const json& c, std::ostream& fallback) {
    const double x = number_or(c, "x", 1.0);
    const double y = number_or(c, "y", 1.0);
    const double v = number_or(c, "v", 1.0);
    std::vector<std::size_t> n_list;
    for (double n : number_list(c, "n_list", {100, 1000, 10000})) {
        if (!(n >= 1.0) || n != std::floor(n)) throw ConfigError("tightness: 'n_list' must hold positive integers");
        n_list.push_back(static_cast<std::size_t>(n));
    }
    const std::uint64_t grid_points = integer_or(c, "grid_points", 2001);
    const auto rows = tightness_twopoint(x, y, v, n_list, grid_points);

    ReportSink sink(c, fallback);
    csv::Writer w(sink.stream());
    w.row({"n", "p", "lambda", "inf_value", "b0", "gap", "rel_gap"});
    for (const auto& r : rows) {
        w.row({std::to_string(r.n), format_double(r.p), format_double(r.lambda), format_double(r.inf_value),
               format_double(r.b0), format_double(r.gap), format_double(r.gap / r.b0)});
    }
    return kExitSuccess;
}

int cmd_selfnorm(const json& c, std::ostream& fallback, std::ostream& err) {
    const auto& model_json = require(c, "model", "selfnorm");
    const IncrementModel model = model_from_json(model_json);
    const std::string model_id = model_id_from_json(model_json);
    const double beta = require_number(c, "beta", "selfnorm");
    const auto x_grid = number_list(c, "x_grid", {1.0, 2.0, 3.0});
    const std::uint64_t n = integer_or(c, "n", 100);
    if (n == 0) throw ConfigError("selfnorm: 'n' must be positive");
    const SimulationOptions options = simulation_options(c);
    const SelfNormReport report = selfnorm_experiment(model, beta, x_grid, n, options);

    ReportSink sink(c, fallback);
    csv::Writer w(sink.stream());
    w.row({"model_id", "beta", "n", "x", "trials", "hits", "p_hat", "upper", "derived_bound", "derived_status",
           "paper_bound", "paper_status"});
    for (const auto& r : report.rows) {
        const char* paper = r.paper_pass ? "PASS" : (r.paper_required ? "FAIL" : "FLAGGED");
        w.row({model_id, format_double(beta), std::to_string(n), format_double(r.x), std::to_string(r.estimate.trials),
               std::to_string(r.estimate.hits), format_double(r.estimate.p_hat), format_double(r.estimate.upper),
               format_double(r.derived_bound), r.derived_pass ? "PASS" : "FAIL", format_double(r.paper_bound), paper});
    }
    if (!report.all_pass) {
        err << "selfnorm: a gating bound is exceeded\n";
        return kExitVerificationFailed;
    }
    return kExitSuccess;
}

const char* variant_label(const LemmaVariant& v) {
    switch (v.kind) {
        case LemmaVariant::Kind::Bennett: return "bennett";
        case LemmaVariant::Kind::Cosh: return "cosh";
        case LemmaVariant::Kind::Beta: return "beta";
    }
    return "?";
}

int cmd_lemmas(const json& c, std::ostream& fallback, std::ostream& err) {
    LemmaSuiteOptions o;
    o.models = integer_or(c, "models", o.models);
    o.seed = integer_or(c, "seed", o.seed);
    o.lambdas = number_list(c, "lambdas", o.lambdas);
    o.levels = number_list(c, "levels", o.levels);
    o.betas = number_list(c, "betas", o.betas);
    const LemmaSuiteResult result = run_lemma_suite(o);

    ReportSink sink(c, fallback);
    csv::Writer w(sink.stream());
    w.row({"model_index", "variant", "beta", "lambda", "y", "lhs", "rhs"});
    for (const auto& v : result.violations) {
        w.row({std::to_string(v.model_index), variant_label(v.variant), format_double(v.variant.beta),
               format_double(v.lambda), format_double(v.y), format_double(v.gap.lhs), format_double(v.gap.rhs)});
    }
    err << "lemmas: " << result.checks << " checks, " << result.violations.size()
        << " violations, max lhs/rhs = " << format_double(result.max_ratio) << "\n";
    return result.violations.empty() ? kExitSuccess : kExitVerificationFailed;
}

}  // namespace

int run_command(const std::string& command, const json& config, std::ostream& out, std::ostream& err) {
    validate_config(command, config);
    if (command == "bound") return cmd_bound(config, out);
    if (command == "curve") return cmd_curve(config, out);
    if (command == "simulate") return cmd_simulate(config, out);
    if (command == "verify") return cmd_verify(config, out, err);
    if (command == "tightness") return cmd_tightness(config, out);
    if (command == "selfnorm") return cmd_selfnorm(config, out, err);
    if (command == "lemmas") return cmd_lemmas(config, out, err);
    throw ConfigError("unknown command '" + command + "'");
}

}  // namespace mgb::cli
