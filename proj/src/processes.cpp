#include "mgb/processes.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "mgb/bounds.hpp"

namespace mgb {

namespace {

constexpr double kProbabilityTolerance = 1e-15;
constexpr double kMeanTolerance = 1e-12;

template <class Weight>
double atom_sum(std::span<const Atom> atoms, Weight weight) {
    double total = 0.0;
    for (const Atom& a : atoms) total += a.probability * weight(a.value);
    return total;
}

double pareto_abs_power(double alpha, double scale, double power) {
    if (!(alpha > power)) {
        throw InfiniteMomentError("symmetric Pareto moment of order " + std::to_string(power) +
                                  " diverges for alpha = " + std::to_string(alpha));
    }
    return alpha * std::pow(scale, power) / (alpha - power);
}

// E(|xi|^2 1{|xi| <= y}) for |xi| = scale * Pareto(alpha), finite y.
double pareto_truncated_second(double alpha, double scale, double y) {
    if (y < scale) return 0.0;
    if (alpha == 2.0) return 2.0 * scale * scale * std::log(y / scale);
    return alpha * std::pow(scale, alpha) * (std::pow(y, 2.0 - alpha) - std::pow(scale, 2.0 - alpha)) / (2.0 - alpha);
}

void require_level(double y) {
    if (!(y >= 0.0)) throw std::domain_error("truncation level must be >= 0");
}

}  // namespace

std::string model_kind_name(ModelKind kind) {
    switch (kind) {
        case ModelKind::FiniteSupport: return "finite_support";
        case ModelKind::TwoPointSym: return "two_point_sym";
        case ModelKind::Rademacher: return "rademacher";
        case ModelKind::BoundedSupermg: return "bounded_supermg";
        case ModelKind::SymPareto: return "sym_pareto";
    }
    return "unknown";
}

void IncrementModel::finalize_atoms() {
    if (atoms_.empty()) throw std::invalid_argument("finite-support model needs at least one atom");
    double total = 0.0;
    for (const Atom& a : atoms_) {
        if (!std::isfinite(a.value)) throw std::invalid_argument("atom values must be finite");
        if (!(a.probability >= 0.0) || !std::isfinite(a.probability)) {
            throw std::invalid_argument("atom probabilities must be finite and >= 0");
        }
        total += a.probability;
        cumulative_.push_back(total);
    }
    if (std::fabs(total - 1.0) > kProbabilityTolerance) {
        throw std::invalid_argument("atom probabilities must sum to 1 (got " + std::to_string(total) + ")");
    }
    for (std::size_t i = 0; i < atoms_.size(); ++i) {
        if (atoms_[i].probability > 0.0) last_positive_ = i;
    }
}

IncrementModel IncrementModel::finite_support(std::vector<Atom> atoms) {
    IncrementModel m;
    m.kind_ = ModelKind::FiniteSupport;
    m.atoms_ = std::move(atoms);
    m.finalize_atoms();
    return m;
}

IncrementModel IncrementModel::two_point_sym(double y, double p) {
    if (!(y > 0.0) || !std::isfinite(y)) throw std::invalid_argument("two-point level y must be finite and > 0");
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("two-point mass p must lie in [0, 1]");
    IncrementModel m;
    m.kind_ = ModelKind::TwoPointSym;
    m.atoms_ = {{-y, 0.5 * p}, {0.0, 1.0 - p}, {y, 0.5 * p}};
    m.finalize_atoms();
    m.two_point_ = TwoPointParams{y, p, std::nullopt, std::nullopt};
    return m;
}

IncrementModel IncrementModel::two_point_tightness(double y, double v, std::size_t n) {
    if (!(v > 0.0) || n == 0) throw std::invalid_argument("two-point tightness needs v > 0 and n >= 1");
    if (!(y > 0.0)) throw std::invalid_argument("two-point level y must be > 0");
    const double p = v * v / (static_cast<double>(n) * y * y);
    if (p > 1.0) throw std::invalid_argument("two-point tightness requires v^2 <= n y^2");
    IncrementModel m = two_point_sym(y, p);
    m.two_point_->v = v;
    m.two_point_->n = n;
    return m;
}

IncrementModel IncrementModel::rademacher() {
    IncrementModel m;
    m.kind_ = ModelKind::Rademacher;
    m.atoms_ = {{-1.0, 0.5}, {1.0, 0.5}};
    m.finalize_atoms();
    return m;
}

IncrementModel IncrementModel::bounded_supermartingale(std::vector<Atom> atoms, double a) {
    IncrementModel m;
    m.kind_ = ModelKind::BoundedSupermg;
    m.atoms_ = std::move(atoms);
    m.bound_a_ = a;
    m.finalize_atoms();
    if (m.mean() > kMeanTolerance) throw std::invalid_argument("bounded supermartingale model needs mean <= 0");
    for (const Atom& at : m.atoms_) {
        if (at.probability > 0.0 && at.value > a) {
            throw std::invalid_argument("bounded supermartingale model has an atom above a");
        }
    }
    return m;
}

IncrementModel IncrementModel::sym_pareto(double alpha, double scale) {
    if (!(alpha > 0.0) || !std::isfinite(alpha)) throw std::invalid_argument("Pareto alpha must be > 0");
    if (!(scale > 0.0) || !std::isfinite(scale)) throw std::invalid_argument("Pareto scale must be > 0");
    IncrementModel m;
    m.kind_ = ModelKind::SymPareto;
    m.alpha_ = alpha;
    m.scale_ = scale;
    return m;
}

double IncrementModel::mean() const {
    if (kind_ == ModelKind::SymPareto) {
        if (!(alpha_ > 1.0)) throw InfiniteMomentError("symmetric Pareto mean needs alpha > 1");
        return 0.0;
    }
    return atom_sum(atoms_, [](double v) { return v; });
}

bool IncrementModel::is_symmetric() const {
    if (kind_ == ModelKind::SymPareto) return true;
    for (const Atom& a : atoms_) {
        double here = 0.0;
        double mirror = 0.0;
        for (const Atom& b : atoms_) {
            if (b.value == a.value) here += b.probability;
            if (b.value == -a.value) mirror += b.probability;
        }
        if (std::fabs(here - mirror) > kProbabilityTolerance) return false;
    }
    return true;
}

double IncrementModel::upper_support() const {
    if (kind_ == ModelKind::SymPareto) return kTruncationMax;
    double hi = -kTruncationMax;
    for (const Atom& a : atoms_) {
        if (a.probability > 0.0) hi = std::max(hi, a.value);
    }
    return hi;
}

double IncrementModel::abs_support() const {
    if (kind_ == ModelKind::SymPareto) return kTruncationMax;
    double hi = 0.0;
    for (const Atom& a : atoms_) {
        if (a.probability > 0.0) hi = std::max(hi, std::fabs(a.value));
    }
    return hi;
}

double IncrementModel::sample(RandomStream& stream) const {
    if (kind_ == ModelKind::SymPareto) {
        const double magnitude = scale_ * std::pow(stream.uniform_open(), -1.0 / alpha_);
        return stream.sign_bit() ? -magnitude : magnitude;
    }
    const double u = stream.uniform();
    for (std::size_t j = 0; j < cumulative_.size(); ++j) {
        if (u < cumulative_[j]) return atoms_[j].value;
    }
    return atoms_[last_positive_].value;
}

double exact_moment(const IncrementModel& model, const MomentQuery& q) {
    const bool is_beta = q.kind == MomentKind::BetaNeg || q.kind == MomentKind::BetaAbs;
    if (is_beta && !(q.param > 0.0)) throw std::domain_error("moment order beta must be > 0");
    if (q.kind == MomentKind::SecondBelow || q.kind == MomentKind::SecondAbsBelow) require_level(q.param);

    if (model.kind() == ModelKind::SymPareto) {
        const double alpha = model.pareto_alpha();
        const double scale = model.pareto_scale();
        switch (q.kind) {
            case MomentKind::Second:
                return pareto_abs_power(alpha, scale, 2.0);
            case MomentKind::SecondAbsBelow:
                if (q.param == kTruncationMax) return pareto_abs_power(alpha, scale, 2.0);
                return pareto_truncated_second(alpha, scale, q.param);
            case MomentKind::SecondBelow:
                if (q.param == kTruncationMax) return pareto_abs_power(alpha, scale, 2.0);
                // All of the negative half plus the positive half below y.
                return 0.5 * pareto_abs_power(alpha, scale, 2.0) + 0.5 * pareto_truncated_second(alpha, scale, q.param);
            case MomentKind::BetaNeg:
                return 0.5 * pareto_abs_power(alpha, scale, q.param);
            case MomentKind::BetaAbs:
                return pareto_abs_power(alpha, scale, q.param);
        }
    }

    const auto atoms = model.atoms();
    const double y = q.param;
    switch (q.kind) {
        case MomentKind::Second:
            return atom_sum(atoms, [](double v) { return v * v; });
        case MomentKind::SecondBelow:
            return atom_sum(atoms, [y](double v) { return v <= y ? v * v : 0.0; });
        case MomentKind::SecondAbsBelow:
            return atom_sum(atoms, [y](double v) { return std::fabs(v) <= y ? v * v : 0.0; });
        case MomentKind::BetaNeg:
            return atom_sum(atoms, [y](double v) { return v < 0.0 ? std::pow(-v, y) : 0.0; });
        case MomentKind::BetaAbs:
            return atom_sum(atoms, [y](double v) { return v != 0.0 ? std::pow(std::fabs(v), y) : 0.0; });
    }
    return 0.0;
}

void sample_path_into(const IncrementModel& model, std::size_t n, RandomStream& stream, Path& path) {
    auto out = path.resize_for_fill(n);
    for (double& xi : out) xi = model.sample(stream);
    path.refresh_sums();
}

Path sample_path(const IncrementModel& model, std::size_t n, RandomStream& stream) {
    if (n == 0) throw std::invalid_argument("sample_path needs n >= 1");
    Path path;
    sample_path_into(model, n, stream, path);
    return path;
}

LemmaGap lemma_gap(const IncrementModel& model, double lambda, double y, const LemmaVariant& variant) {
    if (!model.has_finite_support()) throw std::invalid_argument("lemma_gap needs a finite-support model");
    if (!(lambda > 0.0)) throw std::domain_error("lemma_gap needs lambda > 0");
    require_level(y);
    const auto atoms = model.atoms();

    switch (variant.kind) {
        case LemmaVariant::Kind::Bennett: {
            if (model.mean() > kMeanTolerance) throw std::invalid_argument("Bennett lemma needs mean <= 0");
            const double lhs = atom_sum(atoms, [&](double v) {
                const double t = lambda * v;
                return std::exp(v > y ? t - 0.5 * t * t : t);
            });
            const double moment = exact_moment(model, MomentQuery::second_below(y));
            return {lhs, std::exp(lambda * lambda * bennett_kernel(lambda * y) * moment)};
        }
        case LemmaVariant::Kind::Cosh: {
            if (!model.is_symmetric()) throw std::invalid_argument("cosh lemma needs a symmetric model");
            const double lhs = atom_sum(atoms, [&](double v) {
                const double t = lambda * v;
                return std::exp(std::fabs(v) > y ? t - 0.5 * t * t : t);
            });
            const double moment = exact_moment(model, MomentQuery::second_abs_below(y));
            return {lhs, std::exp(lambda * lambda * cosh_kernel(lambda * y) * moment)};
        }
        case LemmaVariant::Kind::Beta: {
            const double beta = variant.beta;
            if (!(beta > 1.0 && beta < 2.0)) throw std::domain_error("beta lemma needs beta in (1, 2)");
            if (model.mean() > kMeanTolerance) throw std::invalid_argument("beta lemma needs mean <= 0");
            const double lhs = atom_sum(atoms, [&](double v) {
                const double t = lambda * v;
                return std::exp(t > 0.0 ? t - std::pow(t, beta) : t);
            });
            const double moment = exact_moment(model, MomentQuery::beta_neg(beta));
            return {lhs, std::exp(std::pow(lambda, beta) * moment)};
        }
    }
    throw std::invalid_argument("unknown lemma variant");
}

IncrementModel random_finite_model(RandomStream& stream, std::size_t max_atoms, double value_bound) {
    if (max_atoms == 0) throw std::invalid_argument("random_finite_model needs max_atoms >= 1");
    const std::size_t count = 1 + static_cast<std::size_t>(stream.next() % max_atoms);
    std::vector<Atom> atoms(count);
    double total = 0.0;
    for (Atom& a : atoms) {
        a.value = value_bound * (2.0 * stream.uniform() - 1.0);
        a.probability = stream.uniform_open();
        total += a.probability;
    }
    for (Atom& a : atoms) a.probability /= total;
    return IncrementModel::finite_support(std::move(atoms));
}

IncrementModel nonpositive_mean_version(const IncrementModel& model) {
    if (!model.has_finite_support()) throw std::invalid_argument("nonpositive_mean_version needs finite support");
    if (model.mean() <= 0.0) return model;
    std::vector<Atom> atoms(model.atoms().begin(), model.atoms().end());
    for (Atom& a : atoms) a.value = -a.value;
    return IncrementModel::finite_support(std::move(atoms));
}

IncrementModel symmetrized(const IncrementModel& model) {
    if (!model.has_finite_support()) throw std::invalid_argument("symmetrized needs finite support");
    std::vector<Atom> atoms;
    for (const Atom& a : model.atoms()) {
        atoms.push_back({-a.value, 0.5 * a.probability});
        atoms.push_back({a.value, 0.5 * a.probability});
    }
    return IncrementModel::finite_support(std::move(atoms));
}

LemmaSuiteResult run_lemma_suite(const LemmaSuiteOptions& options) {
    LemmaSuiteResult result;
    const auto record = [&](std::size_t index, LemmaVariant variant, double lambda, double y, const LemmaGap& gap) {
        ++result.checks;
        if (gap.rhs > 0.0) result.max_ratio = std::max(result.max_ratio, gap.lhs / gap.rhs);
        if (gap.lhs > gap.rhs + options.slack * std::max(1.0, gap.rhs)) {
            result.violations.push_back({index, variant, lambda, y, gap});
        }
    };
    for (std::size_t i = 0; i < options.models; ++i) {
        RandomStream stream = RandomStream::substream(options.seed, i);
        const IncrementModel base = random_finite_model(stream, options.max_atoms, options.value_bound);
        const IncrementModel supermg = nonpositive_mean_version(base);
        const IncrementModel symmetric = symmetrized(base);
        for (double lambda : options.lambdas) {
            for (double y : options.levels) {
                record(i, LemmaVariant::bennett(), lambda, y, lemma_gap(supermg, lambda, y, LemmaVariant::bennett()));
                record(i, LemmaVariant::cosh(), lambda, y, lemma_gap(symmetric, lambda, y, LemmaVariant::cosh()));
            }
            for (double beta : options.betas) {
                const auto variant = LemmaVariant::beta_power(beta);
                record(i, variant, lambda, 0.0, lemma_gap(supermg, lambda, 0.0, variant));
            }
        }
    }
    return result;
}

}  // namespace mgb
