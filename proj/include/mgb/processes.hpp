#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "mgb/path.hpp"
#include "mgb/random.hpp"

/// Increment models with exact moment oracles.
///
/// All models are i.i.d., so every conditional moment E(.|F_{i-1}) is a
/// per-step constant. Finite-support moments are exact weighted sums over
/// the atoms in their stored order; the symmetric Pareto model uses the
/// closed-form integrals of its density.
namespace mgb {

/// Truncation level standing for y = +infinity.
inline constexpr double kTruncationMax = std::numeric_limits<double>::infinity();

class InfiniteMomentError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

struct Atom {
    double value;
    double probability;
};

enum class ModelKind { FiniteSupport, TwoPointSym, Rademacher, BoundedSupermg, SymPareto };

std::string model_kind_name(ModelKind kind);

/// Level y, total mass p on {-y, +y} (p/2 each) and 1 - p at zero. When built
/// from (y, v, n), p = v^2 / (n y^2).
struct TwoPointParams {
    double y;
    double p;
    std::optional<double> v;
    std::optional<std::size_t> n;
};

class IncrementModel {
public:
    static IncrementModel finite_support(std::vector<Atom> atoms);
    static IncrementModel two_point_sym(double y, double p);
    static IncrementModel two_point_tightness(double y, double v, std::size_t n);
    static IncrementModel rademacher();
    /// Finite support with mean <= 0 and every atom <= a.
    static IncrementModel bounded_supermartingale(std::vector<Atom> atoms, double a);
    /// |xi| = scale * Pareto(alpha), sign uniform and independent.
    static IncrementModel sym_pareto(double alpha, double scale);

    ModelKind kind() const noexcept { return kind_; }
    bool has_finite_support() const noexcept { return kind_ != ModelKind::SymPareto; }

    /// Empty for SYM_PARETO.
    std::span<const Atom> atoms() const noexcept { return atoms_; }

    double mean() const;
    bool is_symmetric() const;

    /// sup of the support (+inf when unbounded above).
    double upper_support() const;
    /// sup |xi| over the support.
    double abs_support() const;

    double pareto_alpha() const noexcept { return alpha_; }
    double pareto_scale() const noexcept { return scale_; }
    const std::optional<TwoPointParams>& two_point() const noexcept { return two_point_; }
    double bound_a() const noexcept { return bound_a_; }

    double sample(RandomStream& stream) const;

private:
    IncrementModel() = default;
    void finalize_atoms();

    ModelKind kind_ = ModelKind::FiniteSupport;
    std::vector<Atom> atoms_;
    std::vector<double> cumulative_;
    std::size_t last_positive_ = 0;
    double alpha_ = 0.0;
    double scale_ = 0.0;
    double bound_a_ = 0.0;
    std::optional<TwoPointParams> two_point_;
};

enum class MomentKind {
    SecondBelow,     // E(xi^2 1{xi <= y})
    SecondAbsBelow,  // E(xi^2 1{|xi| <= y})
    Second,          // E(xi^2)
    BetaNeg,         // E((xi^-)^beta)
    BetaAbs,         // E(|xi|^beta)
};

struct MomentQuery {
    MomentKind kind;
    double param = 0.0;

    static MomentQuery second_below(double y) { return {MomentKind::SecondBelow, y}; }
    static MomentQuery second_abs_below(double y) { return {MomentKind::SecondAbsBelow, y}; }
    static MomentQuery second() { return {MomentKind::Second, 0.0}; }
    static MomentQuery beta_neg(double beta) { return {MomentKind::BetaNeg, beta}; }
    static MomentQuery beta_abs(double beta) { return {MomentKind::BetaAbs, beta}; }
};

/// Throws InfiniteMomentError when the moment diverges.
double exact_moment(const IncrementModel& model, const MomentQuery& q);

Path sample_path(const IncrementModel& model, std::size_t n, RandomStream& stream);
void sample_path_into(const IncrementModel& model, std::size_t n, RandomStream& stream, Path& path);

struct LemmaVariant {
    enum class Kind { Bennett, Cosh, Beta };
    Kind kind;
    double beta = 0.0;

    static LemmaVariant bennett() { return {Kind::Bennett, 0.0}; }
    static LemmaVariant cosh() { return {Kind::Cosh, 0.0}; }
    static LemmaVariant beta_power(double beta) { return {Kind::Beta, beta}; }
};

struct LemmaGap {
    double lhs;
    double rhs;
};

/// Exact one-step expectation against its exponential moment bound:
///   Bennett: E exp{l xi - (l xi)^2/2 1{xi > y}}   vs exp{l^2 g(l y) E(xi^2 1{xi <= y})}
///   Cosh:    E exp{l xi - (l xi)^2/2 1{|xi| > y}} vs exp{l^2 c(l y) E(xi^2 1{|xi| <= y})}
///   Beta:    E exp{l xi - (l xi^+)^beta}          vs exp{l^beta E((xi^-)^beta)}
/// Finite-support models only. Bennett and Beta require mean <= 0, Cosh a
/// symmetric model; violations throw std::invalid_argument.
LemmaGap lemma_gap(const IncrementModel& model, double lambda, double y, const LemmaVariant& variant);

/// Random finite-support model: 1..max_atoms atoms, values uniform on
/// [-value_bound, value_bound], normalized uniform weights.
IncrementModel random_finite_model(RandomStream& stream, std::size_t max_atoms, double value_bound);

/// Atoms negated when the mean is positive, so the mean is <= 0.
IncrementModel nonpositive_mean_version(const IncrementModel& model);

/// Every atom (v, p) split into (-v, p/2) and (v, p/2).
IncrementModel symmetrized(const IncrementModel& model);

struct LemmaSuiteOptions {
    std::size_t models = 1000;
    std::uint64_t seed = 1;
    std::size_t max_atoms = 5;
    double value_bound = 5.0;
    std::vector<double> lambdas{0.1, 0.5, 1.0, 2.0, 5.0};
    std::vector<double> levels{0.0, 0.5, 1.0, 2.0};
    std::vector<double> betas{1.2, 1.5, 1.8};
    /// A check fails when lhs > rhs + slack * max(1, rhs).
    double slack = 1e-12;
};

struct LemmaCheck {
    std::size_t model_index;
    LemmaVariant variant;
    double lambda;
    double y;
    LemmaGap gap;
};

struct LemmaSuiteResult {
    std::size_t checks = 0;
    std::vector<LemmaCheck> violations;
    /// Largest lhs / rhs seen; <= 1 when every check holds.
    double max_ratio = 0.0;
};

/// Model i is drawn from RandomStream::substream(seed, i). Bennett and Beta
/// checks use its nonpositive-mean version, Cosh checks its symmetrization.
LemmaSuiteResult run_lemma_suite(const LemmaSuiteOptions& options);

}  // namespace mgb
