#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "mgb/bounds.hpp"
#include "mgb/characteristics.hpp"
#include "mgb/processes.hpp"

namespace mgb {

enum class EventMode {
    SomeK,        // exists k <= n: S_k >= x and char_k <= budget
    MaxTerminal,  // max_{k<=n} S_k >= x and char_n <= budget
    SelfNorm,     // max_{k<=n} S_k / V_n(beta) >= x
};

std::string event_mode_name(EventMode mode);
EventMode parse_event_mode(const std::string& name);

struct EventSpec {
    CharKind char_kind = CharKind::G;
    /// Truncation level y, or beta for the beta kinds and SELF_NORM.
    double char_param = 0.0;
    double x = 0.0;
    /// v^2, or v^beta for the beta kinds. Unused by SELF_NORM.
    double budget = 0.0;
    std::size_t horizon = 1;
    EventMode mode = EventMode::SomeK;
};

class ConfigurationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Reusable per-worker event test. Construction resolves the model moments
/// the characteristic needs.
///
/// SELF_NORM conventions: a path with V_n = 0 is a non-event; x <= 0 is
/// treated as the trivially-true event (its bound is 1).
class EventDetector {
public:
    EventDetector(const IncrementModel& model, const EventSpec& spec);

    bool operator()(const Path& path);

    /// max_k S_k / V_n(beta), or NaN when V_n = 0.
    static double selfnorm_statistic(const Path& path, double beta);

private:
    EventSpec spec_;
    CharacteristicPlan plan_;
    std::vector<double> chars_;
    std::vector<double> scratch_;
};

bool detect_event(const Path& path, const IncrementModel& model, const EventSpec& spec);

struct MCEstimate {
    std::uint64_t trials = 0;
    std::uint64_t hits = 0;
    double p_hat = 0.0;
    double delta = 0.0;
    /// min(1, p_hat + sqrt(ln(1/delta) / (2 trials))).
    double upper = 1.0;

    static MCEstimate from_counts(std::uint64_t trials, std::uint64_t hits, double delta);
};

/// Two-sided Hoeffding half-width sqrt(ln(2/delta) / (2 trials)).
double hoeffding_band(std::uint64_t trials, double delta);

struct SimulationOptions {
    std::uint64_t trials = 100000;
    std::uint64_t seed = 0;
    double delta = 1e-3;
    unsigned workers = 1;
};

/// Trial t draws its path from RandomStream::substream(seed, t); the hit
/// count is identical for any worker count.
MCEstimate estimate_event(const IncrementModel& model, const EventSpec& spec, const SimulationOptions& options);

enum class BoundName { B0, B1, B2, Theorem2, SelfNormPaper, SelfNormDerived };

std::string bound_name(BoundName bound);
BoundName parse_bound_name(const std::string& name);

/// The bound a theorem assigns to an event: v = sqrt(budget) for B0/B1/B2
/// (with y = char_param), v = budget^{1/beta} for THEOREM2.
double bound_value(BoundName bound, const EventSpec& spec);

/// Throws ConfigurationError when the bound does not cover that event and
/// model (for instance B0 on an asymmetric model).
void check_pairing(const IncrementModel& model, const EventSpec& spec, BoundName bound);

struct DominationCell {
    EventSpec spec;
    BoundName bound;
};

enum class CellStatus { Pass, Fail, LowHits };

std::string cell_status_name(CellStatus status);

struct DominationRow {
    DominationCell cell;
    MCEstimate estimate;
    double bound = 1.0;
    /// bound - upper.
    double margin = 0.0;
    CellStatus status = CellStatus::Pass;
};

struct DominationReport {
    std::string model_id;
    std::vector<DominationRow> rows;
    bool all_pass = true;
};

inline constexpr std::uint64_t kMinGatedHits = 10;

/// PASS when upper <= bound * bound_scale. Cells with fewer than
/// kMinGatedHits hits and upper > bound are LOW_HITS and do not gate.
/// bound_scale != 1 exists to falsify bounds deliberately.
DominationReport verify_domination(const std::string& model_id, const IncrementModel& model,
                                   const std::vector<DominationCell>& cells, const SimulationOptions& options,
                                   double bound_scale = 1.0);

struct TightnessRow {
    std::size_t n;
    double p;
    double lambda;
    double inf_value;
    double b0;
    double gap;
};

/// inf over lambda >= 0 of E exp{lambda (S_n - x)} for the two-point law
/// P(+-y) = v^2/(2 n y^2), from E e^{lambda xi} = 1 + p (cosh(lambda y) - 1).
/// The infimum is bracketed on a grid of `grid_points` over [0, 4 lambda_0]
/// (lambda_0 the B0 minimizer) and refined by minimize_convex.
std::vector<TightnessRow> tightness_twopoint(double x, double y, double v, const std::vector<std::size_t>& n_list,
                                             std::size_t grid_points);

struct SelfNormRow {
    double x;
    MCEstimate estimate;
    double derived_bound;
    double paper_bound;
    bool derived_pass;
    bool paper_pass;
    /// True when the PAPER constant gates the verdict (beta = 2).
    bool paper_required;
};

struct SelfNormReport {
    double beta;
    std::size_t n;
    std::vector<SelfNormRow> rows;
    bool all_pass = true;
};

/// One set of paths serves every x in the grid. Rejects asymmetric models.
SelfNormReport selfnorm_experiment(const IncrementModel& model, double beta, const std::vector<double>& x_grid,
                                   std::size_t n, const SimulationOptions& options);

}  // namespace mgb
