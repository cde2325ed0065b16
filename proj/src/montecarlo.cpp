#include "mgb/montecarlo.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <thread>

#include "mgb/kernels.hpp"

namespace mgb {

namespace {

constexpr double kMeanTolerance = 1e-12;

std::string lowercase(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    return s;
}

// Runs body(begin, end, worker) over contiguous trial ranges.
template <class Body>
void for_each_chunk(std::uint64_t trials, unsigned workers, Body body) {
    workers = std::max(1u, workers);
    if (workers == 1 || trials < 2) {
        body(std::uint64_t{0}, trials, 0u);
        return;
    }
    const std::uint64_t chunk = (trials + workers - 1) / workers;
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
        const std::uint64_t begin = std::min(trials, chunk * w);
        const std::uint64_t end = std::min(trials, begin + chunk);
        pool.emplace_back([=, &body] { body(begin, end, w); });
    }
    for (auto& t : pool) t.join();
}

void require_trials(const SimulationOptions& options) {
    if (options.trials == 0) throw ConfigurationError("trials must be >= 1");
    if (!(options.delta > 0.0 && options.delta < 1.0)) throw ConfigurationError("delta must lie in (0, 1)");
}

bool mean_nonpositive(const IncrementModel& model) {
    try {
        return model.mean() <= kMeanTolerance;
    } catch (const InfiniteMomentError&) {
        return false;
    }
}

// y for the B0/B1/B2 family: the truncation level of G/H/M, zero otherwise.
double truncation_of(const EventSpec& spec) {
    switch (spec.char_kind) {
        case CharKind::G:
        case CharKind::H:
        case CharKind::M:
            return spec.char_param;
        default:
            return 0.0;
    }
}

}  // namespace

std::string event_mode_name(EventMode mode) {
    switch (mode) {
        case EventMode::SomeK: return "some_k";
        case EventMode::MaxTerminal: return "max_terminal";
        case EventMode::SelfNorm: return "self_norm";
    }
    return "unknown";
}

EventMode parse_event_mode(const std::string& name) {
    const std::string s = lowercase(name);
    if (s == "some_k") return EventMode::SomeK;
    if (s == "max_terminal") return EventMode::MaxTerminal;
    if (s == "self_norm") return EventMode::SelfNorm;
    throw std::invalid_argument("unknown event mode '" + name + "'");
}

EventDetector::EventDetector(const IncrementModel& model, const EventSpec& spec)
    : spec_(spec),
      plan_(model, spec.mode == EventMode::SelfNorm ? CharKind::SqVar : spec.char_kind,
            spec.mode == EventMode::SelfNorm ? 0.0 : spec.char_param) {
    if (spec.horizon == 0) throw ConfigurationError("event horizon n must be >= 1");
    if (std::isnan(spec.x)) throw ConfigurationError("event threshold x must not be NaN");
    if (spec.mode == EventMode::SelfNorm && !(spec.char_param > 1.0 && spec.char_param <= 2.0)) {
        throw ConfigurationError("self-normalized events need beta in (1, 2]");
    }
}

double EventDetector::selfnorm_statistic(const Path& path, double beta) {
    const double vn = v_norm(path, beta);
    if (vn == 0.0) return std::numeric_limits<double>::quiet_NaN();
    return kernels::active().max_value(path.partial_sums()) / vn;
}

bool EventDetector::operator()(const Path& path) {
    const auto& kern = kernels::active();
    switch (spec_.mode) {
        case EventMode::SomeK:
            plan_.evaluate(path.increments(), chars_, scratch_);
            return kern.first_joint_hit(path.partial_sums(), chars_, spec_.x, spec_.budget) != kernels::kNoHit;
        case EventMode::MaxTerminal:
            plan_.evaluate(path.increments(), chars_, scratch_);
            return chars_.back() <= spec_.budget && kern.max_value(path.partial_sums()) >= spec_.x;
        case EventMode::SelfNorm: {
            const double stat = selfnorm_statistic(path, spec_.char_param);
            if (std::isnan(stat)) return false;
            return spec_.x <= 0.0 || stat >= spec_.x;
        }
    }
    return false;
}

bool detect_event(const Path& path, const IncrementModel& model, const EventSpec& spec) {
    EventDetector detector(model, spec);
    return detector(path);
}

MCEstimate MCEstimate::from_counts(std::uint64_t trials, std::uint64_t hits, double delta) {
    MCEstimate e;
    e.trials = trials;
    e.hits = hits;
    e.delta = delta;
    e.p_hat = static_cast<double>(hits) / static_cast<double>(trials);
    const double half = std::sqrt(std::log(1.0 / delta) / (2.0 * static_cast<double>(trials)));
    e.upper = std::clamp(e.p_hat + half, e.p_hat, 1.0);
    return e;
}

double hoeffding_band(std::uint64_t trials, double delta) {
    return std::sqrt(std::log(2.0 / delta) / (2.0 * static_cast<double>(trials)));
}

MCEstimate estimate_event(const IncrementModel& model, const EventSpec& spec, const SimulationOptions& options) {
    require_trials(options);
    const EventDetector prototype(model, spec);
    std::vector<std::uint64_t> hits(std::max(1u, options.workers), 0);
    for_each_chunk(options.trials, options.workers, [&](std::uint64_t begin, std::uint64_t end, unsigned w) {
        EventDetector detector = prototype;
        Path path;
        std::uint64_t count = 0;
        for (std::uint64_t t = begin; t < end; ++t) {
            RandomStream stream = RandomStream::substream(options.seed, t);
            sample_path_into(model, spec.horizon, stream, path);
            if (detector(path)) ++count;
        }
        hits[w] = count;
    });
    std::uint64_t total = 0;
    for (auto h : hits) total += h;
    return MCEstimate::from_counts(options.trials, total, options.delta);
}

std::string bound_name(BoundName bound) {
    switch (bound) {
        case BoundName::B0: return "b0";
        case BoundName::B1: return "b1";
        case BoundName::B2: return "b2";
        case BoundName::Theorem2: return "theorem2";
        case BoundName::SelfNormPaper: return "selfnorm_paper";
        case BoundName::SelfNormDerived: return "selfnorm_derived";
    }
    return "unknown";
}

BoundName parse_bound_name(const std::string& name) {
    const std::string s = lowercase(name);
    if (s == "b0") return BoundName::B0;
    if (s == "b1") return BoundName::B1;
    if (s == "b2") return BoundName::B2;
    if (s == "theorem2") return BoundName::Theorem2;
    if (s == "selfnorm_paper") return BoundName::SelfNormPaper;
    if (s == "selfnorm_derived") return BoundName::SelfNormDerived;
    throw std::invalid_argument("unknown bound '" + name + "'");
}

double bound_value(BoundName bound, const EventSpec& spec) {
    switch (bound) {
        case BoundName::B0:
        case BoundName::B1:
        case BoundName::B2: {
            if (spec.x <= 0.0) return 1.0;
            const BoundParams p(spec.x, truncation_of(spec), std::sqrt(spec.budget));
            if (bound == BoundName::B0) return b0(p);
            return bound == BoundName::B1 ? b1(p) : b2(p);
        }
        case BoundName::Theorem2: {
            if (spec.x <= 0.0) return 1.0;
            const double beta = spec.char_param;
            return theorem2_bound(BetaParams(spec.x, std::pow(spec.budget, 1.0 / beta), beta));
        }
        case BoundName::SelfNormPaper:
        case BoundName::SelfNormDerived: {
            if (spec.x <= 0.0) return 1.0;
            const auto which = bound == BoundName::SelfNormPaper ? SelfNormConstant::Paper : SelfNormConstant::Derived;
            return selfnorm_bound(spec.x, spec.char_param, which);
        }
    }
    return 1.0;
}

void check_pairing(const IncrementModel& model, const EventSpec& spec, BoundName bound) {
    const std::string label = bound_name(bound) + " with " + char_kind_name(spec.char_kind) + "/" +
                              event_mode_name(spec.mode);
    const bool self_norm_bound = bound == BoundName::SelfNormPaper || bound == BoundName::SelfNormDerived;
    if (self_norm_bound != (spec.mode == EventMode::SelfNorm)) {
        throw ConfigurationError(label + ": self-normalized bounds pair exactly with self_norm events");
    }
    if (!(spec.budget > 0.0) && !self_norm_bound) throw ConfigurationError(label + ": budget must be > 0");

    switch (bound) {
        case BoundName::B1:
        case BoundName::B2:
            if (spec.char_kind != CharKind::G && spec.char_kind != CharKind::H &&
                spec.char_kind != CharKind::QuadPlusSq) {
                throw ConfigurationError(label + ": b1/b2 cover the g, h and quad_plus_sq characteristics");
            }
            if (!mean_nonpositive(model)) throw ConfigurationError(label + ": model mean must be <= 0");
            break;
        case BoundName::B0:
            if (spec.char_kind != CharKind::M && spec.char_kind != CharKind::SqVar) {
                throw ConfigurationError(label + ": b0 covers the m and sq_var characteristics");
            }
            if (!model.is_symmetric()) throw ConfigurationError(label + ": b0 needs a symmetric model");
            break;
        case BoundName::Theorem2:
            if (!is_beta_kind(spec.char_kind)) {
                throw ConfigurationError(label + ": theorem2 covers the g_beta and g_beta_abs characteristics");
            }
            if (!mean_nonpositive(model)) throw ConfigurationError(label + ": model mean must be <= 0");
            break;
        case BoundName::SelfNormPaper:
        case BoundName::SelfNormDerived:
            if (!model.is_symmetric()) throw ConfigurationError(label + ": self-normalized bounds need a symmetric model");
            break;
    }
    try {
        EventDetector probe(model, spec);
        (void)probe;
        (void)bound_value(bound, spec);
    } catch (const std::domain_error& e) {
        throw ConfigurationError(label + ": " + e.what());
    }
}

std::string cell_status_name(CellStatus status) {
    switch (status) {
        case CellStatus::Pass: return "PASS";
        case CellStatus::Fail: return "FAIL";
        case CellStatus::LowHits: return "LOW_HITS";
    }
    return "UNKNOWN";
}

DominationReport verify_domination(const std::string& model_id, const IncrementModel& model,
                                   const std::vector<DominationCell>& cells, const SimulationOptions& options,
                                   double bound_scale) {
    for (const auto& cell : cells) check_pairing(model, cell.spec, cell.bound);
    DominationReport report;
    report.model_id = model_id;
    for (const auto& cell : cells) {
        DominationRow row;
        row.cell = cell;
        row.estimate = estimate_event(model, cell.spec, options);
        row.bound = bound_value(cell.bound, cell.spec) * bound_scale;
        row.margin = row.bound - row.estimate.upper;
        if (row.estimate.upper <= row.bound) {
            row.status = CellStatus::Pass;
        } else if (row.estimate.hits < kMinGatedHits) {
            row.status = CellStatus::LowHits;
        } else {
            row.status = CellStatus::Fail;
            report.all_pass = false;
        }
        report.rows.push_back(row);
    }
    return report;
}

std::vector<TightnessRow> tightness_twopoint(double x, double y, double v, const std::vector<std::size_t>& n_list,
                                             std::size_t grid_points) {
    const BoundParams params(x, y, v);
    if (!(x > 0.0) || !(y > 0.0)) throw ConfigurationError("tightness needs x > 0 and y > 0");
    if (grid_points < 2) throw ConfigurationError("tightness grid needs at least 2 points");
    const double bound = b0(params);
    const double lambda0 = lambda_star(CoshExponent{params});

    std::vector<TightnessRow> rows;
    for (std::size_t n : n_list) {
        const auto model = IncrementModel::two_point_tightness(y, v, n);  // validates v^2 <= n y^2
        const double p = model.two_point()->p;
        const double dn = static_cast<double>(n);
        // log E e^{lambda (S_n - x)}
        const auto log_mgf = [&](double lambda) {
            return -lambda * x + dn * std::log1p(p * lambda * lambda * y * y * cosh_kernel(lambda * y));
        };

        double best_lambda = 0.0;
        double best = 0.0;  // the lambda = 0 row
        const double lambda_max = 4.0 * lambda0;
        for (std::size_t i = 1; i < grid_points; ++i) {
            const double lambda = lambda_max * static_cast<double>(i) / static_cast<double>(grid_points - 1);
            const double value = log_mgf(lambda);
            if (value < best) {
                best = value;
                best_lambda = lambda;
            }
        }
        const Infimum refined = minimize_convex(log_mgf, best_lambda > 0.0 ? best_lambda : lambda0);
        if (refined.value < best) {
            best = refined.value;
            best_lambda = refined.lambda;
        }
        const double inf_value = std::exp(best);
        rows.push_back({n, p, best_lambda, inf_value, bound, bound - inf_value});
    }
    return rows;
}

SelfNormReport selfnorm_experiment(const IncrementModel& model, double beta, const std::vector<double>& x_grid,
                                   std::size_t n, const SimulationOptions& options) {
    require_trials(options);
    if (!model.is_symmetric()) throw ConfigurationError("self-normalized experiment needs a symmetric model");
    if (!(beta > 1.0 && beta <= 2.0)) throw ConfigurationError("self-normalized beta must lie in (1, 2]");
    if (n == 0) throw ConfigurationError("self-normalized horizon n must be >= 1");

    const unsigned workers = std::max(1u, options.workers);
    std::vector<std::vector<std::uint64_t>> hits(workers, std::vector<std::uint64_t>(x_grid.size(), 0));
    for_each_chunk(options.trials, workers, [&](std::uint64_t begin, std::uint64_t end, unsigned w) {
        Path path;
        auto& counts = hits[w];
        for (std::uint64_t t = begin; t < end; ++t) {
            RandomStream stream = RandomStream::substream(options.seed, t);
            sample_path_into(model, n, stream, path);
            const double stat = EventDetector::selfnorm_statistic(path, beta);
            if (std::isnan(stat)) continue;
            for (std::size_t i = 0; i < x_grid.size(); ++i) {
                if (x_grid[i] <= 0.0 || stat >= x_grid[i]) ++counts[i];
            }
        }
    });

    SelfNormReport report;
    report.beta = beta;
    report.n = n;
    for (std::size_t i = 0; i < x_grid.size(); ++i) {
        std::uint64_t total = 0;
        for (const auto& counts : hits) total += counts[i];
        SelfNormRow row;
        row.x = x_grid[i];
        row.estimate = MCEstimate::from_counts(options.trials, total, options.delta);
        row.derived_bound = row.x > 0.0 ? selfnorm_bound(row.x, beta, SelfNormConstant::Derived) : 1.0;
        row.paper_bound = row.x > 0.0 ? selfnorm_bound(row.x, beta, SelfNormConstant::Paper) : 1.0;
        row.derived_pass = row.estimate.upper <= row.derived_bound;
        row.paper_pass = row.estimate.upper <= row.paper_bound;
        row.paper_required = beta == 2.0;
        if (!row.derived_pass || (row.paper_required && !row.paper_pass)) report.all_pass = false;
        report.rows.push_back(row);
    }
    return report;
}

}  // namespace mgb
