#include "mgb/characteristics.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <stdexcept>

#include "mgb/kernels.hpp"

namespace mgb {

Path::Path(std::vector<double> increments) : increments_(std::move(increments)) {
    if (increments_.empty()) throw std::invalid_argument("a path needs at least one increment");
    refresh_sums();
}

void Path::assign(std::span<const double> increments) {
    increments_.assign(increments.begin(), increments.end());
    refresh_sums();
}

std::span<double> Path::resize_for_fill(std::size_t n) {
    increments_.resize(n);
    return increments_;
}

void Path::refresh_sums() {
    sums_.resize(increments_.size());
    double s = 0.0;
    for (std::size_t k = 0; k < increments_.size(); ++k) {
        s += increments_[k];
        sums_[k] = s;
    }
}

namespace {

struct KindName {
    CharKind kind;
    const char* name;
};

constexpr KindName kKindNames[] = {
    {CharKind::QuadChar, "quad_char"}, {CharKind::SqVar, "sq_var"},   {CharKind::G, "g"},
    {CharKind::H, "h"},                {CharKind::M, "m"},            {CharKind::GBeta, "g_beta"},
    {CharKind::GBetaAbs, "g_beta_abs"}, {CharKind::QuadPlusSq, "quad_plus_sq"},
};

void require_level(double y) {
    if (!(y >= 0.0)) throw std::domain_error("truncation level y must be >= 0");
}

void require_beta(double beta) {
    if (!(beta > 1.0 && beta < 2.0)) throw std::domain_error("characteristic exponent beta must lie in (1, 2)");
}

}  // namespace

std::string char_kind_name(CharKind kind) {
    for (const auto& entry : kKindNames) {
        if (entry.kind == kind) return entry.name;
    }
    return "unknown";
}

CharKind parse_char_kind(const std::string& name) {
    std::string lower(name);
    std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
    for (const auto& entry : kKindNames) {
        if (lower == entry.name) return entry.kind;
    }
    throw std::invalid_argument("unknown characteristic kind '" + name + "'");
}

bool is_beta_kind(CharKind kind) {
    return kind == CharKind::GBeta || kind == CharKind::GBetaAbs;
}

CharacteristicPlan::CharacteristicPlan(const IncrementModel& model, CharKind kind, double param)
    : kind_(kind), param_(param) {
    switch (kind) {
        case CharKind::QuadChar:
        case CharKind::QuadPlusSq:
            conditional_ = exact_moment(model, MomentQuery::second());
            break;
        case CharKind::SqVar:
            conditional_ = 0.0;
            break;
        case CharKind::G:
            require_level(param);
            conditional_ = exact_moment(model, MomentQuery::second_below(param));
            break;
        case CharKind::H:
            require_level(param);
            conditional_ = exact_moment(model, MomentQuery::second());
            break;
        case CharKind::M:
            require_level(param);
            conditional_ = exact_moment(model, MomentQuery::second_abs_below(param));
            break;
        case CharKind::GBeta:
            require_beta(param);
            conditional_ = exact_moment(model, MomentQuery::beta_neg(param));
            break;
        case CharKind::GBetaAbs:
            require_beta(param);
            conditional_ = exact_moment(model, MomentQuery::beta_abs(param));
            break;
    }
}

void CharacteristicPlan::evaluate(std::span<const double> increments, std::vector<double>& out,
                                  std::vector<double>& scratch) const {
    const std::size_t n = increments.size();
    out.resize(n);
    if (kind_ == CharKind::QuadChar) {
        double total = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            total += conditional_;
            out[k] = total;
        }
        return;
    }

    scratch.resize(n);
    const auto& kern = kernels::active();
    switch (kind_) {
        case CharKind::SqVar:
        case CharKind::QuadPlusSq:
            kern.squares(increments, scratch);
            break;
        case CharKind::G:
            kern.squares_above(increments, param_, scratch);
            break;
        case CharKind::H:
        case CharKind::M:
            kern.squares_abs_above(increments, param_, scratch);
            break;
        case CharKind::GBeta:
            for (std::size_t i = 0; i < n; ++i) {
                scratch[i] = increments[i] > 0.0 ? std::pow(increments[i], param_) : 0.0;
            }
            break;
        case CharKind::GBetaAbs:
            for (std::size_t i = 0; i < n; ++i) {
                scratch[i] = increments[i] != 0.0 ? std::pow(std::fabs(increments[i]), param_) : 0.0;
            }
            break;
        case CharKind::QuadChar:
            break;
    }

    double total = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        total += conditional_ + scratch[k];
        out[k] = total;
    }
}

CharSeries characteristic(const Path& path, const IncrementModel& model, CharKind kind, double param) {
    const CharacteristicPlan plan(model, kind, param);
    CharSeries series{kind, param, {}};
    std::vector<double> scratch;
    plan.evaluate(path.increments(), series.values, scratch);
    return series;
}

CharSeries quad_char(const Path& path, const IncrementModel& model) {
    return characteristic(path, model, CharKind::QuadChar, 0.0);
}

CharSeries sq_var(const Path& path) {
    // The realized part needs no moments; any model resolves it.
    return characteristic(path, IncrementModel::rademacher(), CharKind::SqVar, 0.0);
}

CharSeries g_char(const Path& path, const IncrementModel& model, double y) {
    return characteristic(path, model, CharKind::G, y);
}

CharSeries h_char(const Path& path, const IncrementModel& model, double y) {
    return characteristic(path, model, CharKind::H, y);
}

CharSeries m_char(const Path& path, const IncrementModel& model, double y) {
    return characteristic(path, model, CharKind::M, y);
}

CharSeries g_beta_char(const Path& path, const IncrementModel& model, double beta) {
    return characteristic(path, model, CharKind::GBeta, beta);
}

double v_norm(std::span<const double> increments, double beta) {
    if (!(beta > 1.0 && beta <= 2.0)) throw std::domain_error("v_norm exponent beta must lie in (1, 2]");
    double total = 0.0;
    if (beta == 2.0) {
        for (double xi : increments) total += xi * xi;
        return std::sqrt(total);
    }
    for (double xi : increments) {
        if (xi != 0.0) total += std::pow(std::fabs(xi), beta);
    }
    return total == 0.0 ? 0.0 : std::pow(total, 1.0 / beta);
}

double v_norm(const Path& path, double beta) {
    return v_norm(path.increments(), beta);
}

}  // namespace mgb
