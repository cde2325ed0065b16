#pragma once

#include <span>
#include <string>
#include <vector>

#include "mgb/path.hpp"
#include "mgb/processes.hpp"

namespace mgb {

enum class CharKind {
    QuadChar,    // <S>_k = sum E(xi_i^2)
    SqVar,       // [S]_k = sum xi_i^2
    G,           // sum E(xi^2 1{xi <= y}) + xi_i^2 1{xi_i > y}
    H,           // sum E(xi^2) + xi_i^2 1{|xi_i| > y}
    M,           // sum E(xi^2 1{|xi| <= y}) + xi_i^2 1{|xi_i| > y}
    GBeta,       // sum E((xi^-)^beta) + (xi_i^+)^beta
    GBetaAbs,    // sum E(|xi|^beta) + |xi_i|^beta
    QuadPlusSq,  // <S>_k + [S]_k
};

std::string char_kind_name(CharKind kind);
/// Accepts the names produced by char_kind_name (case-insensitive); throws
/// std::invalid_argument otherwise.
CharKind parse_char_kind(const std::string& name);

/// True for the kinds whose parameter is an exponent beta rather than a
/// truncation level y.
bool is_beta_kind(CharKind kind);

struct CharSeries {
    CharKind kind;
    double param;
    std::vector<double> values;
};

/// A characteristic specialised to one model: the per-step conditional
/// moment resolved once, the realized part applied per path.
///
/// values[k] = values[k-1] + (conditional + realized(xi_k)).
class CharacteristicPlan {
public:
    /// Throws InfiniteMomentError when the model lacks the needed moment.
    CharacteristicPlan(const IncrementModel& model, CharKind kind, double param);

    CharKind kind() const noexcept { return kind_; }
    double param() const noexcept { return param_; }
    double conditional_term() const noexcept { return conditional_; }

    /// `out` is resized to the path length. `scratch` holds realized terms.
    void evaluate(std::span<const double> increments, std::vector<double>& out, std::vector<double>& scratch) const;

private:
    CharKind kind_;
    double param_;
    double conditional_ = 0.0;
};

CharSeries characteristic(const Path& path, const IncrementModel& model, CharKind kind, double param);

CharSeries quad_char(const Path& path, const IncrementModel& model);
CharSeries sq_var(const Path& path);
CharSeries g_char(const Path& path, const IncrementModel& model, double y);
CharSeries h_char(const Path& path, const IncrementModel& model, double y);
CharSeries m_char(const Path& path, const IncrementModel& model, double y);
/// beta in (1, 2).
CharSeries g_beta_char(const Path& path, const IncrementModel& model, double beta);

/// (sum |xi_i|^beta)^{1/beta}; zero for the all-zero path.
double v_norm(std::span<const double> increments, double beta);
double v_norm(const Path& path, double beta);

}  // namespace mgb
