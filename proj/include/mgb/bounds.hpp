#pragma once

#include <functional>
#include <variant>

/// Closed-form martingale tail bounds and the Chernoff exponent families
/// they are optimized from.
///
/// Bounded-jump and truncated forms take (x, y, v): tail threshold x,
/// truncation level y, and variance budget v (the event constrains a
/// characteristic by v^2). The heavy-tailed forms take (x, v, beta) with the
/// characteristic constrained by v^beta. y = 0 always selects the Gaussian
/// limit exp{-x^2/(2v^2)} through an explicit branch.
namespace mgb {

class BoundParams {
public:
    /// Throws std::domain_error unless x >= 0, y >= 0 and v > 0.
    BoundParams(double x, double y, double v);

    double x() const noexcept { return x_; }
    double y() const noexcept { return y_; }
    double v() const noexcept { return v_; }

private:
    double x_;
    double y_;
    double v_;
};

class BetaParams {
public:
    /// Throws std::domain_error unless x > 0, v > 0 and beta in (1, 2].
    /// Operations that exclude beta = 2 check that themselves.
    BetaParams(double x, double v, double beta);

    double x() const noexcept { return x_; }
    double v() const noexcept { return v_; }
    double beta() const noexcept { return beta_; }

private:
    double x_;
    double v_;
    double beta_;
};

/// -lambda x + ((e^{lambda y} - 1 - lambda y)/y^2) v^2
struct BennettExponent {
    BoundParams params;
};

/// -lambda x + ((cosh(lambda y) - 1)/y^2) v^2
struct CoshExponent {
    BoundParams params;
};

/// -lambda x + lambda^beta v^beta
struct BetaExponent {
    BetaParams params;
};

using ExponentVariant = std::variant<BennettExponent, CoshExponent, BetaExponent>;

enum class SelfNormConstant {
    Paper,    // (beta/2)^{1/(1-beta)} (1 - 1/beta), as printed with the theorem
    Derived,  // (2 beta)^{1/(1-beta)} (1 - 1/beta), budget v^beta = 2 fed through theorem2_bound
};

struct KernelPair {
    double g;  // (e^t - 1 - t) / t^2
    double c;  // (cosh t - 1) / t^2
};

/// Both kernels are 1/2 at t = 0 and nondecreasing on t >= 0. Below
/// t = 1e-4 they are evaluated from their Taylor series through t^4.
KernelPair stable_kernels(double t);
double bennett_kernel(double t);
double cosh_kernel(double t);

double b1(const BoundParams& p);
double b2(const BoundParams& p);
double b0(const BoundParams& p);

/// exp{-x^2 / (2 v^2)}, the common y = 0 value of b0, b1 and b2.
double gaussian_bound(double x, double v);

double lambda_star(const ExponentVariant& variant);
double exponent_family(const ExponentVariant& variant, double lambda);

struct Infimum {
    double lambda;
    double value;
};

/// Minimizes a convex function on (0, inf) that starts at f(0) = 0 and
/// initially decreases. The bracket grows from `seed` by doubling; a
/// golden-section search narrows it to relative width 1e-12 and a
/// symmetric-difference bisection then pins the minimizer below the
/// resolution function values alone allow. Throws std::runtime_error if no
/// bracket is found within 200 doublings.
Infimum minimize_convex(const std::function<double(double)>& f, double seed);

Infimum numeric_infimum(const ExponentVariant& variant);

/// beta^{1/(1-beta)} (1 - 1/beta) for beta in (1, 2).
double c_beta(double beta);
double c_tilde(double beta, SelfNormConstant which);

/// exp{-C(beta) (x/v)^{beta/(beta-1)}} for beta in (1, 2).
double theorem2_bound(const BetaParams& p);

/// exp{-c_tilde(beta) x^{beta/(beta-1)}} for x > 0 and beta in (1, 2].
double selfnorm_bound(double x, double beta, SelfNormConstant which);

}  // namespace mgb
