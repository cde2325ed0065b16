#include "mgb/bounds.hpp"

#include <cassert>
#include <cmath>
#include <stdexcept>
#include <string>

namespace mgb {

namespace {

constexpr double kSeriesThreshold = 1e-4;

void require(bool ok, const char* what) {
    if (!ok) throw std::domain_error(what);
}

void check_bound_value(double value) {
    assert(value <= 1.0 + 1e-12);
    (void)value;
}

// ((1+u) log1p(u) - u) / u^2, so that log b1 = -(x/v)^2 * phi(xy/v^2).
double bennett_log_factor(double u) {
    if (u < 1e-3) {
        // sum_{k>=2} (-1)^k u^{k-2} / (k (k-1))
        return 0.5 + u * (-1.0 / 6.0 + u * (1.0 / 12.0 + u * (-1.0 / 20.0 + u * (1.0 / 30.0 + u * (-1.0 / 42.0 + u / 56.0)))));
    }
    return ((1.0 + u) * std::log1p(u) - u) / (u * u);
}

}  // namespace

BoundParams::BoundParams(double x, double y, double v) : x_(x), y_(y), v_(v) {
    require(std::isfinite(x) && x >= 0.0, "bound parameter x must be finite and >= 0");
    require(std::isfinite(y) && y >= 0.0, "bound parameter y must be finite and >= 0");
    require(std::isfinite(v) && v > 0.0, "bound parameter v must be finite and > 0");
}

BetaParams::BetaParams(double x, double v, double beta) : x_(x), v_(v), beta_(beta) {
    require(std::isfinite(x) && x > 0.0, "beta parameter x must be finite and > 0");
    require(std::isfinite(v) && v > 0.0, "beta parameter v must be finite and > 0");
    require(beta > 1.0 && beta <= 2.0, "beta must lie in (1, 2]");
}

double bennett_kernel(double t) {
    require(t >= 0.0, "kernel argument must be >= 0");
    if (t < kSeriesThreshold) {
        return 0.5 + t * (1.0 / 6.0 + t * (1.0 / 24.0 + t * (1.0 / 120.0 + t / 720.0)));
    }
    return (std::expm1(t) - t) / (t * t);
}

double cosh_kernel(double t) {
    require(t >= 0.0, "kernel argument must be >= 0");
    if (t < kSeriesThreshold) {
        const double t2 = t * t;
        return 0.5 + t2 * (1.0 / 24.0 + t2 / 720.0);
    }
    const double s = std::sinh(0.5 * t);
    return 2.0 * s * s / (t * t);
}

KernelPair stable_kernels(double t) {
    return {bennett_kernel(t), cosh_kernel(t)};
}

double gaussian_bound(double x, double v) {
    return std::exp(-(x * x) / (2.0 * (v * v)));
}

double b1(const BoundParams& p) {
    if (p.y() == 0.0) return gaussian_bound(p.x(), p.v());
    const double v2 = p.v() * p.v();
    const double u = p.x() * p.y() / v2;
    const double value = std::exp(-(p.x() * p.x() / v2) * bennett_log_factor(u));
    check_bound_value(value);
    return value;
}

double b2(const BoundParams& p) {
    const double x = p.x();
    const double v = p.v();
    const double value = std::exp(-(x * x) / (2.0 * (v * v + x * p.y() / 3.0)));
    check_bound_value(value);
    return value;
}

double b0(const BoundParams& p) {
    if (p.y() == 0.0) return gaussian_bound(p.x(), p.v());
    if (p.x() == 0.0) return 1.0;
    const CoshExponent e{p};
    const double value = std::exp(exponent_family(e, lambda_star(e)));
    check_bound_value(value);
    return value;
}

double lambda_star(const ExponentVariant& variant) {
    struct Visitor {
        double operator()(const BennettExponent& e) const {
            const auto& p = e.params;
            require(p.x() > 0.0, "lambda_star requires x > 0");
            const double v2 = p.v() * p.v();
            if (p.y() == 0.0) return p.x() / v2;
            return std::log1p(p.x() * p.y() / v2) / p.y();
        }
        double operator()(const CoshExponent& e) const {
            const auto& p = e.params;
            require(p.x() > 0.0, "lambda_star requires x > 0");
            const double v2 = p.v() * p.v();
            if (p.y() == 0.0) return p.x() / v2;
            // log(sqrt(1 + u^2) + u) = asinh(u)
            return std::asinh(p.x() * p.y() / v2) / p.y();
        }
        double operator()(const BetaExponent& e) const {
            const auto& p = e.params;
            const double vb = std::pow(p.v(), p.beta());
            return std::pow(p.x() / (p.beta() * vb), 1.0 / (p.beta() - 1.0));
        }
    };
    return std::visit(Visitor{}, variant);
}

double exponent_family(const ExponentVariant& variant, double lambda) {
    require(lambda >= 0.0, "exponent_family requires lambda >= 0");
    struct Visitor {
        double lambda;
        // (kernel(lambda y) / y^2) v^2 == lambda^2 kernel(lambda y) v^2, which is
        // also the y = 0 limit lambda^2 v^2 / 2.
        double operator()(const BennettExponent& e) const {
            const auto& p = e.params;
            return -lambda * p.x() + lambda * lambda * bennett_kernel(lambda * p.y()) * (p.v() * p.v());
        }
        double operator()(const CoshExponent& e) const {
            const auto& p = e.params;
            return -lambda * p.x() + lambda * lambda * cosh_kernel(lambda * p.y()) * (p.v() * p.v());
        }
        double operator()(const BetaExponent& e) const {
            const auto& p = e.params;
            return -lambda * p.x() + std::pow(lambda * p.v(), p.beta());
        }
    };
    return std::visit(Visitor{lambda}, variant);
}

Infimum minimize_convex(const std::function<double(double)>& f, double seed) {
    if (!(seed > 0.0) || !std::isfinite(seed)) {
        throw std::invalid_argument("minimize_convex seed must be positive and finite");
    }
    double hi = seed;
    double f_hi = f(hi);
    int doublings = 0;
    for (;;) {
        const double f_next = f(2.0 * hi);
        if (!(f_next < f_hi)) break;
        hi *= 2.0;
        f_hi = f_next;
        if (++doublings > 200) {
            throw std::runtime_error("minimize_convex: no bracket within 200 doublings");
        }
    }

    // Golden section on [0, 2 hi].
    constexpr double kInvPhi = 0.6180339887498948482;
    double a = 0.0;
    double b = 2.0 * hi;
    double c = b - kInvPhi * (b - a);
    double d = a + kInvPhi * (b - a);
    double fc = f(c);
    double fd = f(d);
    while (b - a > 1e-12 * 0.5 * (a + b)) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - kInvPhi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + kInvPhi * (b - a);
            fd = f(d);
        }
    }
    double lambda = 0.5 * (a + b);

    // Near the minimum f is flat to within rounding, so the golden section
    // stalls around sqrt(eps) relative accuracy. The symmetric difference
    // keeps a usable sign much closer in.
    const double h = 1e-5 * lambda;
    const auto slope_sign = [&](double at) { return f(at + h) - f(at - h); };
    double lo = lambda * (1.0 - 1e-6);
    double up = lambda * (1.0 + 1e-6);
    if (h > 0.0 && slope_sign(lo) < 0.0 && slope_sign(up) > 0.0) {
        for (int i = 0; i < 80 && up - lo > 1e-15 * lambda; ++i) {
            const double mid = 0.5 * (lo + up);
            if (slope_sign(mid) < 0.0) {
                lo = mid;
            } else {
                up = mid;
            }
        }
        lambda = 0.5 * (lo + up);
    }
    return {lambda, f(lambda)};
}

Infimum numeric_infimum(const ExponentVariant& variant) {
    const double v = std::visit([](const auto& e) { return e.params.v(); }, variant);
    const double x = std::visit([](const auto& e) { return e.params.x(); }, variant);
    require(x > 0.0, "numeric_infimum requires x > 0");
    return minimize_convex([&](double lambda) { return exponent_family(variant, lambda); }, 1.0 / v);
}

double c_beta(double beta) {
    require(beta > 1.0 && beta < 2.0, "c_beta requires beta in (1, 2)");
    return std::pow(beta, 1.0 / (1.0 - beta)) * (1.0 - 1.0 / beta);
}

double c_tilde(double beta, SelfNormConstant which) {
    require(beta > 1.0 && beta <= 2.0, "c_tilde requires beta in (1, 2]");
    const double base = which == SelfNormConstant::Paper ? beta / 2.0 : 2.0 * beta;
    return std::pow(base, 1.0 / (1.0 - beta)) * (1.0 - 1.0 / beta);
}

double theorem2_bound(const BetaParams& p) {
    require(p.beta() < 2.0, "theorem2_bound requires beta in (1, 2)");
    const double value = std::exp(-c_beta(p.beta()) * std::pow(p.x() / p.v(), p.beta() / (p.beta() - 1.0)));
    check_bound_value(value);
    return value;
}

double selfnorm_bound(double x, double beta, SelfNormConstant which) {
    require(std::isfinite(x) && x > 0.0, "selfnorm_bound requires x > 0");
    const double value = std::exp(-c_tilde(beta, which) * std::pow(x, beta / (beta - 1.0)));
    check_bound_value(value);
    return value;
}

}  // namespace mgb
