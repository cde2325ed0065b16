#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "mgb/bounds.hpp"
#include "oracles.hpp"

using namespace mgb;

namespace {
const double kHalfLog = std::exp(-0.5);
}

TEST_CASE("b1 examples") {
    CHECK(b1(BoundParams(0, 1, 1)) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(std::fabs(b1(BoundParams(1, 1, 1)) - std::numbers::e / 4) < 1e-12);
    CHECK(b1(BoundParams(1, 0, 1)) == kHalfLog);
}

TEST_CASE("b2 examples") {
    CHECK(b2(BoundParams(0, 1, 1)) == 1.0);
    CHECK(std::fabs(b2(BoundParams(1, 1, 1)) - std::exp(-3.0 / 8)) < 1e-12);
    CHECK(b2(BoundParams(1, 0, 1)) == kHalfLog);
}

TEST_CASE("b0 examples") {
    CHECK(b0(BoundParams(0, 1, 1)) == doctest::Approx(1.0).epsilon(1e-15));
    const double s2 = std::numbers::sqrt2;
    CHECK(std::fabs(b0(BoundParams(1, 1, 1)) - std::exp(s2 - 1 - std::log(1 + s2))) < 1e-12);
    CHECK(b0(BoundParams(1, 0, 1)) == kHalfLog);
}

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(BoundParams(-1, 1, 1), std::domain_error);
    CHECK_THROWS_AS(BoundParams(1, -1, 1), std::domain_error);
    CHECK_THROWS_AS(BoundParams(1, 1, 0), std::domain_error);
    CHECK_THROWS_AS(BoundParams(1, 1, std::nan("")), std::domain_error);
    CHECK_THROWS_AS(BetaParams(1, 1, 1.0), std::domain_error);
    CHECK_THROWS_AS(BetaParams(1, 1, 2.1), std::domain_error);
    CHECK_THROWS_AS(BetaParams(0, 1, 1.5), std::domain_error);
    CHECK_NOTHROW(BetaParams(1, 1, 2.0));
    CHECK_THROWS_AS(theorem2_bound(BetaParams(1, 1, 2.0)), std::domain_error);
    CHECK_THROWS_AS(stable_kernels(-1e-3), std::domain_error);
    CHECK_THROWS_AS(lambda_star(BennettExponent{BoundParams(0, 1, 1)}), std::domain_error);
    CHECK_THROWS_AS(c_beta(2.0), std::domain_error);
    CHECK_THROWS_AS(c_beta(1.0), std::domain_error);
    CHECK_THROWS_AS(c_tilde(2.5, SelfNormConstant::Paper), std::domain_error);
}

TEST_CASE("bounds are 1 at x = 0, decreasing in x, nondecreasing in v") {
    for (double y : {0.0, 0.3, 1.0, 2.0}) {
        for (double v : {0.5, 1.0, 2.0}) {
            double prev0 = 1.0, prev1 = 1.0, prev2 = 1.0;
            for (double x = 0.1; x <= 6.0; x += 0.1) {
                const BoundParams p(x, y, v);
                CHECK(b0(p) < prev0);
                CHECK(b1(p) < prev1);
                CHECK(b2(p) < prev2);
                CHECK(b0(p) > 0.0);
                prev0 = b0(p);
                prev1 = b1(p);
                prev2 = b2(p);
                const BoundParams wider(x, y, v * 1.1);
                CHECK(b0(wider) >= b0(p));
                CHECK(b1(wider) >= b1(p));
                CHECK(b2(wider) >= b2(p));
            }
        }
    }
}

TEST_CASE("b1 stays accurate for tiny xy/v^2") {
    // Direct evaluation of the product form cancels; the stable form must
    // approach the Gaussian limit smoothly.
    for (double y : {1e-3, 1e-6, 1e-9, 1e-12}) {
        const double g = gaussian_bound(1.0, 1.0);
        CHECK(std::fabs(b1(BoundParams(1, y, 1)) - g) <= 2 * y);
    }
}

TEST_CASE("lambda_star examples") {
    CHECK(lambda_star(BennettExponent{BoundParams(1, 1, 1)}) == doctest::Approx(std::log(2.0)).epsilon(1e-14));
    CHECK(lambda_star(CoshExponent{BoundParams(1, 1, 1)}) ==
          doctest::Approx(std::log(1 + std::numbers::sqrt2)).epsilon(1e-14));
    CHECK(lambda_star(BetaExponent{BetaParams(1, 1, 1.5)}) == doctest::Approx(4.0 / 9).epsilon(1e-14));
    CHECK(lambda_star(BennettExponent{BoundParams(2, 0, 0.5)}) == 8.0);
    CHECK(lambda_star(CoshExponent{BoundParams(2, 0, 0.5)}) == 8.0);
}

TEST_CASE("exponent_family examples") {
    CHECK(exponent_family(BennettExponent{BoundParams(3, 2, 1)}, 0.0) == 0.0);
    const BetaExponent beta{BetaParams(1, 1, 1.5)};
    CHECK(std::fabs(exponent_family(beta, lambda_star(beta)) + 4.0 / 27) < 1e-12);
    const CoshExponent cosh_v{BoundParams(1, 1, 1)};
    CHECK(std::fabs(exponent_family(cosh_v, lambda_star(cosh_v)) - std::log(b0(BoundParams(1, 1, 1)))) < 1e-12);
    CHECK_THROWS_AS(exponent_family(cosh_v, -0.1), std::domain_error);
}

TEST_CASE("exponent_family is convex and minimized at lambda_star") {
    const std::vector<ExponentVariant> variants{
        BennettExponent{BoundParams(2, 0.5, 1)}, CoshExponent{BoundParams(2, 0.5, 1)},
        BennettExponent{BoundParams(1, 0, 2)},   BetaExponent{BetaParams(2, 1.5, 1.3)},
        BetaExponent{BetaParams(1, 1, 1.9)},
    };
    for (const auto& v : variants) {
        const double star = lambda_star(v);
        const double h = 1e-3 * star;
        for (double l = h; l < 4 * star; l += star / 50) {
            const double second = exponent_family(v, l + h) - 2 * exponent_family(v, l) + exponent_family(v, l - h);
            CHECK(second / (h * h) >= -1e-8);
        }
        CHECK(exponent_family(v, star) <= exponent_family(v, 0.9 * star));
        CHECK(exponent_family(v, star) <= exponent_family(v, 1.1 * star));
    }
}

TEST_CASE("numeric_infimum examples") {
    const auto ben = numeric_infimum(BennettExponent{BoundParams(1, 1, 1)});
    CHECK(std::fabs(ben.lambda - std::log(2.0)) / std::log(2.0) < 1e-8);
    CHECK(std::fabs(ben.value - std::log(b1(BoundParams(1, 1, 1)))) < 1e-10);
    const auto beta = numeric_infimum(BetaExponent{BetaParams(1, 1, 1.5)});
    CHECK(std::fabs(beta.lambda - 4.0 / 9) < 1e-8);
    CHECK(std::fabs(beta.value + 4.0 / 27) < 1e-10);
    const auto cosh_inf = numeric_infimum(CoshExponent{BoundParams(2, 0.5, 1)});
    CHECK(std::fabs(cosh_inf.value - std::log(b0(BoundParams(2, 0.5, 1)))) < 1e-10);
}

TEST_CASE("minimize_convex reports a missing bracket") {
    CHECK_THROWS_AS(minimize_convex([](double l) { return -l; }, 1.0), std::runtime_error);
    CHECK_THROWS_AS(minimize_convex([](double l) { return l * l; }, 0.0), std::invalid_argument);
}

TEST_CASE("c_beta and c_tilde") {
    CHECK(std::fabs(c_beta(1.5) - 4.0 / 27) < 1e-14);
    CHECK(std::fabs(c_beta(2 - 1e-9) - 0.25) < 1e-6);
    CHECK(c_beta(1.1) == doctest::Approx(0.0350493899).epsilon(1e-9));
    CHECK(std::fabs(c_tilde(1.5, SelfNormConstant::Paper) - 16.0 / 27) < 1e-14);
    CHECK(std::fabs(c_tilde(1.5, SelfNormConstant::Derived) - 1.0 / 27) < 1e-14);
    CHECK(c_tilde(2.0, SelfNormConstant::Paper) == doctest::Approx(0.5).epsilon(1e-15));
    for (double beta = 1.01; beta < 2.0; beta += 0.01) {
        CHECK(c_tilde(beta, SelfNormConstant::Paper) >= c_tilde(beta, SelfNormConstant::Derived));
        CHECK(c_beta(beta) > 0.0);
        if (beta > 1.02) CHECK(c_beta(beta) > c_beta(beta - 0.01));
    }
}

TEST_CASE("c_tilde DERIVED is theorem2_bound at budget v^beta = 2") {
    for (double beta : {1.2, 1.5, 1.8}) {
        for (double x : {0.5, 1.0, 3.0}) {
            const double via_theorem2 = theorem2_bound(BetaParams(x, std::pow(2.0, 1.0 / beta), beta));
            const double direct = selfnorm_bound(x, beta, SelfNormConstant::Derived);
            CHECK(direct == doctest::Approx(via_theorem2).epsilon(1e-13));
        }
    }
}

TEST_CASE("theorem2_bound examples") {
    CHECK(theorem2_bound(BetaParams(1, 1, 1.5)) == doctest::Approx(std::exp(-4.0 / 27)).epsilon(1e-14));
    CHECK(theorem2_bound(BetaParams(1e-300, 1, 1.5)) == 1.0);
    CHECK(theorem2_bound(BetaParams(2, 2, 1.5)) == doctest::Approx(theorem2_bound(BetaParams(1, 1, 1.5))).epsilon(1e-15));
}

TEST_CASE("selfnorm_bound examples") {
    CHECK(selfnorm_bound(1, 2, SelfNormConstant::Paper) == doctest::Approx(kHalfLog).epsilon(1e-15));
    CHECK(selfnorm_bound(1, 1.5, SelfNormConstant::Derived) == doctest::Approx(std::exp(-1.0 / 27)).epsilon(1e-15));
    CHECK(selfnorm_bound(1e-300, 1.5, SelfNormConstant::Paper) == 1.0);
    CHECK_THROWS_AS(selfnorm_bound(0.0, 1.5, SelfNormConstant::Paper), std::domain_error);
    for (double x : {0.5, 1.0, 2.0}) {
        CHECK(selfnorm_bound(x, 1.5, SelfNormConstant::Derived) >= selfnorm_bound(x, 1.5, SelfNormConstant::Paper));
    }
}

TEST_CASE("stable kernels") {
    const auto zero = stable_kernels(0.0);
    CHECK(zero.g == 0.5);
    CHECK(zero.c == 0.5);
    const auto half = stable_kernels(0.5);
    CHECK(half.g == doctest::Approx(0.5948850828).epsilon(1e-10));
    CHECK(half.c == doctest::Approx((std::cosh(0.5) - 1) / 0.25).epsilon(1e-14));
    const double t = 1e-8;
    CHECK(std::fabs(stable_kernels(t).g - (0.5 + t / 6)) < 1e-12);
    CHECK(std::fabs(stable_kernels(t).c - (0.5 + t * t / 24)) < 1e-12);
    CHECK(bennett_kernel(0.7) == stable_kernels(0.7).g);
    CHECK(cosh_kernel(0.7) == stable_kernels(0.7).c);

    double prev_g = 0.5, prev_c = 0.5;
    for (double s = 1e-6; s < 30; s *= 1.01) {
        const auto k = stable_kernels(s);
        CHECK(k.g >= prev_g);
        CHECK(k.c >= prev_c);
        CHECK(k.g >= k.c);
        prev_g = k.g;
        prev_c = k.c;
    }
}

TEST_CASE("stable kernels match the series reference across the branch switch") {
    for (double s : {9.99e-5, 1e-4, 1.001e-4, 1e-3, 0.1, 1.0, 5.0, 10.0}) {
        const auto k = stable_kernels(s);
        CHECK(std::fabs((k.g - oracle::series_g(s)) / oracle::series_g(s)) < 1e-10L);
        CHECK(std::fabs((k.c - oracle::series_c(s)) / oracle::series_c(s)) < 1e-10L);
    }
}
