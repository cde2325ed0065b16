#include <doctest.h>

#include <cmath>
#include <vector>

#include "mgb/model_json.hpp"
#include "mgb/processes.hpp"

using namespace mgb;

namespace {

IncrementModel three_point() { return IncrementModel::finite_support({{-2, 1.0 / 3}, {0.5, 1.0 / 3}, {3, 1.0 / 3}}); }

}  // namespace

TEST_CASE("RandomStream follows the documented SplitMix64 scheme") {
    // Reference values of the SplitMix64 generator seeded with 0.
    RandomStream s(0);
    CHECK(s.next() == 0xe220a8397b1dcdafULL);
    CHECK(s.next() == 0x6e789e6aa1b965f4ULL);
    CHECK(s.next() == 0x06c45d188009454fULL);
    const RandomStream sub = RandomStream::substream(5, 9);
    CHECK(sub.state() == mix64(mix64(5) ^ mix64(10)));
    RandomStream u(42);
    for (int i = 0; i < 1000; ++i) {
        const double a = u.uniform();
        const double b = u.uniform_open();
        CHECK(a >= 0.0);
        CHECK(a < 1.0);
        CHECK(b > 0.0);
        CHECK(b < 1.0);
    }
}

TEST_CASE("model validation") {
    CHECK_THROWS_AS(IncrementModel::finite_support({}), std::invalid_argument);
    CHECK_THROWS_AS(IncrementModel::finite_support({{1, 0.5}, {2, 0.4}}), std::invalid_argument);
    CHECK_THROWS_AS(IncrementModel::finite_support({{1, -0.1}, {2, 1.1}}), std::invalid_argument);
    CHECK_THROWS_AS(IncrementModel::two_point_sym(1, 1.5), std::invalid_argument);
    CHECK_THROWS_AS(IncrementModel::two_point_tightness(1, 2, 3), std::invalid_argument);
    CHECK_NOTHROW(IncrementModel::two_point_tightness(1, 2, 4));
    CHECK_THROWS_AS(IncrementModel::bounded_supermartingale({{-1, 0.4}, {1, 0.6}}, 1), std::invalid_argument);
    CHECK_THROWS_AS(IncrementModel::bounded_supermartingale({{-3, 0.6}, {2, 0.4}}, 1), std::invalid_argument);
    CHECK_THROWS_AS(IncrementModel::sym_pareto(0, 1), std::invalid_argument);
    CHECK_THROWS_AS(IncrementModel::sym_pareto(1, -1), std::invalid_argument);
}

TEST_CASE("two-point tightness parametrization") {
    const auto m = IncrementModel::two_point_tightness(2.0, 1.0, 10);
    REQUIRE(m.two_point().has_value());
    CHECK(m.two_point()->p == doctest::Approx(1.0 / 40).epsilon(1e-15));
    CHECK(exact_moment(m, MomentQuery::second()) == doctest::Approx(0.1).epsilon(1e-15));
    CHECK(m.is_symmetric());
}

TEST_CASE("exact_moment examples") {
    const auto m = three_point();
    CHECK(exact_moment(m, MomentQuery::second_below(1)) == doctest::Approx(4.25 / 3).epsilon(1e-15));
    CHECK(exact_moment(IncrementModel::rademacher(), MomentQuery::beta_neg(1.5)) == 0.5);
    for (const auto& model : {m, IncrementModel::rademacher(), IncrementModel::sym_pareto(3, 1)}) {
        CHECK(exact_moment(model, MomentQuery::second_below(kTruncationMax)) ==
              exact_moment(model, MomentQuery::second()));
        double prev = 0.0;
        for (double y = 0; y < 6; y += 0.25) {
            const double v = exact_moment(model, MomentQuery::second_below(y));
            CHECK(v >= prev);
            prev = v;
        }
    }
}

TEST_CASE("Pareto moments match the closed-form integrals") {
    const double alpha = 1.5, s = 2.0;
    const auto m = IncrementModel::sym_pareto(alpha, s);
    // E(xi^2 1{|xi| <= y}) = alpha s^alpha (y^{2-alpha} - s^{2-alpha}) / (2 - alpha)
    const double y = 5.0;
    const double want = alpha * std::pow(s, alpha) * (std::pow(y, 2 - alpha) - std::pow(s, 2 - alpha)) / (2 - alpha);
    CHECK(exact_moment(m, MomentQuery::second_abs_below(y)) == doctest::Approx(want).epsilon(1e-13));
    CHECK(exact_moment(m, MomentQuery::second_abs_below(1.0)) == 0.0);
    // E|xi|^b = alpha s^b / (alpha - b), half of it on the negative side.
    CHECK(exact_moment(m, MomentQuery::beta_abs(1.2)) == doctest::Approx(alpha * std::pow(s, 1.2) / 0.3).epsilon(1e-13));
    CHECK(exact_moment(m, MomentQuery::beta_neg(1.2)) ==
          doctest::Approx(0.5 * alpha * std::pow(s, 1.2) / 0.3).epsilon(1e-13));
    CHECK_THROWS_AS(exact_moment(m, MomentQuery::second()), InfiniteMomentError);
    CHECK_THROWS_AS(exact_moment(m, MomentQuery::beta_abs(1.5)), InfiniteMomentError);
    CHECK(m.is_symmetric());
    CHECK(m.mean() == 0.0);
}

TEST_CASE("sample_path examples") {
    RandomStream a = RandomStream::substream(3, 0);
    RandomStream b = RandomStream::substream(3, 0);
    const Path p = sample_path(IncrementModel::rademacher(), 4, a);
    const Path q = sample_path(IncrementModel::rademacher(), 4, b);
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(std::fabs(p.increments()[i]) == 1.0);
        CHECK(p.increments()[i] == q.increments()[i]);
    }
    RandomStream c(1);
    const Path zeros = sample_path(IncrementModel::two_point_sym(1, 0), 5, c);
    for (double v : zeros.increments()) CHECK(v == 0.0);
    const Path single = sample_path(IncrementModel::finite_support({{0.5, 1.0}}), 3, c);
    CHECK(std::vector<double>(single.increments().begin(), single.increments().end()) ==
          std::vector<double>{0.5, 0.5, 0.5});
    CHECK_THROWS_AS(sample_path(IncrementModel::rademacher(), 0, c), std::invalid_argument);
}

TEST_CASE("finite-support atom frequencies converge") {
    const auto m = IncrementModel::finite_support({{-1, 0.2}, {0, 0.5}, {2, 0.3}});
    RandomStream s(2024);
    const int n = 1000000;
    int counts[3] = {0, 0, 0};
    for (int i = 0; i < n; ++i) {
        const double v = m.sample(s);
        counts[v < 0 ? 0 : (v == 0 ? 1 : 2)]++;
    }
    const double p[3] = {0.2, 0.5, 0.3};
    for (int j = 0; j < 3; ++j) {
        CHECK(std::fabs(counts[j] / double(n) - p[j]) <= 4 * std::sqrt(p[j] * (1 - p[j]) / n));
    }
}

TEST_CASE("Pareto draws: tail law and sign symmetry") {
    const auto m = IncrementModel::sym_pareto(1.2, 1.0);
    RandomStream s(7);
    const int n = 400000;
    int above2 = 0, negative = 0, below_scale = 0;
    for (int i = 0; i < n; ++i) {
        const double v = m.sample(s);
        if (std::fabs(v) > 2.0) ++above2;
        if (v < 0) ++negative;
        if (std::fabs(v) < 1.0) ++below_scale;
    }
    const double tail = std::pow(0.5, 1.2);
    CHECK(std::fabs(above2 / double(n) - tail) <= 4 * std::sqrt(tail * (1 - tail) / n));
    CHECK(std::fabs(negative / double(n) - 0.5) <= 4 * std::sqrt(0.25 / n));
    CHECK(below_scale == 0);
}

TEST_CASE("lemma_gap examples") {
    const auto rad = IncrementModel::rademacher();
    const auto ben = lemma_gap(rad, 1, 0.5, LemmaVariant::bennett());
    CHECK(ben.lhs == doctest::Approx((std::exp(0.5) + std::exp(-1.0)) / 2).epsilon(1e-14));
    CHECK(ben.rhs == doctest::Approx(std::exp(0.5 * (std::exp(0.5) - 1.5) / 0.25)).epsilon(1e-14));
    const auto cosh_gap = lemma_gap(rad, 1, 0.5, LemmaVariant::cosh());
    CHECK(cosh_gap.lhs == doctest::Approx((std::exp(0.5) + std::exp(-1.5)) / 2).epsilon(1e-14));
    CHECK(cosh_gap.rhs == 1.0);
    const auto beta = lemma_gap(rad, 1, 0, LemmaVariant::beta_power(1.5));
    CHECK(beta.lhs == doctest::Approx((1 + std::exp(-1.0)) / 2).epsilon(1e-14));
    CHECK(beta.rhs == doctest::Approx(std::exp(0.5)).epsilon(1e-14));

    const auto skewed = IncrementModel::finite_support({{-1, 0.3}, {1, 0.7}});
    CHECK_THROWS_AS(lemma_gap(skewed, 1, 0.5, LemmaVariant::bennett()), std::invalid_argument);
    CHECK_THROWS_AS(lemma_gap(skewed, 1, 0.5, LemmaVariant::cosh()), std::invalid_argument);
    CHECK_THROWS_AS(lemma_gap(IncrementModel::sym_pareto(2, 1), 1, 0.5, LemmaVariant::cosh()), std::invalid_argument);
}

TEST_CASE("randomized model helpers") {
    RandomStream s(9);
    for (int i = 0; i < 200; ++i) {
        const auto m = random_finite_model(s, 5, 5.0);
        CHECK(m.atoms().size() >= 1);
        CHECK(m.atoms().size() <= 5);
        for (const auto& a : m.atoms()) CHECK(std::fabs(a.value) <= 5.0);
        CHECK(nonpositive_mean_version(m).mean() <= 1e-12);
        CHECK(symmetrized(m).is_symmetric());
    }
}

TEST_CASE("lemma suite holds on a small run") {
    LemmaSuiteOptions o;
    o.models = 100;
    const auto r = run_lemma_suite(o);
    CHECK(r.violations.empty());
    CHECK(r.checks == 100 * 5 * (4 + 4 + 3));
    CHECK(r.max_ratio <= 1.0 + 1e-12);
}

TEST_CASE("model JSON round trip") {
    using nlohmann::json;
    const std::vector<json> docs{
        json::parse(R"({"kind": "rademacher"})"),
        json::parse(R"({"kind": "two_point_sym", "y": 1, "p": 0.02})"),
        json::parse(R"({"kind": "two_point_sym", "y": 1, "v": 1, "n": 100, "id": "tp"})"),
        json::parse(R"({"kind": "finite_support", "atoms": [[-2, 0.25], [1, 0.75]]})"),
        json::parse(R"({"kind": "bounded_supermg", "a": 1, "atoms": [[-1, 0.6], [1, 0.4]]})"),
        json::parse(R"({"kind": "sym_pareto", "alpha": 1.2, "scale": 1})"),
    };
    for (const auto& d : docs) {
        const auto m = model_from_json(d);
        const auto again = model_from_json(model_to_json(m));
        CHECK(again.kind() == m.kind());
        CHECK(again.atoms().size() == m.atoms().size());
    }
    CHECK(model_id_from_json(docs[2]) == "tp");
    CHECK(model_id_from_json(docs[0]) == "rademacher");
    CHECK(model_from_json(docs[2]).two_point()->p == doctest::Approx(0.01).epsilon(1e-15));
    CHECK_THROWS_AS(model_from_json(json::parse(R"({"kind": "rademacher", "extra": 1})")), std::invalid_argument);
    CHECK_THROWS_AS(model_from_json(json::parse(R"({"kind": "unknown"})")), std::invalid_argument);
    CHECK_THROWS_AS(model_from_json(json::parse(R"({"kind": "two_point_sym", "y": 1})")), std::invalid_argument);
}
