#include <catch_amalgamated.hpp>

#include "oracles.hpp"

#include <ppf/indicators.hpp>
#include <ppf/random_scenarios.hpp>

#include <cmath>

using Catch::Approx;
using ppf::FuzzyNumber;
using ppf::WeightingFunction;

TEST_CASE("weighting validation")
{
    const auto p1 = ppf::validate_weighting(WeightingFunction::power(1), 101);
    CHECK(p1.ok());
    CHECK(p1.integral == Approx(1.0).margin(1e-12));
    CHECK(ppf::validate_weighting(WeightingFunction::uniform(), 2).ok());

    const auto bad = ppf::validate_weighting([](double g) { return 3 * g; }, 101);
    CHECK_FALSE(bad.ok());
    CHECK_FALSE(bad.normalized);
    CHECK(bad.nonnegative);
    CHECK(bad.monotone);
    CHECK(bad.integral == Approx(1.5).margin(1e-12));

    const auto decreasing = ppf::validate_weighting([](double g) { return 2 - 2 * g; }, 101);
    CHECK_FALSE(decreasing.monotone);
    CHECK(decreasing.normalized);

    const auto negative = ppf::validate_weighting([](double g) { return 4 * g - 1; }, 101);
    CHECK_FALSE(negative.nonnegative);

    CHECK_THROWS_AS(ppf::validate_weighting([](double) { return 1.0; }, 1), ppf::InputError);
    CHECK_THROWS_AS(WeightingFunction::power(-0.5), ppf::ValidationError);
}

TEST_CASE("indicators reject invalid weightings")
{
    const auto f = WeightingFunction::custom([](double g) { return 3 * g; }, "3g");
    CHECK_FALSE(f.valid());
    const auto a = FuzzyNumber::triangular(0, 1, 1);
    CHECK_THROWS_AS(ppf::expected_value(f, a), ppf::ValidationError);
    CHECK_THROWS_AS(ppf::variance(f, a), ppf::ValidationError);
    CHECK_THROWS_AS(ppf::covariance(f, a, a), ppf::ValidationError);
}

TEST_CASE("expected value matches hand-derived closed forms")
{
    const auto f = WeightingFunction::power(1);
    CHECK(ppf::expected_value(f, FuzzyNumber::triangular(1, 0.6, 0.6)) == Approx(1.0).margin(1e-15));
    CHECK(ppf::expected_value(f, FuzzyNumber::triangular(0, 0, 6)) == Approx(1.0).margin(1e-14));
    CHECK(ppf::expected_value(WeightingFunction::uniform(), FuzzyNumber::point(2.5)) == 2.5);

    for (double n : {0.0, 1.0, 2.0, 3.0}) {
        const oracle::Shape s{0.3, 0.7, 0.25, 0.9};
        const auto a = FuzzyNumber::trapezoidal(s.core_left, s.core_right, s.left, s.right);
        CHECK(ppf::expected_value(WeightingFunction::power(n), a) == Approx(oracle::mean_power(n, s)).margin(1e-14));
    }
}

TEST_CASE("variance and covariance match hand-derived closed forms")
{
    const auto f = WeightingFunction::power(1);
    CHECK(ppf::variance(f, FuzzyNumber::triangular(2, 0.6, 0.6)) == Approx(0.06).margin(1e-15));
    CHECK(ppf::variance(f, FuzzyNumber::triangular(0.08, 0.03, 0.03)) == Approx(0.00015).margin(1e-17));
    CHECK(ppf::variance(f, FuzzyNumber::point(4)) == 0.0);
    CHECK(ppf::covariance(f, FuzzyNumber::triangular(0, 1, 1), FuzzyNumber::triangular(0, 2, 2)) ==
          Approx(1.0 / 3.0).margin(1e-15));
}

TEST_CASE("indicators agree with an independent adaptive integrator")
{
    ppf::ScenarioGenerator gen(5);
    for (int i = 0; i < 50; ++i) {
        const double n = gen.integer(0, 3);
        const oracle::Shape sa{gen.uniform(-1, 1), 0, gen.uniform(0, 1), gen.uniform(0, 1)};
        const oracle::Shape sb{gen.uniform(-1, 1), 0, gen.uniform(0, 1), gen.uniform(0, 1)};
        oracle::Shape ta = sa, tb = sb;
        ta.core_right = ta.core_left + gen.uniform(0, 0.5);
        tb.core_right = tb.core_left;
        const auto a = FuzzyNumber::trapezoidal(ta.core_left, ta.core_right, ta.left, ta.right);
        const auto b = FuzzyNumber::triangular(tb.core_left, tb.left, tb.right);
        const auto f = WeightingFunction::power(n);
        CHECK(ppf::expected_value(f, a) == Approx(oracle::mean(n, ta)).margin(1e-12));
        CHECK(ppf::variance(f, a) == Approx(oracle::variance(n, ta)).margin(1e-12));
        CHECK(ppf::covariance(f, a, b) == Approx(oracle::covariance(n, ta, tb)).margin(1e-12));
    }
}

TEST_CASE("mean lies in the support; variance is non-negative")
{
    ppf::ScenarioGenerator gen(17);
    for (int i = 0; i < 300; ++i) {
        const auto f = gen.power_weighting();
        const auto a = gen.fuzzy(-2, 2, 0, 1.5);
        const double e = ppf::expected_value(f, a);
        REQUIRE(e >= a.support().lower - 1e-15);
        REQUIRE(e <= a.support().upper + 1e-15);
        REQUIRE(ppf::variance(f, a) >= 0.0);
    }
}

TEST_CASE("covariance identities on randomized inputs")
{
    ppf::ScenarioGenerator gen(23);
    for (int i = 0; i < 300; ++i) {
        const auto f = gen.power_weighting();
        const auto a = gen.fuzzy(-2, 2, 0, 1.5);
        const auto b = gen.fuzzy(-2, 2, 0, 1.5);
        const double ea = ppf::expected_value(f, a), eb = ppf::expected_value(f, b);
        const double cov = ppf::covariance(f, a, b);
        REQUIRE(cov == Approx(ppf::cross_moment(f, a, b) - ea * eb).margin(1e-10));
        REQUIRE(ppf::variance(f, a) == Approx(ppf::cross_moment(f, a, a) - ea * ea).margin(1e-10));
        REQUIRE(cov == Approx(ppf::covariance(f, b, a)).margin(1e-15));
        REQUIRE(ppf::covariance(f, a, a) == Approx(ppf::variance(f, a)).margin(1e-15));
        REQUIRE(ppf::covariance(f, a, FuzzyNumber::point(gen.uniform(-3, 3))) == 0.0);
        REQUIRE(std::abs(cov) <= std::sqrt(ppf::variance(f, a) * ppf::variance(f, b)) + 1e-9);
    }
}

TEST_CASE("the mean is linear")
{
    ppf::ScenarioGenerator gen(29);
    for (int i = 0; i < 300; ++i) {
        const auto f = gen.power_weighting();
        std::vector<std::pair<double, FuzzyNumber>> terms;
        double expect = 0.0;
        const int k = gen.integer(1, 4);
        for (int j = 0; j < k; ++j) {
            terms.emplace_back(gen.uniform(-3, 3), gen.fuzzy(-2, 2, 0, 1.5));
            expect += terms.back().first * ppf::expected_value(f, terms.back().second);
        }
        REQUIRE(ppf::expected_value(f, ppf::linear_combination(terms)) == Approx(expect).margin(1e-10));
    }
}

TEST_CASE("sampled numbers give the same indicators as the equivalent parametric shape")
{
    const auto tri = FuzzyNumber::triangular(0.5, 0.2, 0.7);
    const auto s = FuzzyNumber::sampled({{0.0, 0.3, 1.2}, {0.5, 0.4, 0.85}, {1.0, 0.5, 0.5}});
    for (double n : {0.0, 1.0, 2.5}) {
        const auto f = WeightingFunction::power(n);
        CHECK(ppf::expected_value(f, s) == Approx(ppf::expected_value(f, tri)).margin(1e-12));
        CHECK(ppf::variance(f, s) == Approx(ppf::variance(f, tri)).margin(1e-12));
    }
}

TEST_CASE("composite Simpson agrees with Gauss-Legendre")
{
    const ppf::QuadratureConfig simpson{200, ppf::QuadratureRule::composite_simpson, 1e-9};
    const auto a = FuzzyNumber::trapezoidal(0.1, 0.4, 0.3, 0.2);
    const auto f = WeightingFunction::power(2);
    CHECK(ppf::expected_value(f, a, simpson) == Approx(ppf::expected_value(f, a)).margin(1e-12));
    CHECK(ppf::variance(f, a, simpson) == Approx(ppf::variance(f, a)).margin(1e-12));
}
