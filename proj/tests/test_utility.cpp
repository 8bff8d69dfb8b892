#include <catch_amalgamated.hpp>

#include <ppf/utility.hpp>

#include <cmath>

using Catch::Approx;
using ppf::UtilityFunction;

TEST_CASE("Arrow-Pratt index of the built-in families")
{
    for (double w : {-3.0, 0.0, 1.0, 50.0})
        CHECK(ppf::arrow_pratt(UtilityFunction::cara(2), w) == Approx(2.0).epsilon(1e-14));
    CHECK(ppf::arrow_pratt(UtilityFunction::crra(3), 2.0) == Approx(1.5).epsilon(1e-14));
    CHECK(ppf::arrow_pratt(UtilityFunction::log(), 4.0) == Approx(0.25).epsilon(1e-14));
    // quadratic: 2b / (1 - 2bw)
    CHECK(ppf::arrow_pratt(UtilityFunction::quadratic(0.1), 1.0) == Approx(0.2 / 0.8).epsilon(1e-14));
}

TEST_CASE("Arrow-Pratt index outside the domain is an error")
{
    CHECK_THROWS_AS(ppf::arrow_pratt(UtilityFunction::log(), 0.0), ppf::DomainError);
    CHECK_THROWS_AS(ppf::arrow_pratt(UtilityFunction::crra(2), -1.0), ppf::DomainError);
    CHECK_THROWS_AS(ppf::arrow_pratt(UtilityFunction::quadratic(0.5), 1.0), ppf::DomainError);
}

TEST_CASE("family parameters are validated")
{
    CHECK_THROWS_AS(UtilityFunction::cara(0), ppf::ValidationError);
    CHECK_THROWS_AS(UtilityFunction::crra(1), ppf::ValidationError);
    CHECK_THROWS_AS(UtilityFunction::crra(-2), ppf::ValidationError);
    CHECK_THROWS_AS(UtilityFunction::quadratic(0), ppf::ValidationError);
}

TEST_CASE("risk-aversion comparison")
{
    const std::vector<double> grid{0.5, 1, 2, 10};
    CHECK(ppf::more_risk_averse(UtilityFunction::cara(2), UtilityFunction::cara(1), grid));
    CHECK_FALSE(ppf::more_risk_averse(UtilityFunction::cara(1), UtilityFunction::cara(2), grid));
    CHECK(ppf::more_risk_averse(UtilityFunction::log(), UtilityFunction::log(), grid));
    CHECK_FALSE(ppf::more_risk_averse(UtilityFunction::cara(1), UtilityFunction::crra(3), {1, 10}));
    CHECK_FALSE(ppf::more_risk_averse(UtilityFunction::crra(3), UtilityFunction::cara(1), {1, 10}));
    CHECK_THROWS_AS(ppf::more_risk_averse(UtilityFunction::cara(1), UtilityFunction::cara(1), {}), ppf::InputError);
}

TEST_CASE("CARA index is constant; CRRA and log are strictly decreasing")
{
    std::vector<double> grid;
    for (int i = 1; i <= 40; ++i)
        grid.push_back(0.25 * i);
    for (std::size_t i = 1; i < grid.size(); ++i) {
        CHECK(ppf::arrow_pratt(UtilityFunction::cara(3), grid[i]) == Approx(3.0).epsilon(1e-14));
        CHECK(ppf::arrow_pratt(UtilityFunction::crra(2.5), grid[i]) < ppf::arrow_pratt(UtilityFunction::crra(2.5), grid[i - 1]));
        CHECK(ppf::arrow_pratt(UtilityFunction::log(), grid[i]) < ppf::arrow_pratt(UtilityFunction::log(), grid[i - 1]));
    }
    CHECK(UtilityFunction::crra(2).decreasing_absolute_risk_aversion());
    CHECK(UtilityFunction::log().decreasing_absolute_risk_aversion());
    CHECK_FALSE(UtilityFunction::cara(2).decreasing_absolute_risk_aversion());
}

TEST_CASE("derivatives of the built-in families pass the finite-difference check")
{
    CHECK(ppf::check_derivatives(UtilityFunction::cara(1), {0, 1, 2}).ok());
    CHECK(ppf::check_derivatives(UtilityFunction::crra(3), {0.1, 1, 7}).ok());
    CHECK(ppf::check_derivatives(UtilityFunction::crra(0.5), {0.1, 1, 7}).ok());
    CHECK(ppf::check_derivatives(UtilityFunction::log(), {1e-3, 1, 1e3}).ok());
    CHECK(ppf::check_derivatives(UtilityFunction::quadratic(0.1), {-4, 0, 2, 4.9}).ok());
}

TEST_CASE("a wrong second derivative is reported with its location")
{
    const auto bad = UtilityFunction::custom([](double w) { return -std::exp(-w); }, [](double w) { return std::exp(-w); },
                                             [](double w) { return -2 * std::exp(-w); }, {}, "bad");
    const auto rep = ppf::check_derivatives(bad, {0.5, 1.5});
    REQUIRE_FALSE(rep.ok());
    CHECK(rep.findings.front().wealth == 0.5);
    CHECK(rep.findings.front().problem.find("u''") != std::string::npos);

    const auto convex = UtilityFunction::custom([](double w) { return w * w; }, [](double w) { return 2 * w; },
                                                [](double) { return 2.0; }, {0, 10}, "convex");
    const auto rep2 = ppf::check_derivatives(convex, {1.0});
    REQUIRE_FALSE(rep2.ok());
    CHECK(rep2.findings.back().problem == "u'' is not negative");
    CHECK_FALSE(ppf::check_derivatives(UtilityFunction::log(), {-1.0}).ok());
}
