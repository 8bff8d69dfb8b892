#include <catch_amalgamated.hpp>

#include <ppf/random_variable.hpp>
#include <ppf/random_scenarios.hpp>

#include <cmath>

using Catch::Approx;
using ppf::DiscreteRandomVariable;

TEST_CASE("expectation of simple variables")
{
    const auto d = DiscreteRandomVariable::degenerate(0.7);
    CHECK(ppf::expectation(d, [](double x) { return x * x; }) == Approx(0.49).margin(1e-16));
    const DiscreteRandomVariable sym({{-1, 0.5}, {1, 0.5}});
    CHECK(ppf::mean(sym) == 0.0);
    const DiscreteRandomVariable x({{0.05, 0.5}, {0.11, 0.5}});
    CHECK(ppf::second_moment_about(x, 0.02) == Approx(0.5 * 0.03 * 0.03 + 0.5 * 0.09 * 0.09).margin(1e-17));
    CHECK(ppf::second_moment_about(x, 0.02) == Approx(0.0045).margin(1e-15));
}

TEST_CASE("random variables are validated")
{
    CHECK_THROWS_AS(DiscreteRandomVariable(std::vector<ppf::Atom>{}), ppf::ValidationError);
    CHECK_THROWS_AS(DiscreteRandomVariable({{0, 0.5}, {1, 0.6}}), ppf::ValidationError);
    CHECK_THROWS_AS(DiscreteRandomVariable({{0, -0.5}, {1, 1.5}}), ppf::ValidationError);
    CHECK_THROWS_AS(DiscreteRandomVariable({{std::nan(""), 1.0}}), ppf::ValidationError);
    CHECK_NOTHROW(DiscreteRandomVariable({{0, 0.25}, {1, 0.75}}));
}

TEST_CASE("expectation is linear in h")
{
    ppf::ScenarioGenerator gen(3);
    for (int i = 0; i < 200; ++i) {
        const auto x = gen.discrete(gen.integer(1, 6), -2, 2);
        const double a = gen.uniform(-5, 5), b = gen.uniform(-5, 5);
        auto h = [](double v) { return std::sin(v); };
        auto g = [](double v) { return v * v * v; };
        const double lhs = ppf::expectation(x, [&](double v) { return a * h(v) + b * g(v); });
        const double rhs = a * ppf::expectation(x, h) + b * ppf::expectation(x, g);
        REQUIRE(lhs == Approx(rhs).margin(1e-12));
    }
}

TEST_CASE("normal discretization matches mean and variance")
{
    const auto d = ppf::discretize_normal(0.1, 0.0, 3);
    REQUIRE(d.size() == 1);
    CHECK(d.atoms()[0].value == 0.1);

    const auto z = ppf::discretize_normal(0, 1, 8);
    CHECK(std::abs(ppf::mean(z)) <= 1e-12);
    CHECK(ppf::second_moment_about(z, 0) == Approx(1.0).margin(1e-10));

    for (int n : {2, 3, 5, 9, 20, 40}) {
        const auto x = ppf::discretize_normal(-0.3, 2.5, n);
        CHECK(ppf::mean(x) == Approx(-0.3).margin(1e-12));
        CHECK(ppf::second_moment_about(x, -0.3) == Approx(6.25).margin(1e-10 * 6.25));
    }
    // n nodes integrate polynomials of degree 2n - 1: fourth moment 3 sigma^4 for n >= 3.
    const auto x = ppf::discretize_normal(0, 1, 3);
    CHECK(ppf::expectation(x, [](double v) { return v * v * v * v; }) == Approx(3.0).margin(1e-12));

    CHECK_THROWS_AS(ppf::discretize_normal(0, -1, 3), ppf::DomainError);
    CHECK_THROWS_AS(ppf::discretize_normal(0, 1, 0), ppf::InputError);
}

TEST_CASE("scaling about a center preserves the mean when centered on it")
{
    const DiscreteRandomVariable x({{-1, 0.2}, {0.5, 0.5}, {2, 0.3}});
    const auto y = ppf::scale_about(x, 0.1, ppf::mean(x));
    CHECK(ppf::mean(y) == Approx(ppf::mean(x)).margin(1e-15));
    CHECK(ppf::second_moment_about(y, ppf::mean(y)) ==
          Approx(0.01 * ppf::second_moment_about(x, ppf::mean(x))).margin(1e-15));
}
