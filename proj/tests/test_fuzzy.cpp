#include <catch_amalgamated.hpp>

#include <ppf/fuzzy_number.hpp>
#include <ppf/random_scenarios.hpp>

using Catch::Approx;
using ppf::FuzzyNumber;

namespace {

void check_interval(ppf::Interval got, double lo, double hi, double tol = 1e-15)
{
    CHECK(got.lower == Approx(lo).margin(tol));
    CHECK(got.upper == Approx(hi).margin(tol));
}

} // namespace

TEST_CASE("level sets of the built-in shapes")
{
    check_interval(ppf::level_set(FuzzyNumber::triangular(1, 0.6, 0.6), 0.0), 0.4, 1.6);
    for (double g : {0.0, 0.3, 1.0})
        check_interval(ppf::level_set(FuzzyNumber::point(3), g), 3, 3, 0);
    check_interval(ppf::level_set(FuzzyNumber::triangular(0.08, 0.03, 0.03), 0.5), 0.065, 0.095);
    check_interval(FuzzyNumber::trapezoidal(1, 2, 0.5, 1).level_set(0.5), 0.75, 2.5);
}

TEST_CASE("level_set rejects gamma outside [0,1]")
{
    const auto a = FuzzyNumber::triangular(0, 1, 1);
    CHECK_THROWS_AS(a.level_set(-0.01), ppf::DomainError);
    CHECK_THROWS_AS(a.level_set(1.01), ppf::DomainError);
    CHECK_THROWS_AS(a.level_set(std::nan("")), ppf::DomainError);
}

TEST_CASE("sampled numbers interpolate linearly between rows")
{
    const auto a = FuzzyNumber::sampled({{0.0, 0.0, 4.0}, {0.5, 1.0, 3.0}, {1.0, 2.0, 2.0}});
    check_interval(a.level_set(0.25), 0.5, 3.5);
    check_interval(a.level_set(0.75), 1.5, 2.5);
    check_interval(a.support(), 0.0, 4.0);
    check_interval(a.core(), 2.0, 2.0);
}

TEST_CASE("sampled numbers are validated")
{
    using Rows = std::vector<ppf::LevelRow>;
    CHECK_THROWS_AS(FuzzyNumber::sampled(Rows{{0.0, 0, 1}}), ppf::ValidationError);
    CHECK_THROWS_AS(FuzzyNumber::sampled(Rows{{0.1, 0, 1}, {1.0, 0.5, 0.5}}), ppf::ValidationError);
    CHECK_THROWS_AS(FuzzyNumber::sampled(Rows{{0.0, 0, 1}, {0.5, -0.1, 0.9}, {1.0, 0.5, 0.5}}), ppf::ValidationError);
    CHECK_THROWS_AS(FuzzyNumber::sampled(Rows{{0.0, 0, 1}, {0.5, 0.1, 1.1}, {1.0, 0.5, 0.5}}), ppf::ValidationError);
    CHECK_THROWS_AS(FuzzyNumber::sampled(Rows{{0.0, 0, 1}, {1.0, 0.6, 0.4}}), ppf::ValidationError);
    CHECK_THROWS_AS(FuzzyNumber::sampled(Rows{{0.0, 0, 1}, {0.0, 0, 1}, {1.0, 0.5, 0.5}}), ppf::ValidationError);
}

TEST_CASE("parametric shapes reject negative widths and non-finite values")
{
    CHECK_THROWS_AS(FuzzyNumber::triangular(0, -1, 1), ppf::ValidationError);
    CHECK_THROWS_AS(FuzzyNumber::trapezoidal(2, 1, 1, 1), ppf::ValidationError);
    CHECK_THROWS_AS(FuzzyNumber::point(std::numeric_limits<double>::infinity()), ppf::ValidationError);
}

TEST_CASE("trapezoid with a single-point core collapses to a triangle")
{
    const auto t = FuzzyNumber::trapezoidal(1, 1, 0.2, 0.3);
    CHECK(t.kind() == ppf::FuzzyKind::triangular);
    CHECK(t == FuzzyNumber::triangular(1, 0.2, 0.3));
}

TEST_CASE("linear combinations follow the endpoint rules")
{
    const auto sum = ppf::linear_combination({{1.0, FuzzyNumber::triangular(1, 0.2, 0.2)},
                                              {1.0, FuzzyNumber::triangular(2, 0.3, 0.3)}});
    for (double g : {0.0, 0.4, 1.0}) {
        const auto expect = FuzzyNumber::triangular(3, 0.5, 0.5).level_set(g);
        check_interval(sum.level_set(g), expect.lower, expect.upper, 1e-15);
    }
    const auto neg = ppf::linear_combination({{-1.0, FuzzyNumber::triangular(1, 0.2, 0.4)}});
    CHECK(neg.core().lower == Approx(-1.0));
    CHECK(neg.widths().first == Approx(0.4));
    CHECK(neg.widths().second == Approx(0.2));
    const auto zero = ppf::linear_combination({{0.0, FuzzyNumber::triangular(5, 1, 2)}});
    CHECK(zero.kind() == ppf::FuzzyKind::point);
    check_interval(zero.support(), 0, 0, 0);
    CHECK_THROWS_AS(ppf::linear_combination(std::span<const std::pair<double, FuzzyNumber>>{}), ppf::InputError);
}

TEST_CASE("linear combinations with sampled terms use the union grid")
{
    const auto s = FuzzyNumber::sampled({{0.0, 0.0, 4.0}, {0.5, 1.0, 3.0}, {1.0, 2.0, 2.0}});
    const auto t = FuzzyNumber::triangular(1, 1, 1);
    const auto c = ppf::linear_combination({{2.0, s}, {-1.0, t}});
    for (double g : {0.0, 0.1, 0.5, 0.77, 1.0}) {
        const auto ls = s.level_set(g), lt = t.level_set(g);
        check_interval(c.level_set(g), 2 * ls.lower - lt.upper, 2 * ls.upper - lt.lower, 1e-14);
    }
}

TEST_CASE("level sets are nested on randomized shapes")
{
    ppf::ScenarioGenerator gen(11);
    for (int i = 0; i < 200; ++i) {
        const auto a = gen.fuzzy(-1, 1, 0, 1);
        ppf::Interval prev = a.level_set(0.0);
        for (int k = 1; k <= 50; ++k) {
            const auto cur = a.level_set(k / 50.0);
            REQUIRE(cur.lower >= prev.lower - 1e-15);
            REQUIRE(cur.upper <= prev.upper + 1e-15);
            REQUIRE(cur.lower <= cur.upper + 1e-15);
            prev = cur;
        }
    }
}
