#pragma once

// Randomized property checks runnable from the command line.

#include <ppf/ppf.hpp>
#include <ppf/random_scenarios.hpp>

#include <cmath>
#include <cstdint>
#include <functional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace ppf::selftest {

struct Check {
    std::string name;
    std::function<std::string(ScenarioGenerator&, int)> run; // empty string on success
};

inline std::string fmt(double x)
{
    std::ostringstream s;
    s.precision(17);
    s << x;
    return s.str();
}

inline std::vector<Check> checks()
{
    std::vector<Check> out;

    out.push_back({"mean linearity", [](ScenarioGenerator& g, int count) -> std::string {
        for (int i = 0; i < count; ++i) {
            const WeightingFunction f = g.power_weighting();
            const double l1 = g.uniform(-3, 3), l2 = g.uniform(-3, 3);
            const FuzzyNumber a = g.fuzzy(-1, 1, 0, 1), b = g.fuzzy(-1, 1, 0, 1);
            const double lhs = expected_value(f, linear_combination({{l1, a}, {l2, b}}));
            const double rhs = l1 * expected_value(f, a) + l2 * expected_value(f, b);
            if (std::abs(lhs - rhs) > 1e-10)
                return "E(f, l1 A + l2 B) = " + fmt(lhs) + " vs " + fmt(rhs);
        }
        return {};
    }});

    out.push_back({"covariance identities", [](ScenarioGenerator& g, int count) -> std::string {
        for (int i = 0; i < count; ++i) {
            const WeightingFunction f = g.power_weighting();
            const FuzzyNumber a = g.fuzzy(-1, 1, 0, 1), b = g.fuzzy(-1, 1, 0, 1);
            const double cov = covariance(f, a, b);
            const double alt = cross_moment(f, a, b) - expected_value(f, a) * expected_value(f, b);
            if (std::abs(cov - alt) > 1e-10)
                return "Cov = " + fmt(cov) + " vs cross moment form " + fmt(alt);
            if (std::abs(cov) > std::sqrt(variance(f, a) * variance(f, b)) + 1e-9)
                return "covariance exceeds the Cauchy-Schwarz bound";
        }
        return {};
    }});

    out.push_back({"zero excess gives zero allocation", [](ScenarioGenerator& g, int count) -> std::string {
        for (int i = 0; i < count; ++i) {
            const ModelSpec m = g.with_excess(g.cara_possibilistic(), 0.0);
            const double a = solve_exact(m).alpha_exact;
            if (std::abs(a) > 1e-8)
                return "alpha_exact = " + fmt(a) + " with E(f,A) = r";
        }
        return {};
    }});

    out.push_back({"quadratic utility exactness", [](ScenarioGenerator& g, int count) -> std::string {
        for (int i = 0; i < count; ++i) {
            for (ModelTag tag : {ModelTag::possibilistic, ModelTag::fuzzy_background, ModelTag::random_background,
                                 ModelTag::random_investment}) {
                const ModelSpec m = g.quadratic(tag);
                const Solution s = solve_exact(m);
                if (std::abs(s.alpha_exact - s.alpha_approx) > 1e-7 * (1 + std::abs(s.alpha_exact)))
                    return short_name(tag) + ": alpha_exact " + fmt(s.alpha_exact) + " vs alpha_approx " +
                           fmt(s.alpha_approx);
            }
        }
        return {};
    }});

    out.push_back({"collapse to the background-free model", [](ScenarioGenerator& g, int count) -> std::string {
        for (int i = 0; i < count; ++i) {
            const ModelSpec m1 = g.cara_possibilistic();
            const FuzzyNumber& a = *m1.fuzzy_investment();
            const ModelSpec m2 = ModelSpec::fuzzy_background(m1.market, a, FuzzyNumber::point(0), m1.u, m1.f);
            const ModelSpec m3 =
                ModelSpec::random_background(m1.market, a, DiscreteRandomVariable::degenerate(0), m1.u, m1.f);
            const Solution s1 = solve_exact(m1);
            for (const ModelSpec* m : {&m2, &m3}) {
                const Solution s = solve_exact(*m);
                if (std::abs(s.alpha_exact - s1.alpha_exact) > 1e-10 ||
                    std::abs(s.alpha_approx - s1.alpha_approx) > 1e-10)
                    return short_name(m->tag) + " differs from M1";
            }
        }
        return {};
    }});

    out.push_back({"ordering condition", [](ScenarioGenerator& g, int count) -> std::string {
        for (int i = 0; i < count; ++i) {
            for (ModelTag tag : {ModelTag::fuzzy_background, ModelTag::random_background}) {
                const ModelSpec m = g.quadratic(tag);
                const double with_bg = solve_exact(m).alpha_exact;
                const double without = solve_exact(without_background(m)).alpha_exact;
                const OrderingCondition oc = ordering_condition(m);
                const bool tie = std::abs(with_bg - without) <= 1e-7 * (1 + std::abs(without));
                if (!tie && oc.predicted != (with_bg <= without))
                    return short_name(tag) + ": predicted " + (oc.predicted ? "lower" : "higher") +
                           " allocation, got " + fmt(with_bg) + " vs " + fmt(without);
            }
        }
        return {};
    }});

    return out;
}

/// Runs every check, printing one PASS/FAIL line each; returns true when all pass.
inline bool run_all(std::uint64_t seed, int count, std::ostream& out)
{
    bool ok = true;
    for (const Check& c : checks()) {
        ScenarioGenerator g(seed);
        std::string failure;
        try {
            failure = c.run(g, count);
        } catch (const std::exception& e) {
            failure = std::string("exception: ") + e.what();
        }
        out << (failure.empty() ? "PASS " : "FAIL ") << c.name;
        if (!failure.empty())
            out << ": " << failure;
        out << '\n';
        ok = ok && failure.empty();
    }
    out << "seed " << seed << ", " << count << " instances per check\n";
    return ok;
}

} // namespace ppf::selftest
