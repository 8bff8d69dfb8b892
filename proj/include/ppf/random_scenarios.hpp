#pragma once

// Seeded generators of randomized inputs for property checks (the test
// suites and the `selftest` command draw from the same generators).

#include <ppf/indicators.hpp>
#include <ppf/portfolio.hpp>

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace ppf {

class ScenarioGenerator {
public:
    explicit ScenarioGenerator(std::uint64_t seed) : rng_(seed) {}

    std::mt19937_64& engine() { return rng_; }

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
    bool coin() { return integer(0, 1) == 1; }

    FuzzyNumber triangular(double center_lo, double center_hi, double width_lo, double width_hi)
    {
        return FuzzyNumber::triangular(uniform(center_lo, center_hi), uniform(width_lo, width_hi),
                                       uniform(width_lo, width_hi));
    }

    FuzzyNumber trapezoidal(double center_lo, double center_hi, double width_lo, double width_hi)
    {
        const double a = uniform(center_lo, center_hi);
        const double core = uniform(0.0, 0.5 * (width_hi - width_lo) + width_lo);
        return FuzzyNumber::trapezoidal(a, a + core, uniform(width_lo, width_hi), uniform(width_lo, width_hi));
    }

    /// Triangular or trapezoidal with equal probability.
    FuzzyNumber fuzzy(double center_lo, double center_hi, double width_lo, double width_hi)
    {
        return coin() ? triangular(center_lo, center_hi, width_lo, width_hi)
                      : trapezoidal(center_lo, center_hi, width_lo, width_hi);
    }

    /// n atoms with random values in [lo, hi] and random positive probabilities.
    DiscreteRandomVariable discrete(int n, double lo, double hi)
    {
        std::vector<Atom> atoms;
        double total = 0.0;
        for (int i = 0; i < n; ++i) {
            atoms.push_back({uniform(lo, hi), uniform(0.1, 1.0)});
            total += atoms.back().probability;
        }
        double sum = 0.0;
        for (int i = 0; i + 1 < n; ++i) {
            atoms[i].probability /= total;
            sum += atoms[i].probability;
        }
        atoms.back().probability = 1.0 - sum;
        return DiscreteRandomVariable(atoms);
    }

    /// Integer power weighting (n + 1) gamma^n, n in [0, max_power].
    WeightingFunction power_weighting(int max_power = 3) { return WeightingFunction::power(integer(0, max_power)); }

    // -- models ---------------------------------------------------------------

    /// M1 with CARA utility whose investment support straddles r, so an interior optimum exists.
    ModelSpec cara_possibilistic()
    {
        const double r = uniform(0.0, 0.05);
        const WeightingFunction f = power_weighting();
        const double excess = uniform(0.005, 0.06);
        FuzzyNumber a = fuzzy(0.0, 0.0, 0.08, 0.3);
        a = translate(a, r + excess - expected_value(f, a));
        const MarketSpec market = MarketSpec::from_initial(uniform(0.5, 2.0), r);
        return ModelSpec::possibilistic(market, a, UtilityFunction::cara(uniform(0.5, 5.0)), f);
    }

    /// A model of the given kind with quadratic utility, drawn until the
    /// closed-form allocations with and without background keep every
    /// reachable wealth inside the region where u' > 0.
    ModelSpec quadratic(ModelTag tag)
    {
        for (;;) {
            ModelSpec m = draw_quadratic(tag);
            if (reachable(m))
                return m;
        }
    }

    /// M1 with the investment translated so that E(f, A) = r + excess.
    ModelSpec with_excess(const ModelSpec& m, double excess) const
    {
        ModelSpec out = m;
        const FuzzyNumber& a = *m.fuzzy_investment();
        out.investment = translate(a, m.market.r + excess - expected_value(m.f, a, m.q));
        return out;
    }

private:
    ModelSpec draw_quadratic(ModelTag tag)
    {
        const double r = uniform(0.0, 0.05);
        const double w = uniform(1.0, 2.0);
        const double k = uniform(3.0, 6.0);
        const UtilityFunction u = UtilityFunction::quadratic(1.0 / (2.0 * k * w));
        const MarketSpec market = MarketSpec::from_future(w, r);
        const WeightingFunction f = power_weighting();
        const double excess = uniform(-0.05, 0.05);

        auto investment_a = [&] {
            FuzzyNumber a = fuzzy(0.0, 0.0, 0.05, 0.3);
            return translate(a, r + excess - expected_value(f, a));
        };
        auto background_b = [&] { return fuzzy(-0.2, 0.2, 0.0, 0.2); };
        switch (tag) {
        case ModelTag::possibilistic:
            return ModelSpec::possibilistic(market, investment_a(), u, f);
        case ModelTag::fuzzy_background:
            return ModelSpec::fuzzy_background(market, investment_a(), background_b(), u, f);
        case ModelTag::random_background:
            return ModelSpec::random_background(market, investment_a(), discrete(integer(1, 5), -0.2, 0.2), u, f);
        case ModelTag::random_investment: {
            const DiscreteRandomVariable x = discrete(integer(2, 5), -0.2, 0.3);
            return ModelSpec::random_investment(market, x, background_b(), u, f);
        }
        }
        return ModelSpec{};
    }

    static bool inside(const ModelSpec& m, double alpha)
    {
        // alpha = 0 is always feasible; stay 5% short of each finite bound.
        const Interval feasible = feasible_alpha(m);
        return alpha > 0.95 * feasible.lower && alpha < 0.95 * feasible.upper;
    }

    static bool reachable(const ModelSpec& m)
    {
        try {
            validate(m);
            if (!inside(m, alpha_approx(m)))
                return false;
            if (m.tag != ModelTag::possibilistic) {
                const ModelSpec base = without_background(m);
                validate(base);
                if (!inside(base, alpha_approx(base)))
                    return false;
            }
            return true;
        } catch (const Error&) {
            return false;
        }
    }

    std::mt19937_64 rng_;
};

} // namespace ppf
