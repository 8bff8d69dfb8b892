#pragma once

#include <ppf/error.hpp>

#include <cmath>
#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace ppf {

enum class QuadratureRule { gauss_legendre, composite_simpson };

inline std::string to_string(QuadratureRule rule)
{
    return rule == QuadratureRule::gauss_legendre ? "gauss_legendre" : "composite_simpson";
}

/// Settings for every integral over gamma in [0,1].
struct QuadratureConfig {
    int node_count = 64;
    QuadratureRule rule = QuadratureRule::gauss_legendre;
    double tolerance = 1e-9;

    void validate() const
    {
        if (node_count < 2)
            throw ValidationError("quadrature node_count must be >= 2, got " + std::to_string(node_count));
        if (!(tolerance > 0.0))
            throw ValidationError("quadrature tolerance must be positive");
    }

    friend bool operator==(const QuadratureConfig&, const QuadratureConfig&) = default;
};

/// Nodes and weights on the reference interval [0,1].
struct UnitRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

namespace detail {

// Legendre polynomial P_n(x) and its derivative by the three-term recurrence.
inline std::pair<double, double> legendre(int n, double x)
{
    double p0 = 1.0;
    double p1 = x;
    for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    return {p1, n * (x * p1 - p0) / (x * x - 1.0)};
}

inline UnitRule make_gauss_legendre(int n)
{
    UnitRule rule;
    rule.nodes.resize(static_cast<std::size_t>(n));
    rule.weights.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        for (int it = 0; it < 100; ++it) {
            const auto [p, dp] = legendre(n, x);
            const double dx = p / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16)
                break;
        }
        const double dp = legendre(n, x).second;
        const double w = 1.0 / ((1.0 - x * x) * dp * dp); // half of the [-1,1] weight
        const auto lo = static_cast<std::size_t>(i);
        const auto hi = static_cast<std::size_t>(n - 1 - i);
        rule.nodes[lo] = 0.5 * (1.0 - x);
        rule.nodes[hi] = 0.5 * (1.0 + x);
        rule.weights[lo] = w;
        rule.weights[hi] = w;
    }
    return rule;
}

inline UnitRule make_composite_simpson(int n)
{
    int intervals = n - 1;
    if (intervals % 2 != 0)
        ++intervals;
    UnitRule rule;
    const double h = 1.0 / intervals;
    for (int i = 0; i <= intervals; ++i) {
        const double c = (i == 0 || i == intervals) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
        rule.nodes.push_back(i * h);
        rule.weights.push_back(c * h / 3.0);
    }
    return rule;
}

} // namespace detail

/// Returns the cached unit-interval rule for a configuration. Thread-safe.
inline std::shared_ptr<const UnitRule> unit_rule(QuadratureRule kind, int node_count)
{
    static std::mutex mutex;
    static std::map<std::pair<int, int>, std::shared_ptr<const UnitRule>> cache;
    const std::pair<int, int> key{static_cast<int>(kind), node_count};
    std::lock_guard lock(mutex);
    if (auto it = cache.find(key); it != cache.end())
        return it->second;
    auto rule = std::make_shared<const UnitRule>(kind == QuadratureRule::gauss_legendre
                                                     ? detail::make_gauss_legendre(node_count)
                                                     : detail::make_composite_simpson(node_count));
    cache.emplace(key, rule);
    return rule;
}

/// Integrates fn over [0,1], applying the rule separately on each segment
/// between consecutive breakpoints (which must start at 0 and end at 1).
/// Summation order is fixed: segment by segment, node by node.
template <class Fn>
double integrate_unit(const QuadratureConfig& q, std::span<const double> breakpoints, Fn&& fn)
{
    const auto rule = unit_rule(q.rule, q.node_count);
    double total = 0.0;
    for (std::size_t s = 0; s + 1 < breakpoints.size(); ++s) {
        const double a = breakpoints[s];
        const double len = breakpoints[s + 1] - a;
        if (len <= 0.0)
            continue;
        double seg = 0.0;
        for (std::size_t i = 0; i < rule->nodes.size(); ++i)
            seg += rule->weights[i] * fn(a + len * rule->nodes[i]);
        total += len * seg;
    }
    return total;
}

template <class Fn>
double integrate_unit(const QuadratureConfig& q, Fn&& fn)
{
    static constexpr double whole[] = {0.0, 1.0};
    return integrate_unit(q, std::span<const double>(whole), std::forward<Fn>(fn));
}

} // namespace ppf
