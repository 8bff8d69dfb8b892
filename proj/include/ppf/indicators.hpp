#pragma once

#include <ppf/fuzzy_number.hpp>
#include <ppf/quadrature.hpp>
#include <ppf/weighting.hpp>

#include <array>

namespace ppf {

namespace detail {

template <class Fn>
double weighted_integral(const WeightingFunction& f, const QuadratureConfig& q,
                         std::span<const FuzzyNumber* const> numbers, Fn&& fn)
{
    f.require_valid();
    q.validate();
    const auto bp = merged_breakpoints(numbers);
    return integrate_unit(q, bp, [&](double g) { return fn(g) * f(g); });
}

} // namespace detail

/// f-weighted possibilistic mean: 1/2 int_0^1 (a1 + a2) f.
inline double expected_value(const WeightingFunction& f, const FuzzyNumber& a, const QuadratureConfig& q = {})
{
    const std::array<const FuzzyNumber*, 1> nums{&a};
    if (a.support().width() == 0.0) {
        f.require_valid();
        return a.support().lower;
    }
    return detail::weighted_integral(f, q, nums, [&](double g) {
        const Interval lv = a.level_set_unchecked(g);
        return 0.5 * (lv.lower + lv.upper);
    });
}

/// f-weighted covariance, evaluated from the centred endpoints.
inline double covariance(const WeightingFunction& f, const FuzzyNumber& a, const FuzzyNumber& b,
                         const QuadratureConfig& q = {})
{
    const double ea = expected_value(f, a, q);
    const double eb = expected_value(f, b, q);
    if (a.support().width() == 0.0 || b.support().width() == 0.0)
        return 0.0;
    const std::array<const FuzzyNumber*, 2> nums{&a, &b};
    return detail::weighted_integral(f, q, nums, [&](double g) {
        const Interval la = a.level_set_unchecked(g);
        const Interval lb = b.level_set_unchecked(g);
        return 0.5 * ((la.lower - ea) * (lb.lower - eb) + (la.upper - ea) * (lb.upper - eb));
    });
}

/// f-weighted variance; exactly zero for fuzzy points.
inline double variance(const WeightingFunction& f, const FuzzyNumber& a, const QuadratureConfig& q = {})
{
    const double e = expected_value(f, a, q);
    if (a.support().width() == 0.0)
        return 0.0;
    const std::array<const FuzzyNumber*, 1> nums{&a};
    return detail::weighted_integral(f, q, nums, [&](double g) {
        const Interval lv = a.level_set_unchecked(g);
        const double dl = lv.lower - e;
        const double du = lv.upper - e;
        return 0.5 * (dl * dl + du * du);
    });
}

/// 1/2 int_0^1 (a1 b1 + a2 b2) f, the uncentred cross moment.
inline double cross_moment(const WeightingFunction& f, const FuzzyNumber& a, const FuzzyNumber& b,
                           const QuadratureConfig& q = {})
{
    const std::array<const FuzzyNumber*, 2> nums{&a, &b};
    return detail::weighted_integral(f, q, nums, [&](double g) {
        const Interval la = a.level_set_unchecked(g);
        const Interval lb = b.level_set_unchecked(g);
        return 0.5 * (la.lower * lb.lower + la.upper * lb.upper);
    });
}

} // namespace ppf
