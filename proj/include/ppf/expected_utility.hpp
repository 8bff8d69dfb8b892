#pragma once

#include <ppf/fuzzy_number.hpp>
#include <ppf/quadrature.hpp>
#include <ppf/random_variable.hpp>
#include <ppf/weighting.hpp>

#include <concepts>
#include <functional>
#include <type_traits>
#include <span>
#include <sstream>
#include <vector>

namespace ppf {

/// An n-argument utility u(x_1, ..., x_n) with an optional domain predicate.
struct MultiUtility {
    int arity = 1;
    std::function<double(std::span<const double>)> evaluator;
    std::function<bool(std::span<const double>)> domain; // empty: all of R^n

    double operator()(std::span<const double> x) const
    {
        if (domain && !domain(x)) {
            std::ostringstream s;
            s.precision(17);
            s << "utility evaluated outside its domain at (";
            for (std::size_t i = 0; i < x.size(); ++i)
                s << (i ? ", " : "") << x[i];
            s << ")";
            throw DomainError(s.str());
        }
        return evaluator(x);
    }
};

namespace detail {

inline std::vector<const FuzzyNumber*> pointers(std::span<const FuzzyNumber> numbers)
{
    std::vector<const FuzzyNumber*> out;
    out.reserve(numbers.size());
    for (const auto& a : numbers)
        out.push_back(&a);
    return out;
}

// Sum over the product of the atom lists (independent components), with
// args[offset + j] set to the value of the j-th random variable.
template <class U>
double product_expectation(U& u, std::vector<double>& args, std::size_t offset,
                           std::span<const DiscreteRandomVariable> xs, std::size_t depth = 0)
{
    if (depth == xs.size())
        return u(std::span<const double>(args));
    double acc = 0.0;
    for (const auto& atom : xs[depth].atoms()) {
        args[offset + depth] = atom.value;
        acc += atom.probability * product_expectation(u, args, offset, xs, depth + 1);
    }
    return acc;
}

template <class U>
double mixed_eu_impl(const WeightingFunction& f, U& u, std::span<const FuzzyNumber> fuzzy,
                     std::span<const DiscreteRandomVariable> random, const QuadratureConfig& q)
{
    f.require_valid();
    q.validate();
    const std::size_t n = fuzzy.size();
    std::vector<double> args(n + random.size());
    if (n == 0)
        return detail::product_expectation(u, args, 0, random);

    const auto ptrs = detail::pointers(fuzzy);
    const auto bp = merged_breakpoints(ptrs);
    return integrate_unit(q, bp, [&](double g) {
        for (std::size_t i = 0; i < n; ++i)
            args[i] = fuzzy[i].level_set_unchecked(g).lower;
        const double low = detail::product_expectation(u, args, n, random);
        for (std::size_t i = 0; i < n; ++i)
            args[i] = fuzzy[i].level_set_unchecked(g).upper;
        const double high = detail::product_expectation(u, args, n, random);
        return 0.5 * (low + high) * f(g);
    });
}

} // namespace detail

template <class U>
concept PlainUtility = !std::same_as<std::remove_cvref_t<U>, MultiUtility>;

/// Mixed expected utility
///   1/2 int_0^1 [ M u(a(g), X) + M u(b(g), X) ] f(g) dg
/// where a(g), b(g) stack the lower and upper endpoints of the fuzzy
/// arguments and M is the expectation over the product of the atom lists.
/// `u` takes a span laid out as (fuzzy..., random...).
template <PlainUtility U>
double mixed_eu(const WeightingFunction& f, U&& u, std::span<const FuzzyNumber> fuzzy,
                std::span<const DiscreteRandomVariable> random, const QuadratureConfig& q = {})
{
    return detail::mixed_eu_impl(f, u, fuzzy, random, q);
}

/// Possibilistic expected utility 1/2 int_0^1 [u(a(g)) + u(b(g))] f(g) dg.
template <PlainUtility U>
double possibilistic_eu(const WeightingFunction& f, U&& u, std::span<const FuzzyNumber> fuzzy,
                        const QuadratureConfig& q = {})
{
    return detail::mixed_eu_impl(f, u, fuzzy, std::span<const DiscreteRandomVariable>{}, q);
}

/// Probabilistic expected utility M(u(X_1, ..., X_m)), components independent.
template <PlainUtility U>
double probabilistic_eu(U&& u, std::span<const DiscreteRandomVariable> random)
{
    std::vector<double> args(random.size());
    return detail::product_expectation(u, args, 0, random);
}

// Overloads for the type-erased MultiUtility, which also check arity.

inline void check_arity(const MultiUtility& u, std::size_t n)
{
    if (u.arity < 0 || static_cast<std::size_t>(u.arity) != n) {
        std::ostringstream s;
        s << "utility arity " << u.arity << " does not match " << n << " arguments";
        throw InputError(s.str());
    }
    if (!u.evaluator)
        throw InputError("utility has no evaluator");
}

inline double possibilistic_eu(const WeightingFunction& f, const MultiUtility& u, std::span<const FuzzyNumber> fuzzy,
                               const QuadratureConfig& q = {})
{
    check_arity(u, fuzzy.size());
    return detail::mixed_eu_impl(f, u, fuzzy, std::span<const DiscreteRandomVariable>{}, q);
}

inline double mixed_eu(const WeightingFunction& f, const MultiUtility& u, std::span<const FuzzyNumber> fuzzy,
                       std::span<const DiscreteRandomVariable> random, const QuadratureConfig& q = {})
{
    check_arity(u, fuzzy.size() + random.size());
    return detail::mixed_eu_impl(f, u, fuzzy, random, q);
}

inline double probabilistic_eu(const MultiUtility& u, std::span<const DiscreteRandomVariable> random)
{
    check_arity(u, random.size());
    std::vector<double> args(random.size());
    return detail::product_expectation(u, args, 0, random);
}

} // namespace ppf

namespace ppf {

/// One-argument possibilistic expected utility 1/2 int_0^1 [u(a1) + u(a2)] f,
/// evaluated directly on the level sets of A.
template <class U>
double expected_utility(const WeightingFunction& f, U&& u, const FuzzyNumber& a, const QuadratureConfig& q = {})
{
    f.require_valid();
    q.validate();
    const auto bp = a.breakpoints();
    return integrate_unit(q, bp, [&](double g) {
        const Interval lv = a.level_set_unchecked(g);
        return 0.5 * (u(lv.lower) + u(lv.upper)) * f(g);
    });
}

} // namespace ppf
