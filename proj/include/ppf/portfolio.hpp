#pragma once

#include <ppf/error.hpp>
#include <ppf/expected_utility.hpp>
#include <ppf/fuzzy_number.hpp>
#include <ppf/indicators.hpp>
#include <ppf/random_variable.hpp>
#include <ppf/utility.hpp>
#include <ppf/weighting.hpp>

#include <array>
#include <cmath>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

namespace ppf {

/// The four two-asset models. Investment risk / background risk:
///   possibilistic      fuzzy A, none
///   fuzzy_background   fuzzy A, fuzzy B
///   random_background  fuzzy A, random Y
///   random_investment  random X, fuzzy B
enum class ModelTag { possibilistic, fuzzy_background, random_background, random_investment };

inline std::string short_name(ModelTag t)
{
    switch (t) {
    case ModelTag::possibilistic:
        return "M1";
    case ModelTag::fuzzy_background:
        return "M2";
    case ModelTag::random_background:
        return "M3";
    case ModelTag::random_investment:
        return "M4";
    }
    return "?";
}

inline std::string long_name(ModelTag t)
{
    switch (t) {
    case ModelTag::possibilistic:
        return "M1_possibilistic";
    case ModelTag::fuzzy_background:
        return "M2_poss_poss_background";
    case ModelTag::random_background:
        return "M3_poss_prob_background";
    case ModelTag::random_investment:
        return "M4_prob_poss_background";
    }
    return "?";
}

/// Initial wealth w0, risk-free return r and the riskless future wealth w = w0 (1 + r).
struct MarketSpec {
    double w0 = 1.0;
    double r = 0.0;
    double w = 1.0;

    static MarketSpec from_initial(double w0, double r)
    {
        check(w0, r);
        return {w0, r, w0 * (1.0 + r)};
    }

    static MarketSpec from_future(double w, double r)
    {
        check(w, r);
        if (r == -1.0)
            throw ValidationError("market: r = -1 leaves w0 undefined");
        return {w / (1.0 + r), r, w};
    }

    friend bool operator==(const MarketSpec&, const MarketSpec&) = default;

private:
    static void check(double a, double r)
    {
        if (!std::isfinite(a) || !std::isfinite(r))
            throw ValidationError("market: wealth and r must be finite");
    }
};

using Risk = std::variant<FuzzyNumber, DiscreteRandomVariable>;

inline std::string describe(const Risk& risk)
{
    return std::visit([](const auto& x) { return x.describe(); }, risk);
}

/// A fully specified allocation problem.
struct ModelSpec {
    ModelTag tag = ModelTag::possibilistic;
    MarketSpec market;
    Risk investment = FuzzyNumber::point(0.0);
    std::optional<Risk> background;
    WeightingFunction f = WeightingFunction::power(1.0);
    UtilityFunction u = UtilityFunction::cara(1.0);
    QuadratureConfig q;

    static ModelSpec possibilistic(MarketSpec market, FuzzyNumber a, UtilityFunction u,
                                   WeightingFunction f = WeightingFunction::power(1.0), QuadratureConfig q = {})
    {
        return {ModelTag::possibilistic, market, std::move(a), std::nullopt, std::move(f), std::move(u), q};
    }

    static ModelSpec fuzzy_background(MarketSpec market, FuzzyNumber a, FuzzyNumber b, UtilityFunction u,
                                      WeightingFunction f = WeightingFunction::power(1.0), QuadratureConfig q = {})
    {
        return {ModelTag::fuzzy_background, market, std::move(a), Risk(std::move(b)), std::move(f), std::move(u), q};
    }

    static ModelSpec random_background(MarketSpec market, FuzzyNumber a, DiscreteRandomVariable y,
                                       UtilityFunction u, WeightingFunction f = WeightingFunction::power(1.0),
                                       QuadratureConfig q = {})
    {
        return {ModelTag::random_background, market, std::move(a), Risk(std::move(y)), std::move(f), std::move(u), q};
    }

    static ModelSpec random_investment(MarketSpec market, DiscreteRandomVariable x, FuzzyNumber b,
                                       UtilityFunction u, WeightingFunction f = WeightingFunction::power(1.0),
                                       QuadratureConfig q = {})
    {
        return {ModelTag::random_investment, market, std::move(x), Risk(std::move(b)), std::move(f), std::move(u), q};
    }

    const FuzzyNumber* fuzzy_investment() const { return std::get_if<FuzzyNumber>(&investment); }
    const DiscreteRandomVariable* random_investment_risk() const
    {
        return std::get_if<DiscreteRandomVariable>(&investment);
    }
    const FuzzyNumber* fuzzy_background_risk() const
    {
        return background ? std::get_if<FuzzyNumber>(&*background) : nullptr;
    }
    const DiscreteRandomVariable* random_background_risk() const
    {
        return background ? std::get_if<DiscreteRandomVariable>(&*background) : nullptr;
    }

    bool has_background() const { return tag != ModelTag::possibilistic; }
};

/// Indicators used by the closed-form allocations; only those relevant to the model are set.
struct Indicators {
    std::optional<double> mean_a;          // E(f, A)
    std::optional<double> variance_a;      // Var(f, A)
    std::optional<double> covariance_ab;   // Cov(f, A, B)
    std::optional<double> mean_b;          // E(f, B)
    std::optional<double> mean_y;          // M(Y)
    std::optional<double> mean_x;          // M(X)
    std::optional<double> second_moment_x; // M[(X - r)^2]
};

struct SolverOptions {
    double tolerance = 1e-10; // on |dK/dalpha|
    int max_iterations = 2000;
};

struct Solution {
    double alpha_exact = 0.0;
    double alpha_approx = 0.0;
    double objective_at_exact = 0.0;
    double derivative_at_exact = 0.0;
    Indicators indicators;
    int iterations = 0;
    Interval bracket;
    bool degenerate = false; // objective constant in alpha; alpha = 0 by convention
};

namespace detail {

inline void check_shape(const ModelSpec& m)
{
    const bool fuzzy_inv = m.fuzzy_investment() != nullptr;
    bool ok = false;
    switch (m.tag) {
    case ModelTag::possibilistic:
        ok = fuzzy_inv && !m.background;
        break;
    case ModelTag::fuzzy_background:
        ok = fuzzy_inv && m.fuzzy_background_risk();
        break;
    case ModelTag::random_background:
        ok = fuzzy_inv && m.random_background_risk();
        break;
    case ModelTag::random_investment:
        ok = !fuzzy_inv && m.fuzzy_background_risk();
        break;
    }
    if (!ok)
        throw InputError("model " + long_name(m.tag) + ": investment/background risk kinds do not match the model");
}

// (y, x) pairs at which wealth w + y + alpha (x - r) reaches its extremes:
// endpoint pairs at every gamma breakpoint, crossed with atoms where present.
inline std::vector<std::pair<double, double>> extreme_outcomes(const ModelSpec& m)
{
    std::vector<std::pair<double, double>> out;
    switch (m.tag) {
    case ModelTag::possibilistic: {
        const FuzzyNumber& a = *m.fuzzy_investment();
        for (const auto& row : a.rows()) {
            out.emplace_back(0.0, row.lower);
            out.emplace_back(0.0, row.upper);
        }
        break;
    }
    case ModelTag::fuzzy_background: {
        const FuzzyNumber& a = *m.fuzzy_investment();
        const FuzzyNumber& b = *m.fuzzy_background_risk();
        const std::array<const FuzzyNumber*, 2> nums{&a, &b};
        for (double g : merged_breakpoints(nums)) {
            const Interval la = a.level_set_unchecked(g);
            const Interval lb = b.level_set_unchecked(g);
            out.emplace_back(lb.lower, la.lower);
            out.emplace_back(lb.upper, la.upper);
        }
        break;
    }
    case ModelTag::random_background: {
        const FuzzyNumber& a = *m.fuzzy_investment();
        for (const auto& atom : m.random_background_risk()->atoms())
            for (const auto& row : a.rows()) {
                out.emplace_back(atom.value, row.lower);
                out.emplace_back(atom.value, row.upper);
            }
        break;
    }
    case ModelTag::random_investment: {
        const FuzzyNumber& b = *m.fuzzy_background_risk();
        for (const auto& atom : m.random_investment_risk()->atoms())
            for (const auto& row : b.rows()) {
                out.emplace_back(row.lower, atom.value);
                out.emplace_back(row.upper, atom.value);
            }
        break;
    }
    }
    return out;
}

// Kernel dispatch: calls fn(y, x) under the model's possibilistic / mixed
// expectation, i.e. evaluates the model's expected "utility" of fn.
template <class Fn>
double model_expectation(const ModelSpec& m, Fn&& fn)
{
    switch (m.tag) {
    case ModelTag::possibilistic: {
        const std::array<FuzzyNumber, 1> fz{*m.fuzzy_investment()};
        return possibilistic_eu(m.f, [&](std::span<const double> v) { return fn(0.0, v[0]); }, fz, m.q);
    }
    case ModelTag::fuzzy_background: {
        const std::array<FuzzyNumber, 2> fz{*m.fuzzy_investment(), *m.fuzzy_background_risk()};
        return possibilistic_eu(m.f, [&](std::span<const double> v) { return fn(v[1], v[0]); }, fz, m.q);
    }
    case ModelTag::random_background: {
        const std::array<FuzzyNumber, 1> fz{*m.fuzzy_investment()};
        const std::array<DiscreteRandomVariable, 1> rv{*m.random_background_risk()};
        return mixed_eu(m.f, [&](std::span<const double> v) { return fn(v[1], v[0]); }, fz, rv, m.q);
    }
    case ModelTag::random_investment: {
        const std::array<FuzzyNumber, 1> fz{*m.fuzzy_background_risk()};
        const std::array<DiscreteRandomVariable, 1> rv{*m.random_investment_risk()};
        return mixed_eu(m.f, [&](std::span<const double> v) { return fn(v[0], v[1]); }, fz, rv, m.q);
    }
    }
    return 0.0;
}

inline double wealth(const ModelSpec& m, double alpha, double y, double x)
{
    return m.market.w + y + alpha * (x - m.market.r);
}

} // namespace detail

/// Checks that the model is internally consistent and that alpha = 0 keeps
/// every outcome inside the utility domain.
inline void validate(const ModelSpec& m)
{
    detail::check_shape(m);
    m.f.require_valid();
    m.q.validate();
    for (const auto& [y, x] : detail::extreme_outcomes(m)) {
        (void)x;
        m.u.require_domain(m.market.w + y);
    }
}

/// The open interval of allocations keeping all reachable wealth inside the utility domain.
inline Interval feasible_alpha(const ModelSpec& m)
{
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();
    const WealthDomain dom = m.u.domain();
    for (const auto& [y, x] : detail::extreme_outcomes(m)) {
        const double base = m.market.w + y;
        const double d = x - m.market.r;
        if (!dom.contains(base))
            return {0.0, 0.0};
        if (d > 0.0) {
            lo = std::max(lo, (dom.lower - base) / d);
            hi = std::min(hi, (dom.upper - base) / d);
        } else if (d < 0.0) {
            lo = std::max(lo, (dom.upper - base) / d);
            hi = std::min(hi, (dom.lower - base) / d);
        }
    }
    return {lo, hi};
}

/// K(alpha, w) for the model: the possibilistic or mixed expected utility
/// of u(w + y + alpha (x - r)).
inline double objective(const ModelSpec& m, double alpha)
{
    detail::check_shape(m);
    return detail::model_expectation(m, [&](double y, double x) {
        const double wl = detail::wealth(m, alpha, y, x);
        m.u.require_domain(wl);
        return m.u.value(wl);
    });
}

struct DerivativeValue {
    double value = 0.0;
    double magnitude = 0.0; // sum of |integrand| over all evaluation points; 0 means every term underflowed
};

inline DerivativeValue objective_derivative_detail(const ModelSpec& m, double alpha)
{
    detail::check_shape(m);
    DerivativeValue out;
    out.value = detail::model_expectation(m, [&](double y, double x) {
        const double wl = detail::wealth(m, alpha, y, x);
        m.u.require_domain(wl);
        const double term = m.u.first(wl) * (x - m.market.r);
        out.magnitude += std::abs(term);
        return term;
    });
    return out;
}

/// dK/dalpha by differentiating under the integral: the expectation of u'(wealth) (x - r).
inline double objective_derivative(const ModelSpec& m, double alpha)
{
    return objective_derivative_detail(m, alpha).value;
}

/// Indicators of the model's risks.
inline Indicators indicators(const ModelSpec& m)
{
    detail::check_shape(m);
    Indicators ind;
    const double r = m.market.r;
    if (const FuzzyNumber* a = m.fuzzy_investment()) {
        ind.mean_a = expected_value(m.f, *a, m.q);
        ind.variance_a = variance(m.f, *a, m.q);
    }
    if (const DiscreteRandomVariable* x = m.random_investment_risk()) {
        ind.mean_x = mean(*x);
        ind.second_moment_x = second_moment_about(*x, r);
    }
    if (const FuzzyNumber* b = m.fuzzy_background_risk()) {
        ind.mean_b = expected_value(m.f, *b, m.q);
        if (const FuzzyNumber* a = m.fuzzy_investment())
            ind.covariance_ab = covariance(m.f, *a, *b, m.q);
    }
    if (const DiscreteRandomVariable* y = m.random_background_risk())
        ind.mean_y = mean(*y);
    return ind;
}

/// Closed-form first-order allocation split into its background-free part
/// and the background correction.
struct Approximation {
    double alpha = 0.0;
    double baseline = 0.0;   // -u'(w)/u''(w) * excess / denominator
    double adjustment = 0.0; // background correction (0 for the possibilistic model)
    double denominator = 0.0;
    Indicators indicators;
};

inline constexpr double degenerate_denominator = 1e-15;

inline Approximation approximate(const ModelSpec& m)
{
    detail::check_shape(m);
    const double w = m.market.w;
    const double r = m.market.r;
    m.u.require_domain(w);
    Approximation out;
    out.indicators = indicators(m);
    const Indicators& ind = out.indicators;
    const double tolerance_ratio = -m.u.first(w) / m.u.second(w); // 1 / r_u(w)

    double excess = 0.0;
    if (m.tag == ModelTag::random_investment) {
        excess = *ind.mean_x - r;
        out.denominator = *ind.second_moment_x;
    } else {
        excess = *ind.mean_a - r;
        out.denominator = *ind.variance_a + excess * excess;
    }
    if (!(out.denominator >= degenerate_denominator)) {
        std::ostringstream s;
        s << "degenerate input for " << short_name(m.tag) << ": approximation denominator " << out.denominator
          << " vanishes (riskless asset earning r)";
        throw DegenerateError(s.str());
    }
    out.baseline = tolerance_ratio * excess / out.denominator;
    switch (m.tag) {
    case ModelTag::possibilistic:
        out.adjustment = 0.0;
        break;
    case ModelTag::fuzzy_background:
        out.adjustment = -(*ind.covariance_ab + *ind.mean_b * excess) / out.denominator;
        break;
    case ModelTag::random_background:
        out.adjustment = -(*ind.mean_y * excess) / out.denominator;
        break;
    case ModelTag::random_investment:
        out.adjustment = -(*ind.mean_b * excess) / out.denominator;
        break;
    }
    out.alpha = out.baseline + out.adjustment;
    return out;
}

inline double alpha_approx(const ModelSpec& m) { return approximate(m).alpha; }

/// The model with its background risk removed: the fuzzy-investment models
/// drop to the possibilistic one, the random-investment model keeps X with B = point(0).
inline ModelSpec without_background(const ModelSpec& m)
{
    detail::check_shape(m);
    switch (m.tag) {
    case ModelTag::possibilistic:
        throw InputError("model M1 has no background risk");
    case ModelTag::fuzzy_background:
    case ModelTag::random_background:
        return ModelSpec::possibilistic(m.market, *m.fuzzy_investment(), m.u, m.f, m.q);
    case ModelTag::random_investment:
        return ModelSpec::random_investment(m.market, *m.random_investment_risk(), FuzzyNumber::point(0.0), m.u,
                                            m.f, m.q);
    }
    return m;
}

/// alpha_approx(m) - alpha_approx(without_background(m)), in closed form.
inline double background_adjustment(const ModelSpec& m)
{
    detail::check_shape(m);
    if (m.tag == ModelTag::possibilistic)
        throw InputError("background_adjustment: model M1 has no background risk");
    return approximate(m).adjustment;
}

struct OrderingCondition {
    bool predicted = false;  // background-inclusive approximate allocation <= background-free one
    double value = 0.0;      // M2: Cov + E(f,B)(E(f,A) - r);  M3: M(Y)(E(f,A) - r)
    std::optional<double> rate_threshold; // M2 with E(f,B) > 0: predicted iff r <= threshold
};

inline OrderingCondition ordering_condition(const ModelSpec& m)
{
    detail::check_shape(m);
    const Indicators ind = indicators(m);
    const double r = m.market.r;
    OrderingCondition out;
    switch (m.tag) {
    case ModelTag::fuzzy_background:
        out.value = *ind.covariance_ab + *ind.mean_b * (*ind.mean_a - r);
        if (*ind.mean_b > 0.0)
            out.rate_threshold = (*ind.covariance_ab + *ind.mean_a * *ind.mean_b) / *ind.mean_b;
        break;
    case ModelTag::random_background:
        out.value = *ind.mean_y * (*ind.mean_a - r);
        break;
    default:
        throw InputError("ordering_condition applies to models M2 and M3 only, got " + short_name(m.tag));
    }
    out.predicted = out.value >= 0.0;
    return out;
}

/// Maximizes K(alpha, w) over alpha by locating the root of dK/dalpha:
/// outward doubling from 0 (step 1) until the derivative changes sign,
/// halving the remaining gap whenever a step would leave the utility
/// domain, then bisection.
inline Solution solve_exact(const ModelSpec& m, const SolverOptions& opts = {})
{
    validate(m);
    Solution sol;
    sol.indicators = indicators(m);

    std::optional<Approximation> approx;
    try {
        approx = approximate(m);
    } catch (const DegenerateError&) {
        // Riskless asset earning r: K is constant in alpha.
        sol.degenerate = true;
        sol.objective_at_exact = objective(m, 0.0);
        sol.derivative_at_exact = objective_derivative(m, 0.0);
        return sol;
    }
    sol.alpha_approx = approx->alpha;

    const Interval feasible = feasible_alpha(m);
    auto derivative = [&](double a) { return objective_derivative_detail(m, a); };
    auto finish = [&](double a) {
        sol.alpha_exact = a;
        sol.objective_at_exact = objective(m, a);
        sol.derivative_at_exact = objective_derivative(m, a);
        return sol;
    };

    const DerivativeValue d0 = derivative(0.0);
    ++sol.iterations;
    if (d0.value == 0.0) {
        sol.bracket = {0.0, 0.0};
        return finish(0.0);
    }
    const double dir = d0.value > 0.0 ? 1.0 : -1.0;
    const double bound = dir > 0.0 ? feasible.upper : feasible.lower;

    double prev = 0.0;
    double prev_value = d0.value;
    double step = 1.0;
    double cand = 0.0;
    double cand_value = 0.0;
    bool bracketed = false;
    while (sol.iterations < opts.max_iterations) {
        cand = dir * step;
        bool clamped = false;
        if (dir * cand >= dir * bound) {
            cand = prev + 0.5 * (bound - prev);
            clamped = true;
            if (std::abs(cand - prev) <= 1e-14 * (1.0 + std::abs(bound))) {
                std::ostringstream s;
                s.precision(10);
                s << "no interior optimum: dK/dalpha keeps the sign of " << (dir > 0 ? "+" : "-")
                  << " up to the utility domain boundary alpha = " << bound;
                throw SolverError(s.str());
            }
        }
        const DerivativeValue dc = derivative(cand);
        ++sol.iterations;
        if (dc.magnitude == 0.0) {
            std::ostringstream s;
            s.precision(10);
            s << "no interior optimum: dK/dalpha stays " << (dir > 0 ? "positive" : "negative")
              << " until it underflows to 0 at alpha = " << cand;
            throw SolverError(s.str());
        }
        if (dc.value == 0.0) {
            sol.bracket = {cand, cand};
            return finish(cand);
        }
        if ((dc.value > 0.0) != (dir > 0.0)) {
            cand_value = dc.value;
            bracketed = true;
            break;
        }
        prev = cand;
        prev_value = dc.value;
        if (!clamped) {
            step *= 2.0;
            if (step > 1e15) {
                std::ostringstream s;
                s << "no interior optimum: dK/dalpha does not change sign for |alpha| <= 1e15";
                throw SolverError(s.str());
            }
        }
    }
    if (!bracketed)
        throw SolverError("no sign change of dK/dalpha found within the iteration limit");

    double lo = std::min(prev, cand);
    double hi = std::max(prev, cand);
    double lo_value = prev < cand ? prev_value : cand_value;
    sol.bracket = {lo, hi};
    double best = std::abs(prev_value) < std::abs(cand_value) ? prev : cand;
    double best_abs = std::min(std::abs(prev_value), std::abs(cand_value));
    while (sol.iterations < opts.max_iterations) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi)
            break;
        const double dm = derivative(mid).value;
        ++sol.iterations;
        if (std::abs(dm) <= best_abs) {
            best = mid;
            best_abs = std::abs(dm);
        }
        if (dm == 0.0)
            break;
        if ((dm > 0.0) == (lo_value > 0.0)) {
            lo = mid;
            lo_value = dm;
        } else {
            hi = mid;
        }
        if (best_abs <= opts.tolerance && hi - lo <= 1e-13 * (1.0 + std::abs(mid)))
            break;
    }
    return finish(best);
}

struct ComparativeReport {
    double alpha_approx_1 = 0.0;
    double alpha_approx_2 = 0.0;
    bool approx_ordering_holds = false;           // alpha_1 <= alpha_2 + 1e-12
    bool u1_more_risk_averse = false;             // on the supplied wealth grid
    std::optional<double> alpha_exact_1;
    std::optional<double> alpha_exact_2;
    std::optional<bool> exact_ordering_holds;
    std::string exact_note;                       // solver message when an exact solve failed
};

/// Compares allocations of two agents facing the same model with utilities
/// m1.u and m2.u. The wealth grid (default {w}) is used for the risk-aversion check.
inline ComparativeReport risk_aversion_comparative(const ModelSpec& m1, const ModelSpec& m2,
                                                   std::vector<double> grid = {})
{
    detail::check_shape(m1);
    detail::check_shape(m2);
    const bool same = m1.tag == m2.tag && m1.market == m2.market && m1.investment == m2.investment &&
                      m1.background == m2.background && m1.f == m2.f && m1.q == m2.q;
    if (!same)
        throw InputError("risk_aversion_comparative: models differ beyond the utility function");
    if (grid.empty())
        grid.push_back(m1.market.w);

    ComparativeReport rep;
    rep.u1_more_risk_averse = more_risk_averse(m1.u, m2.u, grid);
    rep.alpha_approx_1 = alpha_approx(m1);
    rep.alpha_approx_2 = alpha_approx(m2);
    rep.approx_ordering_holds = rep.alpha_approx_1 <= rep.alpha_approx_2 + 1e-12;
    try {
        rep.alpha_exact_1 = solve_exact(m1).alpha_exact;
        rep.alpha_exact_2 = solve_exact(m2).alpha_exact;
        rep.exact_ordering_holds = *rep.alpha_exact_1 <= *rep.alpha_exact_2 + 1e-8 * (1.0 + std::abs(*rep.alpha_exact_2));
    } catch (const SolverError& e) {
        rep.exact_note = e.what();
    }
    return rep;
}

/// Same model at riskless future wealth w (w0 re-derived from r).
inline ModelSpec with_wealth(const ModelSpec& m, double w)
{
    ModelSpec out = m;
    out.market = MarketSpec::from_future(w, m.market.r);
    return out;
}

/// Same model with a different utility.
inline ModelSpec with_utility(const ModelSpec& m, UtilityFunction u)
{
    ModelSpec out = m;
    out.u = std::move(u);
    return out;
}

/// Scales every risk about its mean (E(f,.) for fuzzy numbers, M(.) for
/// random variables) by `scale`, keeping the means fixed.
inline ModelSpec scale_risks(const ModelSpec& m, double scale)
{
    auto scaled = [&](const Risk& risk) -> Risk {
        if (const auto* a = std::get_if<FuzzyNumber>(&risk))
            return scale_about(*a, scale, expected_value(m.f, *a, m.q));
        const auto& x = std::get<DiscreteRandomVariable>(risk);
        return scale_about(x, scale, mean(x));
    };
    ModelSpec out = m;
    out.investment = scaled(m.investment);
    if (m.background)
        out.background = scaled(*m.background);
    return out;
}

struct SweepRow {
    double w = 0.0;
    double alpha_exact = 0.0;
    double alpha_approx = 0.0;
};

struct SweepReport {
    std::vector<SweepRow> rows;
    std::vector<std::size_t> monotonicity_violations; // row i with alpha_approx[i] < alpha_approx[i-1] (DARA only)
};

struct SweepOptions {
    bool solve = true; // false: closed-form allocations only, alpha_exact left at 0
    SolverOptions solver;
};

/// Re-solves the model at each future wealth in the grid.
inline SweepReport wealth_sweep(const ModelSpec& m, const std::vector<double>& wealth_grid,
                                const SweepOptions& opts = {})
{
    SweepReport rep;
    for (double w : wealth_grid) {
        const ModelSpec mw = with_wealth(m, w);
        SweepRow row{w, 0.0, 0.0};
        try {
            if (opts.solve) {
                const Solution s = solve_exact(mw, opts.solver);
                row.alpha_exact = s.alpha_exact;
                row.alpha_approx = s.alpha_approx;
            } else {
                row.alpha_approx = alpha_approx(mw);
            }
        } catch (const SolverError& e) {
            std::ostringstream s;
            s.precision(10);
            s << "at w = " << w << ": " << e.what();
            throw SolverError(s.str());
        } catch (const DegenerateError& e) {
            std::ostringstream s;
            s.precision(10);
            s << "at w = " << w << ": " << e.what();
            throw DegenerateError(s.str());
        } catch (const DomainError& e) {
            std::ostringstream s;
            s.precision(10);
            s << "at w = " << w << ": " << e.what();
            throw DomainError(s.str());
        }
        rep.rows.push_back(row);
    }
    if (m.u.decreasing_absolute_risk_aversion())
        for (std::size_t i = 1; i < rep.rows.size(); ++i)
            if (rep.rows[i].w > rep.rows[i - 1].w && rep.rows[i].alpha_approx < rep.rows[i - 1].alpha_approx)
                rep.monotonicity_violations.push_back(i);
    return rep;
}

} // namespace ppf
