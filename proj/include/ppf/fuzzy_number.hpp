#pragma once

#include <ppf/error.hpp>

#include <algorithm>
#include <cmath>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace ppf {

/// Closed interval [lower, upper].
struct Interval {
    double lower = 0.0;
    double upper = 0.0;

    double width() const { return upper - lower; }
    friend bool operator==(const Interval&, const Interval&) = default;
};

/// One row of a gamma-level table: [A]^gamma = [lower, upper].
struct LevelRow {
    double gamma = 0.0;
    double lower = 0.0;
    double upper = 0.0;
    friend bool operator==(const LevelRow&, const LevelRow&) = default;
};

enum class FuzzyKind { triangular, trapezoidal, point, sampled };

inline std::string to_string(FuzzyKind k)
{
    switch (k) {
    case FuzzyKind::triangular:
        return "triangular";
    case FuzzyKind::trapezoidal:
        return "trapezoidal";
    case FuzzyKind::point:
        return "point";
    case FuzzyKind::sampled:
        return "sampled";
    }
    return "?";
}

/// A fuzzy number held through its gamma-level sets.
///
/// Every kind is stored as a table of level rows with piecewise-linear
/// endpoints in gamma: triangular, trapezoidal and point numbers need only
/// the rows at gamma = 0 and gamma = 1, sampled ones carry the user's grid.
/// The table enforces nestedness (lower endpoint weakly increasing, upper
/// weakly decreasing) and lower <= upper at every row.
class FuzzyNumber {
public:
    /// Peak at `center`, support [center - left_width, center + right_width].
    static FuzzyNumber triangular(double center, double left_width, double right_width)
    {
        check_finite({center, left_width, right_width}, "triangular");
        if (left_width < 0.0 || right_width < 0.0)
            throw ValidationError("triangular widths must be non-negative");
        FuzzyNumber a(FuzzyKind::triangular,
                      {{0.0, center - left_width, center + right_width}, {1.0, center, center}});
        a.core_ = {center, center};
        a.widths_ = {left_width, right_width};
        return a;
    }

    /// Core [core_left, core_right]; collapses to triangular when the core is a single point.
    static FuzzyNumber trapezoidal(double core_left, double core_right, double left_width, double right_width)
    {
        check_finite({core_left, core_right, left_width, right_width}, "trapezoidal");
        if (core_left > core_right)
            throw ValidationError("trapezoidal core_left must not exceed core_right");
        if (left_width < 0.0 || right_width < 0.0)
            throw ValidationError("trapezoidal widths must be non-negative");
        if (core_left == core_right)
            return triangular(core_left, left_width, right_width);
        FuzzyNumber a(FuzzyKind::trapezoidal,
                      {{0.0, core_left - left_width, core_right + right_width}, {1.0, core_left, core_right}});
        a.core_ = {core_left, core_right};
        a.widths_ = {left_width, right_width};
        return a;
    }

    static FuzzyNumber point(double value)
    {
        check_finite({value}, "point");
        FuzzyNumber a(FuzzyKind::point, {{0.0, value, value}, {1.0, value, value}});
        a.core_ = {value, value};
        return a;
    }

    /// Rows must be strictly increasing in gamma, starting at 0 and ending at 1.
    static FuzzyNumber sampled(std::vector<LevelRow> rows)
    {
        if (rows.size() < 2)
            throw ValidationError("sampled fuzzy number needs at least two rows (gamma=0 and gamma=1)");
        if (rows.front().gamma != 0.0 || rows.back().gamma != 1.0)
            throw ValidationError("sampled fuzzy number grid must include gamma=0 and gamma=1");
        for (std::size_t i = 0; i < rows.size(); ++i) {
            const auto& r = rows[i];
            check_finite({r.gamma, r.lower, r.upper}, "sampled");
            if (r.lower > r.upper)
                throw ValidationError(row_message(r, "lower endpoint exceeds upper endpoint"));
            if (i > 0) {
                const auto& p = rows[i - 1];
                if (!(r.gamma > p.gamma))
                    throw ValidationError(row_message(r, "gamma values must be strictly increasing"));
                if (r.lower < p.lower)
                    throw ValidationError(row_message(r, "lower endpoint decreases (level sets not nested)"));
                if (r.upper > p.upper)
                    throw ValidationError(row_message(r, "upper endpoint increases (level sets not nested)"));
            }
        }
        FuzzyNumber a(FuzzyKind::sampled, std::move(rows));
        a.core_ = {a.rows_.back().lower, a.rows_.back().upper};
        return a;
    }

    FuzzyKind kind() const { return kind_; }
    const std::vector<LevelRow>& rows() const { return rows_; }

    /// Core [a1(1), a2(1)].
    Interval core() const { return core_; }
    /// Left/right widths for triangular and trapezoidal kinds (zero otherwise).
    std::pair<double, double> widths() const { return widths_; }
    /// Support [a1(0), a2(0)].
    Interval support() const { return {rows_.front().lower, rows_.front().upper}; }

    /// [a1(gamma), a2(gamma)], linear between rows.
    Interval level_set(double gamma) const
    {
        if (!(gamma >= 0.0 && gamma <= 1.0))
            throw DomainError("level_set: gamma must lie in [0,1], got " + std::to_string(gamma));
        return level_set_unchecked(gamma);
    }

    Interval level_set_unchecked(double gamma) const
    {
        std::size_t hi = 1;
        if (rows_.size() > 2) {
            const auto it = std::upper_bound(rows_.begin() + 1, rows_.end() - 1, gamma,
                                             [](double g, const LevelRow& r) { return g < r.gamma; });
            hi = static_cast<std::size_t>(it - rows_.begin());
        }
        const LevelRow& a = rows_[hi - 1];
        const LevelRow& b = rows_[hi];
        const double t = (gamma - a.gamma) / (b.gamma - a.gamma);
        return {a.lower + t * (b.lower - a.lower), a.upper + t * (b.upper - a.upper)};
    }

    /// The gamma values where the endpoints may have kinks.
    std::vector<double> breakpoints() const
    {
        std::vector<double> g;
        g.reserve(rows_.size());
        for (const auto& r : rows_)
            g.push_back(r.gamma);
        return g;
    }

    std::string describe() const
    {
        std::ostringstream s;
        s.precision(10);
        switch (kind_) {
        case FuzzyKind::triangular:
            s << "triangular(" << core_.lower << ", " << widths_.first << ", " << widths_.second << ")";
            break;
        case FuzzyKind::trapezoidal:
            s << "trapezoidal(" << core_.lower << ", " << core_.upper << ", " << widths_.first << ", "
              << widths_.second << ")";
            break;
        case FuzzyKind::point:
            s << "point(" << core_.lower << ")";
            break;
        case FuzzyKind::sampled:
            s << "sampled(" << rows_.size() << " rows, support [" << support().lower << ", " << support().upper
              << "])";
            break;
        }
        return s.str();
    }

    friend bool operator==(const FuzzyNumber& a, const FuzzyNumber& b)
    {
        return a.kind_ == b.kind_ && a.rows_ == b.rows_;
    }

private:
    FuzzyNumber(FuzzyKind kind, std::vector<LevelRow> rows) : kind_(kind), rows_(std::move(rows)) {}

    static void check_finite(std::initializer_list<double> values, const char* what)
    {
        for (double v : values)
            if (!std::isfinite(v))
                throw ValidationError(std::string(what) + " fuzzy number parameters must be finite");
    }

    static std::string row_message(const LevelRow& r, const char* what)
    {
        std::ostringstream s;
        s << "sampled row at gamma=" << r.gamma << ": " << what;
        return s.str();
    }

    FuzzyKind kind_;
    std::vector<LevelRow> rows_;
    Interval core_;
    std::pair<double, double> widths_{0.0, 0.0};
};

inline Interval level_set(const FuzzyNumber& a, double gamma) { return a.level_set(gamma); }

/// Sorted union of the breakpoints of several fuzzy numbers.
inline std::vector<double> merged_breakpoints(std::span<const FuzzyNumber* const> numbers)
{
    std::vector<double> g{0.0, 1.0};
    for (const FuzzyNumber* a : numbers)
        for (const auto& r : a->rows())
            g.push_back(r.gamma);
    std::sort(g.begin(), g.end());
    g.erase(std::unique(g.begin(), g.end()), g.end());
    return g;
}

/// sum_i lambda_i A_i by the level-set endpoint rules: sums add matching
/// endpoints, lambda >= 0 scales in place, lambda < 0 scales and swaps.
/// Combinations of parametric kinds stay parametric (point, triangular or
/// trapezoidal); anything involving a sampled number is sampled on the
/// union of the input grids, which is exact for piecewise-linear endpoints.
inline FuzzyNumber linear_combination(std::span<const std::pair<double, FuzzyNumber>> terms)
{
    if (terms.empty())
        throw InputError("linear_combination: empty term list");
    bool parametric = true;
    for (const auto& [lambda, a] : terms) {
        if (!std::isfinite(lambda))
            throw InputError("linear_combination: coefficients must be finite");
        parametric = parametric && a.kind() != FuzzyKind::sampled;
    }

    if (parametric) {
        double core_left = 0.0, core_right = 0.0, left = 0.0, right = 0.0;
        for (const auto& [lambda, a] : terms) {
            const Interval c = a.core();
            const Interval s = a.support();
            const double lw = c.lower - s.lower;
            const double rw = s.upper - c.upper;
            if (lambda >= 0.0) {
                core_left += lambda * c.lower;
                core_right += lambda * c.upper;
                left += lambda * lw;
                right += lambda * rw;
            } else {
                core_left += lambda * c.upper;
                core_right += lambda * c.lower;
                left += -lambda * rw;
                right += -lambda * lw;
            }
        }
        if (core_left > core_right)
            core_left = core_right = 0.5 * (core_left + core_right);
        if (left == 0.0 && right == 0.0 && core_left == core_right)
            return FuzzyNumber::point(core_left);
        return FuzzyNumber::trapezoidal(core_left, core_right, left, right);
    }

    std::vector<const FuzzyNumber*> ptrs;
    for (const auto& t : terms)
        ptrs.push_back(&t.second);
    std::vector<LevelRow> rows;
    for (double g : merged_breakpoints(ptrs)) {
        LevelRow row{g, 0.0, 0.0};
        for (const auto& [lambda, a] : terms) {
            const Interval lv = a.level_set_unchecked(g);
            if (lambda >= 0.0) {
                row.lower += lambda * lv.lower;
                row.upper += lambda * lv.upper;
            } else {
                row.lower += lambda * lv.upper;
                row.upper += lambda * lv.lower;
            }
        }
        rows.push_back(row);
    }
    // Rounding in the sums can break nestedness by an ulp; restore it.
    for (std::size_t i = 1; i < rows.size(); ++i) {
        rows[i].lower = std::max(rows[i].lower, rows[i - 1].lower);
        rows[i].upper = std::min(rows[i].upper, rows[i - 1].upper);
        rows[i].upper = std::max(rows[i].upper, rows[i].lower);
    }
    return FuzzyNumber::sampled(std::move(rows));
}

inline FuzzyNumber linear_combination(std::initializer_list<std::pair<double, FuzzyNumber>> terms)
{
    return linear_combination(std::span<const std::pair<double, FuzzyNumber>>(terms.begin(), terms.size()));
}

/// A + shift.
inline FuzzyNumber translate(const FuzzyNumber& a, double shift)
{
    return linear_combination({{1.0, a}, {1.0, FuzzyNumber::point(shift)}});
}

/// center + scale (A - center): shrinks or stretches the level sets about `center`.
inline FuzzyNumber scale_about(const FuzzyNumber& a, double scale, double center)
{
    return linear_combination({{scale, a}, {1.0, FuzzyNumber::point((1.0 - scale) * center)}});
}

} // namespace ppf
