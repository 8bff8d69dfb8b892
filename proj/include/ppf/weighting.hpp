#pragma once

#include <ppf/error.hpp>
#include <ppf/quadrature.hpp>

#include <cmath>
#include <functional>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

namespace ppf {

/// Outcome of checking a candidate weighting function on a grid.
struct WeightingReport {
    bool nonnegative = true;
    bool monotone = true;
    bool normalized = true;
    double integral = 0.0;
    double first_violation = -1.0; // gamma of the first grid failure, -1 if none
    std::string message;

    bool ok() const { return nonnegative && monotone && normalized; }
};

/// Checks f >= 0 and weak monotonicity on a uniform grid of grid_size points,
/// and |int_0^1 f - 1| <= q.tolerance.
inline WeightingReport validate_weighting(const std::function<double(double)>& f, int grid_size,
                                          const QuadratureConfig& q = {256, QuadratureRule::gauss_legendre, 1e-9})
{
    if (grid_size < 2)
        throw InputError("validate_weighting: grid_size must be >= 2");
    WeightingReport rep;
    std::ostringstream msg;
    double prev = 0.0;
    for (int i = 0; i < grid_size; ++i) {
        const double g = static_cast<double>(i) / (grid_size - 1);
        const double v = f(g);
        if (!std::isfinite(v) || v < 0.0) {
            if (rep.nonnegative) {
                msg << "negative or non-finite value " << v << " at gamma=" << g << "; ";
                if (rep.first_violation < 0)
                    rep.first_violation = g;
            }
            rep.nonnegative = false;
        }
        if (i > 0 && v < prev) {
            if (rep.monotone) {
                msg << "decreases at gamma=" << g << "; ";
                if (rep.first_violation < 0)
                    rep.first_violation = g;
            }
            rep.monotone = false;
        }
        prev = v;
    }
    rep.integral = integrate_unit(q, f);
    if (!(std::abs(rep.integral - 1.0) <= q.tolerance)) {
        rep.normalized = false;
        msg << "normality condition fails: integral of f over [0,1] is " << rep.integral << ", expected 1; ";
    }
    rep.message = msg.str();
    if (rep.message.size() >= 2)
        rep.message.resize(rep.message.size() - 2);
    return rep;
}

enum class WeightingKind { power, uniform, custom };

/// A weighting function f on [0,1]. Built-in families are normalized by
/// construction; custom ones are checked once when constructed and carry
/// the report. Indicator functions refuse an invalid weighting.
class WeightingFunction {
public:
    /// f(g) = (n+1) g^n.
    static WeightingFunction power(double n)
    {
        if (!(n >= 0.0) || !std::isfinite(n))
            throw ValidationError("power weighting exponent must be a finite non-negative number");
        WeightingFunction w(WeightingKind::power, n, [n](double g) { return (n + 1.0) * std::pow(g, n); });
        return w;
    }

    static WeightingFunction uniform()
    {
        return WeightingFunction(WeightingKind::uniform, 0.0, [](double) { return 1.0; });
    }

    /// A user-supplied evaluator; `label` identifies it for equality and printing.
    static WeightingFunction custom(std::function<double(double)> fn, std::string label = "custom",
                                    int grid_size = 101)
    {
        WeightingFunction w(WeightingKind::custom, 0.0, std::move(fn));
        w.label_ = std::move(label);
        w.report_ = validate_weighting(*w.fn_, grid_size);
        return w;
    }

    /// Custom weighting given by polynomial coefficients c0 + c1 g + c2 g^2 + ...
    static WeightingFunction polynomial(std::vector<double> coefficients)
    {
        if (coefficients.empty())
            throw InputError("polynomial weighting needs at least one coefficient");
        std::ostringstream label;
        label << "polynomial[";
        for (std::size_t i = 0; i < coefficients.size(); ++i)
            label << (i ? "," : "") << coefficients[i];
        label << "]";
        auto w = custom(
            [c = coefficients](double g) {
                double acc = 0.0;
                for (auto it = c.rbegin(); it != c.rend(); ++it)
                    acc = acc * g + *it;
                return acc;
            },
            label.str());
        w.coefficients_ = std::move(coefficients);
        return w;
    }

    double operator()(double gamma) const { return (*fn_)(gamma); }

    WeightingKind kind() const { return kind_; }
    double exponent() const { return exponent_; }
    const std::vector<double>& coefficients() const { return coefficients_; }
    const WeightingReport& report() const { return report_; }
    bool valid() const { return report_.ok(); }

    void require_valid() const
    {
        if (!valid())
            throw ValidationError("invalid weighting function " + describe() + ": " + report_.message);
    }

    std::string describe() const
    {
        switch (kind_) {
        case WeightingKind::power: {
            std::ostringstream s;
            s << "power(" << exponent_ << ")";
            return s.str();
        }
        case WeightingKind::uniform:
            return "uniform";
        case WeightingKind::custom:
            return label_;
        }
        return label_;
    }

    std::function<double(double)> evaluator() const { return *fn_; }

    friend bool operator==(const WeightingFunction& a, const WeightingFunction& b)
    {
        if (a.kind_ != b.kind_)
            return false;
        switch (a.kind_) {
        case WeightingKind::power:
            return a.exponent_ == b.exponent_;
        case WeightingKind::uniform:
            return true;
        case WeightingKind::custom:
            if (!a.coefficients_.empty() || !b.coefficients_.empty())
                return a.coefficients_ == b.coefficients_;
            return a.fn_ == b.fn_;
        }
        return false;
    }

private:
    WeightingFunction(WeightingKind kind, double exponent, std::function<double(double)> fn)
        : kind_(kind), exponent_(exponent), fn_(std::make_shared<const std::function<double(double)>>(std::move(fn)))
    {
        report_.integral = 1.0;
    }

    WeightingKind kind_;
    double exponent_ = 0.0;
    std::shared_ptr<const std::function<double(double)>> fn_;
    std::vector<double> coefficients_;
    std::string label_;
    WeightingReport report_;
};

/// Report for any weighting object on a caller-chosen grid.
inline WeightingReport validate_weighting(const WeightingFunction& f, int grid_size)
{
    return validate_weighting(f.evaluator(), grid_size);
}

} // namespace ppf
