#pragma once

#include <ppf/error.hpp>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

namespace ppf {

enum class UtilityFamily { cara, crra, log, quadratic, custom };

/// Open interval (lower, upper) of wealth levels where a utility is valid.
struct WealthDomain {
    double lower = -std::numeric_limits<double>::infinity();
    double upper = std::numeric_limits<double>::infinity();

    bool contains(double w) const { return w > lower && w < upper; }
    friend bool operator==(const WealthDomain&, const WealthDomain&) = default;
};

/// Increasing, concave C^2 utility of wealth with its first two derivatives.
///
/// Built-in families:
///   cara(lambda)    u = -exp(-lambda w)
///   crra(rho)       u = w^(1-rho) / (1-rho),   w > 0
///   log             u = ln w,                   w > 0
///   quadratic(b)    u = w - b w^2,              w < 1/(2b)
class UtilityFunction {
public:
    using Fn = std::function<double(double)>;

    static UtilityFunction cara(double lambda)
    {
        if (!(lambda > 0.0) || !std::isfinite(lambda))
            throw ValidationError("cara: lambda must be positive");
        UtilityFunction u(UtilityFamily::cara, lambda, {});
        return u;
    }

    static UtilityFunction crra(double rho)
    {
        if (!(rho > 0.0) || !std::isfinite(rho))
            throw ValidationError("crra: rho must be positive");
        if (rho == 1.0)
            throw ValidationError("crra: rho = 1 is the log utility; use log");
        return UtilityFunction(UtilityFamily::crra, rho, {0.0, std::numeric_limits<double>::infinity()});
    }

    static UtilityFunction log() { return UtilityFunction(UtilityFamily::log, 0.0, {0.0, std::numeric_limits<double>::infinity()}); }

    static UtilityFunction quadratic(double b)
    {
        if (!(b > 0.0) || !std::isfinite(b))
            throw ValidationError("quadratic: b must be positive");
        return UtilityFunction(UtilityFamily::quadratic, b,
                               {-std::numeric_limits<double>::infinity(), 1.0 / (2.0 * b)});
    }

    static UtilityFunction custom(Fn u, Fn du, Fn d2u, WealthDomain domain = {}, std::string label = "custom")
    {
        UtilityFunction out(UtilityFamily::custom, 0.0, domain);
        out.custom_ = std::make_shared<const CustomFns>(CustomFns{std::move(u), std::move(du), std::move(d2u)});
        out.label_ = std::move(label);
        return out;
    }

    UtilityFamily family() const { return family_; }
    double parameter() const { return param_; }
    const WealthDomain& domain() const { return domain_; }

    bool in_domain(double w) const { return std::isfinite(w) && domain_.contains(w); }

    void require_domain(double w) const
    {
        if (!in_domain(w)) {
            std::ostringstream s;
            s.precision(17);
            s << "wealth " << w << " lies outside the domain (" << domain_.lower << ", " << domain_.upper
              << ") of utility " << describe();
            throw DomainError(s.str());
        }
    }

    // Unchecked evaluators: callers validate the domain once per batch.
    double value(double w) const
    {
        switch (family_) {
        case UtilityFamily::cara:
            return -std::exp(-param_ * w);
        case UtilityFamily::crra:
            return std::pow(w, 1.0 - param_) / (1.0 - param_);
        case UtilityFamily::log:
            return std::log(w);
        case UtilityFamily::quadratic:
            return w - param_ * w * w;
        case UtilityFamily::custom:
            return custom_->u(w);
        }
        return 0.0;
    }

    double first(double w) const
    {
        switch (family_) {
        case UtilityFamily::cara:
            return param_ * std::exp(-param_ * w);
        case UtilityFamily::crra:
            return std::pow(w, -param_);
        case UtilityFamily::log:
            return 1.0 / w;
        case UtilityFamily::quadratic:
            return 1.0 - 2.0 * param_ * w;
        case UtilityFamily::custom:
            return custom_->du(w);
        }
        return 0.0;
    }

    double second(double w) const
    {
        switch (family_) {
        case UtilityFamily::cara:
            return -param_ * param_ * std::exp(-param_ * w);
        case UtilityFamily::crra:
            return -param_ * std::pow(w, -param_ - 1.0);
        case UtilityFamily::log:
            return -1.0 / (w * w);
        case UtilityFamily::quadratic:
            return -2.0 * param_;
        case UtilityFamily::custom:
            return custom_->d2u(w);
        }
        return 0.0;
    }

    /// True for families whose Arrow-Pratt index strictly decreases in wealth.
    bool decreasing_absolute_risk_aversion() const
    {
        return family_ == UtilityFamily::crra || family_ == UtilityFamily::log;
    }

    std::string describe() const
    {
        std::ostringstream s;
        s.precision(10);
        switch (family_) {
        case UtilityFamily::cara:
            s << "cara(" << param_ << ")";
            break;
        case UtilityFamily::crra:
            s << "crra(" << param_ << ")";
            break;
        case UtilityFamily::log:
            s << "log";
            break;
        case UtilityFamily::quadratic:
            s << "quadratic(" << param_ << ")";
            break;
        case UtilityFamily::custom:
            s << label_;
            break;
        }
        return s.str();
    }

    friend bool operator==(const UtilityFunction& a, const UtilityFunction& b)
    {
        return a.family_ == b.family_ && a.param_ == b.param_ && a.domain_ == b.domain_ && a.custom_ == b.custom_;
    }

private:
    struct CustomFns {
        Fn u, du, d2u;
    };

    UtilityFunction(UtilityFamily family, double param, WealthDomain domain)
        : family_(family), param_(param), domain_(domain)
    {
    }

    UtilityFamily family_;
    double param_;
    WealthDomain domain_;
    std::shared_ptr<const CustomFns> custom_;
    std::string label_;
};

/// -u''(w) / u'(w).
inline double arrow_pratt(const UtilityFunction& u, double w)
{
    u.require_domain(w);
    return -u.second(w) / u.first(w);
}

/// r_{u1}(w) >= r_{u2}(w) at every grid point.
inline bool more_risk_averse(const UtilityFunction& u1, const UtilityFunction& u2, const std::vector<double>& grid)
{
    if (grid.empty())
        throw InputError("more_risk_averse: empty wealth grid");
    for (double w : grid)
        if (arrow_pratt(u1, w) < arrow_pratt(u2, w))
            return false;
    return true;
}

struct DerivativeFinding {
    double wealth = 0.0;
    std::string problem;
};

struct DerivativeReport {
    std::vector<DerivativeFinding> findings;
    bool ok() const { return findings.empty(); }
};

/// Compares u' and u'' against central differences of u and u' (relative
/// tolerance 1e-5) and checks u' > 0, u'' < 0 at each grid point.
inline DerivativeReport check_derivatives(const UtilityFunction& u, const std::vector<double>& grid)
{
    constexpr double rel_tol = 1e-5;
    DerivativeReport rep;
    auto add = [&](double w, const std::string& what) { rep.findings.push_back({w, what}); };
    auto close = [&](double analytic, double numeric) {
        return std::abs(analytic - numeric) <= rel_tol * std::max({std::abs(analytic), std::abs(numeric), 1e-12});
    };
    for (double w : grid) {
        if (!u.in_domain(w)) {
            add(w, "outside utility domain");
            continue;
        }
        double h = 1e-4 * std::max(1.0, std::abs(w));
        const double room = std::min(w - u.domain().lower, u.domain().upper - w);
        h = std::min(h, 1e-3 * room);
        const double d1 = u.first(w);
        const double d2 = u.second(w);
        const double fd1 = (u.value(w + h) - u.value(w - h)) / (2.0 * h);
        const double fd2 = (u.first(w + h) - u.first(w - h)) / (2.0 * h);
        std::ostringstream s;
        s.precision(10);
        if (!close(d1, fd1)) {
            s << "u' = " << d1 << " disagrees with finite difference " << fd1;
            add(w, s.str());
            s.str("");
        }
        if (!close(d2, fd2)) {
            s << "u'' = " << d2 << " disagrees with finite difference " << fd2;
            add(w, s.str());
            s.str("");
        }
        if (!(d1 > 0.0))
            add(w, "u' is not positive");
        if (!(d2 < 0.0))
            add(w, "u'' is not negative");
    }
    return rep;
}

} // namespace ppf
