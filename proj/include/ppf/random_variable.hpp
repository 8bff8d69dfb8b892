#pragma once

#include <ppf/error.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

namespace ppf {

struct Atom {
    double value = 0.0;
    double probability = 0.0;
    friend bool operator==(const Atom&, const Atom&) = default;
};

/// Finite discrete random variable. Probabilities must be non-negative and
/// sum to 1 within 1e-12; nothing is renormalized.
class DiscreteRandomVariable {
public:
    static constexpr double probability_tolerance = 1e-12;

    explicit DiscreteRandomVariable(std::vector<Atom> atoms) : atoms_(std::move(atoms))
    {
        if (atoms_.empty())
            throw ValidationError("random variable needs at least one atom");
        double total = 0.0;
        for (const auto& a : atoms_) {
            if (!std::isfinite(a.value) || !std::isfinite(a.probability))
                throw ValidationError("random variable atoms must be finite");
            if (a.probability < 0.0)
                throw ValidationError("random variable has a negative probability");
            total += a.probability;
        }
        if (std::abs(total - 1.0) > probability_tolerance) {
            std::ostringstream s;
            s.precision(17);
            s << "random variable probabilities sum to " << total << ", not 1";
            throw ValidationError(s.str());
        }
    }

    static DiscreteRandomVariable degenerate(double value) { return DiscreteRandomVariable({{value, 1.0}}); }

    const std::vector<Atom>& atoms() const { return atoms_; }
    std::size_t size() const { return atoms_.size(); }

    double min_value() const
    {
        double m = atoms_.front().value;
        for (const auto& a : atoms_)
            m = std::min(m, a.value);
        return m;
    }

    double max_value() const
    {
        double m = atoms_.front().value;
        for (const auto& a : atoms_)
            m = std::max(m, a.value);
        return m;
    }

    std::string describe() const
    {
        std::ostringstream s;
        s.precision(10);
        s << "discrete(" << atoms_.size() << " atoms, range [" << min_value() << ", " << max_value() << "])";
        return s.str();
    }

    friend bool operator==(const DiscreteRandomVariable&, const DiscreteRandomVariable&) = default;

private:
    std::vector<Atom> atoms_;
};

/// M(h(X)) = sum_i p_i h(x_i).
template <class H>
double expectation(const DiscreteRandomVariable& x, H&& h)
{
    double acc = 0.0;
    for (const auto& a : x.atoms())
        acc += a.probability * h(a.value);
    return acc;
}

inline double mean(const DiscreteRandomVariable& x)
{
    return expectation(x, [](double v) { return v; });
}

/// M[(X - about)^2].
inline double second_moment_about(const DiscreteRandomVariable& x, double about)
{
    return expectation(x, [about](double v) { return (v - about) * (v - about); });
}

/// c + s (X - c): atoms moved toward (s < 1) or away from `center`.
inline DiscreteRandomVariable scale_about(const DiscreteRandomVariable& x, double scale, double center)
{
    std::vector<Atom> atoms = x.atoms();
    for (auto& a : atoms)
        a.value = center + scale * (a.value - center);
    return DiscreteRandomVariable(std::move(atoms));
}

/// Gauss-Hermite discretization of N(mu, sigma^2) with n atoms.
/// sigma = 0 gives the single atom mu.
inline DiscreteRandomVariable discretize_normal(double mu, double sigma, int n)
{
    if (!std::isfinite(mu) || !std::isfinite(sigma))
        throw DomainError("discretize_normal: parameters must be finite");
    if (sigma < 0.0)
        throw DomainError("discretize_normal: sigma must be non-negative");
    if (n < 1)
        throw InputError("discretize_normal: need at least one node");
    if (sigma == 0.0 || n == 1)
        return DiscreteRandomVariable::degenerate(mu);

    // Nodes of the physicists' Hermite polynomial H_n by Newton iteration on
    // the orthonormal recurrence; weights w_i / sqrt(pi) are probabilities.
    std::vector<double> z(static_cast<std::size_t>(n));
    std::vector<double> w(static_cast<std::size_t>(n));
    const double pim4 = std::pow(std::numbers::pi, -0.25);
    const int half = (n + 1) / 2;
    double x = 0.0;
    for (int i = 0; i < half; ++i) {
        if (i == 0)
            x = std::sqrt(2.0 * n + 1.0) - 1.85575 * std::pow(2.0 * n + 1.0, -1.0 / 6.0);
        else if (i == 1)
            x -= 1.14 * std::pow(static_cast<double>(n), 0.426) / x;
        else if (i == 2)
            x = 1.86 * x - 0.86 * z[0];
        else if (i == 3)
            x = 1.91 * x - 0.91 * z[1];
        else
            x = 2.0 * x - z[static_cast<std::size_t>(i - 2)];
        double pp = 0.0;
        for (int it = 0; it < 200; ++it) {
            double p1 = pim4;
            double p2 = 0.0;
            for (int j = 1; j <= n; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = x * std::sqrt(2.0 / j) * p2 - std::sqrt(static_cast<double>(j - 1) / j) * p3;
            }
            pp = std::sqrt(2.0 * n) * p2;
            const double dx = p1 / pp;
            x -= dx;
            if (std::abs(dx) <= 1e-15 * std::max(1.0, std::abs(x)))
                break;
        }
        z[static_cast<std::size_t>(i)] = x;
        z[static_cast<std::size_t>(n - 1 - i)] = -x;
        w[static_cast<std::size_t>(i)] = 2.0 / (pp * pp);
        w[static_cast<std::size_t>(n - 1 - i)] = w[static_cast<std::size_t>(i)];
    }
    if (n % 2 == 1)
        z[static_cast<std::size_t>(n / 2)] = 0.0;

    double total = 0.0;
    for (double wi : w)
        total += wi;
    std::vector<Atom> atoms;
    atoms.reserve(static_cast<std::size_t>(n));
    // Ascending values; the weight total is sqrt(pi) up to rounding.
    for (int i = n - 1; i >= 0; --i) {
        const auto k = static_cast<std::size_t>(i);
        atoms.push_back({mu + sigma * std::numbers::sqrt2 * z[k], w[k] / total});
    }
    return DiscreteRandomVariable(std::move(atoms));
}

} // namespace ppf
