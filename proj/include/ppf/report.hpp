#pragma once

// Reports for the command-line tool. Every report is built as a JSON
// document first; the human table is rendered from that same document, so
// the two outputs always carry the same numbers.

#include <ppf/indicators.hpp>
#include <ppf/portfolio.hpp>
#include <ppf/scenario.hpp>

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace ppf {

using ordered_json = nlohmann::ordered_json;

struct Report {
    ordered_json doc;
    int exit_code = 0; // 0 ok, 3 a solver or degenerate error was reported inside doc
};

struct ReportOptions {
    QuadratureConfig quadrature;
    SolverOptions solver;
};

namespace detail {

inline ordered_json opt(const std::optional<double>& v) { return v ? ordered_json(*v) : ordered_json(nullptr); }

inline ordered_json header(const char* command, const ModelSpec& m)
{
    ordered_json h;
    h["command"] = command;
    h["model"] = short_name(m.tag);
    h["model_name"] = long_name(m.tag);
    h["market"] = {{"w0", m.market.w0}, {"w", m.market.w}, {"r", m.market.r}};
    h["investment"] = describe(m.investment);
    h["background"] = m.background ? ordered_json(describe(*m.background)) : ordered_json(nullptr);
    h["weighting"] = m.f.describe();
    h["utility"] = m.u.describe();
    h["quadrature"] = {{"nodes", m.q.node_count}, {"rule", to_string(m.q.rule)}};
    return h;
}

inline ordered_json indicators_json(const Indicators& ind)
{
    ordered_json j = ordered_json::object();
    if (ind.mean_a)
        j["E(f,A)"] = *ind.mean_a;
    if (ind.variance_a)
        j["Var(f,A)"] = *ind.variance_a;
    if (ind.covariance_ab)
        j["Cov(f,A,B)"] = *ind.covariance_ab;
    if (ind.mean_b)
        j["E(f,B)"] = *ind.mean_b;
    if (ind.mean_y)
        j["M(Y)"] = *ind.mean_y;
    if (ind.mean_x)
        j["M(X)"] = *ind.mean_x;
    if (ind.second_moment_x)
        j["M[(X-r)^2]"] = *ind.second_moment_x;
    return j;
}

// Closed-form and exact allocations of one model; errors are recorded, not thrown.
struct ModelRun {
    std::optional<Approximation> approx;
    std::optional<Solution> exact;
    std::string approx_error;
    std::string exact_error;
    bool failed = false;
};

inline ModelRun run_model(const ModelSpec& m, const SolverOptions& opts)
{
    ModelRun out;
    try {
        out.approx = approximate(m);
    } catch (const DegenerateError& e) {
        out.approx_error = e.what();
        out.failed = true;
    }
    try {
        out.exact = solve_exact(m, opts);
    } catch (const SolverError& e) {
        out.exact_error = e.what();
        out.failed = true;
    }
    return out;
}

inline bool close(double a, double b, double tol) { return std::abs(a - b) <= tol * (1.0 + std::abs(b)); }

} // namespace detail

/// Indicator snapshot of the scenario's risks.
inline Report indicators_report(const Scenario& s, const ReportOptions& opts)
{
    const ModelSpec m = s.model_spec(opts.quadrature);
    Report rep;
    rep.doc = detail::header("indicators", m);
    const WeightingReport& wr = m.f.report();
    rep.doc["weighting_check"] = {{"nonnegative", wr.nonnegative},
                                  {"monotone", wr.monotone},
                                  {"normalized", wr.normalized},
                                  {"integral", wr.integral}};

    auto risk_json = [&](const Risk& risk) {
        ordered_json j;
        if (const auto* a = std::get_if<FuzzyNumber>(&risk)) {
            const Interval sup = a->support();
            const Interval core = a->core();
            j["kind"] = "fuzzy";
            j["support"] = {sup.lower, sup.upper};
            j["core"] = {core.lower, core.upper};
            j["E(f,.)"] = expected_value(m.f, *a, m.q);
            j["Var(f,.)"] = variance(m.f, *a, m.q);
        } else {
            const auto& x = std::get<DiscreteRandomVariable>(risk);
            const double mu = mean(x);
            j["kind"] = "random";
            j["support"] = {x.min_value(), x.max_value()};
            j["atoms"] = x.size();
            j["M(.)"] = mu;
            j["variance"] = second_moment_about(x, mu);
            j["M[(.-r)^2]"] = second_moment_about(x, m.market.r);
        }
        return j;
    };
    ordered_json risks;
    risks["investment"] = risk_json(m.investment);
    if (m.background)
        risks["background"] = risk_json(*m.background);
    rep.doc["risks"] = risks;
    rep.doc["indicators"] = detail::indicators_json(indicators(m));
    rep.doc["arrow_pratt_at_w"] = arrow_pratt(m.u, m.market.w);
    rep.doc["status"] = "ok";
    return rep;
}

/// Exact and approximate allocation of the scenario's model with diagnostics.
inline Report solve_report(const Scenario& s, const ReportOptions& opts)
{
    const ModelSpec m = s.model_spec(opts.quadrature);
    Report rep;
    ordered_json& d = rep.doc;
    d = detail::header("solve", m);
    const detail::ModelRun run = detail::run_model(m, opts.solver);
    const Indicators ind = run.exact ? run.exact->indicators : indicators(m);
    d["indicators"] = detail::indicators_json(ind);

    ordered_json approx;
    if (run.approx) {
        approx["alpha_approx"] = run.approx->alpha;
        approx["baseline"] = run.approx->baseline;
        if (m.has_background())
            approx["background_adjustment"] = run.approx->adjustment;
        approx["denominator"] = run.approx->denominator;
    } else {
        approx["error"] = run.approx_error;
    }
    d["approximation"] = approx;

    ordered_json exact;
    if (run.exact) {
        exact["alpha_exact"] = run.exact->alpha_exact;
        exact["objective"] = run.exact->objective_at_exact;
        exact["derivative"] = run.exact->derivative_at_exact;
        exact["iterations"] = run.exact->iterations;
        exact["bracket"] = {run.exact->bracket.lower, run.exact->bracket.upper};
        exact["degenerate"] = run.exact->degenerate;
    } else {
        exact["error"] = run.exact_error;
    }
    d["exact"] = exact;
    d["gap"] = run.approx && run.exact && !run.exact->degenerate
                   ? ordered_json(run.exact->alpha_exact - run.approx->alpha)
                   : ordered_json(nullptr);

    if (m.tag == ModelTag::fuzzy_background || m.tag == ModelTag::random_background) {
        const OrderingCondition oc = ordering_condition(m);
        d["ordering"] = {{"predicted_background_lowers_alpha", oc.predicted},
                         {"condition_value", oc.value},
                         {"rate_threshold", detail::opt(oc.rate_threshold)}};
    }

    if (m.tag == ModelTag::possibilistic) {
        const double excess = *ind.mean_a - m.market.r;
        ordered_json mossin;
        mossin["excess_mean"] = excess;
        mossin["mean_equals_rate"] = std::abs(excess) <= 1e-12 * (1.0 + std::abs(m.market.r));
        mossin["alpha_exact_is_zero"] =
            run.exact ? ordered_json(std::abs(run.exact->alpha_exact) <= 1e-8) : ordered_json(nullptr);
        d["mossin"] = mossin;
    } else if (m.tag == ModelTag::fuzzy_background || m.tag == ModelTag::random_background) {
        const ModelSpec base = without_background(m);
        const detail::ModelRun b = detail::run_model(base, opts.solver);
        ordered_json baseline;
        baseline["alpha_exact"] = b.exact ? ordered_json(b.exact->alpha_exact) : ordered_json(nullptr);
        baseline["alpha_approx"] = b.approx ? ordered_json(b.approx->alpha) : ordered_json(nullptr);
        const bool approx_equal = run.approx && b.approx && detail::close(run.approx->alpha, b.approx->alpha, 1e-10);
        const bool exact_equal = run.exact && b.exact && detail::close(run.exact->alpha_exact, b.exact->alpha_exact, 1e-10);
        baseline["equals_M1"] = approx_equal && exact_equal;
        if (approx_equal && exact_equal)
            baseline["note"] = "background risk has no effect: allocation equals the M1 baseline";
        d["m1_baseline"] = baseline;
    }

    if (run.failed) {
        d["status"] = "error";
        rep.exit_code = 3;
    } else {
        d["status"] = "ok";
    }
    return rep;
}

/// Side-by-side allocations for every model the scenario's risks can instantiate.
inline Report compare_report(const Scenario& s, const ReportOptions& opts)
{
    std::optional<RiskLiteral> a, x, b, y;
    auto take = [](const std::optional<RiskLiteral>& lit, std::optional<RiskLiteral>& fuzzy,
                   std::optional<RiskLiteral>& random) {
        if (!lit)
            return;
        (lit->fuzzy() ? fuzzy : random) = *lit;
    };
    take(s.investment, a, x);
    take(s.alternate_investment, a, x);
    take(s.background, b, y);
    take(s.alternate_background, b, y);
    if (!a)
        throw ScenarioError("compare needs a fuzzy investment risk A for the M1 baseline; add it as "
                            "\"investment\" or \"alternate\": {\"investment\": ...}",
                            "/investment");

    struct Entry {
        ModelTag tag;
        ModelSpec spec;
    };
    std::vector<Entry> entries;
    const QuadratureConfig& q = opts.quadrature;
    entries.push_back({ModelTag::possibilistic, s.build(ModelTag::possibilistic, a->materialize(), std::nullopt, q)});
    if (b)
        entries.push_back({ModelTag::fuzzy_background,
                           s.build(ModelTag::fuzzy_background, a->materialize(), b->materialize(), q)});
    if (y)
        entries.push_back({ModelTag::random_background,
                           s.build(ModelTag::random_background, a->materialize(), y->materialize(), q)});
    if (x && b)
        entries.push_back({ModelTag::random_investment,
                           s.build(ModelTag::random_investment, x->materialize(), b->materialize(), q)});

    Report rep;
    ordered_json& d = rep.doc;
    d = detail::header("compare", entries.front().spec);
    d.erase("model");
    d.erase("model_name");
    d.erase("investment");
    d.erase("background");
    d["risks"] = {{"A", describe(a->materialize())},
                  {"B", b ? ordered_json(describe(b->materialize())) : ordered_json(nullptr)},
                  {"X", x ? ordered_json(describe(x->materialize())) : ordered_json(nullptr)},
                  {"Y", y ? ordered_json(describe(y->materialize())) : ordered_json(nullptr)}};

    ordered_json rows = ordered_json::array();
    std::optional<double> m1_approx, m2_adj, m3_adj, cov_term;
    bool failed = false;
    for (const auto& e : entries) {
        const detail::ModelRun run = detail::run_model(e.spec, opts.solver);
        failed = failed || run.failed;
        ordered_json row;
        row["model"] = short_name(e.tag);
        row["alpha_exact"] = run.exact && !run.exact->degenerate ? ordered_json(run.exact->alpha_exact)
                                                                   : ordered_json(nullptr);
        row["alpha_approx"] = run.approx ? ordered_json(run.approx->alpha) : ordered_json(nullptr);
        row["adjustment"] = run.approx && e.tag != ModelTag::possibilistic ? ordered_json(run.approx->adjustment)
                                                                             : ordered_json(nullptr);
        if (e.tag == ModelTag::fuzzy_background || e.tag == ModelTag::random_background) {
            const OrderingCondition oc = ordering_condition(e.spec);
            row["condition"] = oc.value;
            row["lowers_alpha"] = oc.predicted;
        } else {
            row["condition"] = nullptr;
            row["lowers_alpha"] = nullptr;
        }
        std::string note = run.exact_error.empty() ? run.approx_error : run.exact_error;
        if (run.exact && run.exact->degenerate)
            note = "degenerate: objective constant in alpha";
        row["note"] = note;
        rows.push_back(row);

        if (run.approx) {
            if (e.tag == ModelTag::possibilistic)
                m1_approx = run.approx->alpha;
            if (e.tag == ModelTag::fuzzy_background) {
                m2_adj = run.approx->adjustment;
                cov_term = -*run.approx->indicators.covariance_ab / run.approx->denominator;
            }
            if (e.tag == ModelTag::random_background)
                m3_adj = run.approx->adjustment;
        }
    }
    d["models"] = rows;

    ordered_json orderings = ordered_json::array();
    if (m1_approx) {
        for (const auto& row : rows) {
            if (row["model"] == "M1" || row["model"] == "M4" || row["alpha_approx"].is_null())
                continue;
            const double alpha = row["alpha_approx"].get<double>();
            orderings.push_back({{"model", row["model"]},
                                 {"approx_below_M1", alpha <= *m1_approx},
                                 {"predicted", row["lowers_alpha"]}});
        }
    }
    d["orderings"] = orderings;
    if (m2_adj && m3_adj) {
        d["M2_minus_M3_adjustment"] = *m2_adj - *m3_adj;
        d["covariance_term"] = *cov_term;
    }
    d["status"] = failed ? "error" : "ok";
    rep.exit_code = failed ? 3 : 0;
    return rep;
}

/// Re-solves the model over the scenario's sweep grid (future wealth w or risk scale).
inline Report sweep_report(const Scenario& s, const ReportOptions& opts)
{
    if (!s.sweep)
        throw ScenarioError("sweep command needs a \"sweep\" section in the scenario", "/sweep");
    const ModelSpec m = s.model_spec(opts.quadrature);
    Report rep;
    ordered_json& d = rep.doc;
    d = detail::header("sweep", m);
    const bool by_wealth = s.sweep->kind == SweepSpec::Kind::wealth;
    d["sweep"] = by_wealth ? "wealth" : "risk_scale";

    ordered_json rows = ordered_json::array();
    bool failed = false;
    std::optional<double> prev_w, prev_approx;
    ordered_json violations = ordered_json::array();
    for (double v : s.sweep->values) {
        ordered_json row;
        row[by_wealth ? "w" : "scale"] = v;
        std::string note;
        std::optional<double> exact, approx;
        try {
            const ModelSpec mv = by_wealth ? with_wealth(m, v) : scale_risks(m, v);
            const detail::ModelRun run = detail::run_model(mv, opts.solver);
            failed = failed || run.failed;
            if (run.exact && !run.exact->degenerate)
                exact = run.exact->alpha_exact;
            if (run.approx)
                approx = run.approx->alpha;
            note = run.exact_error.empty() ? run.approx_error : run.exact_error;
        } catch (const DomainError& e) {
            failed = true;
            note = e.what();
        } catch (const ValidationError& e) {
            failed = true;
            note = e.what();
        }
        row["alpha_exact"] = detail::opt(exact);
        row["alpha_approx"] = detail::opt(approx);
        row["relative_error"] = exact && approx && *exact != 0.0 ? ordered_json(std::abs(*exact - *approx) / std::abs(*exact))
                                                                : ordered_json(nullptr);
        row["note"] = note;
        rows.push_back(row);

        if (by_wealth && m.u.decreasing_absolute_risk_aversion() && approx) {
            if (prev_w && prev_approx && v > *prev_w && *approx < *prev_approx)
                violations.push_back(v);
            prev_w = v;
            prev_approx = approx;
        }
    }
    d["rows"] = rows;
    if (by_wealth)
        d["dara_monotonicity_violations"] = violations;
    d["status"] = failed ? "error" : "ok";
    rep.exit_code = failed ? 3 : 0;
    return rep;
}

// ---------------------------------------------------------------------------
// Table rendering

/// Ten significant digits, as used for every number in the table.
inline std::string format_number(const ordered_json& v)
{
    if (v.is_number_integer() || v.is_number_unsigned())
        return v.dump();
    const double x = v.get<double>();
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", x);
    return buf;
}

namespace detail {

inline std::string cell(const ordered_json& v)
{
    if (v.is_null())
        return "-";
    if (v.is_boolean())
        return v.get<bool>() ? "yes" : "no";
    if (v.is_number())
        return format_number(v);
    if (v.is_string())
        return v.get<std::string>();
    if (v.is_array()) {
        std::string out = "[";
        for (std::size_t i = 0; i < v.size(); ++i)
            out += (i ? ", " : "") + cell(v[i]);
        return out + "]";
    }
    std::string out = "{";
    bool first = true;
    for (auto it = v.begin(); it != v.end(); ++it) {
        out += (first ? "" : ", ") + it.key() + "=" + cell(it.value());
        first = false;
    }
    return out + "}";
}

inline bool is_row_table(const ordered_json& v)
{
    return v.is_array() && !v.empty() &&
           std::all_of(v.begin(), v.end(), [](const ordered_json& r) { return r.is_object(); });
}

inline void render_rows(std::ostringstream& out, const ordered_json& rows, const std::string& indent)
{
    std::vector<std::string> keys;
    for (const auto& r : rows)
        for (auto it = r.begin(); it != r.end(); ++it)
            if (std::find(keys.begin(), keys.end(), it.key()) == keys.end())
                keys.push_back(it.key());
    std::vector<std::vector<std::string>> cells;
    std::vector<std::size_t> width(keys.size());
    for (std::size_t k = 0; k < keys.size(); ++k)
        width[k] = keys[k].size();
    for (const auto& r : rows) {
        std::vector<std::string> line;
        for (std::size_t k = 0; k < keys.size(); ++k) {
            line.push_back(r.contains(keys[k]) ? cell(r[keys[k]]) : "-");
            width[k] = std::max(width[k], line.back().size());
        }
        cells.push_back(std::move(line));
    }
    auto emit = [&](const std::vector<std::string>& line) {
        std::string s = indent;
        for (std::size_t k = 0; k < line.size(); ++k) {
            s += line[k];
            if (k + 1 < line.size())
                s += std::string(width[k] - line[k].size() + 2, ' ');
        }
        while (!s.empty() && s.back() == ' ')
            s.pop_back();
        out << s << '\n';
    };
    emit(keys);
    for (const auto& line : cells)
        emit(line);
}

inline void render_object(std::ostringstream& out, const ordered_json& obj, const std::string& indent)
{
    std::size_t width = 0;
    for (auto it = obj.begin(); it != obj.end(); ++it)
        if (!it.value().is_object() && !is_row_table(it.value()))
            width = std::max(width, it.key().size());
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        const ordered_json& v = it.value();
        if (v.is_object() && !v.empty()) {
            out << indent << it.key() << ":\n";
            render_object(out, v, indent + "  ");
        } else if (is_row_table(v)) {
            out << indent << it.key() << ":\n";
            render_rows(out, v, indent + "  ");
        } else {
            out << indent << it.key() << std::string(width - it.key().size() + 2, ' ') << cell(v) << '\n';
        }
    }
}

} // namespace detail

/// Human-readable rendering of a report document.
inline std::string render_table(const ordered_json& doc)
{
    std::ostringstream out;
    detail::render_object(out, doc, "");
    return out.str();
}

} // namespace ppf
