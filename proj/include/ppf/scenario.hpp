#pragma once

// Scenario files: a JSON description of one allocation problem.
//
//   {
//     "model": "M1" | "M2" | "M3" | "M4"  (or the long names, e.g. "M3_poss_prob_background"),
//     "market": {"w0": 1.0, "r": 0.02}           (or {"w": 1.02, "r": 0.02}),
//     "investment": <risk>,
//     "background": <risk> | null,
//     "alternate": {"investment": <risk>, "background": <risk>},   optional, used by compare
//     "weighting": {"power": 1} | "uniform" | {"custom": {"polynomial": [c0, c1, ...]}},
//     "utility": {"cara": {"lambda": 2}} | {"crra": {"rho": 3}} | "log" | {"quadratic": {"b": 0.1}},
//     "quadrature": {"nodes": 64, "rule": "gauss_legendre" | "composite_simpson"},
//     "sweep": {"wealth": [1, 2, 4, 8]} | {"risk_scale": [1, 0.1, 0.01]}
//   }
//
// <risk> is one of
//   {"triangular": {"center": c, "left_width": l, "right_width": r}}
//   {"trapezoidal": {"core_left": a, "core_right": b, "left_width": l, "right_width": r}}
//   {"point": v}
//   {"sampled": [[gamma, lower, upper], ...]}
//   {"discrete": [[value, probability], ...]}
//   {"normal": {"mean": m, "sd": s, "nodes": n}}
//
// Only "model", "market", "investment" and "utility" are required.

#include <ppf/error.hpp>
#include <ppf/fuzzy_number.hpp>
#include <ppf/portfolio.hpp>
#include <ppf/quadrature.hpp>
#include <ppf/random_variable.hpp>
#include <ppf/utility.hpp>
#include <ppf/weighting.hpp>

#include <json.hpp>

#include <cstddef>
#include <fstream>
#include <iterator>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace ppf {

/// Scenario rejected; carries the JSON pointer and source line of the culprit when known.
class ScenarioError : public ValidationError {
public:
    ScenarioError(const std::string& message, std::string pointer = {}, int line = 0)
        : ValidationError(format(message, pointer, line)), pointer_(std::move(pointer)), line_(line)
    {
    }

    const std::string& pointer() const { return pointer_; }
    int line() const { return line_; }

private:
    static std::string format(const std::string& message, const std::string& pointer, int line)
    {
        std::ostringstream s;
        if (line > 0)
            s << "line " << line << ": ";
        if (!pointer.empty())
            s << pointer << ": ";
        s << message;
        return s.str();
    }

    std::string pointer_;
    int line_;
};

/// A risk exactly as written in the file.
struct RiskLiteral {
    enum class Kind { triangular, trapezoidal, point, sampled, discrete, normal };

    Kind kind = Kind::point;
    std::vector<double> params; // triangular: c,l,r  trapezoidal: cl,cr,lw,rw  point: v  normal: mean,sd,nodes
    std::vector<LevelRow> rows;
    std::vector<Atom> atoms;

    bool fuzzy() const { return kind == Kind::triangular || kind == Kind::trapezoidal || kind == Kind::point || kind == Kind::sampled; }

    Risk materialize() const
    {
        switch (kind) {
        case Kind::triangular:
            return FuzzyNumber::triangular(params[0], params[1], params[2]);
        case Kind::trapezoidal:
            return FuzzyNumber::trapezoidal(params[0], params[1], params[2], params[3]);
        case Kind::point:
            return FuzzyNumber::point(params[0]);
        case Kind::sampled:
            return FuzzyNumber::sampled(rows);
        case Kind::discrete:
            return DiscreteRandomVariable(atoms);
        case Kind::normal:
            return discretize_normal(params[0], params[1], static_cast<int>(params[2]));
        }
        throw InputError("unknown risk literal");
    }

    friend bool operator==(const RiskLiteral&, const RiskLiteral&) = default;
};

struct WeightingLiteral {
    WeightingKind kind = WeightingKind::power;
    double exponent = 1.0;
    std::vector<double> coefficients;

    WeightingFunction make() const
    {
        switch (kind) {
        case WeightingKind::power:
            return WeightingFunction::power(exponent);
        case WeightingKind::uniform:
            return WeightingFunction::uniform();
        case WeightingKind::custom:
            return WeightingFunction::polynomial(coefficients);
        }
        throw InputError("unknown weighting");
    }

    friend bool operator==(const WeightingLiteral&, const WeightingLiteral&) = default;
};

struct UtilityLiteral {
    UtilityFamily family = UtilityFamily::cara;
    double parameter = 1.0;

    UtilityFunction make() const
    {
        switch (family) {
        case UtilityFamily::cara:
            return UtilityFunction::cara(parameter);
        case UtilityFamily::crra:
            return UtilityFunction::crra(parameter);
        case UtilityFamily::log:
            return UtilityFunction::log();
        case UtilityFamily::quadratic:
            return UtilityFunction::quadratic(parameter);
        case UtilityFamily::custom:
            break;
        }
        throw InputError("custom utilities cannot be read from scenario files");
    }

    friend bool operator==(const UtilityLiteral&, const UtilityLiteral&) = default;
};

struct SweepSpec {
    enum class Kind { wealth, risk_scale };
    Kind kind = Kind::wealth;
    std::vector<double> values;
    friend bool operator==(const SweepSpec&, const SweepSpec&) = default;
};

struct Scenario {
    ModelTag model = ModelTag::possibilistic;
    bool wealth_is_initial = true; // market given as w0 (true) or w (false)
    double wealth = 1.0;
    double r = 0.0;
    RiskLiteral investment;
    std::optional<RiskLiteral> background;
    std::optional<RiskLiteral> alternate_investment;
    std::optional<RiskLiteral> alternate_background;
    WeightingLiteral weighting;
    UtilityLiteral utility;
    std::optional<int> quadrature_nodes;
    std::optional<QuadratureRule> quadrature_rule;
    std::optional<SweepSpec> sweep;

    MarketSpec market() const
    {
        return wealth_is_initial ? MarketSpec::from_initial(wealth, r) : MarketSpec::from_future(wealth, r);
    }

    /// Quadrature settings: explicit override > file > default_nodes.
    QuadratureConfig quadrature(int default_nodes = 64, std::optional<int> override_nodes = {}) const
    {
        QuadratureConfig q;
        q.node_count = override_nodes.value_or(quadrature_nodes.value_or(default_nodes));
        q.rule = quadrature_rule.value_or(QuadratureRule::gauss_legendre);
        return q;
    }

    /// The model named by "model", built from the primary risks.
    ModelSpec model_spec(const QuadratureConfig& q) const
    {
        return build(model, investment.materialize(),
                     background ? std::optional<Risk>(background->materialize()) : std::nullopt, q);
    }

    ModelSpec build(ModelTag tag, Risk inv, std::optional<Risk> bg, const QuadratureConfig& q) const
    {
        ModelSpec m;
        m.tag = tag;
        m.market = market();
        m.investment = std::move(inv);
        m.background = std::move(bg);
        m.f = weighting.make();
        m.u = utility.make();
        m.q = q;
        return m;
    }

    friend bool operator==(const Scenario&, const Scenario&) = default;
};

namespace detail {

using json = nlohmann::json;

// Iterator over a character buffer that counts newlines. A newline is counted
// when the character after it is read, so a token followed by a newline that the
// lexer peeked at still reports its own line.
struct LineCounter {
    int line = 1;
    bool pending = false;
};

class LineCountingIterator {
public:
    using iterator_category = std::input_iterator_tag;
    using value_type = char;
    using difference_type = std::ptrdiff_t;
    using pointer = const char*;
    using reference = const char&;

    LineCountingIterator() = default;
    LineCountingIterator(const char* p, LineCounter* counter) : p_(p), counter_(counter) {}

    reference operator*() const
    {
        if (counter_->pending) {
            ++counter_->line;
            counter_->pending = false;
        }
        return *p_;
    }
    LineCountingIterator& operator++()
    {
        if (*p_ == '\n')
            counter_->pending = true;
        ++p_;
        return *this;
    }
    LineCountingIterator operator++(int)
    {
        auto tmp = *this;
        ++*this;
        return tmp;
    }
    friend bool operator==(const LineCountingIterator& a, const LineCountingIterator& b) { return a.p_ == b.p_; }

private:
    const char* p_ = nullptr;
    LineCounter* counter_ = nullptr;
};

// SAX pass recording the source line of every JSON pointer.
class LineMapper : public nlohmann::json_sax<json> {
public:
    explicit LineMapper(const LineCounter* counter) : counter_(counter) {}

    std::map<std::string, int> lines;

    bool null() override { return scalar(); }
    bool boolean(bool) override { return scalar(); }
    bool number_integer(number_integer_t) override { return scalar(); }
    bool number_unsigned(number_unsigned_t) override { return scalar(); }
    bool number_float(number_float_t, const string_t&) override { return scalar(); }
    bool string(string_t&) override { return scalar(); }
    bool binary(binary_t&) override { return scalar(); }

    bool start_object(std::size_t) override
    {
        open();
        stack_.push_back({false, 0, {}});
        return true;
    }
    bool key(string_t& k) override
    {
        stack_.back().key = k;
        lines.emplace(path_with(escape(k)), counter_->line);
        return true;
    }
    bool end_object() override { return close(); }
    bool start_array(std::size_t) override
    {
        open();
        stack_.push_back({true, 0, {}});
        return true;
    }
    bool end_array() override { return close(); }
    bool parse_error(std::size_t, const std::string&, const nlohmann::detail::exception&) override { return false; }

private:
    struct Frame {
        bool array;
        std::size_t index;
        std::string key;
    };

    static std::string escape(const std::string& k)
    {
        std::string out;
        for (char c : k) {
            if (c == '~')
                out += "~0";
            else if (c == '/')
                out += "~1";
            else
                out += c;
        }
        return out;
    }

    std::string path() const
    {
        std::string p;
        for (const auto& f : stack_)
            p += "/" + (f.array ? std::to_string(f.index) : escape(f.key));
        return p;
    }

    std::string path_with(const std::string& last) const
    {
        std::string p;
        for (std::size_t i = 0; i + 1 < stack_.size(); ++i)
            p += "/" + (stack_[i].array ? std::to_string(stack_[i].index) : escape(stack_[i].key));
        return p + "/" + last;
    }

    void open()
    {
        if (!stack_.empty() && stack_.back().array)
            lines.emplace(path(), counter_->line);
    }

    bool scalar()
    {
        open();
        if (!stack_.empty() && stack_.back().array)
            ++stack_.back().index;
        return true;
    }

    bool close()
    {
        stack_.pop_back();
        if (!stack_.empty() && stack_.back().array)
            ++stack_.back().index;
        return true;
    }

    const LineCounter* counter_;
    std::vector<Frame> stack_;
};

class ScenarioReader {
public:
    ScenarioReader(const json& doc, std::map<std::string, int> lines) : doc_(doc), lines_(std::move(lines)) {}

    Scenario read()
    {
        if (!doc_.is_object())
            fail("", "scenario must be a JSON object");
        allow_keys("", doc_,
                   {"model", "market", "investment", "background", "alternate", "weighting", "utility", "quadrature",
                    "sweep"});
        Scenario s;
        s.model = read_model("/model", required(doc_, "", "model"));
        read_market("/market", required(doc_, "", "market"), s);
        s.investment = read_risk("/investment", required(doc_, "", "investment"));
        if (doc_.contains("background") && !doc_["background"].is_null())
            s.background = read_risk("/background", doc_["background"]);
        if (doc_.contains("alternate")) {
            const json& alt = doc_["alternate"];
            if (!alt.is_object())
                fail("/alternate", "must be an object");
            allow_keys("/alternate", alt, {"investment", "background"});
            if (alt.contains("investment"))
                s.alternate_investment = read_risk("/alternate/investment", alt["investment"]);
            if (alt.contains("background"))
                s.alternate_background = read_risk("/alternate/background", alt["background"]);
        }
        if (doc_.contains("weighting"))
            s.weighting = read_weighting("/weighting", doc_["weighting"]);
        s.utility = read_utility("/utility", required(doc_, "", "utility"));
        if (doc_.contains("quadrature"))
            read_quadrature("/quadrature", doc_["quadrature"], s);
        if (doc_.contains("sweep"))
            s.sweep = read_sweep("/sweep", doc_["sweep"]);
        check_model(s);
        return s;
    }

private:
    [[noreturn]] void fail(const std::string& pointer, const std::string& message) const
    {
        throw ScenarioError(message, pointer.empty() ? "/" : pointer, line_of(pointer));
    }

    int line_of(std::string pointer) const
    {
        while (!pointer.empty()) {
            if (auto it = lines_.find(pointer); it != lines_.end())
                return it->second;
            pointer.resize(pointer.rfind('/'));
        }
        return 0;
    }

    const json& required(const json& obj, const std::string& at, const char* key) const
    {
        if (!obj.contains(key))
            fail(at, std::string("missing required key \"") + key + "\"");
        return obj[key];
    }

    void allow_keys(const std::string& at, const json& obj, std::initializer_list<const char*> keys) const
    {
        for (auto it = obj.begin(); it != obj.end(); ++it) {
            bool known = false;
            for (const char* k : keys)
                known = known || it.key() == k;
            if (!known)
                fail(at + "/" + it.key(), "unknown key \"" + it.key() + "\"");
        }
    }

    double number(const std::string& at, const json& v) const
    {
        if (!v.is_number())
            fail(at, "expected a number");
        return v.get<double>();
    }

    double number_field(const std::string& at, const json& obj, const char* key) const
    {
        return number(at + "/" + key, required(obj, at, key));
    }

    // Unwraps a single-key object {"kind": body}, or a bare string "kind".
    std::pair<std::string, const json*> tagged(const std::string& at, const json& v) const
    {
        if (v.is_string())
            return {v.get<std::string>(), nullptr};
        if (!v.is_object() || v.size() != 1)
            fail(at, "expected an object with exactly one key naming the kind");
        return {v.begin().key(), &v.begin().value()};
    }

    template <class Fn>
    auto guarded(const std::string& at, Fn&& fn) const
    {
        try {
            return fn();
        } catch (const ScenarioError&) {
            throw;
        } catch (const Error& e) {
            fail(at, e.what());
        }
    }

    ModelTag read_model(const std::string& at, const json& v) const
    {
        if (!v.is_string())
            fail(at, "model must be a string such as \"M1\"");
        const auto name = v.get<std::string>();
        for (ModelTag t : {ModelTag::possibilistic, ModelTag::fuzzy_background, ModelTag::random_background,
                           ModelTag::random_investment})
            if (name == short_name(t) || name == long_name(t))
                return t;
        fail(at, "unknown model \"" + name + "\" (expected M1, M2, M3 or M4)");
    }

    void read_market(const std::string& at, const json& v, Scenario& s) const
    {
        if (!v.is_object())
            fail(at, "market must be an object");
        allow_keys(at, v, {"w0", "w", "r"});
        const bool has_w0 = v.contains("w0");
        const bool has_w = v.contains("w");
        if (has_w0 == has_w)
            fail(at, "market needs exactly one of \"w0\" or \"w\"");
        s.wealth_is_initial = has_w0;
        s.wealth = number_field(at, v, has_w0 ? "w0" : "w");
        s.r = number_field(at, v, "r");
        guarded(at, [&] { return s.market(); });
    }

    RiskLiteral read_risk(const std::string& at, const json& v) const
    {
        const auto [kind, body_ptr] = tagged(at, v);
        if (!body_ptr)
            fail(at, "risk must be an object such as {\"triangular\": {...}}");
        const json& body = *body_ptr;
        const std::string here = at + "/" + kind;
        RiskLiteral lit;
        if (kind == "triangular") {
            lit.kind = RiskLiteral::Kind::triangular;
            expect_object(here, body, {"center", "left_width", "right_width"});
            lit.params = {number_field(here, body, "center"), number_field(here, body, "left_width"),
                          number_field(here, body, "right_width")};
        } else if (kind == "trapezoidal") {
            lit.kind = RiskLiteral::Kind::trapezoidal;
            expect_object(here, body, {"core_left", "core_right", "left_width", "right_width"});
            lit.params = {number_field(here, body, "core_left"), number_field(here, body, "core_right"),
                          number_field(here, body, "left_width"), number_field(here, body, "right_width")};
        } else if (kind == "point") {
            lit.kind = RiskLiteral::Kind::point;
            lit.params = {number(here, body)};
        } else if (kind == "sampled") {
            lit.kind = RiskLiteral::Kind::sampled;
            for (const auto& row : triples(here, body, 3))
                lit.rows.push_back({row[0], row[1], row[2]});
        } else if (kind == "discrete") {
            lit.kind = RiskLiteral::Kind::discrete;
            for (const auto& row : triples(here, body, 2))
                lit.atoms.push_back({row[0], row[1]});
        } else if (kind == "normal") {
            lit.kind = RiskLiteral::Kind::normal;
            expect_object(here, body, {"mean", "sd", "nodes"});
            double nodes = 9;
            if (body.contains("nodes")) {
                if (!body["nodes"].is_number_integer() || body["nodes"].get<long long>() < 1)
                    fail(here + "/nodes", "nodes must be a positive integer");
                nodes = static_cast<double>(body["nodes"].get<long long>());
            }
            lit.params = {number_field(here, body, "mean"), number_field(here, body, "sd"), nodes};
        } else {
            fail(at, "unknown risk kind \"" + kind +
                         "\" (expected triangular, trapezoidal, point, sampled, discrete or normal)");
        }
        guarded(here, [&] { return lit.materialize(); });
        return lit;
    }

    void expect_object(const std::string& at, const json& v, std::initializer_list<const char*> keys) const
    {
        if (!v.is_object())
            fail(at, "expected an object");
        allow_keys(at, v, keys);
    }

    std::vector<std::vector<double>> triples(const std::string& at, const json& v, std::size_t width) const
    {
        if (!v.is_array() || v.empty())
            fail(at, "expected a non-empty array of rows");
        std::vector<std::vector<double>> out;
        for (std::size_t i = 0; i < v.size(); ++i) {
            const std::string here = at + "/" + std::to_string(i);
            if (!v[i].is_array() || v[i].size() != width)
                fail(here, "expected a row of " + std::to_string(width) + " numbers");
            std::vector<double> row;
            for (std::size_t j = 0; j < width; ++j)
                row.push_back(number(here + "/" + std::to_string(j), v[i][j]));
            out.push_back(std::move(row));
        }
        return out;
    }

    WeightingLiteral read_weighting(const std::string& at, const json& v) const
    {
        const auto [kind, body] = tagged(at, v);
        WeightingLiteral lit;
        if (kind == "uniform") {
            lit.kind = WeightingKind::uniform;
            lit.exponent = 0.0;
        } else if (kind == "power" && body) {
            lit.kind = WeightingKind::power;
            lit.exponent = number(at + "/power", *body);
        } else if (kind == "custom" && body) {
            lit.kind = WeightingKind::custom;
            lit.exponent = 0.0;
            const std::string here = at + "/custom";
            expect_object(here, *body, {"polynomial"});
            const json& coeffs = required(*body, here, "polynomial");
            if (!coeffs.is_array() || coeffs.empty())
                fail(here + "/polynomial", "expected a non-empty array of coefficients");
            for (std::size_t i = 0; i < coeffs.size(); ++i)
                lit.coefficients.push_back(number(here + "/polynomial/" + std::to_string(i), coeffs[i]));
        } else {
            fail(at, "weighting must be {\"power\": n}, \"uniform\" or {\"custom\": {\"polynomial\": [...]}}");
        }
        const WeightingFunction f = guarded(at, [&] { return lit.make(); });
        if (!f.valid())
            fail(at, "invalid weighting function: " + f.report().message);
        return lit;
    }

    UtilityLiteral read_utility(const std::string& at, const json& v) const
    {
        const auto [kind, body] = tagged(at, v);
        UtilityLiteral lit;
        auto param = [&](const char* key) {
            const std::string here = at + "/" + kind;
            if (!body)
                fail(at, "utility \"" + kind + "\" needs parameter \"" + key + "\"");
            expect_object(here, *body, {key});
            return number_field(here, *body, key);
        };
        if (kind == "cara") {
            lit.family = UtilityFamily::cara;
            lit.parameter = param("lambda");
        } else if (kind == "crra") {
            lit.family = UtilityFamily::crra;
            lit.parameter = param("rho");
        } else if (kind == "log") {
            lit.family = UtilityFamily::log;
            lit.parameter = 0.0;
            if (body && !(body->is_object() && body->empty()))
                fail(at + "/log", "log utility takes no parameters");
        } else if (kind == "quadratic") {
            lit.family = UtilityFamily::quadratic;
            lit.parameter = param("b");
        } else {
            fail(at, "unknown utility \"" + kind + "\" (expected cara, crra, log or quadratic)");
        }
        guarded(at, [&] { return lit.make(); });
        return lit;
    }

    void read_quadrature(const std::string& at, const json& v, Scenario& s) const
    {
        if (!v.is_object())
            fail(at, "quadrature must be an object");
        allow_keys(at, v, {"nodes", "rule"});
        if (v.contains("nodes")) {
            if (!v["nodes"].is_number_integer() || v["nodes"].get<long long>() < 2 ||
                v["nodes"].get<long long>() > 100000)
                fail(at + "/nodes", "nodes must be an integer in [2, 100000]");
            s.quadrature_nodes = static_cast<int>(v["nodes"].get<long long>());
        }
        if (v.contains("rule")) {
            const json& rule = v["rule"];
            if (rule == "gauss_legendre")
                s.quadrature_rule = QuadratureRule::gauss_legendre;
            else if (rule == "composite_simpson")
                s.quadrature_rule = QuadratureRule::composite_simpson;
            else
                fail(at + "/rule", "rule must be \"gauss_legendre\" or \"composite_simpson\"");
        }
    }

    SweepSpec read_sweep(const std::string& at, const json& v) const
    {
        const auto [kind, body] = tagged(at, v);
        SweepSpec sw;
        if (kind == "wealth")
            sw.kind = SweepSpec::Kind::wealth;
        else if (kind == "risk_scale")
            sw.kind = SweepSpec::Kind::risk_scale;
        else
            fail(at, "sweep must be {\"wealth\": [...]} or {\"risk_scale\": [...]}");
        const std::string here = at + "/" + kind;
        if (!body || !body->is_array() || body->empty())
            fail(here, "expected a non-empty array of numbers");
        for (std::size_t i = 0; i < body->size(); ++i)
            sw.values.push_back(number(here + "/" + std::to_string(i), (*body)[i]));
        return sw;
    }

    void check_model(const Scenario& s) const
    {
        const bool inv_fuzzy = s.investment.fuzzy();
        const bool has_bg = s.background.has_value();
        const bool bg_fuzzy = has_bg && s.background->fuzzy();
        switch (s.model) {
        case ModelTag::possibilistic:
            if (!inv_fuzzy)
                fail("/investment", "model M1 needs a fuzzy investment risk");
            if (has_bg)
                fail("/background", "model M1 has no background risk");
            break;
        case ModelTag::fuzzy_background:
            if (!inv_fuzzy)
                fail("/investment", "model M2 needs a fuzzy investment risk");
            if (!bg_fuzzy)
                fail("/background", "model M2 needs a fuzzy background risk");
            break;
        case ModelTag::random_background:
            if (!inv_fuzzy)
                fail("/investment", "model M3 needs a fuzzy investment risk");
            if (!has_bg || bg_fuzzy)
                fail("/background", "model M3 needs a random background risk");
            break;
        case ModelTag::random_investment:
            if (inv_fuzzy)
                fail("/investment", "model M4 needs a random investment risk");
            if (!bg_fuzzy)
                fail("/background", "model M4 needs a fuzzy background risk");
            break;
        }
        if (s.alternate_investment && s.alternate_investment->fuzzy() == inv_fuzzy)
            fail("/alternate/investment", "alternate investment must use the other encoding (fuzzy vs random)");
        if (s.alternate_background && has_bg && s.alternate_background->fuzzy() == bg_fuzzy)
            fail("/alternate/background", "alternate background must use the other encoding (fuzzy vs random)");
        QuadratureConfig q = s.quadrature();
        guarded("/", [&] {
            validate(s.model_spec(q));
            return 0;
        });
    }

    const json& doc_;
    std::map<std::string, int> lines_;
};

inline int line_of_offset(const std::string& text, std::size_t offset)
{
    int line = 1;
    for (std::size_t i = 0; i < text.size() && i < offset; ++i)
        line += text[i] == '\n';
    return line;
}

inline nlohmann::ordered_json emit_risk(const RiskLiteral& lit)
{
    using oj = nlohmann::ordered_json;
    oj body;
    switch (lit.kind) {
    case RiskLiteral::Kind::triangular:
        return oj{{"triangular", oj{{"center", lit.params[0]}, {"left_width", lit.params[1]}, {"right_width", lit.params[2]}}}};
    case RiskLiteral::Kind::trapezoidal:
        return oj{{"trapezoidal", oj{{"core_left", lit.params[0]},
                                     {"core_right", lit.params[1]},
                                     {"left_width", lit.params[2]},
                                     {"right_width", lit.params[3]}}}};
    case RiskLiteral::Kind::point:
        return oj{{"point", lit.params[0]}};
    case RiskLiteral::Kind::sampled:
        body = oj::array();
        for (const auto& r : lit.rows)
            body.push_back(oj::array({r.gamma, r.lower, r.upper}));
        return oj{{"sampled", body}};
    case RiskLiteral::Kind::discrete:
        body = oj::array();
        for (const auto& a : lit.atoms)
            body.push_back(oj::array({a.value, a.probability}));
        return oj{{"discrete", body}};
    case RiskLiteral::Kind::normal:
        return oj{{"normal", oj{{"mean", lit.params[0]}, {"sd", lit.params[1]}, {"nodes", static_cast<long long>(lit.params[2])}}}};
    }
    return body;
}

} // namespace detail

/// Parses and fully validates scenario text. Errors carry line numbers.
inline Scenario parse_scenario_text(const std::string& text)
{
    detail::LineCounter counter;
    detail::LineMapper mapper(&counter);
    {
        detail::LineCountingIterator first(text.data(), &counter);
        detail::LineCountingIterator last(text.data() + text.size(), &counter);
        nlohmann::json::sax_parse(first, last, &mapper);
    }
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ScenarioError(std::string("malformed JSON: ") + e.what(), {},
                            detail::line_of_offset(text, e.byte > 0 ? e.byte - 1 : 0));
    }
    return detail::ScenarioReader(doc, std::move(mapper.lines)).read();
}

inline Scenario parse_scenario_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ScenarioError("cannot open scenario file " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario_text(buf.str());
}

/// Serializes a scenario; parse_scenario_text(emit_scenario(s).dump()) == s.
inline nlohmann::ordered_json emit_scenario(const Scenario& s)
{
    using oj = nlohmann::ordered_json;
    oj doc;
    doc["model"] = short_name(s.model);
    doc["market"] = oj{{s.wealth_is_initial ? "w0" : "w", s.wealth}, {"r", s.r}};
    doc["investment"] = detail::emit_risk(s.investment);
    doc["background"] = s.background ? detail::emit_risk(*s.background) : oj(nullptr);
    if (s.alternate_investment || s.alternate_background) {
        oj alt = oj::object();
        if (s.alternate_investment)
            alt["investment"] = detail::emit_risk(*s.alternate_investment);
        if (s.alternate_background)
            alt["background"] = detail::emit_risk(*s.alternate_background);
        doc["alternate"] = alt;
    }
    switch (s.weighting.kind) {
    case WeightingKind::power:
        doc["weighting"] = oj{{"power", s.weighting.exponent}};
        break;
    case WeightingKind::uniform:
        doc["weighting"] = "uniform";
        break;
    case WeightingKind::custom:
        doc["weighting"] = oj{{"custom", oj{{"polynomial", s.weighting.coefficients}}}};
        break;
    }
    switch (s.utility.family) {
    case UtilityFamily::cara:
        doc["utility"] = oj{{"cara", oj{{"lambda", s.utility.parameter}}}};
        break;
    case UtilityFamily::crra:
        doc["utility"] = oj{{"crra", oj{{"rho", s.utility.parameter}}}};
        break;
    case UtilityFamily::log:
        doc["utility"] = "log";
        break;
    case UtilityFamily::quadratic:
        doc["utility"] = oj{{"quadratic", oj{{"b", s.utility.parameter}}}};
        break;
    case UtilityFamily::custom:
        throw InputError("custom utilities cannot be written to scenario files");
    }
    if (s.quadrature_nodes || s.quadrature_rule) {
        oj q = oj::object();
        if (s.quadrature_nodes)
            q["nodes"] = *s.quadrature_nodes;
        if (s.quadrature_rule)
            q["rule"] = to_string(*s.quadrature_rule);
        doc["quadrature"] = q;
    }
    if (s.sweep)
        doc["sweep"] = oj{{s.sweep->kind == SweepSpec::Kind::wealth ? "wealth" : "risk_scale", s.sweep->values}};
    return doc;
}

} // namespace ppf
