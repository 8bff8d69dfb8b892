#include <catch_amalgamated.hpp>

#include <ppf/report.hpp>

#include <algorithm>
#include <cstdio>
#include <functional>
#include <regex>
#include <string>
#include <vector>

using ppf::ordered_json;

namespace {

ppf::Scenario load(const std::string& name) { return ppf::parse_scenario_file(std::string(PPF_SCENARIO_DIR) + "/" + name); }

ppf::ReportOptions options(const ppf::Scenario& s)
{
    ppf::ReportOptions o;
    o.quadrature = s.quadrature();
    return o;
}

void collect_numbers(const ordered_json& v, std::vector<std::string>& out)
{
    if (v.is_number())
        out.push_back(ppf::format_number(v));
    else if (v.is_array() || v.is_object())
        for (const auto& x : v)
            collect_numbers(x, out);
}

// Numeric cells of the table: tokens that parse completely as numbers.
std::vector<std::string> table_numbers(const std::string& table)
{
    std::vector<std::string> out;
    const std::regex token(R"([^\s\[\],]+)");
    for (std::sregex_iterator it(table.begin(), table.end(), token), end; it != end; ++it) {
        const std::string t = it->str();
        char* stop = nullptr;
        std::strtod(t.c_str(), &stop);
        if (stop && *stop == '\0' && t != "-" && !t.empty())
            out.push_back(t);
    }
    return out;
}

} // namespace

TEST_CASE("reference solve report carries the closed-form allocation")
{
    const auto s = load("reference.json");
    const auto rep = ppf::solve_report(s, options(s));
    CHECK(rep.doc["approximation"]["alpha_approx"].get<double>() == Catch::Approx(8.0).margin(1e-9));
    CHECK(rep.doc["indicators"]["E(f,A)"].get<double>() == Catch::Approx(0.08).margin(1e-15));
    // No interior optimum: the exact solve is reported as a solver error.
    CHECK(rep.doc["exact"].contains("error"));
    CHECK(rep.exit_code == 3);
}

TEST_CASE("mossin flag")
{
    auto s = load("interior_m1.json");
    // Shift the triangle so that E(f,A) = r under f = 2g: E = c + (r - l)/6.
    s.investment.params[0] = 0.02 - (0.15 - 0.2) / 6.0;
    const auto rep = ppf::solve_report(s, options(s));
    CHECK(rep.doc["mossin"]["mean_equals_rate"].get<bool>());
    CHECK(rep.doc["mossin"]["alpha_exact_is_zero"].get<bool>());
    CHECK(std::abs(rep.doc["exact"]["alpha_exact"].get<double>()) <= 1e-8);
}

TEST_CASE("a point background at zero reproduces the M1 baseline")
{
    auto s = load("fuzzy_background.json");
    s.background = ppf::RiskLiteral{ppf::RiskLiteral::Kind::point, {0.0}, {}, {}};
    const auto rep = ppf::solve_report(s, options(s));
    CHECK(rep.exit_code == 0);
    CHECK(rep.doc["m1_baseline"]["equals_M1"].get<bool>());
    CHECK(rep.doc["m1_baseline"].contains("note"));
}

TEST_CASE("compare reports every instantiable model")
{
    const auto s = load("compare.json");
    const auto rep = ppf::compare_report(s, options(s));
    REQUIRE(rep.doc["models"].size() == 4);
    // M2 and M3 corrections differ by the covariance term when M(Y) = E(f,B).
    CHECK(rep.doc["M2_minus_M3_adjustment"].get<double>() ==
          Catch::Approx(rep.doc["covariance_term"].get<double>()).margin(1e-12));

    const auto only_a = load("interior_m1.json");
    const auto rep1 = ppf::compare_report(only_a, options(only_a));
    REQUIRE(rep1.doc["models"].size() == 1);
    CHECK(rep1.doc["models"][0]["model"] == "M1");
}

TEST_CASE("compare with degenerate risks: all models agree")
{
    auto s = ppf::parse_scenario_text(R"({
      "model": "M2", "market": {"w0": 1, "r": 0.02},
      "investment": {"point": 0.07}, "background": {"point": 0.0},
      "alternate": {"investment": {"discrete": [[0.07, 1]]}, "background": {"discrete": [[0.0, 1]]}},
      "utility": {"cara": {"lambda": 2}}
    })");
    const auto rep = ppf::compare_report(s, options(s));
    REQUIRE(rep.doc["models"].size() == 4);
    // Riskless asset beating r: no interior optimum, but every approximation is the same.
    const double a1 = rep.doc["models"][0]["alpha_approx"].is_null() ? 0.0 : rep.doc["models"][0]["alpha_approx"].get<double>();
    for (const auto& row : rep.doc["models"]) {
        const double a = row["alpha_approx"].is_null() ? 0.0 : row["alpha_approx"].get<double>();
        CHECK(std::abs(a - a1) <= 1e-10);
    }
}

TEST_CASE("compare without a fuzzy investment explains what is missing")
{
    const auto s = ppf::parse_scenario_text(R"({
      "model": "M4", "market": {"w0": 1, "r": 0.02},
      "investment": {"discrete": [[0.0, 0.5], [0.1, 0.5]]}, "background": {"point": 0.0},
      "utility": {"cara": {"lambda": 2}}
    })");
    try {
        ppf::compare_report(s, options(s));
        FAIL("expected an error");
    } catch (const ppf::ScenarioError& e) {
        CHECK(std::string(e.what()).find("fuzzy investment") != std::string::npos);
    }
}

TEST_CASE("sweep reports")
{
    const auto s = load("wealth_sweep.json");
    const auto rep = ppf::sweep_report(s, options(s));
    REQUIRE(rep.doc["rows"].size() == 4);
    CHECK(rep.doc["dara_monotonicity_violations"].empty());
    double prev = -1e300;
    for (const auto& row : rep.doc["rows"]) {
        CHECK(row["alpha_approx"].get<double>() > prev);
        prev = row["alpha_approx"].get<double>();
    }
    const auto scale = load("risk_scale_sweep.json");
    const auto rep2 = ppf::sweep_report(scale, options(scale));
    CHECK(rep2.doc["rows"].size() == 3);
    CHECK_THROWS_AS(ppf::sweep_report(load("reference.json"), options(s)), ppf::ScenarioError);
}

TEST_CASE("table numbers are the JSON numbers at ten significant digits")
{
    for (const char* name : {"reference.json", "interior_m1.json", "compare.json", "random_background.json",
                             "random_investment.json", "wealth_sweep.json"}) {
        INFO(name);
        const auto s = load(name);
        for (int kind = 0; kind < 4; ++kind) {
            if (kind == 3 && !s.sweep)
                continue;
            if (kind == 2 && std::string(name) == "random_investment.json")
                continue;
            const auto o = options(s);
            const auto rep = kind == 0 ? ppf::indicators_report(s, o)
                           : kind == 1 ? ppf::solve_report(s, o)
                           : kind == 2 ? ppf::compare_report(s, o)
                                       : ppf::sweep_report(s, o);
            std::vector<std::string> from_json;
            collect_numbers(rep.doc, from_json);
            // Numbers embedded in text (descriptions, error messages) are not table cells.
            std::vector<std::string> from_table = table_numbers(ppf::render_table(rep.doc));
            std::vector<std::string> from_text;
            std::function<void(const ordered_json&)> strings = [&](const ordered_json& v) {
                if (v.is_string()) {
                    for (auto& t : table_numbers(v.get<std::string>()))
                        from_text.push_back(t);
                } else if (v.is_array() || v.is_object()) {
                    for (const auto& x : v)
                        strings(x);
                }
            };
            strings(rep.doc);
            std::vector<std::string> expected = from_json;
            expected.insert(expected.end(), from_text.begin(), from_text.end());
            std::sort(expected.begin(), expected.end());
            std::sort(from_table.begin(), from_table.end());
            CHECK(from_table == expected);
        }
    }
}

TEST_CASE("JSON keeps full precision")
{
    const auto s = load("interior_m1.json");
    const auto rep = ppf::solve_report(s, options(s));
    const double alpha = rep.doc["exact"]["alpha_exact"].get<double>();
    const auto reparsed = ordered_json::parse(rep.doc.dump());
    CHECK(reparsed["exact"]["alpha_exact"].get<double>() == alpha);
}
