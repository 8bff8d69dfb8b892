// ppf: allocation reports for scenario files.
//
//   ppf solve scenarios/reference.json
//   ppf compare scenarios/compare.json --output json
//   ppf selftest --seed 7
//
// Exit status: 0 success, 1 selftest failure, 2 invalid input, 3 solver or
// degenerate-input error.

#include "selftest.hpp"

#include <ppf/ppf.hpp>
#include <ppf/report.hpp>
#include <ppf/scenario.hpp>

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

namespace {

constexpr int exit_ok = 0;
constexpr int exit_selftest = 1;
constexpr int exit_invalid = 2;
constexpr int exit_solver = 3;

int default_nodes()
{
    const char* env = std::getenv("PPF_QUAD_NODES");
    if (!env || !*env)
        return 64;
    char* end = nullptr;
    const long n = std::strtol(env, &end, 10);
    if (*end != '\0' || n < 2 || n > 100000)
        throw ppf::ValidationError(std::string("PPF_QUAD_NODES must be an integer in [2, 100000], got \"") + env + "\"");
    return static_cast<int>(n);
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Possibilistic portfolio allocation with background risk"};
    app.require_subcommand(1);

    std::string output = "table";
    std::optional<int> nodes;
    double tolerance = 1e-10;
    std::uint64_t seed = 20240601;
    int count = 25;
    std::string file;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--output", output, "Output format")->check(CLI::IsMember({"table", "json"}));
        sub->add_option("--nodes", nodes, "Quadrature nodes per gamma segment")->check(CLI::Range(2, 100000));
        sub->add_option("--tolerance", tolerance, "Solver tolerance on |dK/dalpha|")->check(CLI::PositiveNumber);
    };

    CLI::App* indicators = app.add_subcommand("indicators", "Possibilistic and probabilistic indicators of the risks");
    CLI::App* solve = app.add_subcommand("solve", "Exact and approximate optimal allocation");
    CLI::App* compare = app.add_subcommand("compare", "Allocations across every model the risks allow");
    CLI::App* sweep = app.add_subcommand("sweep", "Allocations over the scenario's sweep grid");
    for (CLI::App* sub : {indicators, solve, compare, sweep}) {
        sub->add_option("file", file, "Scenario file (JSON)")->required();
        add_common(sub);
    }
    CLI::App* selftest = app.add_subcommand("selftest", "Randomized property checks");
    selftest->add_option("--seed", seed, "Random seed");
    selftest->add_option("--count", count, "Instances per check")->check(CLI::Range(1, 1000000));
    selftest->add_option("--nodes", nodes, "Unused; accepted for symmetry")->check(CLI::Range(2, 100000));
    selftest->add_option("--tolerance", tolerance, "Unused; accepted for symmetry")->check(CLI::PositiveNumber);
    selftest->add_option("--output", output, "Unused; accepted for symmetry")->check(CLI::IsMember({"table", "json"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_invalid;
    }

    if (selftest->parsed())
        return ppf::selftest::run_all(seed, count, std::cout) ? exit_ok : exit_selftest;

    try {
        const ppf::Scenario scenario = ppf::parse_scenario_file(file);
        ppf::ReportOptions opts;
        opts.quadrature = scenario.quadrature(default_nodes(), nodes);
        opts.quadrature.validate();
        opts.solver.tolerance = tolerance;

        ppf::Report report;
        if (indicators->parsed())
            report = ppf::indicators_report(scenario, opts);
        else if (solve->parsed())
            report = ppf::solve_report(scenario, opts);
        else if (compare->parsed())
            report = ppf::compare_report(scenario, opts);
        else
            report = ppf::sweep_report(scenario, opts);

        if (output == "json")
            std::cout << report.doc.dump(2) << '\n';
        else
            std::cout << ppf::render_table(report.doc);
        if (report.exit_code != exit_ok)
            std::cerr << "ppf: " << file << ": finished with solver errors (see report)\n";
        return report.exit_code;
    } catch (const ppf::SolverError& e) {
        std::cerr << "ppf: " << file << ": " << e.what() << '\n';
        return exit_solver;
    } catch (const ppf::DegenerateError& e) {
        std::cerr << "ppf: " << file << ": " << e.what() << '\n';
        return exit_solver;
    } catch (const ppf::Error& e) {
        std::cerr << "ppf: " << file << ": " << e.what() << '\n';
        return exit_invalid;
    }
}
