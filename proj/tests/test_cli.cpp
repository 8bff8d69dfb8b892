#include <catch_amalgamated.hpp>

#include <json.hpp>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>
#include <sys/wait.h>

namespace {

struct Run {
    int status;
    std::string out;
};

Run run(const std::string& args, const std::string& env = "")
{
    const std::string cmd = env + " " + PPF_CLI_PATH + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    std::array<char, 4096> buf{};
    while (std::size_t n = std::fread(buf.data(), 1, buf.size(), pipe))
        out.append(buf.data(), n);
    const int raw = pclose(pipe);
    return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, out};
}

std::string scenario(const char* name) { return std::string(PPF_SCENARIO_DIR) + "/" + name; }

std::string temp_file(const std::string& content)
{
    const std::string path = "/tmp/ppf_cli_test_" + std::to_string(std::rand()) + ".json";
    std::ofstream(path) << content;
    return path;
}

} // namespace

TEST_CASE("solve prints a table by default and JSON on request")
{
    const Run table = run("solve " + scenario("interior_m1.json"));
    CHECK(table.status == 0);
    CHECK(table.out.find("alpha_exact") != std::string::npos);
    CHECK(table.out.find("4.837562185") != std::string::npos);

    const Run json = run("solve " + scenario("interior_m1.json") + " --output json");
    CHECK(json.status == 0);
    const auto doc = nlohmann::json::parse(json.out);
    CHECK(doc["exact"]["alpha_exact"].get<double>() == Catch::Approx(4.837562185).margin(1e-9));
}

TEST_CASE("every command runs on the sample scenarios")
{
    CHECK(run("indicators " + scenario("sampled.json")).status == 0);
    CHECK(run("solve " + scenario("random_investment.json")).status == 0);
    CHECK(run("compare " + scenario("compare.json")).status == 0);
    CHECK(run("sweep " + scenario("wealth_sweep.json")).status == 0);
    CHECK(run("sweep " + scenario("risk_scale_sweep.json") + " --output json").status == 0);
}

TEST_CASE("exit status 2 for invalid input")
{
    CHECK(run("solve /nonexistent.json").status == 2);
    CHECK(run("solve " + scenario("reference.json") + " --nodes 1").status == 2);
    CHECK(run("solve " + scenario("reference.json") + " --output xml").status == 2);
    CHECK(run("frobnicate").status == 2);
    const std::string bad = temp_file(R"({"model": "M1", "market": {"w0": 1, "r": 0},
      "investment": {"point": 0.1}, "weighting": {"custom": {"polynomial": [0, 3]}}, "utility": "log"})");
    CHECK(run("solve " + bad).status == 2);
    CHECK(run("solve " + scenario("interior_m1.json"), "PPF_QUAD_NODES=zero").status == 2);
    CHECK(run("sweep " + scenario("interior_m1.json")).status == 2);
    std::remove(bad.c_str());
}

TEST_CASE("exit status 3 for solver and degenerate errors")
{
    const std::string riskless = temp_file(R"({"model": "M1", "market": {"w0": 1, "r": 0.02},
      "investment": {"point": 0.02}, "utility": {"cara": {"lambda": 1}}})");
    CHECK(run("solve " + riskless).status == 3);
    std::remove(riskless.c_str());
    const std::string unbounded = temp_file(R"({"model": "M1", "market": {"w0": 1, "r": 0.0},
      "investment": {"triangular": {"center": 0.1, "left_width": 0.05, "right_width": 0.05}},
      "utility": {"cara": {"lambda": 1}}})");
    CHECK(run("solve " + unbounded).status == 3);
    std::remove(unbounded.c_str());
}

TEST_CASE("node count precedence: flag, scenario, environment, default")
{
    auto nodes = [](const Run& r) { return nlohmann::json::parse(r.out)["quadrature"]["nodes"].get<int>(); };
    const std::string f = scenario("interior_m1.json");
    CHECK(nodes(run("indicators " + f + " --output json")) == 64);
    CHECK(nodes(run("indicators " + f + " --output json", "PPF_QUAD_NODES=12")) == 12);
    CHECK(nodes(run("indicators " + f + " --output json --nodes 7", "PPF_QUAD_NODES=12")) == 7);
    CHECK(nodes(run("indicators " + scenario("random_investment.json") + " --output json", "PPF_QUAD_NODES=12")) == 32);
}

TEST_CASE("tolerance flag reaches the solver")
{
    const auto loose = nlohmann::json::parse(run("solve " + scenario("interior_m1.json") + " --output json --tolerance 1e-3").out);
    const auto tight = nlohmann::json::parse(run("solve " + scenario("interior_m1.json") + " --output json").out);
    CHECK(loose["exact"]["iterations"].get<int>() <= tight["exact"]["iterations"].get<int>());
    CHECK(run("solve " + scenario("interior_m1.json") + " --tolerance -1").status == 2);
}

TEST_CASE("selftest is reproducible for a seed")
{
    const Run a = run("selftest --seed 99 --count 5");
    const Run b = run("selftest --seed 99 --count 5");
    CHECK(a.status == 0);
    CHECK(a.out == b.out);
    CHECK(a.out.find("FAIL") == std::string::npos);
}
