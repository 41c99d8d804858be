#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

using nlohmann::json;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    const std::string cmd = std::string(BO_CLI_PATH) + " " + args + " 2>/dev/null";
    RunResult r;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 4096> buf{};
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
    const int status = pclose(pipe);
    r.exit_code = (status >= 0 && WIFEXITED(status)) ? WEXITSTATUS(status) : -1;
    return r;
}

int count_lines(const std::string& s) {
    int n = 0;
    for (char c : s)
        if (c == '\n') ++n;
    return n;
}

} // namespace

TEST_CASE("pearcey subcommand prints JSON with a checkable residual") {
    auto r = run_cli("pearcey --T 0 --X 0");
    REQUIRE(r.exit_code == 0);
    const json j = json::parse(r.out);
    CHECK(std::abs(j["tau_re"].get<double>() - 1.1842719077928923) < 1e-9);
    CHECK(j["ode_residual"].get<double>() < 1e-10);
    CHECK(j.contains("U"));
    CHECK(j.contains("U_X"));
}

TEST_CASE("catastrophe-point subcommand") {
    auto r = run_cli("catastrophe-point");
    REQUIRE(r.exit_code == 0);
    const json j = json::parse(r.out);
    // Lorentzian default: y_c = 1/sqrt(3), u_c = 3/2, x_c = sqrt(3)
    CHECK(std::abs(j["y_c"].get<double>() - 1.0 / std::sqrt(3.0)) < 1e-10);
    CHECK(std::abs(j["u_c"].get<double>() - 1.5) < 1e-10);
    CHECK(std::abs(j["x_c"].get<double>() - std::sqrt(3.0)) < 1e-10);
}

TEST_CASE("solve subcommand emits annotated CSV") {
    auto r = run_cli("solve --t 2 --x-min -1 --x-max 1 --points 5 --eps 2^-6");
    REQUIRE(r.exit_code == 0);
    CHECK(r.out.rfind("# bo ", 0) == 0);
    CHECK(r.out.find("config=") != std::string::npos);
    CHECK(r.out.find("t,x,eps,u,cond_estimate") != std::string::npos);
    CHECK(count_lines(r.out) == 2 + 5); // banner + header + 5 rows
}

TEST_CASE("solve --format json and eps spellings agree") {
    auto ja = run_cli("--format json solve --t 2 --x-min 0 --x-max 0 --points 1 --eps 2^-6");
    auto jb = run_cli("--format json solve --t 2 --x-min 0 --x-max 0 --points 1 --eps 0.015625");
    REQUIRE(ja.exit_code == 0);
    REQUIRE(jb.exit_code == 0);
    const double ua = json::parse(ja.out)[0]["u"].get<double>();
    const double ub = json::parse(jb.out)[0]["u"].get<double>();
    CHECK(ua == ub);
}

TEST_CASE("edge subcommand reports small differences near the soliton edge") {
    auto r = run_cli("edge --kind soliton --t 2 --eps 2^-6 --Xgrid -1:0:3");
    REQUIRE(r.exit_code == 0);
    CHECK(r.out.find("X,x,exact,approx,diff") != std::string::npos);
    // parse the last column of each data row
    std::istringstream is(r.out);
    std::string line;
    int rows = 0;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#' || line[0] == 'X') continue;
        const auto pos = line.rfind(',');
        REQUIRE(pos != std::string::npos);
        CHECK(std::abs(std::stod(line.substr(pos + 1))) < 0.5);
        ++rows;
    }
    CHECK(rows == 3);
}

TEST_CASE("verify subcommand exits 0 and prints the report") {
    auto r = run_cli("verify");
    REQUIRE(r.exit_code == 0);
    const json j = json::parse(r.out);
    CHECK(j["passed"].get<bool>());
    CHECK(j["seed"].get<unsigned>() == 12345u);
}

TEST_CASE("converge subcommand runs a configured experiment") {
    const char* cfg_path = "test_cli_config.json";
    {
        std::ofstream cfg(cfg_path);
        cfg << R"({"initial_data": {"poles": [[0.0,1.0]], "residues": [[0.0,-1.0]]},
                   "experiments": [{"regime": "burgers", "t": 0.1,
                                    "eps": ["2^-8","2^-9"], "window": [-1.0,1.0],
                                    "grid_points": 11}]})";
    }
    auto r = run_cli(std::string("--config ") + cfg_path + " --format json converge");
    std::remove(cfg_path);
    REQUIRE(r.exit_code == 0);
    const json j = json::parse(r.out);
    REQUIRE(j.size() == 1);
    CHECK(j[0]["regime"] == "burgers");
    const double ratio = j[0]["first_to_last_ratio"].get<double>();
    CHECK(ratio > 1.5);
    CHECK(ratio < 2.7);
}

TEST_CASE("bad inputs exit nonzero") {
    CHECK(run_cli("no-such-subcommand").exit_code != 0);
    CHECK(run_cli("solve --t 2").exit_code != 0);                  // missing required flags
    CHECK(run_cli("edge --kind soliton --t 2 --Xgrid nonsense").exit_code != 0);
    CHECK(run_cli("--config /nonexistent.json converge").exit_code != 0);
}
