#include "kpw/runner.hpp"

#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

using namespace kpw;

namespace {

const char* kSweepConfig = R"({
  "command": "sweep",
  "seed": 0,
  "grid": {"dim": 1, "length": 6.283185307179586, "points": 512},
  "theorem": "main1",
  "s": -0.5,
  "exponents": {"p1": 2, "p2": 2, "a1": 0, "a2": 0},
  "family": {"kind": "modulated", "params": [3, 4, 5, 6], "base_profile": "phi_hat"}
})";

} // namespace

TEST_CASE("config parsing accepts the documented schema") {
    const RunConfig c = parse_config_text(kSweepConfig);
    CHECK(c.command == Command::Sweep);
    CHECK(c.grid.points_per_axis == 512);
    CHECK(c.exponents.p == doctest::Approx(1.0));
    CHECK(c.family.params.size() == 4);
}

TEST_CASE("schema violations are config errors") {
    CHECK_THROWS_AS(parse_config_text("{"), ConfigError);
    CHECK_THROWS_AS(parse_config_text(R"({"comand": "sweep"})"), ConfigError);
    CHECK_THROWS_AS(parse_config_text(R"({"command": "sweeep"})"), ConfigError);
    CHECK_THROWS_AS(parse_config_text(R"({"command": "sweep", "s": "big"})"), ConfigError);
    // value-level violations surface as preconditions (CLI exit 3), with the
    // offending field named
    CHECK_THROWS_WITH_AS(parse_config_text(
                             R"({"command": "sweep", "grid": {"dim":1,"length":2,"points":7}})"),
                         doctest::Contains("points_per_axis"), std::invalid_argument);
    CHECK_THROWS_AS(parse_config_text(
                        R"({"command": "sweep", "grid": {"dim":1,"len":2,"points":8}})"),
                    ConfigError);
    CHECK_THROWS_AS(parse_config_text(
                        R"({"command": "sweep", "exponents": {"p1":2,"p2":2,"b1":0}})"),
                    ConfigError);
}

TEST_CASE("sweep run is deterministic and emits the documented CSV") {
    const RunConfig c = parse_config_text(kSweepConfig);
    const RunReport r1 = run(c);
    const RunReport r2 = run(c);
    CHECK(r1.csv == r2.csv);
    CHECK(r1.csv.rfind("family_param,lhs,rhs,ratio\n", 0) == 0);
    // 4 rows + header
    int lines = 0;
    for (char ch : r1.csv)
        if (ch == '\n') ++lines;
    CHECK(lines == 5);
    CHECK(r1.all_pass);

    // floats carry 17 significant digits in scientific notation
    CHECK(format_double(1.0) == "1.0000000000000000e+00");
    CHECK(format_double(-0.5) == "-5.0000000000000000e-01");
}

TEST_CASE("counterexample rules fire for the divergent configuration") {
    RunConfig c = parse_config_text(kSweepConfig);
    c.command = Command::Counterexample;
    const RunReport r = run(c);
    REQUIRE(!r.rules.empty());
    CHECK(r.all_pass); // s = -0.5 < 0: divergence expected and observed
}

TEST_CASE("kernel command") {
    RunConfig c;
    c.command = Command::Kernel;
    c.kernel.s = -0.5;
    c.kernel.n = 1;
    c.kernel.deltas = {1.0, 0.5};
    c.kernel.radii = {1.0, 2.0, 4.0};
    const RunReport r = run(c);
    CHECK(r.all_pass);
    CHECK(r.csv.rfind("y,delta,value,envelope,pass\n", 0) == 0);
}

TEST_CASE("plot data round trip") {
    const RunConfig c = parse_config_text(kSweepConfig);
    const RunReport r = run(c);
    namespace fs = std::filesystem;
    const fs::path tmp = fs::temp_directory_path() / "kpw_plot_test.txt";
    emit_plot_data(r, tmp.string());

    std::ifstream in(tmp);
    std::string line;
    std::getline(in, line);
    REQUIRE(line.rfind("# fit slope=", 0) == 0);
    const double slope_written = std::stod(line.substr(12));
    std::getline(in, line); // column header
    std::vector<double> xs, ys;
    double x, y;
    while (in >> x >> y) {
        xs.push_back(x);
        ys.push_back(y);
    }
    REQUIRE(xs.size() == 4);
    // refit and compare against the header
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double m = double(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    CHECK(slope == doctest::Approx(slope_written).epsilon(1e-12));
    fs::remove(tmp);

    RunReport one = r;
    one.rows.resize(1);
    CHECK_THROWS_AS(emit_plot_data(one, tmp.string()), std::invalid_argument);
}

TEST_CASE("verify command narrows to requested criteria") {
    RunConfig c;
    c.command = Command::Verify;
    c.criteria = {"C4"};
    const RunReport r = run(c);
    REQUIRE(r.criteria.size() == 1);
    CHECK(r.criteria[0].id == "C4");
    CHECK(r.csv.rfind("criterion,metric,value,threshold,pass\n", 0) == 0);

    c.criteria = {"C99"};
    CHECK_THROWS_AS(run(c), std::invalid_argument);
}

TEST_CASE("thread count does not change sweep output") {
    RunConfig c = parse_config_text(kSweepConfig);
    c.threads = 1;
    const RunReport r1 = run(c);
    c.threads = 2;
    const RunReport r2 = run(c);
    CHECK(r1.csv == r2.csv);
}
