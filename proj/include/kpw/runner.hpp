#pragma once

#include "kpw/acceptance.hpp"
#include "kpw/harness.hpp"

#include <cstdint>

namespace kpw {

enum class Command { Verify, Sweep, Counterexample, Kernel, Suite };

// kernel command: evaluate K_s^delta and the decay envelope over a (y, delta) grid
struct KernelJob {
    double s = -0.5;
    int n = 1;
    std::vector<double> deltas{1.0};
    std::vector<double> radii{1.0, 2.0, 4.0, 8.0};
};

struct RunConfig {
    Command command = Command::Suite;
    Grid grid{1, 2.0 * kPi, 256};
    TheoremId theorem = TheoremId::Main1;
    double s = 1.5;
    double s_ddot = 0.0;
    bool has_s_ddot = false;
    ExponentTuple exponents = holder_exponents(2, 2, 0, 0);
    FamilySpec family{FamilyKind::Modulated, {3, 4, 5, 6}, BaseProfile::PhiHat};
    WeightKind weight = WeightKind::Polynomial;
    std::vector<std::string> criteria; // verify
    KernelJob kernel;                  // kernel
    std::uint64_t seed = 0;
    std::string output_prefix = "run";
    int threads = 1;
    // counterexample rule thresholds (overridable via config "tolerances")
    double tol_bounded_slope = 0.05;
    double tol_bounded_ratio_cap = 1e3;
    double tol_growth_min = 0.1;
    double tol_rhs_spread = 4.0;
};

// config / schema problems (CLI exit 2)
class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct Rule {
    std::string name;
    double measured = 0.0;
    double threshold = 0.0;
    bool pass = false;
};

struct RunReport {
    RunConfig config;
    std::string config_json; // canonical echo
    std::vector<InequalityReport> rows;
    SweepResult sweep;      // sweep / counterexample
    std::vector<acceptance::CriterionResult> criteria; // verify / suite
    std::vector<Rule> rules;
    bool all_pass = true;
    double wall_seconds = 0.0;
    std::string csv;  // deterministic tabular output
    std::string json; // full report (includes wall clock)
};

RunConfig parse_config_text(const std::string& json_text);
RunConfig parse_config_file(const std::string& path);

RunReport run(const RunConfig& config);

// writes <prefix>_report.json and <prefix>.csv under out_dir
void write_outputs(const RunReport& report, const std::string& out_dir);

// two-column (log param, log ratio) file with '#' fit-header lines;
// requires at least 2 family rows
void emit_plot_data(const RunReport& report, const std::string& path);

// 17 significant digits, scientific, '.' decimal separator
std::string format_double(double v);

// sweep-instance parallelism cap (set from --threads / KPW_THREADS)
void set_max_threads(int t);
int max_threads();

} // namespace kpw
