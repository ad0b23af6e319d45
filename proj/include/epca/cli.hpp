#ifndef EPCA_CLI_HPP
#define EPCA_CLI_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace epca::cli {

// Exit-code contract, stable for CI gating:
//   0 verdict pass / nothing to certify
//   1 verdict fail
//   2 usage or configuration error
//   3 solver / runtime error
inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitError = 3;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// One flat bag of options; flags override config-file values, the file is
// line-oriented `key = value` with `#` comments (keys match the long flags).
struct RunConfig {
    std::string subcommand;

    std::string model = "scalar";    // scalar | diagonal | heat
    std::string method = "both";     // march | picard | both
    double a = 3.0;
    double K = 1.0;
    double L = 1.0;
    double beta = 1.0;
    double omega = 2.0;
    double p = 1.0;
    double h = 1.0 / 64;
    int horizon = 64;
    bool horizon_set = false;  // demo-heat picks a longer default when unset
    int modes = 16;
    double tol = 1e-10;
    int max_iter = 200;
    double defect_tol = 1e-2;
    std::string out = "out";
    uint64_t seed = 42;

    std::string input;               // diagnose: path CSV to analyze
    std::string rates;               // diagonal: comma-separated mode rates
    std::string c0;                  // comma-separated initial state
    std::string forcing;             // rational | linear | sine | zero | ramp / modal | sine
    std::string potential = "none";  // none | sin
    double q_mean = 0.0;
    double q_amplitude = 0.0;
    double q_period = 2.0;
    int samples = 10000;
    std::vector<double> snapshots;   // demo-heat: spatial snapshot times

    int steps_per_unit() const;      // validates that h divides 1
};

// Parses argv (and an optional `--config FILE`); throws UsageError or a
// CLI11 parse error on bad input.  Deterministic given identical inputs.
RunConfig parse_config(int argc, const char* const* argv);

// Dispatches a parsed configuration; returns the exit code.
int run(const RunConfig& cfg);

// Complete front-end: parse, dispatch, map errors to exit codes.
int cli_main(int argc, const char* const* argv);

}  // namespace epca::cli

#endif
