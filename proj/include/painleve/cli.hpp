#ifndef PAINLEVE_CLI_HPP
#define PAINLEVE_CLI_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "painleve/field_io.hpp"

namespace painleve::cli {

enum class Command { hm, gl, vortex, verify, rescale };

enum ExitCode : int {
    kOk = 0,
    kFailure = 1,
    kBadArguments = 2,
    kNoConvergence = 3,
    kCheckFailed = 4,
};

struct RunConfig {
    Command command = Command::vortex;
    int n = 3;
    std::optional<double> x1_min, x1_max, sigma_max, r_max;
    /// "N" for 1D commands, "N1xN2" for 2D ones; empty picks the command default.
    std::string grid;
    std::optional<double> tol;
    std::optional<int> max_iter;
    int flow_steps = 200;
    double flow_dt = 0.1;
    std::string out;
    Format format = Format::csv;
    std::vector<std::string> checks;
    std::string report;
    std::vector<double> slices{-6.0, -9.0, -12.0};
    double tau_max = 3.0;
    int tau_count = 301;
    int bumps = 100;
    unsigned long long seed = 20240607ULL;
};

/// Names accepted by --check (plus "all").
const std::vector<std::string>& check_names();

/// Parses argv (without the program name). Throws InvalidArgument on bad input;
/// returns nullopt when help was requested (text written to `out`).
std::optional<RunConfig> parse_run_config(const std::vector<std::string>& args, std::ostream& out);

/// Stable one-line description of the configuration, stored in exported metadata.
std::string describe(const RunConfig& config);

/// Full front end: parse, solve, check, export. Returns an ExitCode value.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace painleve::cli

#endif  // PAINLEVE_CLI_HPP
