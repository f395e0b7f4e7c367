// cli.hpp
// Command-line front end. Exit codes: 0 ok, 1 internal failure, 2 invalid
// input, 3 domain error, 4 inconsistent data.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace cobosons::cli {

enum ExitCode : int {
    kOk = 0,
    kInternal = 1,
    kInvalidInput = 2,
    kDomain = 3,
    kInconsistent = 4,
};

struct RunConfig {
    std::string subcommand;

    // Schmidt-coefficient source: exactly one of file, inline list, family.
    std::optional<std::string> lambda_file;
    std::optional<std::string> inline_lambdas;
    std::optional<std::string> family; ///< uniform | peaked | random
    std::optional<double> purity;
    std::optional<int> modes;

    int n1 = 1;
    int n2 = 1;

    std::optional<double> reflectivity;
    std::optional<double> t;
    std::optional<double> jv;

    std::optional<std::string> out;
    std::optional<std::string> sidecar;
    std::uint64_t seed = 0;
    bool reference = false;

    // sweep
    std::optional<double> grid_min;
    std::optional<double> grid_max;
    int grid_count = 1;

    // infer
    std::optional<std::string> observations;
    std::optional<int> target_order;

    // macro
    double i1 = 0.5;
    std::optional<double> i2;
    double rho = 0.0;
    int points = 201;
    std::optional<long long> sample;

    double tolerance = 1e-9;
};

/// Parses argv and dispatches; diagnostics go to err, CSV without --out goes to out.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

int cmd_weights(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_counting(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_sweep(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_infer(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_macro(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_oracle_check(const RunConfig& config, std::ostream& out, std::ostream& err);

} // namespace cobosons::cli
