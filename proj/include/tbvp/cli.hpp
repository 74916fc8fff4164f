#pragma once

#include <optional>
#include <string>

namespace tbvp {

struct CliOptions {
    std::string command; // check | solve | sweep | kernel
    std::string config_path;
    bool force = false;
    std::optional<double> rho;
    std::optional<std::string> out_dir;
    bool parallel = false;
};

/// Exit codes: 0 success, 2 config error, 3 hypothesis failure,
/// 4 non-convergence, 1 unexpected failure.
int run(const CliOptions& options);

} // namespace tbvp
