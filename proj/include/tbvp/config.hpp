#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "tbvp/hammerstein.hpp"
#include "tbvp/solver.hpp"

namespace tbvp {

class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Flat "[section]" / "key = value" configuration of one run.
struct RunConfig {
    ProblemGeometry geometry;

    std::string builtin;   // paper_example | lightbulb_reflection | delay | linear_oracle
    std::string f_expr;    // custom problem, used when builtin is empty
    std::string sigma_expr;
    std::string g_expr;
    std::string omega_expr;
    std::string b_kind = "zero"; // zero | weighted_linear | weighted_square
    std::string b_weight_expr;

    SolveOptions solver;
    std::vector<double> rho_values;
    std::string output_dir = "out";
    bool plot = true;
    int kernel_grid = 128;

    static RunConfig parse_file(const std::string& path);
    static RunConfig parse_text(const std::string& text);

    /// Builds the problem data; throws ConfigError on bad names or expressions.
    ProblemSpec make_problem() const;
};

/// The four built-in problems on the reference geometry (beta = eta = 1/4, r = 1,
/// [a,b] = [1/8,1/4] unless the config overrides it).
ProblemSpec builtin_problem(const std::string& name, const ProblemGeometry& geom);

} // namespace tbvp
