#pragma once

#include <string>
#include <vector>

#include "tbvp/grid.hpp"
#include "tbvp/solver.hpp"

namespace tbvp {

/// Two-column CSV (one row per node, full double precision).
void write_grid_csv(const std::string& path, const GridFunction& u,
                    const std::string& header = "t,u");

/// Branch table with the fixed header "rho,lambda,residual,iterations,converged".
void write_branch_csv(const std::string& path, const std::vector<SolveResult>& results);

/// Self-contained single-curve SVG (polyline over axes, 800x600 viewport).
void write_svg_plot(const std::string& path, const std::vector<double>& xs,
                    const std::vector<double>& ys, const std::string& title,
                    const std::string& xlabel, const std::string& ylabel);

} // namespace tbvp
