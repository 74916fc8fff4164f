#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tbvp/cone.hpp"
#include "tbvp/hammerstein.hpp"

namespace tbvp {

struct SolveOptions {
    int max_iterations = 500;
    double damping = 0.5;   // alpha in (0,1]
    double tol = 1e-10;     // fixed-point and step tolerance
    int mesh_n = 256;       // panels on [0,1]
    int mesh_n_hist = 64;   // panels on [-r,0]
    QuadratureRule quad{};
    double cone_tol = 1e-9; // integrity bound on the image's cone defect
    std::optional<GridFunction> initial_direction; // default: gamma, normalized
};

/// One point of the solution branch: u = psi + lambda*F(u) with
/// ||u - psi||_{[0,1]} = rho.
struct SolveResult {
    double rho = 0.0;
    double lambda = 0.0;
    GridFunction u;       // psi + v on [-r,1]
    GridFunction v;       // u - psi, a cone element of norm rho
    double fixed_point_residual = 0.0;
    int iterations = 0;
    bool converged = false;
    std::string message;  // diagnostic on failure
};

struct VerificationReport {
    double integral_residual;     // sup_t |u - psi - lambda*F(u)|
    double ode_residual;          // max |D2 u + lambda f(t,u,u(sigma))| inside (0,1)
    double bc_residual;           // |beta u'(1) + u(eta) - lambda B[u]|
    double cone_history_defect;
    double cone_ratio_defect;
    double boundary_defect;       // | ||v||_[0,1] - rho |
    double history_match_defect;  // sup_[-r,0] |u - omega| at nodes
    bool nontrivial;              // lambda in (0, inf)
};

/// Damped normalized Picard iteration on the cone sphere of radius rho:
///   v <- renormalize((1-alpha) v + alpha * rho * F(psi+v)/||F(psi+v)||).
/// On convergence, lambda = rho/||F(psi+v*)|| and u = psi + v*. The iteration
/// evaluates psi analytically and interpolates only the cone increment v.
SolveResult bk_iterate(const ProblemSpec& spec, double rho, const SolveOptions& opts);

VerificationReport verify_solution(const ProblemSpec& spec, const SolveResult& result);

/// Solves along increasing rho values. Sequential mode warm-starts each solve
/// from the previous converged direction; parallel mode solves independently
/// (no warm start) and says so in the metadata flag.
struct SweepResult {
    std::vector<SolveResult> results;
    bool warm_started = true;
};
SweepResult sweep_rho(const ProblemSpec& spec, const std::vector<double>& rho_values,
                      const SolveOptions& opts, bool parallel = false);

} // namespace tbvp
