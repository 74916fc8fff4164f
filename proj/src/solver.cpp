#include "tbvp/solver.hpp"

#include <cmath>
#include <future>
#include <sstream>
#include <stdexcept>

namespace tbvp {

namespace {

GridFunction initial_direction(const ProblemSpec& spec,
                               const std::shared_ptr<const Mesh>& mesh,
                               const SolveOptions& opts) {
    if (opts.initial_direction) {
        const GridFunction& d = *opts.initial_direction;
        GridFunction resampled = GridFunction::sample(
            mesh, [&](double t) { return t <= 0.0 ? 0.0 : d(t); });
        if (sup_norm(resampled, 0.0, 1.0) > 0.0) return resampled;
    }
    // gamma is a known nonzero element of K0.
    return GridFunction::sample(mesh,
                                [&](double t) { return gamma_eval(spec.geom, t); });
}

} // namespace

SolveResult bk_iterate(const ProblemSpec& spec, double rho, const SolveOptions& opts) {
    if (!(rho > 0.0)) throw std::invalid_argument("bk_iterate: rho must be positive");
    if (!(opts.damping > 0.0 && opts.damping <= 1.0))
        throw std::invalid_argument("bk_iterate: damping must lie in (0,1]");
    if (!(opts.tol > 0.0)) throw std::invalid_argument("bk_iterate: tol must be positive");
    spec.geom.validate();

    const auto mesh = Mesh::make(spec.geom.r, spec.geom, opts.mesh_n, opts.mesh_n_hist);
    const ConeSpec cone = ConeSpec::from_geometry(spec.geom);
    const double alpha = opts.damping;

    GridFunction dir = initial_direction(spec, mesh, opts);
    GridFunction v = dir.scaled(rho / sup_norm(dir, 0.0, 1.0));

    double lambda = 0.0, resid = 1e300, prev_step = 1e300;
    int it = 0;
    bool converged = false;
    std::string message;

    for (it = 1; it <= opts.max_iterations; ++it) {
        const Evaluable u_eval = [&](double t) { return spec.psi(t) + v(t); };
        const GridFunction w = apply_hammerstein(spec, u_eval, mesh, opts.quad);
        const double nw = sup_norm(w, 0.0, 1.0);
        if (nw <= 1e-300) {
            message = "condition (c) violated numerically: ||F(psi+v)|| = 0";
            break;
        }
        lambda = rho / nw;
        const GridFunction target = w.scaled(rho / nw);
        resid = sup_norm(v - target, -spec.geom.r, 1.0);
        if (resid <= opts.tol && prev_step <= opts.tol) {
            const ConeDefect d = cone_defect(target, cone);
            const double bound = opts.cone_tol * std::max(1.0, rho);
            if (d.history > bound || d.ratio > bound) {
                std::ostringstream os;
                os << "numerical-integrity failure: image cone defect ("
                   << d.history << ", " << d.ratio << ") above " << bound;
                message = os.str();
                break;
            }
            converged = true;
            break;
        }
        GridFunction vn = v.scaled(1.0 - alpha) + target.scaled(alpha);
        const double nv = sup_norm(vn, 0.0, 1.0);
        if (nv <= 1e-300) {
            message = "iterate collapsed to zero";
            break;
        }
        vn = vn.scaled(rho / nv);
        prev_step = sup_norm(vn - v, 0.0, 1.0);
        v = vn;
    }
    if (!converged && message.empty()) {
        std::ostringstream os;
        os << "no convergence after " << opts.max_iterations
           << " iterations (residual " << resid << ")";
        message = os.str();
    }

    GridFunction u = GridFunction::sample(mesh, [&](double t) { return spec.psi(t); }) + v;
    return SolveResult{rho,  lambda, std::move(u),      std::move(v),
                       resid, std::min(it, opts.max_iterations), converged,
                       converged ? std::string{} : message};
}

VerificationReport verify_solution(const ProblemSpec& spec, const SolveResult& result) {
    const auto mesh = result.v.mesh_ptr();
    const auto& x = mesh->nodes();
    const std::size_t z = mesh->zero_index();
    const std::size_t n = x.size();
    const double lambda = result.lambda;
    const Evaluable u_eval = [&](double t) { return spec.psi(t) + result.v(t); };
    QuadratureRule quad{}; // verification uses the default quadrature

    const GridFunction w = apply_hammerstein(spec, u_eval, mesh, quad);
    const double integral_residual =
        sup_norm(result.v - w.scaled(lambda), -spec.geom.r, 1.0);

    // Interior ODE residual with the nonuniform 3-point second difference.
    double ode_residual = 0.0;
    for (std::size_t i = z + 1; i + 1 < n; ++i) {
        const double hm = x[i] - x[i - 1], hp = x[i + 1] - x[i];
        const double ui = u_eval(x[i]);
        const double d2 = 2.0 * ((u_eval(x[i + 1]) - ui) / hp - (ui - u_eval(x[i - 1])) / hm) /
                          (hm + hp);
        const double fv = spec.f(x[i], ui, deviated_value(u_eval, spec.sigma, x[i], spec.geom.r));
        ode_residual = std::max(ode_residual, std::abs(d2 + lambda * fv));
    }

    // One-sided u'(1) from the quadratic through the last three nodes.
    const double x0 = x[n - 3], x1 = x[n - 2], x2 = x[n - 1];
    const double y0 = u_eval(x0), y1 = u_eval(x1), y2 = u_eval(x2);
    const double du1 = y0 * (x2 - x1) / ((x0 - x1) * (x0 - x2)) +
                       y1 * (x2 - x0) / ((x1 - x0) * (x1 - x2)) +
                       y2 * ((x2 - x0) + (x2 - x1)) / ((x2 - x0) * (x2 - x1));
    const double Bu = eval_functional(spec.B, u_eval, spec.geom.r, quad);
    const double bc_residual =
        std::abs(spec.geom.beta * du1 + u_eval(spec.geom.eta) - lambda * Bu);

    const ConeDefect defect = cone_defect(result.v, ConeSpec::from_geometry(spec.geom));
    const double boundary_defect =
        std::abs(sup_norm(result.v, 0.0, 1.0) - result.rho);
    double history_match = 0.0;
    for (std::size_t i = 0; i <= z; ++i)
        history_match = std::max(history_match,
                                 std::abs(result.u.values()[i] - spec.omega(x[i])));

    return VerificationReport{integral_residual, ode_residual,    bc_residual,
                              defect.history,    defect.ratio,    boundary_defect,
                              history_match,
                              lambda > 0.0 && std::isfinite(lambda)};
}

SweepResult sweep_rho(const ProblemSpec& spec, const std::vector<double>& rho_values,
                      const SolveOptions& opts, bool parallel) {
    for (std::size_t i = 0; i < rho_values.size(); ++i) {
        if (!(rho_values[i] > 0.0))
            throw std::invalid_argument("sweep_rho: rho values must be positive");
        if (i > 0 && !(rho_values[i] > rho_values[i - 1]))
            throw std::invalid_argument("sweep_rho: rho values must be increasing");
    }
    SweepResult sweep;
    sweep.warm_started = !parallel;
    if (parallel) {
        std::vector<std::future<SolveResult>> futures;
        futures.reserve(rho_values.size());
        for (double rho : rho_values)
            futures.push_back(std::async(std::launch::async, [&spec, rho, &opts] {
                return bk_iterate(spec, rho, opts);
            }));
        for (auto& f : futures) sweep.results.push_back(f.get());
        return sweep;
    }
    SolveOptions local = opts;
    for (double rho : rho_values) {
        SolveResult res = bk_iterate(spec, rho, local);
        if (res.converged) local.initial_direction = res.v;
        sweep.results.push_back(std::move(res));
    }
    return sweep;
}

} // namespace tbvp
