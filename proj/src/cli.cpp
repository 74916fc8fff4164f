#include "tbvp/cli.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "tbvp/config.hpp"
#include "tbvp/hypothesis.hpp"
#include "tbvp/output.hpp"

namespace tbvp {

namespace fs = std::filesystem;

namespace {

CheckOptions check_options(const RunConfig& cfg, const ProblemSpec& spec, double rho) {
    CheckOptions copts;
    copts.quad = cfg.solver.quad;
    // For the built-in f = t*exp(u+2v) the box minimum sits at the corner
    // u = v = -(rho + ||psi||); pass it analytically (||psi|| = 1 here).
    if (cfg.builtin == "paper_example" || cfg.builtin == "lightbulb_reflection" ||
        cfg.builtin == "delay") {
        double psi_norm = 0.0;
        for (int i = 0; i <= 4096; ++i) {
            const double t = -spec.geom.r + (1.0 + spec.geom.r) * i / 4096.0;
            psi_norm = std::max(psi_norm, std::abs(spec.psi(t)));
        }
        const double M = rho + psi_norm;
        copts.analytic_delta = [M](double t) { return t * std::exp(-3.0 * M); };
    }
    return copts;
}

void write_report(const std::string& dir, const HypothesisReport& rep) {
    std::ofstream txt(dir + "/hypothesis_report.txt");
    txt << rep.text();
    std::ofstream kv(dir + "/hypothesis_report.csv");
    rep.write_kv(kv);
}

void write_verification(const std::string& path, const VerificationReport& v) {
    std::ofstream out(path);
    out.precision(12);
    out << "integral_residual " << v.integral_residual << "\n"
        << "ode_residual " << v.ode_residual << "\n"
        << "bc_residual " << v.bc_residual << "\n"
        << "cone_history_defect " << v.cone_history_defect << "\n"
        << "cone_ratio_defect " << v.cone_ratio_defect << "\n"
        << "boundary_defect " << v.boundary_defect << "\n"
        << "history_match_defect " << v.history_match_defect << "\n"
        << "nontrivial " << (v.nontrivial ? "yes" : "no") << "\n";
}

int do_check(const RunConfig& cfg, const ProblemSpec& spec) {
    const HypothesisReport rep =
        check_all(spec, cfg.rho_values.front(),
                  check_options(cfg, spec, cfg.rho_values.front()));
    write_report(cfg.output_dir, rep);
    const ConditionResult* c = rep.find("c_condc");
    std::cout << "check: " << (rep.all_pass() ? "all checkable conditions pass" : "FAILED")
              << ", condition-(c) witness " << (c ? c->witness : 0.0) << "\n";
    return rep.all_pass() ? 0 : 3;
}

int do_solve(const RunConfig& cfg, const ProblemSpec& spec, bool force) {
    const double rho = cfg.rho_values.front();
    if (!force) {
        const HypothesisReport rep = check_all(spec, rho, check_options(cfg, spec, rho));
        write_report(cfg.output_dir, rep);
        if (!rep.all_pass()) {
            std::cout << "solve: hypothesis check failed (see hypothesis_report.txt)\n";
            return 3;
        }
    }
    const SolveResult res = bk_iterate(spec, rho, cfg.solver);
    write_grid_csv(cfg.output_dir + "/solution.csv", res.u, "t,u");
    write_branch_csv(cfg.output_dir + "/branch.csv", {res});
    if (res.converged) {
        const VerificationReport ver = verify_solution(spec, res);
        write_verification(cfg.output_dir + "/verification.txt", ver);
    }
    if (cfg.plot) {
        write_svg_plot(cfg.output_dir + "/solution.svg", res.u.mesh().nodes(),
                       res.u.values(), "u_rho on [-r,1]", "t", "u");
    }
    std::cout.precision(10);
    std::cout << "solve: rho=" << rho << " lambda=" << res.lambda << " iterations="
              << res.iterations << " residual=" << res.fixed_point_residual << " "
              << (res.converged ? "converged" : "NOT converged: " + res.message) << "\n";
    return res.converged ? 0 : 4;
}

int do_sweep(const RunConfig& cfg, const ProblemSpec& spec, bool parallel) {
    const SweepResult sweep = sweep_rho(spec, cfg.rho_values, cfg.solver, parallel);
    write_branch_csv(cfg.output_dir + "/branch.csv", sweep.results);
    {
        std::ofstream meta(cfg.output_dir + "/sweep_meta.txt");
        meta << "warm_start " << (sweep.warm_started ? "yes" : "no") << "\n"
             << "parallel " << (parallel ? "yes" : "no") << "\n";
    }
    if (cfg.plot) {
        std::vector<double> xs, ys;
        for (const auto& r : sweep.results) {
            xs.push_back(r.rho);
            ys.push_back(r.lambda);
        }
        write_svg_plot(cfg.output_dir + "/branch.svg", xs, ys, "lambda vs rho", "rho",
                       "lambda");
    }
    int failures = 0;
    for (const auto& r : sweep.results)
        if (!r.converged) ++failures;
    std::cout << "sweep: " << sweep.results.size() << " rho values, " << failures
              << " non-converged\n";
    return failures == 0 ? 0 : 4;
}

int do_kernel(const RunConfig& cfg, const ProblemSpec& spec) {
    const int n = std::max(2, cfg.kernel_grid);
    std::ofstream out(cfg.output_dir + "/kernel.csv");
    out.precision(17);
    out << "t,s,k\n";
    for (int i = 0; i <= n; ++i) {
        const double t = -spec.geom.r + (1.0 + spec.geom.r) * i / n;
        for (int j = 0; j <= n; ++j) {
            const double s = static_cast<double>(j) / n;
            out << t << "," << s << "," << kernel_eval(spec.geom, t, s) << "\n";
        }
    }
    std::cout << "kernel: wrote " << (n + 1) * (n + 1) << " samples to kernel.csv\n";
    return 0;
}

} // namespace

int run(const CliOptions& options) {
    RunConfig cfg;
    try {
        cfg = RunConfig::parse_file(options.config_path);
        if (options.rho) cfg.rho_values = {*options.rho};
        if (options.out_dir) cfg.output_dir = *options.out_dir;
        if (options.command != "kernel" && cfg.rho_values.empty())
            throw ConfigError("run.rho must list at least one value");
        for (double rho : cfg.rho_values)
            if (!(rho > 0.0)) throw ConfigError("rho values must be positive");
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    }

    try {
        fs::create_directories(cfg.output_dir);
        const ProblemSpec spec = cfg.make_problem();
        if (options.command == "check") return do_check(cfg, spec);
        if (options.command == "solve") return do_solve(cfg, spec, options.force);
        if (options.command == "sweep") return do_sweep(cfg, spec, options.parallel);
        if (options.command == "kernel") return do_kernel(cfg, spec);
        std::cerr << "unknown command: " << options.command << "\n";
        return 2;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

} // namespace tbvp
