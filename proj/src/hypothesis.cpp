#include "tbvp/hypothesis.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <ostream>
#include <sstream>

namespace tbvp {

std::string to_string(CheckStatus s) {
    switch (s) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    case CheckStatus::Assumed: return "assumed";
    }
    return "?";
}

bool HypothesisReport::all_pass() const {
    return std::none_of(conditions.begin(), conditions.end(),
                        [](const ConditionResult& c) { return c.status == CheckStatus::Fail; });
}

const ConditionResult* HypothesisReport::find(const std::string& name) const {
    for (const auto& c : conditions)
        if (c.name == name) return &c;
    return nullptr;
}

std::string HypothesisReport::text() const {
    std::ostringstream os;
    os.precision(12);
    for (const auto& c : conditions) {
        os << c.name << ": " << to_string(c.status) << "  witness=" << c.witness;
        if (!c.note.empty()) os << "  (" << c.note << ")";
        os << "\n";
    }
    return os.str();
}

void HypothesisReport::write_kv(std::ostream& os) const {
    os << "condition,status,witness\n";
    os.precision(17);
    for (const auto& c : conditions)
        os << c.name << "," << to_string(c.status) << "," << c.witness << "\n";
}

namespace {

// Halton sequence, bases 2 and 3; deterministic for a fixed seed offset.
double halton(unsigned long long i, unsigned base) {
    double f = 1.0, x = 0.0;
    while (i > 0) {
        f /= base;
        x += f * (i % base);
        i /= base;
    }
    return x;
}

} // namespace

std::vector<ConditionResult> check_kernel_bounds(const ProblemGeometry& geom,
                                                 int n_samples, unsigned seed) {
    const ConeConstants cc = cone_constants(geom);
    double env_margin = 1e300, cone_margin = 1e300;
    for (int i = 0; i < n_samples; ++i) {
        const unsigned long long idx = static_cast<unsigned long long>(i) + seed + 1;
        const double x = halton(idx, 2), y = halton(idx, 3);
        // envelope on [0,1]^2
        {
            const double t = x, s = y;
            env_margin = std::min(env_margin,
                                  phi_envelope(geom, s) - std::abs(kernel_eval(geom, t, s)));
        }
        // cone lower bound on [a,b] x [0,1]
        {
            const double t = geom.a + (geom.b - geom.a) * x, s = y;
            cone_margin = std::min(cone_margin,
                                   kernel_eval(geom, t, s) - cc.c1 * phi_envelope(geom, s));
        }
    }
    const auto status = [](double m) {
        return m >= -1e-12 ? CheckStatus::Pass : CheckStatus::Fail;
    };
    return {
        ConditionResult{"C3_kernel_envelope", status(env_margin), env_margin,
                        "min of Phi(s)-|k(t,s)| over samples"},
        ConditionResult{"C3_kernel_cone_bound", status(cone_margin), cone_margin,
                        "min of k(t,s)-c1*Phi(s) over samples"},
    };
}

double check_c4(const ProblemGeometry& geom, const Evaluable& g,
                const QuadratureRule& rule) {
    auto integrand = [&](double s) {
        const double gv = g(s);
        if (gv < 0.0) {
            std::ostringstream os;
            os << "(C4) violation: g(" << s << ") = " << gv << " < 0";
            throw SpecViolation(os.str());
        }
        return phi_envelope(geom, s) * gv;
    };
    return integrate(integrand, {geom.a, geom.b}, rule);
}

LowerEnvelope lower_envelope_delta(const Nonlinearity& f, const ProblemGeometry& geom,
                                   double rho, double psi_norm, int n_box,
                                   const std::optional<Evaluable>& analytic) {
    if (analytic) return LowerEnvelope{*analytic, false};
    if (n_box < 2) throw std::invalid_argument("lower_envelope_delta: n_box must be >= 2");
    const double M = rho + psi_norm;
    const int table_n = 256; // tabulated in t, linear interpolation between
    auto table = std::make_shared<std::vector<double>>(table_n + 1);
    for (int i = 0; i <= table_n; ++i) {
        const double t = geom.a + (geom.b - geom.a) * i / table_n;
        double lo = 1e300;
        for (int j = 0; j < n_box; ++j) {
            const double u = -M + 2.0 * M * j / (n_box - 1);
            for (int k = 0; k < n_box; ++k) {
                const double v = -M + 2.0 * M * k / (n_box - 1);
                const double fv = f(t, u, v);
                if (fv < 0.0) {
                    std::ostringstream os;
                    os << "(C5) violation: f(" << t << "," << u << "," << v
                       << ") = " << fv << " < 0";
                    throw SpecViolation(os.str());
                }
                lo = std::min(lo, fv);
            }
        }
        (*table)[i] = lo;
    }
    const double a = geom.a, b = geom.b;
    Evaluable delta = [table, a, b, table_n](double t) {
        const double x = std::clamp((t - a) / (b - a), 0.0, 1.0) * table_n;
        const int i = std::min(static_cast<int>(x), table_n - 1);
        const double w = x - i;
        return (1.0 - w) * (*table)[i] + w * (*table)[i + 1];
    };
    return LowerEnvelope{std::move(delta), true};
}

double eigen_condition_c(const ProblemGeometry& geom, const Evaluable& delta,
                         double eta_rho, const QuadratureRule& rule, int t_grid) {
    if (eta_rho < 0.0)
        throw std::invalid_argument("eigen_condition_c: eta_rho must be >= 0");
    double best = -1e300;
    for (int i = 0; i <= t_grid; ++i) {
        const double t = geom.a + (geom.b - geom.a) * i / t_grid;
        const double integral = integrate(
            [&](double s) { return kernel_eval(geom, t, s) * delta(s); },
            split_panels(geom.a, geom.b, {geom.eta, t}), rule);
        best = std::max(best, gamma_eval(geom, t) * eta_rho + integral);
    }
    return best;
}

HypothesisReport check_all(const ProblemSpec& spec, double rho,
                           const CheckOptions& options) {
    const ProblemGeometry& geom = spec.geom;
    geom.validate();
    const Evaluable g = spec.g ? spec.g : [](double) { return 1.0; };
    HypothesisReport rep;

    // psi continuity at 0 holds by construction; record the jump as evidence.
    const double jump = std::abs(spec.psi(0.0) - spec.psi(1e-13));
    rep.conditions.push_back({"C1_psi_continuous", CheckStatus::Assumed, jump,
                              "continuity of omega assumed; jump at 0 sampled"});

    // (C2): k vanishes identically on the history strip.
    double hist_max = 0.0;
    for (int i = 0; i <= 64; ++i)
        for (int j = 0; j <= 64; ++j)
            hist_max = std::max(hist_max,
                                std::abs(kernel_eval(geom, -geom.r + geom.r * i / 64.0,
                                                     j / 64.0)));
    rep.conditions.push_back({"C2_kernel_history",
                              hist_max == 0.0 ? CheckStatus::Pass : CheckStatus::Fail,
                              hist_max, "max |k| on [-r,0]x[0,1]"});

    for (auto& c : check_kernel_bounds(geom, options.n_samples, options.seed))
        rep.conditions.push_back(std::move(c));

    try {
        const double c4 = check_c4(geom, g, options.quad);
        rep.conditions.push_back({"C4_g_integral",
                                  c4 > 0.0 ? CheckStatus::Pass : CheckStatus::Fail, c4,
                                  "int_a^b Phi*g"});
    } catch (const SpecViolation& e) {
        rep.conditions.push_back({"C4_g_integral", CheckStatus::Fail, -1.0, e.what()});
    }

    // (C5): range spot check on a coarse (t,u,v) grid.
    {
        CheckStatus st = CheckStatus::Assumed;
        double worst = 1e300;
        std::string note = "measurability assumed; range spot-sampled";
        const double M = 1.0 + rho;
        for (int i = 0; i <= 16 && st != CheckStatus::Fail; ++i)
            for (int j = 0; j <= 8; ++j)
                for (int k = 0; k <= 8; ++k) {
                    const double fv = spec.f(i / 16.0, -M + 2 * M * j / 8.0,
                                             -M + 2 * M * k / 8.0);
                    worst = std::min(worst, fv);
                    if (fv < 0.0) { st = CheckStatus::Fail; note = "negative f sample"; }
                }
        rep.conditions.push_back({"C5_f_range", st, worst, note});
    }

    // (C6): sigma range over a fine grid.
    {
        CheckStatus st = CheckStatus::Assumed;
        double worst = 0.0;
        for (int i = 0; i <= 1024; ++i) {
            const double ts = spec.sigma(i / 1024.0);
            const double excess = std::max(ts - 1.0, -geom.r - ts);
            worst = std::max(worst, excess);
            if (excess > 1e-12) st = CheckStatus::Fail;
        }
        rep.conditions.push_back({"C6_sigma_range", st, worst,
                                  st == CheckStatus::Fail
                                      ? "sigma escapes [-r,1]"
                                      : "continuity assumed; range spot-sampled"});
    }

    // (C7): gamma(t) >= c2 * ||gamma||_[0,1] on [a,b]; gamma increasing, so the
    // margin is attained at t = a.
    {
        const double c2 = cone_constants(geom).c2;
        const double margin = gamma_eval(geom, geom.a) - c2 * gamma_eval(geom, 1.0);
        rep.conditions.push_back({"C7_gamma_bound",
                                  margin >= -1e-12 ? CheckStatus::Pass : CheckStatus::Fail,
                                  margin, "min gamma on [a,b] minus c2*max gamma"});
    }

    // ||psi|| on [-r,1] for the condition-(a) box.
    double psi_norm = 0.0;
    for (int i = 0; i <= 4096; ++i) {
        const double t = -geom.r + (1.0 + geom.r) * i / 4096.0;
        psi_norm = std::max(psi_norm, std::abs(spec.psi(t)));
    }

    LowerEnvelope env{nullptr, false};
    try {
        env = lower_envelope_delta(spec.f, geom, rho, psi_norm, options.n_box,
                                   options.analytic_delta);
        double dmin = 1e300;
        for (int i = 0; i <= 256; ++i)
            dmin = std::min(dmin, env.delta(geom.a + (geom.b - geom.a) * i / 256.0));
        rep.conditions.push_back({"a_lower_envelope",
                                  dmin >= 0.0 ? CheckStatus::Pass : CheckStatus::Fail, dmin,
                                  env.sampled ? "approximate (sampled envelope)"
                                              : "analytic delta supplied"});
    } catch (const SpecViolation& e) {
        rep.conditions.push_back({"a_lower_envelope", CheckStatus::Fail, -1.0, e.what()});
        rep.conditions.push_back({"c_condc", CheckStatus::Fail, 0.0,
                                  "skipped: condition (a) failed"});
        return rep;
    }

    const bool eta_given = options.eta_rho.has_value();
    const double eta_rho = options.eta_rho.value_or(0.0);
    rep.conditions.push_back({"b_eta_rho",
                              eta_given ? CheckStatus::Pass : CheckStatus::Assumed, eta_rho,
                              eta_given ? "user-supplied lower bound for B"
                                        : "assumed: B >= 0 on the sphere, eta_rho = 0"});

    const double witness =
        eigen_condition_c(geom, env.delta, eta_rho, options.quad, options.c_grid);
    rep.conditions.push_back({"c_condc",
                              witness > 1e-300 ? CheckStatus::Pass : CheckStatus::Fail,
                              witness, "sup of gamma*eta_rho + int_a^b k*delta"});
    return rep;
}

} // namespace tbvp
