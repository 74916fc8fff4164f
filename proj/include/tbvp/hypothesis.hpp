#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "tbvp/hammerstein.hpp"

namespace tbvp {

enum class CheckStatus { Pass, Fail, Assumed };

std::string to_string(CheckStatus s);

struct ConditionResult {
    std::string name;
    CheckStatus status;
    double witness = 0.0;
    std::string note;
};

/// Aggregated verdict over the checkable hypotheses (C2)-(C4), (C7) and the
/// existence-theorem conditions (a)-(c).
struct HypothesisReport {
    std::vector<ConditionResult> conditions;

    bool all_pass() const; // no Fail entries (Assumed is acceptable)
    const ConditionResult* find(const std::string& name) const;
    std::string text() const;
    /// One "condition,status,witness" line per entry.
    void write_kv(std::ostream& os) const;
};

struct CheckOptions {
    int n_samples = 100000;       // kernel-bound sampling
    int n_box = 64;               // (u,v) grid for the sampled f-envelope
    int c_grid = 1024;            // t-grid for the condition-(c) supremum
    unsigned seed = 0;            // offset into the quasi-random sequence
    QuadratureRule quad{};
    std::optional<Evaluable> analytic_delta; // user-supplied delta_rho on [a,b]
    std::optional<double> eta_rho;           // lower bound for B on the sphere
};

/// Samples (t,s) quasi-uniformly over [0,1]^2 and [a,b]x[0,1] and reports the
/// worst margins of |k| <= Phi and k >= c1*Phi; pass iff both >= -1e-12.
std::vector<ConditionResult> check_kernel_bounds(const ProblemGeometry& geom,
                                                 int n_samples, unsigned seed = 0);

/// Quadrature value of int_a^b Phi(s) g(s) ds; (C4) passes iff positive.
double check_c4(const ProblemGeometry& geom, const Evaluable& g,
                const QuadratureRule& rule);

/// Lower envelope delta_rho for condition (a): the analytic one when given,
/// otherwise the minimum of f(t,.,.) over an n_box x n_box grid of the box
/// max{|u|,|v|} <= rho + psi_norm, tabulated in t and flagged approximate.
struct LowerEnvelope {
    Evaluable delta;
    bool sampled; // true when the envelope is the grid minimum, not analytic
};
LowerEnvelope lower_envelope_delta(const Nonlinearity& f, const ProblemGeometry& geom,
                                   double rho, double psi_norm, int n_box,
                                   const std::optional<Evaluable>& analytic = {});

/// sup over t in [a,b] of gamma(t)*eta_rho + int_a^b k(t,s) delta(s) ds.
/// Condition (c) requires a strictly positive value.
double eigen_condition_c(const ProblemGeometry& geom, const Evaluable& delta,
                         double eta_rho, const QuadratureRule& rule,
                         int t_grid = 1024);

HypothesisReport check_all(const ProblemSpec& spec, double rho,
                           const CheckOptions& options = {});

} // namespace tbvp
