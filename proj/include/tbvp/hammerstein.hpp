#pragma once

#include <functional>
#include <memory>
#include <stdexcept>

#include "tbvp/geometry.hpp"
#include "tbvp/grid.hpp"

namespace tbvp {

/// A problem-data violation ((C4)-(C6) range checks, negative B, ...).
class SpecViolation : public std::runtime_error {
public:
    explicit SpecViolation(const std::string& what) : std::runtime_error(what) {}
};

using Evaluable = std::function<double(double)>;
using Nonlinearity = std::function<double(double, double, double)>; // f(t,u,v)

/// The boundary functional B[u] of the thermostat condition.
struct BFunctional {
    enum class Kind { Zero, WeightedLinear, WeightedSquare, Custom };
    Kind kind = Kind::Zero;
    Evaluable weight;                                   // w(t) for integral kinds
    std::function<double(const Evaluable&)> custom;     // u |-> B[u]

    static BFunctional zero() { return {}; }
    static BFunctional weighted_linear(Evaluable w) {
        return {Kind::WeightedLinear, std::move(w), nullptr};
    }
    static BFunctional weighted_square(Evaluable w) {
        return {Kind::WeightedSquare, std::move(w), nullptr};
    }
};

/// Data of one BVP instance: u'' + lambda f(t,u(t),u(sigma(t))) = 0 on [0,1],
/// u = omega on [-r,0], beta u'(1) + u(eta) = lambda B[u].
struct ProblemSpec {
    ProblemGeometry geom;
    Nonlinearity f;     // [0,1] x R x R -> [0,inf)
    Evaluable sigma;    // [0,1] -> [-r,1]
    Evaluable g;        // [0,1] -> [0,inf); default identically 1
    Evaluable omega;    // history datum on [-r,0]
    BFunctional B;

    /// Cone-translate vertex psi built from omega.
    double psi(double t) const { return psi_eval(geom, omega, t); }
};

/// u(sigma(s)); checks sigma(s) in [-r,1] per (C6).
double deviated_value(const Evaluable& u, const Evaluable& sigma, double s, double r);
double deviated_value(const GridFunction& u, const Evaluable& sigma, double s);

/// B[u] by quadrature over [-r,1] for the integral kinds (panel split at 0),
/// 0 for the zero kind. A negative value raises SpecViolation: Theorem
/// condition (b) requires B >= 0 on the iterates.
double eval_functional(const BFunctional& B, const Evaluable& u, double r,
                       const QuadratureRule& rule);

/// One application of the perturbed Hammerstein operator:
///   (Fu)(t) = int_0^1 k(t,s) g(s) f(s, u(s), u(sigma(s))) ds + gamma(t) B[u],
/// sampled at every mesh node; identically 0 for t <= 0. The s-quadrature
/// splits panels at s = eta and s = t, the kinks of k(t,.).
GridFunction apply_hammerstein(const ProblemSpec& spec, const Evaluable& u,
                               const std::shared_ptr<const Mesh>& mesh,
                               const QuadratureRule& rule);

/// Same with u given as a grid function (interpolated evaluation).
GridFunction apply_hammerstein(const ProblemSpec& spec, const GridFunction& u,
                               const std::shared_ptr<const Mesh>& mesh,
                               const QuadratureRule& rule);

} // namespace tbvp
