#pragma once

#include <functional>

namespace tbvp {

/// Constants of the thermostat boundary condition beta*u'(1) + u(eta) = lambda*B[u],
/// the history length r and the sensor subinterval [a,b] used for the cone bounds.
/// Standing assumptions: beta > 0, 0 < eta < 1, 0 < beta+eta < 1 and
/// 0 < a < b < beta+eta.
struct ProblemGeometry {
    double beta = 0.25;
    double eta = 0.25;
    double r = 1.0;
    double a = 0.125;
    double b = 0.25;

    double beta_eta() const { return beta + eta; }

    /// Throws std::invalid_argument if any invariant is violated.
    void validate() const;
};

/// Cone constants of the kernel/boundary-term bounds: c1 from the kernel
/// lower bound, c2 = a from the gamma lower bound, c = min(c1, c2).
struct ConeConstants {
    double c1;
    double c2;
    double c;
};

/// Right-continuous step: 1 for tau >= 0, 0 for tau < 0.
double heaviside(double tau);

/// Green's kernel of u'' + y = 0, u(0) = 0, beta*u'(1) + u(eta) = 0,
/// extended by zero onto the history interval:
///   k(t,s) = [beta*t/(beta+eta) + t*(eta-s)*H(eta-s)/(beta+eta) - (t-s)*H(t-s)] * H(t).
/// Kinks in s at s = eta and s = t. Requires t in [-r,1], s in [0,1].
double kernel_eval(const ProblemGeometry& geom, double t, double s);

/// Envelope Phi with |k(t,s)| <= Phi(s) on [0,1]^2:
/// Phi(s) = s when beta+eta >= 1/2, else ((1-(beta+eta))/(beta+eta))*s.
double phi_envelope(const ProblemGeometry& geom, double s);

/// c1, c2 = a and c = min(c1,c2) for the given geometry.
ConeConstants cone_constants(const ProblemGeometry& geom);

/// gamma(t) = t/(beta+eta) for t >= 0, 0 on the history interval.
/// Solves u'' = 0, u(0) = 0, beta*u'(1) + u(eta) = 1 on [0,1].
double gamma_eval(const ProblemGeometry& geom, double t);

/// Vertex of the affine cone: psi(t) = omega(t) for t <= 0 and
/// psi(t) = omega(0) * ((beta+eta) - t)/(beta+eta) for t > 0.
/// Continuous at 0 by construction.
double psi_eval(const ProblemGeometry& geom,
                const std::function<double(double)>& omega, double t);

} // namespace tbvp
