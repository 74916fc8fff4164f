#include "tbvp/geometry.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace tbvp {

void ProblemGeometry::validate() const {
    auto fail = [](const std::string& what) {
        throw std::invalid_argument("ProblemGeometry: " + what);
    };
    if (!(beta > 0.0)) fail("beta must be positive");
    if (!(eta > 0.0 && eta < 1.0)) fail("eta must lie in (0,1)");
    if (!(beta + eta > 0.0 && beta + eta < 1.0)) fail("beta + eta must lie in (0,1)");
    if (!(r > 0.0)) fail("r must be positive");
    if (!(0.0 < a && a < b && b < beta + eta)) {
        std::ostringstream os;
        os << "sensor interval must satisfy 0 < a < b < beta+eta, got a=" << a
           << " b=" << b << " beta+eta=" << beta + eta;
        fail(os.str());
    }
}

double heaviside(double tau) { return tau >= 0.0 ? 1.0 : 0.0; }

static void check_range(const ProblemGeometry& geom, double t, double s) {
    if (!(t >= -geom.r - 1e-12 && t <= 1.0 + 1e-12))
        throw std::domain_error("kernel_eval: t outside [-r,1]");
    if (!(s >= -1e-12 && s <= 1.0 + 1e-12))
        throw std::domain_error("kernel_eval: s outside [0,1]");
}

double kernel_eval(const ProblemGeometry& geom, double t, double s) {
    check_range(geom, t, s);
    if (t < 0.0) return 0.0;
    const double be = geom.beta_eta();
    double k = geom.beta * t / be;
    k += t * (geom.eta - s) * heaviside(geom.eta - s) / be;
    k -= (t - s) * heaviside(t - s);
    return k;
}

double phi_envelope(const ProblemGeometry& geom, double s) {
    if (!(s >= -1e-12 && s <= 1.0 + 1e-12))
        throw std::domain_error("phi_envelope: s outside [0,1]");
    const double be = geom.beta_eta();
    if (be >= 0.5) return s;
    return (1.0 - be) / be * s;
}

ConeConstants cone_constants(const ProblemGeometry& geom) {
    geom.validate();
    const double be = geom.beta_eta();
    const double denom = be >= 0.5 ? be : 1.0 - be;
    const double c1 = std::min(geom.a * geom.beta / denom, (be - geom.b) / denom);
    if (!(c1 > 0.0))
        throw std::invalid_argument("cone_constants: c1 <= 0, geometry invalid");
    const double c2 = geom.a;
    return ConeConstants{c1, c2, std::min(c1, c2)};
}

double gamma_eval(const ProblemGeometry& geom, double t) {
    if (!(t >= -geom.r - 1e-12 && t <= 1.0 + 1e-12))
        throw std::domain_error("gamma_eval: t outside [-r,1]");
    if (t < 0.0) return 0.0;
    return t / geom.beta_eta();
}

double psi_eval(const ProblemGeometry& geom,
                const std::function<double(double)>& omega, double t) {
    if (!(t >= -geom.r - 1e-12 && t <= 1.0 + 1e-12))
        throw std::domain_error("psi_eval: t outside [-r,1]");
    if (t <= 0.0) return omega(std::max(t, -geom.r));
    const double be = geom.beta_eta();
    return (be - t) / be * omega(0.0);
}

} // namespace tbvp
