#include "tbvp/cone.hpp"

#include <algorithm>
#include <stdexcept>

namespace tbvp {

ConeDefect cone_defect(const GridFunction& v, const ConeSpec& spec) {
    const double history = sup_norm(v, -spec.r, 0.0);
    const double norm01 = sup_norm(v, 0.0, 1.0);
    const double min_ab = min_on(v, spec.a, spec.b);
    const double ratio = std::max(0.0, spec.c * norm01 - min_ab);
    return ConeDefect{history, ratio};
}

bool is_member(const GridFunction& v, const ConeSpec& spec, double tol) {
    if (tol < 0.0) throw std::invalid_argument("is_member: tol must be >= 0");
    const ConeDefect d = cone_defect(v, spec);
    return d.history <= tol && d.ratio <= tol;
}

double boundary_gap(const GridFunction& u, const GridFunction& psi, double rho) {
    if (!u.mesh().same_as(psi.mesh()))
        throw std::invalid_argument("boundary_gap: mesh mismatch");
    return sup_norm(u - psi, 0.0, 1.0) - rho;
}

} // namespace tbvp
