#pragma once

#include "tbvp/geometry.hpp"
#include "tbvp/grid.hpp"

namespace tbvp {

/// Membership data of the cone
///   K0 = { u : u = 0 on [-r,0], min_{[a,b]} u >= c ||u||_{[0,1]} }.
struct ConeSpec {
    double c;
    double a;
    double b;
    double r;

    static ConeSpec from_geometry(const ProblemGeometry& geom) {
        return ConeSpec{cone_constants(geom).c, geom.a, geom.b, geom.r};
    }
};

struct ConeDefect {
    double history; // sup |v| on [-r,0]
    double ratio;   // max(0, c*||v||_[0,1] - min_[a,b] v)
};

/// Both defects vanish (within tolerance) iff v lies in K0.
ConeDefect cone_defect(const GridFunction& v, const ConeSpec& spec);

bool is_member(const GridFunction& v, const ConeSpec& spec, double tol);

/// ||u - psi||_{[0,1]} - rho; zero iff u sits on the sphere part of
/// the boundary of the translated set K_{psi,rho}.
double boundary_gap(const GridFunction& u, const GridFunction& psi, double rho);

} // namespace tbvp
