#include "tbvp/hammerstein.hpp"

#include <cmath>
#include <sstream>

namespace tbvp {

double deviated_value(const Evaluable& u, const Evaluable& sigma, double s, double r) {
    const double ts = sigma(s);
    if (!(ts >= -r - 1e-12 && ts <= 1.0 + 1e-12)) {
        std::ostringstream os;
        os << "(C6) violation: sigma(" << s << ") = " << ts << " escapes [-" << r << ",1]";
        throw SpecViolation(os.str());
    }
    return u(std::clamp(ts, -r, 1.0));
}

double deviated_value(const GridFunction& u, const Evaluable& sigma, double s) {
    return deviated_value([&u](double t) { return u(t); }, sigma, s, u.mesh().r());
}

namespace {

// Geometrically graded split points toward both endpoints. Composite rules
// lose accuracy when the integrand has an algebraic endpoint singularity
// (a square-root history entering through a reflected argument, say); panels
// shrinking like 4^-j toward the ends push that error below 1e-11.
std::vector<double> graded_ends(double lo, double hi, std::vector<double> kinks) {
    const double w = hi - lo;
    for (int j = 1; j <= 10; ++j) {
        const double d = w * std::pow(0.25, j);
        kinks.push_back(lo + d);
        kinks.push_back(hi - d);
    }
    return kinks;
}

} // namespace

double eval_functional(const BFunctional& B, const Evaluable& u, double r,
                       const QuadratureRule& rule) {
    double value = 0.0;
    switch (B.kind) {
    case BFunctional::Kind::Zero:
        return 0.0;
    case BFunctional::Kind::WeightedLinear:
        value = integrate([&](double t) { return B.weight(t) * u(t); },
                          split_panels(-r, 1.0, graded_ends(-r, 1.0, {0.0})), rule);
        break;
    case BFunctional::Kind::WeightedSquare:
        value = integrate([&](double t) { const double x = u(t); return B.weight(t) * x * x; },
                          split_panels(-r, 1.0, graded_ends(-r, 1.0, {0.0})), rule);
        break;
    case BFunctional::Kind::Custom:
        value = B.custom(u);
        break;
    }
    if (value < 0.0) {
        std::ostringstream os;
        os << "condition (b) violation: B[u] = " << value << " < 0";
        throw SpecViolation(os.str());
    }
    return value;
}

GridFunction apply_hammerstein(const ProblemSpec& spec, const Evaluable& u,
                               const std::shared_ptr<const Mesh>& mesh,
                               const QuadratureRule& rule) {
    const ProblemGeometry& geom = spec.geom;
    const Evaluable g = spec.g ? spec.g : [](double) { return 1.0; };
    const double Bu = eval_functional(spec.B, u, geom.r, rule);

    auto integrand_at = [&](double t) {
        return [&, t](double s) {
            const double fv = spec.f(s, u(s), deviated_value(u, spec.sigma, s, geom.r));
            if (fv < 0.0) {
                std::ostringstream os;
                os << "(C5) violation: f(" << s << ",.,.) = " << fv << " < 0";
                throw SpecViolation(os.str());
            }
            const double gv = g(s);
            if (gv < 0.0) {
                std::ostringstream os;
                os << "(C4) violation: g(" << s << ") = " << gv << " < 0";
                throw SpecViolation(os.str());
            }
            return kernel_eval(geom, t, s) * gv * fv;
        };
    };

    const auto& nodes = mesh->nodes();
    std::vector<double> vals(nodes.size(), 0.0);
    for (std::size_t i = mesh->zero_index(); i < nodes.size(); ++i) {
        const double t = nodes[i];
        if (t <= 0.0) continue; // k and gamma both vanish on the history side
        const double integral =
            integrate(integrand_at(t), split_panels(0.0, 1.0, graded_ends(0.0, 1.0, {geom.eta, t})), rule);
        vals[i] = integral + gamma_eval(geom, t) * Bu;
    }
    return GridFunction(mesh, std::move(vals));
}

GridFunction apply_hammerstein(const ProblemSpec& spec, const GridFunction& u,
                               const std::shared_ptr<const Mesh>& mesh,
                               const QuadratureRule& rule) {
    return apply_hammerstein(spec, [&u](double t) { return u(t); }, mesh, rule);
}

} // namespace tbvp
