#include <doctest.h>

#include <stdexcept>

#include <cmath>

#include "tbvp/hammerstein.hpp"

using namespace tbvp;

namespace {

ProblemGeometry reference_geometry() { return ProblemGeometry{0.25, 0.25, 1.0, 0.125, 0.25}; }

double example_psi(double t) { return t <= 0 ? std::sqrt(1 + t) : 1 - 2 * t; }

ProblemSpec linear_spec() {
    ProblemSpec spec;
    spec.geom = reference_geometry();
    spec.f = [](double, double, double) { return 1.0; };
    spec.sigma = [](double s) { return s; };
    spec.g = [](double) { return 1.0; };
    spec.omega = [](double) { return 0.0; };
    spec.B = BFunctional::zero();
    return spec;
}

} // namespace

TEST_CASE("deviated evaluation") {
    auto psi = [](double t) { return example_psi(t); };
    SUBCASE("reflection hits the history datum") {
        CHECK(deviated_value(psi, [](double s) { return -s; }, 0.5, 1.0) ==
              doctest::Approx(std::sqrt(0.5)).epsilon(1e-14));
    }
    SUBCASE("identity") {
        CHECK(deviated_value(psi, [](double s) { return s; }, 0.3, 1.0) ==
              doctest::Approx(example_psi(0.3)).epsilon(1e-14));
    }
    SUBCASE("delay") {
        CHECK(deviated_value(psi, [](double s) { return s - 0.25; }, 0.1, 1.0) ==
              doctest::Approx(std::sqrt(0.85)).epsilon(1e-14));
    }
    SUBCASE("sigma escaping [-r,1] is a (C6) violation") {
        CHECK_THROWS_AS(deviated_value(psi, [](double s) { return s - 2.0; }, 0.1, 1.0),
                        SpecViolation);
    }
}

TEST_CASE("boundary functionals") {
    QuadratureRule quad{};
    SUBCASE("zero kind") {
        CHECK(eval_functional(BFunctional::zero(), [](double t) { return t; }, 1.0, quad) == 0.0);
    }
    SUBCASE("the worked example at u = psi: 1/12 + 2/15 = 13/60") {
        auto B = BFunctional::weighted_square([](double t) { return t * t; });
        CHECK(eval_functional(B, [](double t) { return example_psi(t); }, 1.0, quad) ==
              doctest::Approx(13.0 / 60).epsilon(1e-5));
    }
    SUBCASE("weighted linear, unit weight: interval length") {
        auto B = BFunctional::weighted_linear([](double) { return 1.0; });
        CHECK(eval_functional(B, [](double) { return 1.0; }, 1.0, quad) ==
              doctest::Approx(2.0).epsilon(1e-14));
    }
    SUBCASE("negative value is a condition-(b) violation") {
        auto B = BFunctional::weighted_linear([](double) { return 1.0; });
        CHECK_THROWS_AS(eval_functional(B, [](double) { return -1.0; }, 1.0, quad),
                        SpecViolation);
    }
}

TEST_CASE("Hammerstein operator") {
    const auto geom = reference_geometry();
    const auto mesh = Mesh::make(1.0, geom, 64, 16);
    QuadratureRule quad{};

    SUBCASE("f=0 and B=0 annihilate") {
        ProblemSpec spec = linear_spec();
        spec.f = [](double, double, double) { return 0.0; };
        const GridFunction Fu = apply_hammerstein(spec, [](double) { return 0.0; }, mesh, quad);
        for (double v : Fu.values()) CHECK(v == 0.0);
    }

    SUBCASE("f=1 reproduces the linear oracle q(t) = 9t/16 - t^2/2") {
        const GridFunction Fu =
            apply_hammerstein(linear_spec(), [](double) { return 0.0; }, mesh, quad);
        for (std::size_t i = 0; i < mesh->size(); ++i) {
            const double t = mesh->nodes()[i];
            const double q = t <= 0 ? 0.0 : 9.0 * t / 16 - t * t / 2;
            CHECK(Fu.values()[i] == doctest::Approx(q).epsilon(1e-11));
        }
    }

    SUBCASE("f=0 with B[u]=1 leaves only gamma") {
        ProblemSpec spec = linear_spec();
        spec.f = [](double, double, double) { return 0.0; };
        spec.B.kind = BFunctional::Kind::Custom;
        spec.B.custom = [](const Evaluable&) { return 1.0; };
        const GridFunction Fu = apply_hammerstein(spec, [](double) { return 0.0; }, mesh, quad);
        for (std::size_t i = 0; i < mesh->size(); ++i) {
            const double t = mesh->nodes()[i];
            CHECK(Fu.values()[i] == doctest::Approx(t <= 0 ? 0.0 : 2 * t).epsilon(1e-13));
        }
    }

    SUBCASE("history annihilation is exact") {
        ProblemSpec spec = linear_spec();
        spec.B.kind = BFunctional::Kind::Custom;
        spec.B.custom = [](const Evaluable&) { return 0.7; };
        const GridFunction Fu =
            apply_hammerstein(spec, [](double t) { return std::cos(t); }, mesh, quad);
        for (std::size_t i = 0; i <= mesh->zero_index(); ++i)
            CHECK(Fu.values()[i] == 0.0);
    }

    SUBCASE("image lies in the cone up to discretization error") {
        ProblemSpec spec = linear_spec();
        spec.f = [](double t, double u, double v) {
            return (1 + t) * std::exp(0.2 * u - 0.1 * v);
        };
        spec.sigma = [](double s) { return -s; };
        spec.omega = [](double t) { return std::sqrt(1 + t); };
        const GridFunction Fu = apply_hammerstein(
            spec, [&](double t) { return example_psi(t); }, mesh, quad);
        const double c = cone_constants(geom).c;
        CHECK(min_on(Fu, geom.a, geom.b) >= c * sup_norm(Fu, 0.0, 1.0) - 1e-9);
    }

    SUBCASE("monotone in f on [a,b] and linear in B") {
        ProblemSpec lo = linear_spec();
        ProblemSpec hi = linear_spec();
        hi.f = [](double t, double, double) { return 1.0 + t; };
        auto u = [](double t) { return t > 0 ? t : 0.0; };
        const GridFunction Flo = apply_hammerstein(lo, u, mesh, quad);
        const GridFunction Fhi = apply_hammerstein(hi, u, mesh, quad);
        for (std::size_t i = 0; i < mesh->size(); ++i) {
            const double t = mesh->nodes()[i];
            if (t >= geom.a && t <= geom.b)
                CHECK(Flo.values()[i] <= Fhi.values()[i] + 1e-14);
        }

        ProblemSpec b1 = linear_spec();
        b1.B.kind = BFunctional::Kind::Custom;
        b1.B.custom = [](const Evaluable&) { return 0.3; };
        ProblemSpec b2 = b1;
        b2.B.custom = [](const Evaluable&) { return 0.6; };
        const GridFunction F1 = apply_hammerstein(b1, u, mesh, quad);
        const GridFunction F2 = apply_hammerstein(b2, u, mesh, quad);
        for (std::size_t i = 0; i < mesh->size(); ++i) {
            const double t = mesh->nodes()[i];
            CHECK(F2.values()[i] - F1.values()[i] ==
                  doctest::Approx(gamma_eval(geom, t) * 0.3).epsilon(1e-12));
        }
    }

    SUBCASE("negative f is rejected") {
        ProblemSpec spec = linear_spec();
        spec.f = [](double, double, double) { return -1.0; };
        CHECK_THROWS_AS(apply_hammerstein(spec, [](double) { return 0.0; }, mesh, quad),
                        SpecViolation);
    }
}
