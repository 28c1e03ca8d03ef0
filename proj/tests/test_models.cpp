#include <doctest.h>

#include <Eigen/Eigenvalues>

#include "cqs/models.hpp"

using namespace cqs;

TEST_CASE("gap parameter closed forms") {
    CHECK(build_qrm_effective(1.0, 1.0, 8).delta == doctest::Approx(0.0));
    CHECK(build_qrm_effective(1.0, 0.8, 8).delta == doctest::Approx(1.44));

    CHECK(build_opo(1.0, 0.0, 8).delta == doctest::Approx(4.0));
    CHECK(build_opo(1.0, 0.25, 8).delta == doctest::Approx(3.0));
    CHECK(build_opo(1.0, 0.5, 8).delta == doctest::Approx(0.0));

    CHECK(build_lmg(0.0, 1.0, 8).delta == doctest::Approx(0.0));
    CHECK(build_lmg(0.0, 0.5, 8).delta == doctest::Approx(-4.0));
    CHECK(build_lmg(0.0, 1.25, 8).delta == doctest::Approx(5.0));

    CHECK_THROWS_AS(build_lmg(1.0, 1.3, 8), Error);
}

TEST_CASE("qrm_full: decoupled limit and realized regime") {
    // g = 0: ground state |dn,0> with energy -eta w / 2
    const CriticalModel m = build_qrm_full(1.0, 50.0, 0.0, 12);
    Eigen::SelfAdjointEigenSolver<Matrix> es(m.hamiltonian());
    CHECK(es.eigenvalues()(0) == doctest::Approx(-25.0).epsilon(1e-12));

    // the experimentally realized parameter set constructs fine
    const CriticalModel lab = build_qrm_full(2.0 * kPi * 200.0, 1000.0, 0.99, 8);
    CHECK(lab.space.dim == 18);
    CHECK(lab.algebra_closed == false);

    // linearity of the coupling term in g
    const CriticalModel a = build_qrm_full(1.0, 100.0, 0.4, 10);
    const Matrix direct = a.h0 + 0.4 * a.h1;
    CHECK((direct - a.hamiltonian()).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("qrm_effective: parametrization and commutator structure") {
    const double w = 1.0, g = 0.8;
    const CriticalModel m = build_qrm_effective(w, g, 60);

    SUBCASE("H(g) = H0 + g^2 H1 entrywise") {
        const Matrix direct = m.h0 + (g * g) * m.h1;
        CHECK((direct - m.hamiltonian()).cwiseAbs().maxCoeff() < 1e-12);
        CHECK(m.dlambda_dphys == doctest::Approx(2.0 * g));
    }

    SUBCASE("C and D are Hermitian") {
        CHECK(hermiticity_residual(m.c_op()) < 1e-10);
        CHECK(hermiticity_residual(m.d_op()) < 1e-10);
    }

    SUBCASE("D = w^3 [(1-g^2) X^2 - P^2] away from the truncation edge") {
        const LadderOps b = ladder_ops(m.space);
        const Matrix expected =
            std::pow(w, 3) * ((1.0 - g * g) * (b.x.matrix * b.x.matrix).eval() -
                              (b.p.matrix * b.p.matrix).eval());
        const int keep = 40;  // interior block
        const Matrix diff = (m.d_op() - expected).topLeftCorner(keep, keep);
        CHECK(diff.cwiseAbs().maxCoeff() < 1e-10);
    }
}

TEST_CASE("commutator residual: the closure identity holds on the interior") {
    CHECK(commutator_residual(build_qrm_effective(1.0, 0.5, 64), 0.3) < 1e-8);
    CHECK(commutator_residual(build_opo(1.0, 0.2, 64), 0.3) < 1e-8);
    CHECK(commutator_residual(build_lmg(0.0, 1.5, 64), 0.3) < 1e-8);

    // Delta <= 0 is refused
    CHECK_THROWS_AS(commutator_residual(build_lmg(0.0, 0.5, 32), 0.3), Error);
}

TEST_CASE("spectrum: equally spaced interior levels reproduce Delta") {
    for (const CriticalModel& m :
         {build_qrm_effective(1.0, 0.8, 120), build_opo(1.0, 0.3, 120),
          build_lmg(0.0, 1.4, 120)}) {
        const double d = delta_from_spectrum(m);
        CHECK(d == doctest::Approx(m.delta).epsilon(1e-6));
    }
}

TEST_CASE("conditioned Hamiltonians") {
    const double w = 1.0;

    SUBCASE("g -> 0: identical branches") {
        const CriticalModel m = build_qrm_effective(w, 1e-8, 24);
        const auto [up, dn] = conditioned_hamiltonians(m);
        CHECK((up.matrix - dn.matrix).cwiseAbs().maxCoeff() < 1e-14);
    }

    SUBCASE("frequency ratio R(g) = sqrt((1+g^2)/(1-g^2))") {
        const double g = 0.7;
        const CriticalModel m = build_qrm_effective(w, g, 140);
        const auto [up, dn] = conditioned_hamiltonians(m);
        Eigen::SelfAdjointEigenSolver<Matrix> eu(up.matrix, Eigen::EigenvaluesOnly);
        Eigen::SelfAdjointEigenSolver<Matrix> ed(dn.matrix, Eigen::EigenvaluesOnly);
        const double nu_up = eu.eigenvalues()(1) - eu.eigenvalues()(0);
        const double nu_dn = ed.eigenvalues()(1) - ed.eigenvalues()(0);
        const double expected = std::sqrt((1 + g * g) / (1 - g * g));
        CHECK(nu_up / nu_dn == doctest::Approx(expected).epsilon(1e-9));
    }

    SUBCASE("R = 1.5 inverts to g = 0.6202") {
        const double r = 1.5;
        const double g = std::sqrt((r * r - 1.0) / (r * r + 1.0));
        CHECK(g == doctest::Approx(0.620174).epsilon(1e-5));
    }
}

TEST_CASE("at_parameter rebuilds the same family") {
    const CriticalModel m = build_opo(1.0, 0.25, 16);
    const CriticalModel shifted = m.at_parameter(1.1);
    CHECK(shifted.params.kappa == doctest::Approx(0.25));
    CHECK(shifted.delta == doctest::Approx(4.0 * 1.21 - 1.0));
    CHECK(shifted.space.cutoff == 16);
}
