#include <doctest.h>

#include "cqs/protocols.hpp"

using namespace cqs;

namespace {

QuantumState boson_vacuum(int cutoff) {
    const SpaceDescriptor sp = SpaceDescriptor::boson(cutoff);
    Vector v = Vector::Zero(sp.dim);
    v(0) = 1.0;
    return QuantumState::pure(sp, std::move(v));
}

// closed-form susceptibility of the Loschmidt readout at a revival working
// point (vacuum input, 2 c_up^* c_down = 1), derived from the per-branch
// generators and the parity action of u_up there:
//   chi(g) = 2 pi g [ (1-g^2)^{-1/2} + g^2/4 (1-g^2)^{-3/2}
//                     - g^2 / (4 (1+g^2)) (1-g^2)^{-1/2} ]
double loschmidt_chi_working_point(double g) {
    const double one = 1.0 - g * g;
    return 2.0 * kPi * g *
           (1.0 / std::sqrt(one) + g * g / (4.0 * std::pow(one, 1.5)) -
            g * g / (4.0 * (1.0 + g * g) * std::sqrt(one)));
}

}  // namespace

TEST_CASE("canonical initial state") {
    const SpaceDescriptor sp = SpaceDescriptor::boson(12);
    const QuantumState psi = canonical_initial_state(sp);
    const LadderOps b = ladder_ops(sp);
    CHECK(psi.vector.norm() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(std::abs(expect(b.x, psi)) < 1e-14);
    CHECK(expect(b.p, psi).real() == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));

    const SpaceDescriptor comp = SpaceDescriptor::qubit_boson(12);
    const QuantumState full = canonical_initial_state(comp);
    const PauliOps q = pauli_ops(comp);
    CHECK(expect(q.sz, full).real() == doctest::Approx(-1.0).epsilon(1e-14));
}

TEST_CASE("quadrature closed form") {
    SUBCASE("t = 0") {
        const QuadratureStats q = quadrature_closed_form(0.8, 1.0, 0.0);
        CHECK(q.mean_x == doctest::Approx(0.0));
        CHECK(q.var_x == doctest::Approx(1.0));
    }

    SUBCASE("half revival at g = 0.8") {
        // sqrt(Delta) w t = pi
        const double t = kPi / 1.2;
        const QuadratureStats q = quadrature_closed_form(0.8, 1.0, t);
        CHECK(q.mean_x == doctest::Approx(std::sqrt(2.0) / 1.2).epsilon(1e-12));
        CHECK(q.mean_x == doctest::Approx(1.17851).epsilon(1e-5));
        CHECK(q.var_x == doctest::Approx(1.0 + 2.0 * 0.28 / 1.44).epsilon(1e-12));
        CHECK(q.var_x == doctest::Approx(1.38889).epsilon(1e-5));
    }

    SUBCASE("revivals return to (0, 1)") {
        for (int n : {1, 2, 3}) {
            const QuadratureStats q = quadrature_closed_form(0.8, 1.0, tau_n(0.8, 1.0, n));
            CHECK(std::abs(q.mean_x) < 1e-12);
            CHECK(q.var_x == doctest::Approx(1.0).epsilon(1e-12));
        }
    }

    SUBCASE("simulation reproduces the closed form") {
        for (double g : {0.5, 0.9}) {
            const double horizon = 2.0 * tau_n(g, 1.0, 1);
            for (int i = 1; i <= 20; ++i) {
                const double t = horizon * i / 20.0;
                const QuadratureStats sim = quadrature_simulated(g, 1.0, t, 96);
                const QuadratureStats cf = quadrature_closed_form(g, 1.0, t);
                CHECK(std::abs(sim.mean_x - cf.mean_x) < 1e-9 * std::max(1.0, std::abs(cf.mean_x)));
                CHECK(std::abs(sim.var_x - cf.var_x) < 1e-9 * cf.var_x);
            }
        }
    }

    SUBCASE("beyond the normal phase is refused") {
        CHECK_THROWS_AS(quadrature_closed_form(1.0, 1.0, 1.0), Error);
    }
}

TEST_CASE("tau_n") {
    CHECK(tau_n(0.8, 1.0, 1) == doctest::Approx(2.0 * kPi / 1.2).epsilon(1e-14));
    CHECK(tau_n(0.8, 1.0, 1) == doctest::Approx(5.23599).epsilon(1e-5));
    CHECK(tau_n(0.8, 1.0, 2) == doctest::Approx(2.0 * tau_n(0.8, 1.0, 1)).epsilon(1e-14));
    CHECK(tau_n(0.999, 1.0, 1) > tau_n(0.9, 1.0, 1) * 5.0);
    CHECK_THROWS_AS(tau_n(1.0, 1.0, 1), Error);
}

TEST_CASE("susceptibility") {
    SUBCASE("constant observable") {
        CHECK(susceptibility([](double, double) { return 3.5; }, 1.0, 0.0) ==
              doctest::Approx(0.0));
    }

    SUBCASE("linear observable is exact") {
        CHECK(susceptibility([](double p, double) { return -2.25 * p; }, 0.8, 0.0) ==
              doctest::Approx(-2.25).epsilon(1e-9));
    }

    SUBCASE("closed-form quadrature slope at the revival") {
        // |chi| = 4 sqrt(2) pi g Delta^{-3/2} at t = tau_1
        const double g = 0.8, t = tau_n(g, 1.0, 1);
        const double chi = susceptibility(
            [&](double gg, double tt) { return quadrature_closed_form(gg, 1.0, tt).mean_x; },
            g, t);
        const double expected = 4.0 * std::sqrt(2.0) * kPi * g / std::pow(1.44, 1.5);
        CHECK(std::abs(chi) == doctest::Approx(expected).epsilon(1e-9));
        CHECK(std::abs(chi) == doctest::Approx(8.2275).epsilon(1e-4));
    }
}

TEST_CASE("inverted variance at the revival maxima") {
    SUBCASE("g = 0.8, n = 1 reproduces the closed form") {
        const ProtocolPoint p = inverted_variance_quadrature(0.8, 1.0, 1);
        CHECK(p.converged);
        CHECK(p.f_closed_form == doctest::Approx(32.0 * kPi * kPi * 0.64 / std::pow(1.44, 3))
                                     .epsilon(1e-12));
        CHECK(p.f_closed_form == doctest::Approx(67.69).epsilon(1e-3));
        CHECK(p.inv_var == doctest::Approx(p.f_closed_form).epsilon(1e-4));
        CHECK(std::abs(p.mean) < 1e-6);
        CHECK(p.variance == doctest::Approx(1.0).epsilon(1e-6));
    }

    SUBCASE("n^2 law") {
        const ProtocolPoint p1 = inverted_variance_quadrature(0.75, 1.0, 1);
        const ProtocolPoint p2 = inverted_variance_quadrature(0.75, 1.0, 2);
        CHECK(p2.inv_var / p1.inv_var == doctest::Approx(4.0).epsilon(1e-4));
    }

    SUBCASE("Cramer-Rao ordering against the full-generator QFI") {
        for (double g : {0.72, 0.85, 0.93}) {
            const ProtocolPoint p = inverted_variance_quadrature(g, 1.0, 1);
            CHECK(p.inv_var <= p.qfi_full * 1.02);
        }
    }
}

TEST_CASE("frequency estimation at fixed phase") {
    const ProtocolPoint p = frequency_inverted_variance(0.8, 1.0, 1);
    const double tau = tau_n(0.8, 1.0, 1);

    // F_omega = 2 g^4 Delta^-2 tau^2
    const double f_expected = 2.0 * std::pow(0.8, 4) / (1.44 * 1.44) * tau * tau;
    CHECK(p.f_closed_form == doctest::Approx(f_expected).epsilon(1e-12));
    CHECK(p.f_closed_form == doctest::Approx(10.83).epsilon(1e-3));
    CHECK(p.inv_var == doctest::Approx(f_expected).epsilon(1e-4));

    // peak excitation gain 2 g^4 / Delta
    CHECK(p.excitation_gain == doctest::Approx(2.0 * std::pow(0.8, 4) / 1.44).epsilon(1e-4));
    CHECK(p.excitation_gain == doctest::Approx(0.56889).epsilon(1e-3));

    // Heisenberg-limit prefactor 1/(2 g^4)
    const double prefactor = 1.0 / (2.0 * std::pow(0.8, 4));
    CHECK(p.heisenberg_ratio == doctest::Approx(prefactor).epsilon(1e-3));
    CHECK(prefactor == doctest::Approx(1.2207).epsilon(1e-4));
}

TEST_CASE("working points") {
    const auto wps = working_points(6);
    CHECK(wps[0].g == doctest::Approx(0.62017).epsilon(1e-5));
    CHECK(wps[1].g == doctest::Approx(0.85096).epsilon(1e-5));
    for (size_t i = 0; i < wps.size(); ++i) {
        const double g = wps[i].g;
        const double r = std::sqrt((1 + g * g) / (1 - g * g));
        CHECK(r - std::floor(r) == doctest::Approx(0.5).epsilon(1e-10));
        if (i > 0) CHECK(g > wps[i - 1].g);
        CHECK(g < 1.0);
    }
}

TEST_CASE("loschmidt readout") {
    const Complex c = 1.0 / std::sqrt(2.0);
    const QuantumState vac = boson_vacuum(8);

    SUBCASE("decoupled limit: G -> 1, <sx> -> 2 Re[c* c]") {
        const LoschmidtResult r = loschmidt(1e-4, 1.0, vac, c, c, 4.0);
        CHECK(std::abs(r.amplitude - Complex(1.0, 0.0)) < 1e-6);
        CHECK(r.sigma_x == doctest::Approx(1.0).epsilon(1e-6));
    }

    SUBCASE("t = 0: G = 1") {
        const LoschmidtResult r = loschmidt(0.7, 1.0, vac, c, c, 0.0);
        CHECK(std::abs(r.amplitude - Complex(1.0, 0.0)) < 1e-12);
    }

    SUBCASE("|G| <= 1 along the evolution") {
        for (double t : {0.5, 2.0, 5.5, 11.0}) {
            const LoschmidtResult r = loschmidt(0.8, 1.0, vac, c, c, t);
            CHECK(std::abs(r.amplitude) <= 1.0 + 1e-10);
        }
    }

    SUBCASE("working points: zero mean, closed-form susceptibility") {
        const auto wps = working_points(3);
        for (const auto& wp : wps) {
            const LoschmidtResult r = loschmidt(wp.g, 1.0, vac, c, c, wp.tau);
            CHECK(std::abs(r.sigma_x) < 1e-7);
            CHECK(std::abs(std::abs(r.amplitude) - 1.0) < 1e-7);
            CHECK(std::abs(r.chi) ==
                  doctest::Approx(loschmidt_chi_working_point(wp.g)).epsilon(1e-6));
        }
    }

    SUBCASE("Cramer-Rao against the composite QFI") {
        const auto wps = working_points(2);
        for (const auto& wp : wps) {
            const LoschmidtResult r = loschmidt(wp.g, 1.0, vac, c, c, wp.tau);
            const double qfi = loschmidt_qfi(wp.g, 1.0, vac, c, c, wp.tau, r.cutoff);
            CHECK(r.inv_var <= qfi * 1.02);
        }
    }

    SUBCASE("unnormalized qubit amplitudes are rejected") {
        CHECK_THROWS_AS(loschmidt(0.5, 1.0, vac, 1.0, 1.0, 1.0), Error);
    }
}
