#include <cmath>
#include <functional>
#include <sstream>

#include "cqs/oracle.hpp"
#include "cqs/qfi.hpp"
#include "cqs/runner.hpp"

namespace cqs {

namespace {

struct Suite {
    std::vector<CheckResult> results;

    void check(const std::string& name, const std::function<std::string()>& body) {
        CheckResult r;
        r.name = name;
        try {
            r.detail = body();  // empty string = pass
            r.passed = r.detail.empty();
        } catch (const std::exception& e) {
            r.passed = false;
            r.detail = e.what();
        }
        results.push_back(std::move(r));
    }
};

std::string expect_below(double value, double bound, const char* what) {
    if (value < bound) return {};
    std::ostringstream os;
    os << what << " = " << value << " (bound " << bound << ")";
    return os.str();
}

}  // namespace

std::vector<CheckResult> run_validation(const ExperimentConfig& cfg) {
    Suite s;
    const double w = cfg.omega;

    s.check("hilbert: propagator unitarity", [&] {
        const CriticalModel m = build_qrm_effective(w, 0.8, 48);
        const Matrix u = HermitianPropagator(m.hamiltonian_op()).unitary(1.7);
        const double resid =
            (u.adjoint() * u - Matrix::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff();
        return expect_below(resid, 1e-10, "max|U^dag U - I|");
    });

    s.check("hilbert: truncation identity", [&] {
        const SpaceDescriptor sp = SpaceDescriptor::boson(17);
        const LadderOps b = ladder_ops(sp);
        Matrix comm = b.a.matrix * b.adag.matrix - b.adag.matrix * b.a.matrix -
                      Matrix::Identity(sp.dim, sp.dim);
        const double corner = std::abs(comm(sp.cutoff, sp.cutoff) + double(sp.cutoff + 1));
        comm(sp.cutoff, sp.cutoff) = 0.0;
        if (corner > 1e-14 || comm.cwiseAbs().maxCoeff() > 1e-14)
            return std::string("truncated [a,a^dag] deviates from -(Nc+1)|Nc><Nc| + I");
        return std::string{};
    });

    s.check("hilbert: energy conservation", [&] {
        const CriticalModel m = build_qrm_effective(w, 0.9, 64);
        const QuantumState psi0 = canonical_initial_state(m.space);
        const Operator h = m.hamiltonian_op();
        const double e0 = expect(h, psi0).real();
        double worst = 0;
        for (double t : {0.3, 2.9, 11.0}) {
            const QuantumState psit = evolve_pure(h, psi0, t);
            worst = std::max(worst,
                             std::abs(expect(h, psit).real() - e0) / std::max(1.0, std::abs(e0)));
        }
        return expect_below(worst, 1e-9, "relative energy drift");
    });

    s.check("hilbert: eigendecomposition reconstruction", [&] {
        const CriticalModel m = build_opo(1.0, 0.3, 40);
        const Matrix h = m.hamiltonian();
        Eigen::SelfAdjointEigenSolver<Matrix> es(h);
        const Matrix rebuilt = es.eigenvectors() *
                               es.eigenvalues().cast<Complex>().asDiagonal() *
                               es.eigenvectors().adjoint();
        const double resid = (rebuilt - h).cwiseAbs().maxCoeff() / h.cwiseAbs().maxCoeff();
        return expect_below(resid, 1e-10, "reconstruction residual");
    });

    s.check("models: commutator identity (all families)", [&] {
        double worst = 0;
        for (double g : {0.3, 0.5, 0.8})
            worst = std::max(worst,
                             commutator_residual(build_qrm_effective(w, g, 64), 0.3));
        for (double k : {0.1, 0.3})
            worst = std::max(worst, commutator_residual(build_opo(1.0, k, 64), 0.3));
        for (double l : {1.3, 1.6})
            worst = std::max(worst, commutator_residual(build_lmg(0.0, l, 64), 0.3));
        return expect_below(worst, 1e-8, "projected commutator residual");
    });

    s.check("models: spectrum gap matches closed-form Delta", [&] {
        double worst = 0;
        for (const CriticalModel& m :
             {build_qrm_effective(w, 0.8, 96), build_opo(1.0, 0.3, 96),
              build_lmg(0.0, 1.4, 96)}) {
            const double d = delta_from_spectrum(m);
            worst = std::max(worst, std::abs(d - m.delta) / std::abs(m.delta));
        }
        return expect_below(worst, 1e-6, "relative gap mismatch");
    });

    s.check("models: linear parametrization exactness", [&] {
        const double g = 0.73;
        const CriticalModel m = build_qrm_effective(w, g, 32);
        const Matrix direct = m.h0 + (g * g) * m.h1;
        return expect_below((direct - m.hamiltonian()).cwiseAbs().maxCoeff(), 1e-12,
                            "H(g) - (H0 + g^2 H1)");
    });

    s.check("models: C, D Hermitian and Lambda conjugation", [&] {
        const CriticalModel m = build_lmg(0.4, 1.5, 48);
        const Matrix c = m.c_op(), d = m.d_op();
        const double sd = std::sqrt(m.delta);
        const Matrix lam = Complex(0, 1) * sd * c - d;
        const Matrix lam_expected = Complex(0, -1) * sd * c - d;
        double worst = std::max(hermiticity_residual(c), hermiticity_residual(d));
        worst = std::max(worst, (lam.adjoint() - lam_expected).cwiseAbs().maxCoeff());
        return expect_below(worst, 1e-10, "hermiticity / conjugation residual");
    });

    s.check("qfi: monotonic divergence at fixed phase", [&] {
        double prev = 0;
        for (double g : {0.80, 0.85, 0.90, 0.95}) {
            const CriticalModel m = build_qrm_effective(w, g, 96);
            const double t = 2.0 * kPi / std::sqrt(m.delta);
            const double i = qfi_analytic(m, canonical_initial_state(m.space), t).value;
            if (i <= prev) return std::string("QFI not increasing toward the critical point");
            prev = i;
        }
        return std::string{};
    });

    s.check("qfi: small-time law", [&] {
        const CriticalModel m = build_qrm_effective(w, 0.6, 48);
        const QuantumState psi = canonical_initial_state(m.space);
        const Operator h1(m.space, m.h1);
        double worst = 0;
        for (double t : {1e-3, 1e-4}) {
            const double full = qfi_generator_full(m, psi, t).value;
            const double lead = 4.0 * t * t * variance(h1, psi) *
                                m.dlambda_dphys * m.dlambda_dphys;
            worst = std::max(worst, std::abs(full / lead - 1.0));
        }
        return expect_below(worst, 1e-4, "deviation of I/(4 t^2 Var[H1])");
    });

    s.check("qfi: generator hermiticity", [&] {
        const CriticalModel m = build_opo(1.0, 0.22, 48);
        const Operator h = generator(m, 3.7);
        return expect_below(hermiticity_residual(h.matrix), 1e-10, "max|h - h^dag|");
    });

    s.check("protocols: closed-form quadratures (200-point grids)", [&] {
        double worst = 0;
        for (double g : {0.5, 0.8, 0.95}) {
            const double horizon = 2.0 * tau_n(g, w, 1);
            const int cutoff = 128;
            for (int i = 1; i <= 200; ++i) {
                const double t = horizon * i / 200.0;
                const QuadratureStats sim = quadrature_simulated(g, w, t, cutoff);
                const QuadratureStats cf = quadrature_closed_form(g, w, t);
                worst = std::max(worst, std::abs(sim.mean_x - cf.mean_x) /
                                            std::max(1.0, std::abs(cf.mean_x)));
                worst = std::max(worst, std::abs(sim.var_x - cf.var_x) /
                                            std::max(1.0, std::abs(cf.var_x)));
            }
        }
        return expect_below(worst, 1e-6, "max relative quadrature error");
    });

    s.check("protocols: revival geometry and Eq-form maxima", [&] {
        for (double g : {0.75, 0.9}) {
            const ProtocolPoint p = inverted_variance_quadrature(g, w, 1);
            if (std::abs(p.mean) > 1e-6) return std::string("mean not zero at tau_1");
            if (std::abs(p.variance - 1.0) > 1e-6)
                return std::string("variance not one at tau_1");
            if (std::abs(p.chi) < 1.0) return std::string("susceptibility lost at tau_1");
            const double ratio = p.inv_var / p.f_closed_form;
            if (ratio < 0.99 || ratio > 1.01)
                return std::string("F / closed-form outside [0.99, 1.01]");
            if (p.inv_var > p.qfi_full * 1.02)
                return std::string("Cramer-Rao ordering violated");
        }
        return std::string{};
    });

    s.check("protocols: working points", [&] {
        const auto wps = working_points(8, w);
        double prev = 0;
        for (const auto& wp : wps) {
            const double r = std::sqrt((1 + wp.g * wp.g) / (1 - wp.g * wp.g));
            if (std::abs(r - std::floor(r) - 0.5) > 1e-10)
                return std::string("R(g_o) fractional part != 0.5");
            if (wp.g <= prev || wp.g >= 1.0) return std::string("g_o not increasing in (0,1)");
            prev = wp.g;
        }
        return std::string{};
    });

    s.check("protocols: Loschmidt amplitude bounds", [&] {
        const SpaceDescriptor sp = SpaceDescriptor::boson(8);
        Vector v = Vector::Zero(sp.dim);
        v(0) = 1;
        const QuantumState vac = QuantumState::pure(sp, std::move(v));
        const Complex c = 1.0 / std::sqrt(2.0);
        const LoschmidtResult r0 = loschmidt(0.55, w, vac, c, c, 0.0);
        if (std::abs(std::abs(r0.amplitude) - 1.0) > 1e-12)
            return std::string("|G| != 1 at t = 0");
        for (double t : {1.0, 4.0, 9.0}) {
            const LoschmidtResult r = loschmidt(0.55, w, vac, c, c, t);
            if (std::abs(r.amplitude) > 1.0 + 1e-10) return std::string("|G| exceeded 1");
        }
        return std::string{};
    });

    s.check("protocols: alternative initial states stay below the QFI", [&] {
        const int cutoff = 96;
        const SpaceDescriptor sp = SpaceDescriptor::boson(cutoff);
        // |0> and coherent alpha = 1
        Vector v0 = Vector::Zero(sp.dim);
        v0(0) = 1;
        Vector v1(sp.dim);
        for (int k = 0; k < sp.dim; ++k)
            v1(k) = std::exp(-0.5) / std::sqrt(std::tgamma(double(k) + 1.0));
        v1.normalize();
        for (const Vector& v : {v0, v1}) {
            const QuantumState st = QuantumState::pure(sp, v);
            const ProtocolPoint p = inverted_variance_quadrature(0.8, w, 1, &st);
            const CriticalModel m = build_qrm_effective(w, 0.8, p.cutoff);
            Vector lifted = Vector::Zero(m.space.dim);
            const int copy = std::min<int>(sp.dim, m.space.dim);
            lifted.head(copy) = v.head(copy);
            lifted.normalize();
            const double qfi =
                qfi_generator_full(m, QuantumState::pure(m.space, lifted), p.time).value;
            if (p.inv_var > qfi * 1.02 + 1e-9)
                return std::string("F exceeded the QFI for an alternative initial state");
        }
        return std::string{};
    });

    s.check("openquantum: unitary limit and conserved trace", [&] {
        const CriticalModel m = build_qrm_full(w, 50.0, 0.6, 16);
        const QuantumState psi0 = canonical_initial_state(m.space);
        QuantumState rho0;
        rho0.space = m.space;
        rho0.kind = StateKind::Density;
        rho0.matrix = psi0.vector * psi0.vector.adjoint();
        const double t = 2.0;
        LindbladOptions opts;
        opts.dt = 2e-4;  // step-halving converged regime
        const LindbladRun run = lindblad_evolve(m.hamiltonian_op(), {}, rho0, t, opts);
        const QuantumState psit = evolve_pure(m.hamiltonian_op(), psi0, t);
        const Matrix expected = psit.vector * psit.vector.adjoint();
        double worst = (run.state.matrix - expected).cwiseAbs().maxCoeff();
        worst = std::max(worst, run.trace_drift);
        worst = std::max(worst, hermiticity_residual(run.state.matrix));
        return expect_below(worst, 1e-7, "unitary-limit deviation");
    });

    s.check("openquantum: step-halving convergence", [&] {
        const CriticalModel m = build_qrm_full(w, 50.0, 0.6, 16);
        const QuantumState psi0 = canonical_initial_state(m.space);
        QuantumState rho0;
        rho0.space = m.space;
        rho0.kind = StateKind::Density;
        rho0.matrix = psi0.vector * psi0.vector.adjoint();
        const NoiseSpec noise = NoiseSpec::scaled(0.1 * w);
        const double t = tau_n(0.6, w, 1);
        LindbladOptions coarse, fine;
        const LindbladRun a = lindblad_evolve(m.hamiltonian_op(), noise, rho0, t, coarse);
        fine.dt = a.dt / 2.0;
        const LindbladRun b = lindblad_evolve(m.hamiltonian_op(), noise, rho0, t, fine);
        const LadderOps lad = ladder_ops(m.space);
        const double xa = expect(lad.x, a.state).real();
        const double xb = expect(lad.x, b.state).real();
        return expect_below(std::abs(xa - xb), 1e-5, "dt -> dt/2 change in <X>");
    });

    s.check("oracle: symplectic invariants and branches", [&] {
        for (const CriticalModel& m :
             {build_qrm_effective(w, 0.8, 8), build_opo(1.0, 0.3, 8),
              build_lmg(0.0, 1.4, 8), build_lmg(0.0, 0.5, 8)}) {
            const QuadraticForm qf = quadratic_form(m);
            for (double t : {0.5, 3.0, 7.5}) {
                const Eigen::Matrix2d sprop = symplectic_propagator(qf, t);
                const double scale = std::max(1.0, sprop.cwiseAbs().maxCoeff());
                if (std::abs(sprop.determinant() - 1.0) > 1e-12 * scale * scale)
                    return std::string("det S != 1");
                const double growth = sprop.cwiseAbs().maxCoeff();
                if (m.delta > 0 && growth > 2.0 / std::sqrt(std::min(1.0, m.delta / 4.0)) + 1.0)
                    return std::string("trigonometric branch unbounded");
                if (m.delta < 0 && t > 3.0 && growth < 2.0)
                    return std::string("hyperbolic branch failed to grow");
            }
        }
        return std::string{};
    });

    s.check("oracle: Fock simulation matches moment dynamics", [&] {
        double worst = 0;
        const struct {
            CriticalModel model;
        } cases[] = {
            {build_qrm_effective(w, 0.5, 224)}, {build_qrm_effective(w, 0.8, 224)},
            {build_qrm_effective(w, 0.95, 224)}, {build_opo(1.0, 0.1, 224)},
            {build_opo(1.0, 0.3, 224)},          {build_opo(1.0, 0.45, 224)},
            {build_lmg(0.0, 1.3, 224)},          {build_lmg(0.3, 1.5, 224)},
            {build_lmg(0.0, 1.7, 224)},
        };
        for (const auto& c : cases) {
            const QuadraticForm qf = quadratic_form(c.model);
            const QuantumState psi0 = canonical_initial_state(c.model.space);
            const MomentState m0 = moments_of(psi0);
            const HermitianPropagator prop(c.model.hamiltonian_op());
            const LadderOps b = ladder_ops(c.model.space);
            const double horizon = 4.0 * kPi / std::sqrt(std::abs(c.model.delta));
            for (int i = 1; i <= 24; ++i) {
                const double t = horizon * i / 24.0;
                const MomentState mt = moments_evolve(qf, m0, t);
                const QuantumState psit =
                    QuantumState::pure(c.model.space, prop.apply(psi0.vector, t));
                worst = std::max(worst, std::abs(expect(b.x, psit).real() - mt.r(0)));
                worst = std::max(worst, std::abs(variance(b.x, psit) - mt.sigma(0, 0)));
            }
        }
        return expect_below(worst, 1e-6, "max |Fock - symplectic| deviation");
    });

    return s.results;
}

}  // namespace cqs
