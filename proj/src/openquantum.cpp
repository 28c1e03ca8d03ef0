#include "cqs/openquantum.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SparseCore>
#include <cmath>

namespace cqs {

namespace {

using SparseC = Eigen::SparseMatrix<Complex>;

/// Structured evaluation of the Lindblad right-hand side. The four jump
/// operators of the noise model are ladder- or Pauli-structured, so every
/// dissipator is applied in O(dim^2) with index arithmetic instead of GEMMs.
class LindbladRhs {
public:
    LindbladRhs(const Operator& h, const NoiseSpec& noise) : space_(h.space), noise_(noise) {
        noise_.validate();
        if (!space_.has_qubit() && (noise_.dephasing > 0 || noise_.qubit_decay > 0))
            throw Error("lindblad_evolve: qubit channels need a qubit factor");
        if (!space_.has_boson() && (noise_.boson_decay > 0 || noise_.heating > 0))
            throw Error("lindblad_evolve: boson channels need a boson factor");
        if (hermiticity_residual(h.matrix) > 1e-10)
            throw Error("lindblad_evolve: Hamiltonian is not Hermitian");
        hs_ = h.matrix.sparseView(1.0, 1e-300);
        hs_.makeCompressed();
        db_ = space_.has_boson() ? space_.boson_dim() : 1;
        blocks_ = space_.has_qubit() ? 2 : 1;
        sq_.resize(db_);
        for (int n = 0; n < db_; ++n) sq_[n] = std::sqrt(double(n));
    }

    void operator()(const Matrix& rho, Matrix& out) const {
        out.noalias() = Complex(0, -1) * (hs_ * rho);
        out.noalias() += Complex(0, 1) * (rho * hs_);
        if (noise_.dephasing > 0) add_dephasing(rho, out);
        if (noise_.qubit_decay > 0) add_qubit_decay(rho, out);
        if (noise_.boson_decay > 0) add_boson_decay(rho, out);
        if (noise_.heating > 0) add_heating(rho, out);
    }

private:
    // D[sz] rho = sz rho sz - rho: doubles out the qubit-off-diagonal blocks
    void add_dephasing(const Matrix& rho, Matrix& out) const {
        const double r = 2.0 * noise_.dephasing;
        out.block(0, db_, db_, db_) -= r * rho.block(0, db_, db_, db_);
        out.block(db_, 0, db_, db_) -= r * rho.block(db_, 0, db_, db_);
    }

    // D[s-]: population up -> down, halved coherences
    void add_qubit_decay(const Matrix& rho, Matrix& out) const {
        const double r = noise_.qubit_decay;
        out.block(db_, db_, db_, db_) += r * rho.block(0, 0, db_, db_);
        out.block(0, 0, db_, db_) -= r * rho.block(0, 0, db_, db_);
        out.block(0, db_, db_, db_) -= 0.5 * r * rho.block(0, db_, db_, db_);
        out.block(db_, 0, db_, db_) -= 0.5 * r * rho.block(db_, 0, db_, db_);
    }

    // D[a]: (a rho a^dag)[n,m] = sqrt((n+1)(m+1)) rho[n+1,m+1], minus {N, rho}/2
    void add_boson_decay(const Matrix& rho, Matrix& out) const {
        const double r = noise_.boson_decay;
        for (int sb = 0; sb < blocks_; ++sb) {
            for (int tb = 0; tb < blocks_; ++tb) {
                const int ro = sb * db_, co = tb * db_;
                for (int n = 0; n < db_; ++n) {
                    for (int m = 0; m < db_; ++m) {
                        Complex v = -0.5 * (n + m) * rho(ro + n, co + m);
                        if (n + 1 < db_ && m + 1 < db_)
                            v += sq_[n + 1] * sq_[m + 1] * rho(ro + n + 1, co + m + 1);
                        out(ro + n, co + m) += r * v;
                    }
                }
            }
        }
    }

    // D[a^dag] with the truncated a a^dag = diag(n+1, ..., 0)
    void add_heating(const Matrix& rho, Matrix& out) const {
        const double r = noise_.heating;
        for (int sb = 0; sb < blocks_; ++sb) {
            for (int tb = 0; tb < blocks_; ++tb) {
                const int ro = sb * db_, co = tb * db_;
                for (int n = 0; n < db_; ++n) {
                    const double wn = (n + 1 < db_) ? n + 1 : 0;
                    for (int m = 0; m < db_; ++m) {
                        const double wm = (m + 1 < db_) ? m + 1 : 0;
                        Complex v = -0.5 * (wn + wm) * rho(ro + n, co + m);
                        if (n >= 1 && m >= 1)
                            v += sq_[n] * sq_[m] * rho(ro + n - 1, co + m - 1);
                        out(ro + n, co + m) += r * v;
                    }
                }
            }
        }
    }

    SpaceDescriptor space_;
    NoiseSpec noise_;
    SparseC hs_;
    int db_ = 1;
    int blocks_ = 1;
    std::vector<double> sq_;
};

double min_eigenvalue(const Matrix& rho) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(rho, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

}  // namespace

LindbladRun lindblad_evolve(const Operator& hamiltonian, const NoiseSpec& noise,
                            const QuantumState& rho0, double T,
                            const LindbladOptions& options) {
    require_same_space(hamiltonian.space, rho0.space, "lindblad_evolve");
    if (rho0.kind != StateKind::Density)
        throw Error("lindblad_evolve: initial state must be a density matrix");
    if (T < 0) throw Error("lindblad_evolve: negative evolution time");

    double dt = options.dt;
    if (dt <= 0) {
        Eigen::SelfAdjointEigenSolver<Matrix> es(hamiltonian.matrix, Eigen::EigenvaluesOnly);
        const double hnorm = es.eigenvalues().cwiseAbs().maxCoeff();
        dt = 0.05 / std::max(hnorm, 1e-12);
    }
    const long steps = std::max<long>(1, long(std::ceil(T / dt)));
    dt = T / double(steps);

    const LindbladRhs rhs(hamiltonian, noise);
    const int d = rho0.space.dim;
    Matrix rho = rho0.matrix;
    Matrix k1(d, d), k2(d, d), k3(d, d), k4(d, d), tmp(d, d);

    // positivity checkpoints and requested trajectory samples, by step index
    std::vector<long> checks;
    for (int i = 1; i <= options.positivity_samples; ++i)
        checks.push_back(steps * i / options.positivity_samples);
    std::vector<long> sample_steps;
    for (double ts : options.sample_times)
        sample_steps.push_back(std::clamp<long>(std::lround(ts / dt), 0, steps));

    LindbladRun run;
    run.dt = dt;
    run.steps = steps;
    run.min_eigenvalue = 0.0;
    if (!sample_steps.empty() && sample_steps.front() == 0)
        run.trajectory.push_back(rho0);

    for (long s = 1; s <= steps; ++s) {
        rhs(rho, k1);
        tmp.noalias() = rho + (0.5 * dt) * k1;
        rhs(tmp, k2);
        tmp.noalias() = rho + (0.5 * dt) * k2;
        rhs(tmp, k3);
        tmp.noalias() = rho + dt * k3;
        rhs(tmp, k4);
        rho.noalias() += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        rho = 0.5 * (rho + rho.adjoint().eval());  // enforce Hermiticity

        if (std::binary_search(checks.begin(), checks.end(), s)) {
            const double drift = std::abs(rho.trace().real() - 1.0);
            run.trace_drift = std::max(run.trace_drift, drift);
            const double mineig = min_eigenvalue(rho);
            run.min_eigenvalue = std::min(run.min_eigenvalue, mineig);
            if (drift > options.trace_tol || mineig < options.positivity_tol)
                throw Error("lindblad_evolve: step size too large; retry with dt = " +
                            std::to_string(dt / 2.0));
        }
        for (size_t i = 0; i < sample_steps.size(); ++i) {
            if (sample_steps[i] == s) {
                QuantumState snap;
                snap.space = rho0.space;
                snap.kind = StateKind::Density;
                snap.matrix = rho;
                run.trajectory.push_back(std::move(snap));
            }
        }
    }

    run.trace_drift = std::max(run.trace_drift, std::abs(rho.trace().real() - 1.0));
    QuantumState out;
    out.space = rho0.space;
    out.kind = StateKind::Density;
    out.matrix = std::move(rho);
    run.state = std::move(out);
    return run;
}

namespace {

struct NoisyStats {
    double mean;
    double var;
    QuantumState state;
};

NoisyStats noisy_quadrature(double g, double omega, double eta, const NoiseSpec& noise,
                            double t, int cutoff) {
    const CriticalModel model = build_qrm_full(omega, eta, g, cutoff);
    const QuantumState psi0 = canonical_initial_state(model.space);
    QuantumState rho0;
    rho0.space = model.space;
    rho0.kind = StateKind::Density;
    rho0.matrix = psi0.vector * psi0.vector.adjoint();

    LindbladRun run = lindblad_evolve(model.hamiltonian_op(), noise, rho0, t);
    const LadderOps b = ladder_ops(model.space);
    const double mean = expect(b.x, run.state).real();
    const double var = variance(b.x, run.state);
    return {mean, var, std::move(run.state)};
}

}  // namespace

ProtocolPoint noisy_inverted_variance(double g, double omega, double eta,
                                      const NoiseSpec& noise, int n,
                                      const CutoffPolicy& policy, double chi_step) {
    if (g <= 0 || g >= 1) throw Error("noisy_inverted_variance: requires 0 < g < 1");
    const double t = tau_n(g, omega, n);

    int cutoff = policy.initial;
    bool converged = false;
    double mean = 0, var = 0;
    NoisyStats center = noisy_quadrature(g, omega, eta, noise, t, cutoff);
    while (2 * cutoff <= policy.max) {
        NoisyStats next = noisy_quadrature(g, omega, eta, noise, t, 2 * cutoff);
        const double change =
            std::abs(next.mean - center.mean) / std::max(1.0, std::abs(next.mean));
        const double edge = interior_weight(next.state, policy.interior_fraction);
        cutoff *= 2;
        center = std::move(next);
        if (change < policy.rel_tol && edge < policy.interior_tol) {
            converged = true;
            break;
        }
    }
    mean = center.mean;
    var = center.var;

    const double mp = noisy_quadrature(g + chi_step, omega, eta, noise, t, cutoff).mean;
    const double mm = noisy_quadrature(g - chi_step, omega, eta, noise, t, cutoff).mean;
    const double chi = (mp - mm) / (2.0 * chi_step);

    ProtocolPoint p;
    p.parameter = g;
    p.time = t;
    p.n = n;
    p.mean = mean;
    p.variance = var;
    p.chi = chi;
    p.inv_var = chi * chi / var;
    const double d = 4.0 * (1.0 - g * g);
    p.f_closed_form = 32.0 * kPi * kPi * g * g * n * n / (d * d * d);
    p.cutoff = cutoff;
    p.converged = converged;
    return p;
}

}  // namespace cqs
