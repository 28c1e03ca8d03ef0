#include "cqs/qfi.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

namespace cqs {

namespace {

// (cos(s)-1)/s^2 and (sin(s)-s)/s^3 with series branches near s=0.
double cos_coeff(double s) {
    if (std::abs(s) < 1e-3) {
        const double s2 = s * s;
        return -0.5 + s2 / 24.0 - s2 * s2 / 720.0;
    }
    return (std::cos(s) - 1.0) / (s * s);
}

double sin_coeff(double s) {
    if (std::abs(s) < 1e-3) {
        const double s2 = s * s;
        return -1.0 / 6.0 + s2 / 120.0 - s2 * s2 / 5040.0;
    }
    return (std::sin(s) - s) / (s * s * s);
}

void require_gap(const CriticalModel& model, const char* what) {
    if (!model.algebra_closed)
        throw Error(std::string(what) + ": commutator algebra does not close for this model");
    if (model.delta <= 0) throw Error(std::string(what) + ": requires Delta > 0");
}

}  // namespace

Operator generator(const CriticalModel& model, double t) {
    require_gap(model, "generator");
    const double sd = std::sqrt(model.delta);
    const double s = sd * t;
    // h = H1 t + t^2 * ccoef * C - t^3 * scoef * D, exact coefficient functions
    const double c_c = t * t * cos_coeff(s);
    const double c_d = -t * t * t * sin_coeff(s);
    Matrix h = model.h1 * t;
    if (c_c != 0.0) h += c_c * model.c_op();
    if (c_d != 0.0) h += c_d * model.d_op();
    return Operator(model.space, std::move(h));
}

QfiResult qfi_analytic(const CriticalModel& model, const QuantumState& state, double t) {
    require_gap(model, "qfi_analytic");
    require_same_space(model.space, state.space, "qfi_analytic");
    const double sd = std::sqrt(model.delta);
    const double s = sd * t;
    const double coeff = t * t * t * sin_coeff(s);  // (sin s - s)/Delta^{3/2}

    QfiResult r;
    r.method = QfiMethod::AnalyticEq3;
    r.lambda = model.lambda;
    r.time = t;
    r.cutoff = model.space.cutoff;
    const double chain2 = model.dlambda_dphys * model.dlambda_dphys;
    if (model.name == ModelName::QrmEffective) {
        // 16 g^2 [sin(s)-s]^2/Delta_g^3 Var[P^2]; the omega factors of the
        // matrix-unit Delta cancel against Var[D] -> omega^6 Var[P^2].
        const LadderOps b = ladder_ops(model.space);
        const Operator p2(model.space, Matrix(b.p.matrix * b.p.matrix));
        const double w = model.params.omega;
        r.var_d = variance(p2, state);
        r.value = 4.0 * chain2 * coeff * coeff * std::pow(w, 6) * r.var_d;
    } else {
        const Operator d(model.space, model.d_op());
        r.var_d = variance(d, state);
        r.value = 4.0 * chain2 * coeff * coeff * r.var_d;
    }
    return r;
}

QfiResult qfi_generator_full(const CriticalModel& model, const QuantumState& state, double t) {
    require_gap(model, "qfi_generator_full");
    require_same_space(model.space, state.space, "qfi_generator_full");
    const Operator h = generator(model, t);
    const double chain2 = model.dlambda_dphys * model.dlambda_dphys;

    QfiResult r;
    r.method = QfiMethod::GeneratorFull;
    r.lambda = model.lambda;
    r.time = t;
    r.cutoff = model.space.cutoff;
    r.value = 4.0 * chain2 * variance(h, state);
    return r;
}

QfiResult qfi_fidelity_exact(const CriticalModel& model, const QuantumState& state, double t,
                             double delta0) {
    require_same_space(model.space, state.space, "qfi_fidelity_exact");
    if (state.kind != StateKind::Pure) throw Error("qfi_fidelity_exact: state must be pure");
    if (delta0 <= 0) delta0 = 1e-4 * std::max(std::abs(model.physical), 1.0);

    const Vector base = HermitianPropagator(model.hamiltonian_op()).apply(state.vector, t);
    auto overlap_deficit = [&](double step) {
        const CriticalModel shifted = model.at_parameter(model.physical + step);
        const Vector other =
            HermitianPropagator(shifted.hamiltonian_op()).apply(state.vector, t);
        return 1.0 - std::abs(base.dot(other));
    };

    QfiResult r;
    r.method = QfiMethod::FidelityExact;
    r.lambda = model.lambda;
    r.time = t;
    r.cutoff = model.space.cutoff;

    double step = delta0;
    double prev = std::numeric_limits<double>::quiet_NaN();
    for (int k = 0; k < 20; ++k) {
        const double deficit = overlap_deficit(step);
        const double value = 8.0 * deficit / (step * step);
        if (deficit < 1e-12) {  // parameter-insensitive family; QFI ~ 0
            r.value = value;
            r.fd_step = step;
            r.error_estimate = value;
            return r;
        }
        if (!std::isnan(prev)) {
            const double diff = std::abs(value - prev);
            if (diff <= 2e-3 * std::abs(value)) {
                // quadratic regime: Richardson extrapolation over the halving
                r.value = (4.0 * value - prev) / 3.0;
                r.fd_step = step;
                r.error_estimate = diff / 3.0;
                return r;
            }
        }
        prev = value;
        step *= 0.5;
    }
    throw Error("qfi_fidelity_exact: QFI too large for requested delta floor");
}

QfiResult qfi_sld(const QuantumState& rho, const Operator& drho) {
    if (rho.kind != StateKind::Density) throw Error("qfi_sld: rho must be a density matrix");
    require_same_space(rho.space, drho.space, "qfi_sld");
    if (hermiticity_residual(drho.matrix) > 1e-8)
        throw Error("qfi_sld: drho must be Hermitian");
    if (std::abs(drho.matrix.trace()) > 1e-8)
        throw Error("qfi_sld: parameter derivative must be traceless");

    Eigen::SelfAdjointEigenSolver<Matrix> es(rho.matrix);
    if (es.info() != Eigen::Success) throw Error("qfi_sld: eigendecomposition failed");
    const Eigen::VectorXd p = es.eigenvalues();
    const Matrix in_basis = es.eigenvectors().adjoint() * drho.matrix * es.eigenvectors();

    double total = 0.0;
    const int d = p.size();
    for (int j = 0; j < d; ++j) {
        for (int k = 0; k < d; ++k) {
            const double w = p(j) + p(k);
            if (w > 1e-12) total += std::norm(in_basis(j, k)) / w;
        }
    }
    QfiResult r;
    r.method = QfiMethod::Sld;
    r.value = 2.0 * total;
    r.cutoff = rho.space.cutoff;
    return r;
}

}  // namespace cqs
