#include "cqs/models.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

namespace cqs {

const char* model_name_string(ModelName name) {
    switch (name) {
        case ModelName::QrmFull: return "qrm_full";
        case ModelName::QrmEffective: return "qrm_effective";
        case ModelName::Opo: return "opo";
        case ModelName::Lmg: return "lmg";
        case ModelName::Custom: return "custom";
    }
    return "unknown";
}

Matrix CriticalModel::c_op() const {
    return Complex(0, -1) * (h0 * h1 - h1 * h0);
}

Matrix CriticalModel::d_op() const {
    const Matrix comm01 = h0 * h1 - h1 * h0;
    const Matrix h = hamiltonian();
    return -(h * comm01 - comm01 * h);
}

CriticalModel CriticalModel::at_parameter(double physical_value) const {
    switch (name) {
        case ModelName::QrmFull:
            return build_qrm_full(params.omega, params.eta, physical_value, space.cutoff);
        case ModelName::QrmEffective:
            return build_qrm_effective(params.omega, physical_value, space.cutoff);
        case ModelName::Opo:
            return build_opo(physical_value, params.kappa, space.cutoff);
        case ModelName::Lmg:
            return build_lmg(params.gamma, physical_value, space.cutoff);
        case ModelName::Custom: {
            CriticalModel m = *this;
            m.lambda = physical_value;
            m.physical = physical_value;
            return m;
        }
    }
    throw Error("at_parameter: unknown model");
}

CriticalModel build_qrm_full(double omega, double eta, double g, int cutoff) {
    if (omega <= 0) throw Error("build_qrm_full: omega must be positive");
    if (eta < 1) throw Error("build_qrm_full: eta must be >= 1");
    if (g < 0) throw Error("build_qrm_full: g must be >= 0");
    const SpaceDescriptor space = SpaceDescriptor::qubit_boson(cutoff);
    const LadderOps b = ladder_ops(space);
    const PauliOps q = pauli_ops(space);
    const double omega0 = eta * omega;

    CriticalModel m;
    m.name = ModelName::QrmFull;
    m.space = space;
    m.params = {omega, eta, g, 0.0, 0.0};
    m.h0 = omega * b.number.matrix + 0.5 * omega0 * q.sz.matrix;
    // coupling lambda_cpl = g sqrt(omega * omega0) / 2 enters linearly in g
    m.h1 = -0.5 * std::sqrt(omega * omega0) * ((b.a.matrix + b.adag.matrix) * q.sx.matrix);
    m.lambda = g;
    m.physical = g;
    m.dlambda_dphys = 1.0;
    m.delta = 4.0 * omega * omega * (1.0 - g * g);  // eta->infinity gap, used for times
    m.algebra_closed = false;  // C, D do not close Eq-type algebra at finite eta
    return m;
}

CriticalModel build_qrm_effective(double omega, double g, int cutoff) {
    if (omega <= 0) throw Error("build_qrm_effective: omega must be positive");
    if (g < 0) throw Error("build_qrm_effective: g must be >= 0");
    const SpaceDescriptor space = SpaceDescriptor::boson(cutoff);
    const LadderOps b = ladder_ops(space);
    const Matrix quad = (b.a.matrix + b.adag.matrix) * (b.a.matrix + b.adag.matrix);

    CriticalModel m;
    m.name = ModelName::QrmEffective;
    m.space = space;
    m.params = {omega, 0.0, g, 0.0, 0.0};
    m.h0 = omega * b.number.matrix;
    m.h1 = -0.25 * omega * quad;
    m.lambda = g * g;
    m.physical = g;
    m.dlambda_dphys = 2.0 * g;
    m.delta = 4.0 * omega * omega * (1.0 - g * g);
    return m;
}

CriticalModel build_opo(double omega, double kappa, int cutoff) {
    if (omega <= 0) throw Error("build_opo: omega must be positive");
    if (kappa < 0) throw Error("build_opo: kappa must be >= 0");
    const SpaceDescriptor space = SpaceDescriptor::boson(cutoff);
    const LadderOps b = ladder_ops(space);

    CriticalModel m;
    m.name = ModelName::Opo;
    m.space = space;
    m.params = {omega, 0.0, 0.0, kappa, 0.0};
    m.h0 = Complex(0, 1) * kappa *
           (b.adag.matrix * b.adag.matrix - b.a.matrix * b.a.matrix);
    m.h1 = b.number.matrix;
    m.lambda = omega;
    m.physical = omega;
    m.dlambda_dphys = 1.0;
    m.delta = 4.0 * omega * omega - 16.0 * kappa * kappa;
    return m;
}

CriticalModel build_lmg(double gamma, double lambda, int cutoff) {
    if (gamma == 1.0)
        throw Error("build_lmg: isotropic LMG not critical at lambda=1 in this framework");
    const SpaceDescriptor space = SpaceDescriptor::boson(cutoff);
    const LadderOps b = ladder_ops(space);
    const Matrix plus = b.a.matrix + b.adag.matrix;
    const Matrix minus = b.adag.matrix - b.a.matrix;

    CriticalModel m;
    m.name = ModelName::Lmg;
    m.space = space;
    m.params = {1.0, 0.0, 0.0, 0.0, gamma};
    m.h0 = 0.5 * (gamma * (minus * minus) - plus * plus);
    m.h1 = 2.0 * b.number.matrix;
    m.lambda = lambda;
    m.physical = lambda;
    m.dlambda_dphys = 1.0;
    m.delta = 16.0 * (gamma - lambda) * (1.0 - lambda);
    return m;
}

CriticalModel make_linear_model(SpaceDescriptor space, Matrix h0, Matrix h1, double lambda,
                                double delta) {
    CriticalModel m;
    m.name = ModelName::Custom;
    m.space = space;
    m.h0 = std::move(h0);
    m.h1 = std::move(h1);
    m.lambda = lambda;
    m.physical = lambda;
    m.delta = delta;
    return m;
}

double commutator_residual(const CriticalModel& model, double interior_fraction) {
    if (model.delta <= 0)
        throw Error("commutator_residual: imaginary gap; residual undefined as stated");
    if (interior_fraction <= 0 || interior_fraction >= 1)
        throw Error("commutator_residual: interior_fraction in (0,1)");
    const double sqrt_delta = std::sqrt(model.delta);
    const Matrix lam = Complex(0, 1) * sqrt_delta * model.c_op() - model.d_op();
    const Matrix h = model.hamiltonian();
    const Matrix resid = (h * lam - lam * h) - sqrt_delta * lam;

    const int dim = model.space.dim;
    const int keep = std::max(1, int(std::floor((1.0 - interior_fraction) * dim)));
    const Matrix resid_int = resid.topLeftCorner(keep, keep);
    const Matrix lam_int = lam.topLeftCorner(keep, keep);
    const double denom = lam_int.norm();
    if (denom == 0) throw Error("commutator_residual: Lambda vanishes on the interior");
    return resid_int.norm() / denom;
}

double delta_from_spectrum(const CriticalModel& model, int levels) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(model.hamiltonian(), Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw Error("delta_from_spectrum: eigensolver failed");
    const auto& e = es.eigenvalues();
    if (levels + 1 > e.size()) throw Error("delta_from_spectrum: not enough levels");
    double mean_gap = 0;
    for (int k = 0; k < levels; ++k) mean_gap += e(k + 1) - e(k);
    mean_gap /= levels;
    // level spacing is sqrt(Delta)/2 for the quadratic families
    return 4.0 * mean_gap * mean_gap;
}

std::pair<Operator, Operator> conditioned_hamiltonians(const CriticalModel& m) {
    if (m.name != ModelName::QrmEffective)
        throw Error("conditioned_hamiltonians: requires a qrm_effective model");
    Operator h_up(m.space, m.h0 - m.lambda * m.h1);
    Operator h_dn(m.space, m.h0 + m.lambda * m.h1);
    return {h_up, h_dn};
}

}  // namespace cqs
