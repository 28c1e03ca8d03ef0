#include "cqs/oracle.hpp"

#include <cmath>

namespace cqs {

QuadraticForm quadratic_form(const CriticalModel& model) {
    QuadraticForm qf;
    const double w = model.params.omega;
    switch (model.name) {
        case ModelName::QrmEffective: {
            const double g = model.params.g;
            qf.m << w * (1.0 - g * g), 0.0, 0.0, w;
            break;
        }
        case ModelName::Opo: {
            const double k = model.params.kappa;
            qf.m << w, 2.0 * k, 2.0 * k, w;
            break;
        }
        case ModelName::Lmg: {
            const double l = model.lambda, gam = model.params.gamma;
            qf.m << 2.0 * (l - 1.0), 0.0, 0.0, 2.0 * (l - gam);
            break;
        }
        case ModelName::QrmFull:
            throw Error("quadratic_form: qrm_full is not quadratic");
        default:
            throw Error("quadratic_form: no quadratic form for this model");
    }
    if (std::abs(4.0 * qf.m.determinant() - model.delta) >
        1e-12 * std::max(1.0, std::abs(model.delta)))
        throw Error("quadratic_form: 4 det M does not reproduce the model gap");
    return qf;
}

Eigen::Matrix2d symplectic_propagator(const QuadraticForm& qf, double t) {
    Eigen::Matrix2d omega;
    omega << 0.0, 1.0, -1.0, 0.0;
    const Eigen::Matrix2d a = omega * qf.m;  // traceless; a^2 = -det(M) I
    const double det = qf.m.determinant();
    const Eigen::Matrix2d id = Eigen::Matrix2d::Identity();
    if (det > 0) {
        const double nu = std::sqrt(det);
        return std::cos(nu * t) * id + (std::sin(nu * t) / nu) * a;
    }
    if (det < 0) {
        const double mu = std::sqrt(-det);
        return std::cosh(mu * t) * id + (std::sinh(mu * t) / mu) * a;
    }
    return id + t * a;
}

MomentState moments_evolve(const QuadraticForm& qf, const MomentState& m0, double t) {
    const Eigen::Matrix2d s = symplectic_propagator(qf, t);
    MomentState out;
    out.r = s * m0.r;
    out.sigma = s * m0.sigma * s.transpose();
    return out;
}

MomentState moments_of(const QuantumState& state) {
    const LadderOps b = ladder_ops(state.space);
    MomentState m;
    m.r(0) = expect(b.x, state).real();
    m.r(1) = expect(b.p, state).real();
    const Matrix xx = b.x.matrix * b.x.matrix;
    const Matrix pp = b.p.matrix * b.p.matrix;
    const Matrix xp = b.x.matrix * b.p.matrix + b.p.matrix * b.x.matrix;
    m.sigma(0, 0) = expect(Operator(state.space, xx), state).real() - m.r(0) * m.r(0);
    m.sigma(1, 1) = expect(Operator(state.space, pp), state).real() - m.r(1) * m.r(1);
    m.sigma(0, 1) = 0.5 * expect(Operator(state.space, xp), state).real() - m.r(0) * m.r(1);
    m.sigma(1, 0) = m.sigma(0, 1);
    return m;
}

}  // namespace cqs
