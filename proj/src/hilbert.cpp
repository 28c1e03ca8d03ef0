#include "cqs/hilbert.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

namespace cqs {

QuantumState QuantumState::pure(SpaceDescriptor s, Vector v) {
    if (v.size() != s.dim) throw Error("QuantumState: vector length does not match space");
    const double n = v.norm();
    if (std::abs(n - 1.0) > 1e-10) throw Error("QuantumState: pure state not normalized");
    QuantumState st;
    st.space = s;
    st.kind = StateKind::Pure;
    st.vector = std::move(v);
    return st;
}

QuantumState QuantumState::density(SpaceDescriptor s, Matrix m) {
    if (m.rows() != s.dim || m.cols() != s.dim)
        throw Error("QuantumState: density shape does not match space");
    if (hermiticity_residual(m) > 1e-10) throw Error("QuantumState: density not Hermitian");
    if (std::abs(m.trace().real() - 1.0) > 1e-8 || std::abs(m.trace().imag()) > 1e-8)
        throw Error("QuantumState: density trace != 1");
    Eigen::SelfAdjointEigenSolver<Matrix> es(m, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -1e-8)
        throw Error("QuantumState: density has negative eigenvalues");
    QuantumState st;
    st.space = s;
    st.kind = StateKind::Density;
    st.matrix = std::move(m);
    return st;
}

double hermiticity_residual(const Matrix& m) {
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

namespace {

Matrix boson_ladder(int cutoff) {
    const int d = cutoff + 1;
    Matrix a = Matrix::Zero(d, d);
    for (int n = 1; n < d; ++n) a(n - 1, n) = std::sqrt(double(n));
    return a;
}

Matrix lift_boson(const SpaceDescriptor& space, const Matrix& b) {
    if (space.kind == SpaceKind::Boson) return b;
    Matrix m = Matrix::Zero(space.dim, space.dim);
    const int db = space.boson_dim();
    m.topLeftCorner(db, db) = b;
    m.bottomRightCorner(db, db) = b;
    return m;
}

Matrix lift_qubit(const SpaceDescriptor& space, const Eigen::Matrix2cd& q) {
    if (space.kind == SpaceKind::Qubit) return q;
    const int db = space.boson_dim();
    Matrix m = Matrix::Zero(space.dim, space.dim);
    m.topLeftCorner(db, db) = q(0, 0) * Matrix::Identity(db, db);
    m.topRightCorner(db, db) = q(0, 1) * Matrix::Identity(db, db);
    m.bottomLeftCorner(db, db) = q(1, 0) * Matrix::Identity(db, db);
    m.bottomRightCorner(db, db) = q(1, 1) * Matrix::Identity(db, db);
    return m;
}

}  // namespace

LadderOps ladder_ops(const SpaceDescriptor& space) {
    if (!space.has_boson()) throw Error("ladder_ops: no bosonic factor");
    const Matrix a = boson_ladder(space.cutoff);
    const Matrix ad = a.adjoint();
    const double s = 1.0 / std::sqrt(2.0);
    LadderOps out;
    out.a = Operator(space, lift_boson(space, a));
    out.adag = Operator(space, lift_boson(space, ad));
    out.number = Operator(space, lift_boson(space, ad * a));
    out.x = Operator(space, lift_boson(space, s * (a + ad)));
    out.p = Operator(space, lift_boson(space, Complex(0, 1) * s * (ad - a)));
    return out;
}

PauliOps pauli_ops(const SpaceDescriptor& space) {
    if (!space.has_qubit()) throw Error("pauli_ops: no qubit factor");
    Eigen::Matrix2cd sx, sz, sm;
    sx << 0, 1, 1, 0;
    sz << 1, 0, 0, -1;
    sm << 0, 0, 1, 0;
    PauliOps out;
    out.sx = Operator(space, lift_qubit(space, sx));
    out.sz = Operator(space, lift_qubit(space, sz));
    out.sminus = Operator(space, lift_qubit(space, sm));
    return out;
}

Operator tensor(const Operator& qubit_op, const Operator& boson_op) {
    if (qubit_op.space.kind != SpaceKind::Qubit || boson_op.space.kind != SpaceKind::Boson)
        throw Error("tensor: expects a qubit operator and a boson operator");
    const SpaceDescriptor space = SpaceDescriptor::qubit_boson(boson_op.space.cutoff);
    const int db = boson_op.space.dim;
    Matrix m(space.dim, space.dim);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            m.block(i * db, j * db, db, db) = qubit_op.matrix(i, j) * boson_op.matrix;
    return Operator(space, std::move(m));
}

HermitianPropagator::HermitianPropagator(const Operator& hamiltonian)
    : space_(hamiltonian.space) {
    if (hermiticity_residual(hamiltonian.matrix) > 1e-10)
        throw Error("HermitianPropagator: Hamiltonian is not Hermitian");
    Eigen::SelfAdjointEigenSolver<Matrix> es(hamiltonian.matrix);
    if (es.info() != Eigen::Success)
        throw Error("HermitianPropagator: eigendecomposition failed");
    evals_ = es.eigenvalues();
    evecs_ = es.eigenvectors();
}

Vector HermitianPropagator::apply(const Vector& psi, double t) const {
    const Vector coeffs = evecs_.adjoint() * psi;
    const Vector phased =
        (evals_.array() * -t).unaryExpr([](double x) { return std::polar(1.0, x); }).matrix()
            .cwiseProduct(coeffs);
    return evecs_ * phased;
}

Matrix HermitianPropagator::unitary(double t) const {
    Matrix phases = Matrix::Zero(evals_.size(), evals_.size());
    for (int i = 0; i < evals_.size(); ++i) phases(i, i) = std::polar(1.0, -evals_(i) * t);
    return evecs_ * phases * evecs_.adjoint();
}

double HermitianPropagator::spectral_norm() const {
    return evals_.cwiseAbs().maxCoeff();
}

QuantumState evolve_pure(const Operator& hamiltonian, const QuantumState& psi, double t) {
    require_same_space(hamiltonian.space, psi.space, "evolve_pure");
    if (psi.kind != StateKind::Pure) throw Error("evolve_pure: state must be pure");
    HermitianPropagator prop(hamiltonian);
    Vector out = prop.apply(psi.vector, t);
    const double n = out.norm();
    if (std::abs(n - 1.0) > 1e-10) throw Error("evolve_pure: norm drifted beyond 1e-10");
    return QuantumState::pure(psi.space, std::move(out));
}

Complex expect(const Operator& op, const QuantumState& state) {
    require_same_space(op.space, state.space, "expect");
    Complex value;
    if (state.kind == StateKind::Pure)
        value = state.vector.dot(op.matrix * state.vector);
    else
        value = (op.matrix * state.matrix).trace();
    if (hermiticity_residual(op.matrix) < 1e-10 && std::abs(value.imag()) > 1e-8)
        throw Error("expect: Hermitian operator produced imaginary expectation");
    return value;
}

double variance(const Operator& op, const QuantumState& state) {
    require_same_space(op.space, state.space, "variance");
    if (hermiticity_residual(op.matrix) > 1e-10)
        throw Error("variance: operator must be Hermitian");
    double m1, m2;
    if (state.kind == StateKind::Pure) {
        const Vector opsi = op.matrix * state.vector;
        m1 = state.vector.dot(opsi).real();
        m2 = opsi.squaredNorm();
    } else {
        m1 = (op.matrix * state.matrix).trace().real();
        m2 = (op.matrix * (op.matrix * state.matrix)).trace().real();
    }
    return m2 - m1 * m1;
}

double interior_weight(const QuantumState& state, double fraction) {
    if (!state.space.has_boson()) throw Error("interior_weight: no bosonic factor");
    if (fraction <= 0.0 || fraction >= 1.0) throw Error("interior_weight: fraction in (0,1)");
    const int db = state.space.boson_dim();
    int count = std::max(1, int(std::lround(fraction * db)));
    if (count >= db) count = db - 1;
    const int first = db - count;

    Eigen::VectorXd pops = Eigen::VectorXd::Zero(db);
    const int blocks = state.space.has_qubit() ? 2 : 1;
    for (int b = 0; b < blocks; ++b) {
        for (int n = 0; n < db; ++n) {
            const int i = b * db + n;
            if (state.kind == StateKind::Pure)
                pops(n) += std::norm(state.vector(i));
            else
                pops(n) += state.matrix(i, i).real();
        }
    }
    return pops.tail(db - first).sum();
}

}  // namespace cqs
