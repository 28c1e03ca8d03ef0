#pragma once

#include "cqs/types.hpp"

namespace cqs {

/// Bosonic ladder-operator family on a boson or composite space.
/// On composite spaces every operator is identity-extended on the qubit factor.
struct LadderOps {
    Operator a;       // annihilation, a[n-1,n] = sqrt(n)
    Operator adag;
    Operator number;  // a^dag a
    Operator x;       // (a + a^dag)/sqrt(2)
    Operator p;       // i(a^dag - a)/sqrt(2)
};

struct PauliOps {
    Operator sx;
    Operator sz;      // sz|up> = +|up>, basis order (up, down)
    Operator sminus;  // |down><up|
};

LadderOps ladder_ops(const SpaceDescriptor& space);
PauliOps pauli_ops(const SpaceDescriptor& space);

/// Kronecker composite with the qubit factor on the slow index.
Operator tensor(const Operator& qubit_op, const Operator& boson_op);

/// max |M - M^dag| entrywise.
double hermiticity_residual(const Matrix& m);

/// Cached Hermitian eigendecomposition H = V E V^dag used as an exact propagator.
class HermitianPropagator {
public:
    explicit HermitianPropagator(const Operator& hamiltonian);

    /// exp(-iHt) psi
    Vector apply(const Vector& psi, double t) const;
    Matrix unitary(double t) const;
    double spectral_norm() const;  // max |eigenvalue|
    const Eigen::VectorXd& eigenvalues() const { return evals_; }
    const SpaceDescriptor& space() const { return space_; }

private:
    SpaceDescriptor space_;
    Eigen::VectorXd evals_;
    Matrix evecs_;
};

/// psi(t) = exp(-iHt) psi via Hermitian eigendecomposition.
QuantumState evolve_pure(const Operator& hamiltonian, const QuantumState& psi, double t);

/// <op> on a pure state or tr(rho op). Checks Im(<op>) for Hermitian op.
Complex expect(const Operator& op, const QuantumState& state);

/// Var[op] = <op^2> - <op>^2 for Hermitian op.
double variance(const Operator& op, const QuantumState& state);

/// Population in the top `fraction` of Fock levels, traced over the qubit.
double interior_weight(const QuantumState& state, double fraction);

}  // namespace cqs
