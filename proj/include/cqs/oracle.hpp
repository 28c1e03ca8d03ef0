#pragma once

#include "cqs/models.hpp"

namespace cqs {

/// Quadratic Hamiltonian H = (1/2) r^T M r with r = (X, P), constants dropped.
struct QuadraticForm {
    Eigen::Matrix2d m = Eigen::Matrix2d::Zero();
};

/// First moments and symmetric covariance of (X, P).
struct MomentState {
    Eigen::Vector2d r = Eigen::Vector2d::Zero();
    Eigen::Matrix2d sigma = Eigen::Matrix2d::Zero();
};

/// The 2x2 quadratic form of a quadratic bosonic model; asserts 4 det M = Delta.
QuadraticForm quadratic_form(const CriticalModel& model);

/// Closed-form symplectic propagation r -> S r, sigma -> S sigma S^T with
/// S = exp(Omega M t), branch chosen by the sign of det M.
MomentState moments_evolve(const QuadraticForm& qf, const MomentState& m0, double t);

/// S(t) itself (exposed for the symplectic-invariant checks).
Eigen::Matrix2d symplectic_propagator(const QuadraticForm& qf, double t);

/// Extract (X, P) means and covariance from a Fock-space state.
MomentState moments_of(const QuantumState& state);

}  // namespace cqs
