#pragma once

#include "cqs/models.hpp"

namespace cqs {

enum class QfiMethod { AnalyticEq3, GeneratorFull, FidelityExact, Sld };

/// Quantum Fisher information value in the model's physical parameter
/// (units 1/[parameter]^2), with the numerical metadata of the method.
struct QfiResult {
    double value = 0.0;
    QfiMethod method = QfiMethod::GeneratorFull;
    double lambda = 0.0;
    double time = 0.0;
    double fd_step = 0.0;         // finite-difference step actually used
    int cutoff = 0;
    double error_estimate = 0.0;  // Richardson estimate, fidelity method only
    double var_d = 0.0;           // Var[D] on the state, reported with analytic QFI
};

/// Transformed local generator h_lambda of the parametric evolution,
/// h = H1 t + [(cos(s)-1)/Delta] C - [(sin(s)-s)/(Delta^{3/2})] D,  s = sqrt(Delta) t,
/// with series evaluation of the coefficients for s < 1e-3.
Operator generator(const CriticalModel& model, double t);

/// Dominant-term QFI: 4 [sin(s)-s]^2 / Delta^3 * Var[D], chain rule applied;
/// the effective QRM uses Var[P^2] with the 16 g^2 prefactor.
QfiResult qfi_analytic(const CriticalModel& model, const QuantumState& state, double t);

/// 4 Var[h_lambda] with all generator terms, chain rule applied.
QfiResult qfi_generator_full(const CriticalModel& model, const QuantumState& state, double t);

/// Overlap-based QFI, 8(1 - |<psi(p)|psi(p + d)>|)/d^2 in the physical
/// parameter, with automatic step shrinking until the quadratic regime.
/// delta0 <= 0 selects the default starting step 1e-4 * max(|p|, 1).
QfiResult qfi_fidelity_exact(const CriticalModel& model, const QuantumState& state, double t,
                             double delta0 = 0.0);

/// SLD QFI for a density matrix and a (traceless, Hermitian) parameter
/// derivative: 2 sum_{jk} |<j|drho|k>|^2 / (p_j + p_k).
QfiResult qfi_sld(const QuantumState& rho, const Operator& drho);

}  // namespace cqs
