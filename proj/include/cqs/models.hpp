#pragma once

#include <utility>

#include "cqs/hilbert.hpp"
#include "cqs/types.hpp"

namespace cqs {

enum class ModelName { QrmFull, QrmEffective, Opo, Lmg, Custom };

const char* model_name_string(ModelName name);

struct ModelParams {
    double omega = 1.0;
    double eta = 0.0;    // frequency ratio omega0/omega (full QRM)
    double g = 0.0;      // QRM coupling
    double kappa = 0.0;  // OPO pump strength
    double gamma = 0.0;  // LMG anisotropy
};

/// Parametric Hamiltonian family H(lambda) = H0 + lambda*H1 with the
/// commutator-closure data of the critical-dynamics framework: the gap
/// parameter Delta, the estimation parameter, and the chain-rule factor
/// linking the linear parameter to the physical one.
struct CriticalModel {
    ModelName name = ModelName::Custom;
    SpaceDescriptor space;
    ModelParams params;
    Matrix h0;
    Matrix h1;
    double lambda = 0.0;          // linear parameter value (g^2, omega, lambda)
    double physical = 0.0;        // estimation parameter value (g, omega, lambda)
    double dlambda_dphys = 1.0;   // d(lambda)/d(physical)
    double delta = 0.0;           // gap parameter in the units of h0/h1
    bool algebra_closed = true;   // false when [H,Lambda] = sqrt(Delta) Lambda fails

    Matrix hamiltonian() const { return h0 + lambda * h1; }
    Operator hamiltonian_op() const { return Operator(space, hamiltonian()); }

    Matrix c_op() const;   // C = -i[H0, H1]
    Matrix d_op() const;   // D = -[H, [H0, H1]]

    /// Rebuild the same family at a shifted physical parameter.
    CriticalModel at_parameter(double physical_value) const;
};

/// Full quantum Rabi Hamiltonian on qubit (x) boson,
/// H = w a^dag a + (eta w / 2) sz - g sqrt(w * eta w)/2 (a + a^dag) sx.
CriticalModel build_qrm_full(double omega, double eta, double g, int cutoff);

/// Normal-phase effective Hamiltonian, boson only:
/// H = w [a^dag a - g^2 (a + a^dag)^2 / 4], linear in lambda = g^2.
CriticalModel build_qrm_effective(double omega, double g, int cutoff);

/// Parametric oscillator H = w a^dag a + i kappa [(a^dag)^2 - a^2], lambda = w.
CriticalModel build_opo(double omega, double kappa, int cutoff);

/// Holstein-Primakoff LMG H = 2 lambda a^dag a + [gamma (a^dag - a)^2 - (a + a^dag)^2]/2.
CriticalModel build_lmg(double gamma, double lambda, int cutoff);

/// Test hook: arbitrary linear family with a declared gap parameter.
CriticalModel make_linear_model(SpaceDescriptor space, Matrix h0, Matrix h1, double lambda,
                                double delta);

/// || P ([H, L] - sqrt(Delta) L) P || / || P L P || with P projecting onto the
/// lowest (1 - interior_fraction) Fock levels and L = i sqrt(Delta) C - D.
double commutator_residual(const CriticalModel& model, double interior_fraction);

/// Gap parameter extracted from the mean spacing of the lowest `levels`
/// eigenvalues of H; equals Delta for an equally spaced interior spectrum.
double delta_from_spectrum(const CriticalModel& model, int levels = 8);

/// Bosonic Hamiltonians conditioned on the qubit branch (up, down):
/// H_dn = w [a^dag a - g^2 (a+a^dag)^2/4], H_up with the opposite sign of g^2.
std::pair<Operator, Operator> conditioned_hamiltonians(const CriticalModel& qrm_effective);

}  // namespace cqs
