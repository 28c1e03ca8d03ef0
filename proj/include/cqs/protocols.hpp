#pragma once

#include <functional>
#include <vector>

#include "cqs/models.hpp"
#include "cqs/qfi.hpp"

namespace cqs {

enum class StatsSource { Simulated, ClosedForm };

struct QuadratureStats {
    double mean_x = 0.0;
    double var_x = 0.0;
    double time = 0.0;
    StatsSource source = StatsSource::ClosedForm;
};

/// One evaluated protocol point: observable statistics, susceptibility,
/// inverted variance, and the references used to judge it.
struct ProtocolPoint {
    double parameter = 0.0;      // g (or lambda, omega)
    double time = 0.0;
    int n = 1;
    double mean = 0.0;
    double variance = 0.0;
    double chi = 0.0;
    double inv_var = 0.0;        // F = chi^2 / variance
    double f_closed_form = 0.0;  // matching closed-form prediction
    double qfi_analytic = 0.0;
    double qfi_full = 0.0;       // generator-based QFI (Cramer-Rao reference)
    double excitation_gain = 0.0;    // frequency protocol: peak <N>_t - <N>_0
    double heisenberg_ratio = 0.0;   // frequency protocol: F / (N^2 tau^2)
    int cutoff = 0;
    bool converged = true;
};

struct WorkingPoint {
    int branch = 1;        // m >= 1
    double g = 0.0;        // g_o with R(g_o) = m + 0.5
    double r_value = 0.0;  // m + 0.5
    double tau = 0.0;      // 4 pi / (sqrt(Delta) omega)
};

struct LoschmidtResult {
    Complex amplitude;     // G = <phi| u_up^dag u_dn |phi>
    double sigma_x = 0.0;  // 2 Re[c_up* c_dn G]
    double var_sigma_x = 1.0;
    double chi = 0.0;
    double inv_var = 0.0;
    int cutoff = 0;
    bool converged = true;
};

/// Controls the adaptive Fock-cutoff certification loop.
struct CutoffPolicy {
    int initial = 16;
    int max = 1024;
    double rel_tol = 1e-6;           // observable stability between Nc and 2Nc
    double interior_tol = 1e-8;      // population allowed in the top Fock decile
    double interior_fraction = 0.1;
};

/// |down> (x) (|0> + i|1>)/sqrt(2), or the boson factor alone.
QuantumState canonical_initial_state(const SpaceDescriptor& space);

/// Mean and variance of X after time t under the effective QRM dynamics:
/// <X>_t = sqrt(2) Delta^{-1/2} sin(sqrt(Delta) w t / 2),
/// Var    = 1 + (2g^2-1) Delta^{-1} [1 - cos(sqrt(Delta) w t)].
QuadratureStats quadrature_closed_form(double g, double omega, double t);

/// Same statistics from the truncated Fock simulation at a fixed cutoff.
QuadratureStats quadrature_simulated(double g, double omega, double t, int cutoff,
                                     const QuantumState* initial = nullptr);

/// Revival times tau_n = 2 n pi / (sqrt(Delta_g) omega).
double tau_n(double g, double omega, int n);

/// Central-difference susceptibility with Richardson-checked step halving.
double susceptibility(const std::function<double(double, double)>& observable, double param,
                      double t, double delta0 = 0.0);

/// Homodyne protocol point at t = tau_n: simulated statistics, susceptibility
/// in g at fixed time, F = chi^2/Var, Eq-form reference 32 pi^2 g^2 n^2 / Delta^3,
/// and the QFI references. Cutoff certified by the adaptive doubling rule.
ProtocolPoint inverted_variance_quadrature(double g, double omega, int n,
                                           const QuantumState* initial = nullptr,
                                           const CutoffPolicy& policy = {});

/// Frequency-estimation point: susceptibility to omega at a fixed evolution
/// phase (omega t held, physical coupling and qubit splitting held), peak
/// excitation gain over one period, and the Heisenberg-limit ratio.
ProtocolPoint frequency_inverted_variance(double g, double omega, int n,
                                          const CutoffPolicy& policy = {});

/// Qubit-readout working points g_o(m) with R(g_o) = m + 0.5, m = 1..m_max.
std::vector<WorkingPoint> working_points(int m_max, double omega = 1.0);

/// Loschmidt-echo readout: G, <sigma_x>, Var from sigma_x^2 = 1, susceptibility
/// in g at fixed t, F = chi^2/Var.
LoschmidtResult loschmidt(double g, double omega, const QuantumState& phi_b, Complex c_up,
                          Complex c_down, double t, const CutoffPolicy& policy = {});

/// Composite-system QFI of the conditional evolution (fidelity method);
/// the Cramer-Rao reference for Loschmidt protocol points.
double loschmidt_qfi(double g, double omega, const QuantumState& phi_b, Complex c_up,
                     Complex c_down, double t, int cutoff);

}  // namespace cqs
