#pragma once

#include <optional>
#include <vector>

#include "cqs/models.hpp"
#include "cqs/protocols.hpp"

namespace cqs {

/// Rates of the four Markovian channels: qubit dephasing (sigma_z), qubit
/// decay (sigma_-), boson decay (a), boson heating (a^dag). Units of omega.
struct NoiseSpec {
    double dephasing = 0.0;   // Gamma
    double qubit_decay = 0.0; // gamma_c
    double boson_decay = 0.0; // gamma_a
    double heating = 0.0;     // gamma_h

    static NoiseSpec scaled(double gamma_dephasing) {
        // default channel balance gamma_{a,c,h} = Gamma/2
        return {gamma_dephasing, gamma_dephasing / 2.0, gamma_dephasing / 2.0,
                gamma_dephasing / 2.0};
    }
    bool any() const {
        return dephasing > 0 || qubit_decay > 0 || boson_decay > 0 || heating > 0;
    }
    void validate() const {
        if (dephasing < 0 || qubit_decay < 0 || boson_decay < 0 || heating < 0)
            throw Error("NoiseSpec: rates must be >= 0");
    }
};

struct LindbladOptions {
    double dt = 0.0;              // <= 0: auto from dt * ||H|| = 0.05
    int positivity_samples = 4;   // times at which min eigenvalue is checked
    double trace_tol = 1e-7;
    double positivity_tol = -1e-6;
    std::vector<double> sample_times;  // optional trajectory sampling
};

struct LindbladRun {
    QuantumState state;                       // rho(T)
    double dt = 0.0;
    long steps = 0;
    double trace_drift = 0.0;
    double min_eigenvalue = 0.0;             // most negative eigenvalue seen
    std::vector<QuantumState> trajectory;    // at sample_times, if requested
};

/// Fixed-step RK4 integration of
///   drho/dt = -i[H, rho] + Gamma D[sz] + gc D[s-] + ga D[a] + gh D[a^dag],
/// with per-step rehermitization, trace-drift and positivity monitoring.
LindbladRun lindblad_evolve(const Operator& hamiltonian, const NoiseSpec& noise,
                            const QuantumState& rho0, double T,
                            const LindbladOptions& options = {});

/// Noisy homodyne protocol point: canonical initial state under the full QRM
/// at frequency ratio eta, evolved to tau_n, susceptibility in g at fixed
/// time (two extra noisy evolutions), F = chi^2 / Var[X].
ProtocolPoint noisy_inverted_variance(double g, double omega, double eta,
                                      const NoiseSpec& noise, int n,
                                      const CutoffPolicy& policy = {},
                                      double chi_step = 1e-3);

}  // namespace cqs
