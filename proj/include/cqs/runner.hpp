#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "cqs/fitting.hpp"
#include "cqs/openquantum.hpp"
#include "cqs/protocols.hpp"

namespace cqs {

enum class ExperimentKind { Quadrature, Loschmidt, Qfi, FiniteEta, Noise, Validate };
enum class OutputFormat { Csv, Json };

struct ExperimentConfig {
    ExperimentKind experiment = ExperimentKind::Quadrature;

    // model parameters
    std::string model = "qrm_effective";  // qfi experiment: qrm_effective | opo | lmg
    double omega = 1.0;
    double eta = 300.0;       // frequency ratio for noise runs
    double kappa = 0.25;      // opo
    double lmg_gamma = 0.0;   // lmg anisotropy

    // sweep grid (g, omega or lambda depending on the model)
    double grid_min = 0.0;    // 0: experiment-specific default
    double grid_max = 0.0;
    int grid_steps = 0;
    std::vector<int> branches = {1, 2, 3, 4, 5, 6};
    std::vector<double> etas = {100.0, 316.22776601683796, 1000.0, 3162.2776601683795,
                                10000.0};
    std::vector<double> gammas = {0.0, 0.05, 0.1};
    int n = 1;

    NoiseSpec noise;          // nonzero entries override the Gamma/2 scaling
    bool noise_explicit = false;

    int cutoff_initial = 16;
    int cutoff_max = 1024;

    std::string output = "-";
    OutputFormat format = OutputFormat::Csv;
    int workers = 0;          // 0: hardware concurrency

    CutoffPolicy cutoff_policy(double rel_tol = 1e-6) const {
        CutoffPolicy p;
        p.initial = cutoff_initial;
        p.max = cutoff_max;
        p.rel_tol = rel_tol;
        return p;
    }
};

/// One sweep point, serialized exactly in this column order (a trailing
/// `gamma` column carries the noise rate for the noise experiment).
struct SweepRecord {
    std::string model;
    double g_or_lambda = 0.0;
    double delta = 0.0;
    double eta = 0.0;       // 0 denotes the effective (eta -> infinity) model
    double time = 0.0;
    int n = 1;
    double mean = 0.0;
    double variance = 0.0;
    double chi = 0.0;
    double inv_var = 0.0;
    double qfi_analytic = 0.0;
    double qfi_exact = 0.0;
    int cutoff = 0;
    bool converged = false;
    double gamma = 0.0;
};

struct RunResult {
    std::vector<SweepRecord> records;
    std::vector<std::string> notes;   // fit summaries, per-point failures
    int failures = 0;
};

RunResult run(const ExperimentConfig& config);

/// Full-QRM homodyne point at finite eta: exact unitary evolution, chi in g at
/// fixed tau_n (step above the fast-ripple scale), F = chi^2 / Var[X].
ProtocolPoint lab_inverted_variance(double g, double omega, double eta, int n,
                                    const CutoffPolicy& policy, double chi_step = 1e-3);

/// Location of the maximum of F_lab over g for one eta (grid + parabolic
/// refinement, bracket expanded if the maximum lands on an edge).
struct OptimalPoint {
    double g = 0.0;
    double delta = 0.0;
    double f_lab = 0.0;
    int cutoff = 0;
};
OptimalPoint finite_eta_optimal(double omega, double eta, int n, const CutoffPolicy& policy);

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

/// The cross-module invariant suite behind the `validate` experiment.
std::vector<CheckResult> run_validation(const ExperimentConfig& config);

void emit_csv(const std::vector<SweepRecord>& records, std::ostream& out);
void emit_json(const std::vector<SweepRecord>& records, std::ostream& out);

/// Writes records to `path` ("-" = stdout) in the requested format.
void emit(const std::vector<SweepRecord>& records, OutputFormat format,
          const std::string& path);

std::vector<SweepRecord> parse_csv(std::istream& in);
std::vector<SweepRecord> parse_json(std::istream& in);

}  // namespace cqs
