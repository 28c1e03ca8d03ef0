#include <iostream>

#include <CLI11.hpp>

#include "cqs/config.hpp"
#include "cqs/runner.hpp"

namespace {

struct CommonFlags {
    std::string config_path;
    std::string output;
    std::string format;
    int workers = -1;
    int cutoff_max = -1;
};

void add_common(CLI::App* cmd, CommonFlags& flags) {
    cmd->add_option("--config", flags.config_path, "experiment config file");
    cmd->add_option("-o,--output", flags.output, "output path, or - for stdout");
    cmd->add_option("--format", flags.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--workers", flags.workers, "worker threads (0 = all cores)");
    cmd->add_option("--cutoff-max", flags.cutoff_max, "largest Fock cutoff to certify");
}

int run_experiment(cqs::ExperimentKind kind, const CommonFlags& flags,
                   cqs::ExperimentConfig cfg) {
    try {
        if (!flags.config_path.empty()) cqs::apply_config_file(flags.config_path, cfg);
        cfg.experiment = kind;  // the subcommand wins over the config file
        if (!flags.output.empty()) cfg.output = flags.output;
        if (!flags.format.empty())
            cfg.format = flags.format == "json" ? cqs::OutputFormat::Json
                                                : cqs::OutputFormat::Csv;
        if (flags.workers >= 0) cfg.workers = flags.workers;
        if (flags.cutoff_max > 0) cfg.cutoff_max = flags.cutoff_max;
    } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    }

    try {
        const cqs::RunResult result = cqs::run(cfg);
        for (const auto& note : result.notes) std::cerr << note << "\n";
        if (kind != cqs::ExperimentKind::Validate)
            cqs::emit(result.records, cfg.format, cfg.output);
        return result.failures > 0 ? 1 : 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "critsense — critical-dynamics quantum sensing experiments\n"
        "Simulates the critical Hamiltonian families, their measurement\n"
        "protocols, and the finite-eta and noise studies; emits CSV/JSON sweeps."};
    app.require_subcommand(1);

    cqs::ExperimentConfig cfg;
    CommonFlags flags;

    double grid_min = -1, grid_max = -1, omega = -1, eta = -1;
    int steps = -1, n = -1;

    auto add_grid = [&](CLI::App* cmd) {
        cmd->add_option("--grid-min", grid_min, "sweep lower bound");
        cmd->add_option("--grid-max", grid_max, "sweep upper bound");
        cmd->add_option("--steps", steps, "sweep point count");
        cmd->add_option("--n", n, "revival index n");
        cmd->add_option("--omega", omega, "bosonic frequency (time unit)");
        cmd->add_option("--eta", eta, "frequency ratio omega0/omega");
    };

    CLI::App* quad = app.add_subcommand("quadrature", "homodyne protocol sweep over g");
    CLI::App* losch = app.add_subcommand("loschmidt", "qubit-readout working points");
    CLI::App* qfi = app.add_subcommand("qfi", "analytic vs exact QFI sweep");
    CLI::App* feta = app.add_subcommand("finite-eta", "finite frequency-ratio study");
    CLI::App* noise = app.add_subcommand("noise", "open-system inverted variance");
    CLI::App* validate = app.add_subcommand("validate", "run the invariant suite");
    for (CLI::App* cmd : {quad, losch, qfi, feta, noise, validate}) {
        add_common(cmd, flags);
        add_grid(cmd);
    }
    qfi->add_option("--model", cfg.model, "qrm_effective | opo | lmg");
    losch->add_option("--branches", cfg.branches, "working-point branch indices");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    if (omega > 0) cfg.omega = omega;
    if (eta > 0) cfg.eta = eta;
    if (grid_min >= 0) cfg.grid_min = grid_min;
    if (grid_max >= 0) cfg.grid_max = grid_max;
    if (steps > 0) cfg.grid_steps = steps;
    if (n > 0) cfg.n = n;

    cqs::ExperimentKind kind = cqs::ExperimentKind::Validate;
    if (quad->parsed()) kind = cqs::ExperimentKind::Quadrature;
    if (losch->parsed()) kind = cqs::ExperimentKind::Loschmidt;
    if (qfi->parsed()) kind = cqs::ExperimentKind::Qfi;
    if (feta->parsed()) kind = cqs::ExperimentKind::FiniteEta;
    if (noise->parsed()) kind = cqs::ExperimentKind::Noise;
    return run_experiment(kind, flags, cfg);
}
