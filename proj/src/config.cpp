#include "cqs/config.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

namespace cqs {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<double> parse_list(const std::string& v) {
    std::vector<double> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(std::stod(item));
    }
    return out;
}

std::vector<int> parse_int_list(const std::string& v) {
    std::vector<int> out;
    for (double d : parse_list(v)) out.push_back(int(std::lround(d)));
    return out;
}

}  // namespace

ExperimentKind experiment_from_string(const std::string& name) {
    if (name == "quadrature") return ExperimentKind::Quadrature;
    if (name == "loschmidt") return ExperimentKind::Loschmidt;
    if (name == "qfi") return ExperimentKind::Qfi;
    if (name == "finite_eta" || name == "finite-eta") return ExperimentKind::FiniteEta;
    if (name == "noise") return ExperimentKind::Noise;
    if (name == "validate") return ExperimentKind::Validate;
    throw Error("unknown experiment '" + name + "'");
}

void apply_config_file(const std::string& path, ExperimentConfig& cfg) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open config file '" + path + "'");
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find_first_of("#;");
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw Error(path + ":" + std::to_string(lineno) + ": malformed section");
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw Error(path + ":" + std::to_string(lineno) + ": expected key = value");
        const std::string key = section.empty() ? trim(line.substr(0, eq))
                                                : section + "." + trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        try {
            if (key == "experiment" || key == "experiment.type")
                cfg.experiment = experiment_from_string(value);
            else if (key == "experiment.n" || key == "n") cfg.n = std::stoi(value);
            else if (key == "model.name") cfg.model = value;
            else if (key == "model.omega") cfg.omega = std::stod(value);
            else if (key == "model.eta") cfg.eta = std::stod(value);
            else if (key == "model.kappa") cfg.kappa = std::stod(value);
            else if (key == "model.lmg_gamma") cfg.lmg_gamma = std::stod(value);
            else if (key == "grid.min") cfg.grid_min = std::stod(value);
            else if (key == "grid.max") cfg.grid_max = std::stod(value);
            else if (key == "grid.steps") cfg.grid_steps = std::stoi(value);
            else if (key == "grid.branches") cfg.branches = parse_int_list(value);
            else if (key == "grid.etas") cfg.etas = parse_list(value);
            else if (key == "grid.gammas") cfg.gammas = parse_list(value);
            else if (key == "noise.dephasing") {
                cfg.noise.dephasing = std::stod(value);
                cfg.noise_explicit = true;
            } else if (key == "noise.qubit_decay") {
                cfg.noise.qubit_decay = std::stod(value);
                cfg.noise_explicit = true;
            } else if (key == "noise.boson_decay") {
                cfg.noise.boson_decay = std::stod(value);
                cfg.noise_explicit = true;
            } else if (key == "noise.heating") {
                cfg.noise.heating = std::stod(value);
                cfg.noise_explicit = true;
            }
            else if (key == "cutoff.initial") cfg.cutoff_initial = std::stoi(value);
            else if (key == "cutoff.max") cfg.cutoff_max = std::stoi(value);
            else if (key == "output.path") cfg.output = value;
            else if (key == "output.format") {
                if (value == "csv") cfg.format = OutputFormat::Csv;
                else if (value == "json") cfg.format = OutputFormat::Json;
                else throw Error("format must be csv or json");
            }
            else if (key == "run.workers" || key == "workers")
                cfg.workers = std::stoi(value);
            else
                std::cerr << "warning: " << path << ":" << lineno << ": unknown key '" << key
                          << "' ignored\n";
        } catch (const Error&) {
            throw;
        } catch (const std::exception&) {
            throw Error(path + ":" + std::to_string(lineno) + ": bad value for '" + key + "'");
        }
    }
}

}  // namespace cqs
