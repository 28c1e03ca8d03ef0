#pragma once

#include <string>

#include "cqs/runner.hpp"

namespace cqs {

/// Applies a sectioned key = value file onto a config. Unknown keys warn on
/// stderr; malformed lines and unparseable values throw.
void apply_config_file(const std::string& path, ExperimentConfig& config);

ExperimentKind experiment_from_string(const std::string& name);

}  // namespace cqs
