#pragma once

#include "cellchain/sim.hpp"

namespace cellchain {

/// Flat key=value experiment configuration. One file fully determines a run:
/// gate schedule, durations, sampling grid, seed, renderer geometry, and every
/// pipeline threshold. Unknown keys are rejected.
std::string config_to_text(const ExperimentConfig& cfg);

/// Parses a config. Starts from the preset named by a `label` key when
/// present (and the label is A-D), then applies overrides in file order.
/// Throws std::invalid_argument on unknown keys or malformed values.
ExperimentConfig config_from_text(const std::string& text);

ExperimentConfig load_config_file(const std::filesystem::path& path);
void save_config_file(const std::filesystem::path& path, const ExperimentConfig& cfg);

}  // namespace cellchain
