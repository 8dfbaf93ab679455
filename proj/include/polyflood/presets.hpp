#pragma once

#include <optional>
#include <string>
#include <vector>

#include "polyflood/solver.hpp"

namespace polyflood {

enum class Origin { Published, Derived };

/// Named reference number attached to a preset.
struct ReferenceValue {
  std::string label;
  double value;
  Origin origin;
};

struct ExperimentPreset {
  std::string name;
  std::string description;
  RunConfig config;
  /// Location of the initial jump when the preset is a single Riemann
  /// problem with an exact solution.
  std::optional<double> riemann_origin;
  std::vector<ReferenceValue> references;
  /// Default h ladder for convergence studies (empty when not applicable).
  std::vector<double> h_ladder;
};

/// ic1, ic2, two_phase_ivp, closed_boundary, no_polymer.
const std::vector<ExperimentPreset>& presets();
/// Throws ConfigError listing the known names.
const ExperimentPreset& find_preset(const std::string& name);

}  // namespace polyflood
