#pragma once

#include <vector>

#include "polyflood/analysis.hpp"
#include "polyflood/presets.hpp"

namespace polyflood {

/// Runs a Riemann preset at each h with the given scheme and ratio and
/// measures L1 errors against the exact fan at the preset end time.
/// Throws ConfigError when the preset has no exact solution.
ErrorReport convergence_study(const ExperimentPreset& preset, SchemeKind scheme,
                              const std::vector<double>& hs, double lambda);

/// Right end of the widest run of cells with saturation above `threshold`
/// (the displacing slug), or the domain start when no cell is above. A thin
/// layer piled up against a closed wall is never the widest run.
double front_position(const SolverState& state, const Grid1D& grid, double threshold);

}  // namespace polyflood
