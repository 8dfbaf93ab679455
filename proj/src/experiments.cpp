#include "polyflood/experiments.hpp"


#include <fmt/format.h>

#include "polyflood/errors.hpp"

namespace polyflood {

ErrorReport convergence_study(const ExperimentPreset& preset, SchemeKind scheme,
                              const std::vector<double>& hs, double lambda) {
  if (!preset.riemann_origin) {
    throw ConfigError(fmt::format("preset '{}' has no exact solution", preset.name));
  }
  const RunConfig& base = preset.config;
  const State left = base.initial.states.front();
  const State right = base.initial.states.back();
  const RiemannFan fan = solve_riemann(base.model, left, right);

  ErrorReport report{std::string(to_string(scheme)), {}};
  for (double h : hs) {
    RunConfig cfg = base;
    cfg.scheme = scheme;
    cfg.lambda = lambda;
    cfg.grid = grid_with_spacing(base.grid.x_min, base.grid.x_max, h);
    cfg.snapshot_times.clear();
    const RunResult result = run(cfg);
    const SolverState& final_state = result.snapshots.back().state;
    const L1Error e = l1_error(final_state, cfg.grid, fan, *preset.riemann_origin, cfg.t_end);
    report.rows.push_back({cfg.grid.h(), e.s, e.c, std::nullopt, std::nullopt});
  }
  report.compute_rates();
  return report;
}

double front_position(const SolverState& state, const Grid1D& grid, double threshold) {
  int best_len = 0;
  int best_end = -1;
  int len = 0;
  for (int i = 0; i < grid.n_cells; ++i) {
    len = state.s[i] > threshold ? len + 1 : 0;
    if (len > best_len) {
      best_len = len;
      best_end = i;
    }
  }
  return best_end < 0 ? grid.x_min : grid.center(best_end);
}

}  // namespace polyflood
