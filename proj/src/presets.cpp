#include "polyflood/presets.hpp"

#include <fmt/format.h>

#include "polyflood/errors.hpp"

namespace polyflood {

namespace {

ExperimentPreset quadratic_riemann(std::string name, std::string description, State left,
                                   State right, std::vector<ReferenceValue> refs) {
  ExperimentPreset p;
  p.name = std::move(name);
  p.description = std::move(description);
  p.config.model = quadratic_test_model();
  p.config.scheme = SchemeKind::DFLU;
  p.config.grid = {0.0, 1.0, 100};
  p.config.lambda = 0.25;
  p.config.t_end = 0.5;
  p.config.boundary = Dirichlet{left, right};
  p.config.initial = InitialCondition::riemann(0.5, left, right);
  p.riemann_origin = 0.5;
  p.references = std::move(refs);
  p.h_ladder = {1.0 / 50, 1.0 / 100, 1.0 / 200, 1.0 / 400, 1.0 / 800};
  return p;
}

ExperimentPreset two_phase(std::string name, std::string description, State left, State right,
                           BoundaryCondition boundary, std::vector<double> times) {
  ExperimentPreset p;
  p.name = std::move(name);
  p.description = std::move(description);
  p.config.model = two_phase_gravity_model();
  p.config.scheme = SchemeKind::DFLU;
  p.config.grid = {0.0, 2.0, 200};
  p.config.lambda = 0.8;  // dt = 1/125 with h = 1/100
  p.config.t_end = times.back();
  p.config.snapshot_times = std::move(times);
  p.config.boundary = boundary;
  p.config.initial = InitialCondition::riemann(0.5, left, right);
  return p;
}

std::vector<ExperimentPreset> build() {
  std::vector<ExperimentPreset> all;
  all.push_back(quadratic_riemann(
      "ic1", "quadratic flux, (s, c) = (2.5, 0.5) | (1, 0), Case 2a", {2.5, 0.5}, {1.0, 0.0},
      {{"s_star", 1.236, Origin::Published},
       {"A", 2.587, Origin::Published},
       {"s_bar", 0.394, Origin::Published},
       {"sigma_1", -2.0 / 3.0, Origin::Published},
       {"sigma_c", 1.018, Origin::Published},
       {"sigma_2", 2.606, Origin::Published},
       {"dflu_error_s_h100", 0.1506, Origin::Published},
       {"dflu_error_c_h100", 4.1630e-2, Origin::Published}}));
  all.push_back(quadratic_riemann(
      "ic2", "quadratic flux, (s, c) = (2.3, 0.5) | (3.2, 0), Case 2b", {2.3, 0.5}, {3.2, 0.0},
      {{"s_bar", 2.7536, Origin::Published},
       {"sigma_s", -0.702, Origin::Published},
       {"sigma_c", 0.609, Origin::Published},
       {"godunov_error_s_h100", 5.7861e-2, Origin::Published},
       {"godunov_rate_s_h100", 0.8243, Origin::Published}}));

  const State inlet{0.9, 0.9};
  const State outlet{0.1, 0.3};
  auto ivp = two_phase("two_phase_ivp",
                       "gravity two-phase flux, (0.9, 0.9) | (0.1, 0.3) at x = 0.5, fixed ends",
                       inlet, outlet, Dirichlet{inlet, outlet}, {1.0, 1.5});
  all.push_back(std::move(ivp));
  all.push_back(two_phase("closed_boundary",
                          "gravity two-phase flux, same data, zero flux at x = 0 and x = 2",
                          inlet, outlet, ClosedZeroFlux{}, {1.0, 2.0, 3.0}));
  all.push_back(two_phase("no_polymer", "gravity two-phase flux with c = 0, zero-flux ends",
                          {0.9, 0.0}, {0.1, 0.0}, ClosedZeroFlux{}, {1.0, 3.0}));
  return all;
}

}  // namespace

const std::vector<ExperimentPreset>& presets() {
  static const std::vector<ExperimentPreset> all = build();
  return all;
}

const ExperimentPreset& find_preset(const std::string& name) {
  for (const auto& p : presets()) {
    if (p.name == name) return p;
  }
  std::string known;
  for (const auto& p : presets()) known += (known.empty() ? "" : ", ") + p.name;
  throw ConfigError(fmt::format("unknown preset '{}' (known: {})", name, known));
}

}  // namespace polyflood
