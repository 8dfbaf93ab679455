#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "polyflood/fluxes.hpp"
#include "polyflood/model.hpp"

namespace polyflood {

/// Uniform 1D grid; interfaces at x_min + i h, centers at x_min + (i + 1/2) h
/// for zero-based cell index i.
struct Grid1D {
  double x_min = 0.0;
  double x_max = 1.0;
  int n_cells = 100;

  double h() const { return (x_max - x_min) / n_cells; }
  double center(int i) const { return x_min + (i + 0.5) * h(); }
  double interface(int i) const { return x_min + i * h(); }
};

/// Grid with the cell size `h`; throws ConfigError when h does not divide
/// the domain into a whole number of cells.
Grid1D grid_with_spacing(double x_min, double x_max, double h);

struct SolverState {
  std::vector<double> s;
  std::vector<double> c;
  double t = 0.0;

  std::size_t size() const { return s.size(); }
  State at(std::size_t i) const { return {s[i], c[i]}; }
};

/// Ghost cells holding fixed states at both ends.
struct Dirichlet {
  State left;
  State right;
};

/// F = G = 0 on both domain-end interfaces.
struct ClosedZeroFlux {};

using BoundaryCondition = std::variant<Dirichlet, ClosedZeroFlux>;

/// Piecewise-constant data: states[k] holds on (breaks[k-1], breaks[k]).
struct InitialCondition {
  std::vector<double> breaks;
  std::vector<State> states;

  State at(double x) const;
  static InitialCondition riemann(double x0, State left, State right) {
    return {{x0}, {left, right}};
  }
};

struct RunConfig {
  FluxModel model = quadratic_test_model();
  SchemeKind scheme = SchemeKind::DFLU;
  Grid1D grid;
  double lambda = 0.25;  ///< dt / h
  double t_end = 0.0;
  BoundaryCondition boundary = ClosedZeroFlux{};
  InitialCondition initial;
  std::vector<double> snapshot_times;  ///< t_end is always recorded
  bool diagnostics = false;
};

/// Per-step boundary fluxes, used for conservation bookkeeping.
struct StepReport {
  double dt = 0.0;
  InterfaceFlux inlet;   ///< flux through x_min
  InterfaceFlux outlet;  ///< flux through x_max
  FluxDiagnostics flux_flags;
};

struct StepDiagnostics {
  double t;
  double min_s;
  double max_s;
  double tv_c;
  double mass_s;
  double mass_polymer;
};

struct Snapshot {
  double t;
  SolverState state;
};

struct RunResult {
  std::vector<Snapshot> snapshots;
  std::vector<StepDiagnostics> diagnostics;
  int steps = 0;
  /// Time integrals of inlet minus outlet flux for each equation.
  double net_inflow_s = 0.0;
  double net_inflow_polymer = 0.0;
  FluxDiagnostics flux_flags;
  /// lambda times scheme_speed_bound exceeds 1.
  bool cfl_violated = false;
};

/// Cell averages of the initial condition sampled at cell centers.
SolverState initial_state(const RunConfig& config);

/// Unique c >= 0 with c s_new + a(c) = rhs. Closed form for linear a,
/// bisection otherwise. rhs within 1e-10 outside the admissible range is
/// clamped; further out throws DomainError.
double solve_c_update(double s_new, double rhs, const FluxModel& model);

/// One explicit step with ratio `lambda` = dt / h.
SolverState step(const SolverState& state, const RunConfig& config,
                 double lambda, StepReport* report = nullptr);
inline SolverState step(const SolverState& state, const RunConfig& config,
                        StepReport* report = nullptr) {
  return step(state, config, config.lambda, report);
}

/// Integrates to config.t_end, landing exactly on every snapshot time.
RunResult run(const RunConfig& config);

}  // namespace polyflood
