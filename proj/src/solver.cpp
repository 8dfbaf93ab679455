#include "polyflood/solver.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "polyflood/analysis.hpp"
#include "polyflood/errors.hpp"
#include "polyflood/riemann.hpp"
#include "polyflood/roots.hpp"

namespace polyflood {

namespace {
constexpr double kSaturationSlack = 1e-12;
constexpr double kConservedSlack = 1e-10;
}  // namespace

Grid1D grid_with_spacing(double x_min, double x_max, double h) {
  if (!(h > 0.0) || !(x_max > x_min)) {
    throw ConfigError(fmt::format("invalid grid: [{}, {}] with h={}", x_min, x_max, h));
  }
  const double cells = (x_max - x_min) / h;
  const double rounded = std::round(cells);
  if (std::abs(cells - rounded) > 1e-9 * std::max(1.0, cells) || rounded < 1.0) {
    throw ConfigError(fmt::format("h={} does not divide [{}, {}] into whole cells", h, x_min, x_max));
  }
  return {x_min, x_max, static_cast<int>(rounded)};
}

State InitialCondition::at(double x) const {
  if (states.empty()) throw ConfigError("initial condition has no states");
  if (states.size() != breaks.size() + 1) {
    throw ConfigError(fmt::format("initial condition needs {} states for {} breaks, got {}",
                                  breaks.size() + 1, breaks.size(), states.size()));
  }
  std::size_t k = 0;
  while (k < breaks.size() && x > breaks[k]) ++k;
  return states[k];
}

SolverState initial_state(const RunConfig& config) {
  const int n = config.grid.n_cells;
  SolverState state;
  state.s.resize(n);
  state.c.resize(n);
  for (int i = 0; i < n; ++i) {
    const State u = config.initial.at(config.grid.center(i));
    if (!config.model.admissible(u.s, u.c)) {
      throw ConfigError(fmt::format("initial state (s={}, c={}) is not admissible", u.s, u.c));
    }
    state.s[i] = u.s;
    state.c[i] = u.c;
  }
  state.t = 0.0;
  return state;
}

double solve_c_update(double s_new, double rhs, const FluxModel& model) {
  const double c_max = model.c_max();
  const double lo = model.a(0.0);
  const double hi = c_max * s_new + model.a(c_max);
  if (rhs < lo - kConservedSlack || rhs > hi + kConservedSlack || !std::isfinite(rhs)) {
    throw DomainError(fmt::format("conserved polymer value {} outside [{}, {}] for s={}", rhs, lo,
                                  hi, s_new));
  }
  rhs = std::clamp(rhs, lo, hi);
  const Adsorption& ads = model.adsorption();
  if (ads.is_linear()) {
    const double denom = s_new + ads.k();
    return std::clamp(rhs / denom, 0.0, c_max);
  }
  auto psi = [&](double c) { return c * s_new + model.a(c) - rhs; };
  return roots::bisect(psi, 0.0, c_max).value_or(rhs <= lo ? 0.0 : c_max);
}

SolverState step(const SolverState& state, const RunConfig& config, double lambda,
                 StepReport* report) {
  const FluxModel& model = config.model;
  const int n = static_cast<int>(state.size());
  const bool closed = std::holds_alternative<ClosedZeroFlux>(config.boundary);
  State ghost_left{state.s.front(), state.c.front()};
  State ghost_right{state.s.back(), state.c.back()};
  if (const auto* d = std::get_if<Dirichlet>(&config.boundary)) {
    ghost_left = d->left;
    ghost_right = d->right;
  }
  // Index j in [0, n + 1]: 0 and n + 1 are ghosts.
  auto cell = [&](int j) -> State {
    if (j == 0) return ghost_left;
    if (j == n + 1) return ghost_right;
    return state.at(static_cast<std::size_t>(j - 1));
  };

  std::vector<double> theta;
  if (config.scheme == SchemeKind::DFLU) {
    theta.resize(n + 2);
    double last_c = -1.0;
    double last_theta = 0.0;
    for (int j = 0; j < n + 2; ++j) {
      const double c = cell(j).c;
      if (c != last_c) {
        last_theta = argmax_theta(model, c);
        last_c = c;
      }
      theta[j] = last_theta;
    }
  }

  FluxDiagnostics flags;
  std::vector<InterfaceFlux> flux(n + 1);
  for (int k = 0; k <= n; ++k) {
    if (closed && (k == 0 || k == n)) {
      flux[k] = {0.0, 0.0};
      continue;
    }
    const State left = cell(k);
    const State right = cell(k + 1);
    if (config.scheme == SchemeKind::DFLU) {
      flux[k] = dflu_flux(model, left, right, theta[k], theta[k + 1]);
    } else {
      flux[k] = interface_flux(config.scheme, model, left, right, lambda, &flags);
    }
    if (!std::isfinite(flux[k].F) || !std::isfinite(flux[k].G)) {
      throw NumericalError(fmt::format("non-finite flux at interface {} (t={})", k, state.t), k,
                           state.t);
    }
  }

  SolverState next;
  next.s.resize(n);
  next.c.resize(n);
  const double s_max = model.s_max();
  for (int i = 0; i < n; ++i) {
    double s_new = state.s[i] - lambda * (flux[i + 1].F - flux[i].F);
    if (s_new < -kSaturationSlack || s_new > s_max + kSaturationSlack) {
      throw NumericalError(
          fmt::format("saturation {} left [0, {}] in cell {} at t={}", s_new, s_max, i, state.t),
          i, state.t);
    }
    s_new = std::clamp(s_new, 0.0, s_max);
    const double rhs = state.c[i] * state.s[i] + model.a(state.c[i]) -
                       lambda * (flux[i + 1].G - flux[i].G);
    try {
      next.c[i] = solve_c_update(s_new, rhs, model);
    } catch (const DomainError& e) {
      throw NumericalError(
          fmt::format("concentration recovery failed in cell {} at t={}: {}", i, state.t, e.what()),
          i, state.t);
    }
    next.s[i] = s_new;
  }
  const double dt = lambda * config.grid.h();
  next.t = state.t + dt;
  if (report) {
    report->dt = dt;
    report->inlet = flux.front();
    report->outlet = flux.back();
    report->flux_flags = flags;
  }
  return next;
}

namespace {

StepDiagnostics diagnose(const SolverState& state, const RunConfig& config) {
  const auto [ms, mp] = mass_totals(state, config.model, config.grid.h());
  const auto [lo, hi] = std::minmax_element(state.s.begin(), state.s.end());
  return {state.t, *lo, *hi, total_variation(state.c), ms, mp};
}

}  // namespace

RunResult run(const RunConfig& config) {
  if (!(config.lambda > 0.0)) throw ConfigError("lambda must be positive");
  if (config.t_end < 0.0) throw ConfigError("end time must be non-negative");
  RunResult result;
  result.cfl_violated =
      config.lambda * scheme_speed_bound(config.scheme, config.model) > 1.0 + 1e-12;

  std::vector<double> targets;
  for (double t : config.snapshot_times) {
    if (t >= 0.0 && t <= config.t_end) targets.push_back(t);
  }
  targets.push_back(config.t_end);
  std::sort(targets.begin(), targets.end());
  targets.erase(std::unique(targets.begin(), targets.end()), targets.end());

  SolverState state = initial_state(config);
  if (config.diagnostics) result.diagnostics.push_back(diagnose(state, config));
  const double h = config.grid.h();
  const double dt = config.lambda * h;

  double base = 0.0;  // last landing time; t = base + k dt in between
  for (double target : targets) {
    if (target == 0.0) {
      result.snapshots.push_back({0.0, state});
      continue;
    }
    long k = 0;
    while (state.t < target) {
      const double remaining = target - state.t;
      const bool landing = remaining <= dt * (1.0 + 1e-9);
      const double lam = landing ? remaining / h : config.lambda;
      StepReport rep;
      state = step(state, config, lam, &rep);
      ++k;
      state.t = landing ? target : base + static_cast<double>(k) * dt;
      ++result.steps;
      result.net_inflow_s += rep.dt * (rep.inlet.F - rep.outlet.F);
      result.net_inflow_polymer += rep.dt * (rep.inlet.G - rep.outlet.G);
      result.flux_flags.um_inconsistent += rep.flux_flags.um_inconsistent;
      result.flux_flags.force_clamped_s += rep.flux_flags.force_clamped_s;
      result.flux_flags.force_degenerate_c += rep.flux_flags.force_degenerate_c;
      if (config.diagnostics) result.diagnostics.push_back(diagnose(state, config));
    }
    base = target;
    result.snapshots.push_back({target, state});
  }
  return result;
}

}  // namespace polyflood
