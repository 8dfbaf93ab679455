#include "polyflood/fluxes.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "polyflood/errors.hpp"
#include "polyflood/riemann.hpp"
#include "polyflood/solver.hpp"

namespace polyflood {

std::string_view to_string(SchemeKind kind) {
  switch (kind) {
    case SchemeKind::DFLU: return "dflu";
    case SchemeKind::Godunov: return "godunov";
    case SchemeKind::UpstreamMobility: return "um";
    case SchemeKind::LaxFriedrichs: return "lf";
    case SchemeKind::Force: return "force";
  }
  return "?";
}

SchemeKind parse_scheme(std::string_view name) {
  for (SchemeKind k : {SchemeKind::DFLU, SchemeKind::Godunov, SchemeKind::UpstreamMobility,
                       SchemeKind::LaxFriedrichs, SchemeKind::Force}) {
    if (to_string(k) == name) return k;
  }
  throw ConfigError(fmt::format("unknown scheme '{}' (expected dflu, godunov, um, lf, force)", name));
}

InterfaceFlux dflu_flux(const FluxModel& model, State left, State right, double theta_left,
                        double theta_right) {
  const double F = std::min(model.f(std::min(left.s, theta_left), left.c),
                            model.f(std::max(right.s, theta_right), right.c));
  return {F, left.c * F};
}

InterfaceFlux dflu_flux(const FluxModel& model, State left, State right) {
  return dflu_flux(model, left, right, argmax_theta(model, left.c), argmax_theta(model, right.c));
}

InterfaceFlux godunov_flux(const FluxModel& model, State left, State right) {
  const double F = godunov_interface_flux(model, left, right);
  return {F, left.c * F};
}

InterfaceFlux upstream_mobility_flux(const FluxModel& model, State left, State right,
                                     FluxDiagnostics* diag) {
  const auto& tp = model.two_phase();
  if (!tp) throw DomainError("upstream mobility requires two-phase model");
  const std::array<double, 2> l1{tp->mobility_1(left.s, left.c), tp->mobility_1(right.s, right.c)};
  const std::array<double, 2> l2{tp->mobility_2(left.s, left.c), tp->mobility_2(right.s, right.c)};
  const double dg = tp->g1 - tp->g2;

  auto flux_for = [&](int i, int j) -> InterfaceFlux {
    const double m1 = l1[i];
    const double m2 = l2[j];
    const double total = m1 + m2;
    const double F = total > 0.0 ? m1 / total * (tp->q + dg * m2) : 0.0;
    return {F, left.c * F};
  };

  // Phase 1 is taken upstream (left) iff q + (g1 - g2) l2* > 0, phase 2 iff
  // q + (g2 - g1) l1* > 0. Pick the combination consistent with both rules.
  int best_i = 0;
  int best_j = 0;
  double best_violation = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      const double drive1 = tp->q + dg * l2[j];
      const double drive2 = tp->q - dg * l1[i];
      const bool ok1 = (i == 0) == (drive1 > 0.0);
      const bool ok2 = (j == 0) == (drive2 > 0.0);
      if (ok1 && ok2) return flux_for(i, j);
      const double violation = (ok1 ? 0.0 : std::abs(drive1)) + (ok2 ? 0.0 : std::abs(drive2));
      if (violation < best_violation) {
        best_violation = violation;
        best_i = i;
        best_j = j;
      }
    }
  }
  if (diag) ++diag->um_inconsistent;
  return flux_for(best_i, best_j);
}

InterfaceFlux lax_friedrichs_flux(const FluxModel& model, State left, State right,
                                  double lambda) {
  if (!(lambda > 0.0)) throw DomainError(fmt::format("lambda={} must be positive", lambda));
  const double f_l = model.f(left.s, left.c);
  const double f_r = model.f(right.s, right.c);
  const double F = 0.5 * (f_r + f_l - (right.s - left.s) / lambda);
  const double cons_jump =
      right.c * right.s + model.a(right.c) - left.c * left.s - model.a(left.c);
  const double G = 0.5 * (right.c * f_r + left.c * f_l - cons_jump / lambda);
  return {F, G};
}

InterfaceFlux force_flux(const FluxModel& model, State left, State right, double lambda,
                         FluxDiagnostics* diag) {
  if (!(lambda > 0.0)) throw DomainError(fmt::format("lambda={} must be positive", lambda));
  const double f_l = model.f(left.s, left.c);
  const double f_r = model.f(right.s, right.c);
  const double g_l = left.c * f_l;
  const double g_r = right.c * f_r;

  double s_half = 0.5 * (left.s + right.s) - 0.5 * lambda * (f_r - f_l);
  if (s_half < 0.0 || s_half > model.s_max()) {
    s_half = std::clamp(s_half, 0.0, model.s_max());
    if (diag) ++diag->force_clamped_s;
  }
  const double cons_l = left.c * left.s + model.a(left.c);
  const double cons_r = right.c * right.s + model.a(right.c);
  const double rhs = 0.5 * (cons_l + cons_r) - 0.5 * lambda * (g_r - g_l);

  double c_half = 0.0;
  const double lo = model.a(0.0);
  const double hi = model.c_max() * s_half + model.a(model.c_max());
  if (rhs < lo || rhs > hi) {
    if (diag) ++diag->force_degenerate_c;
    c_half = rhs < lo ? 0.0 : model.c_max();
  } else {
    c_half = solve_c_update(s_half, rhs, model);
  }
  const double f_half = model.f(s_half, c_half);

  const double F = 0.25 * (f_r + f_l + 2.0 * f_half - (right.s - left.s) / lambda);
  const double G = 0.25 * (g_r + g_l + 2.0 * c_half * f_half - (cons_r - cons_l) / lambda);
  return {F, G};
}

double scheme_speed_bound(SchemeKind kind, const FluxModel& model, int n) {
  const double base = cfl_bound(model);
  if (kind != SchemeKind::UpstreamMobility) return base;
  const double smax = model.s_max();
  const double d = 1e-7 * smax;
  double slope = 0.0;
  for (double cl : {0.0, 0.25, 0.5, 0.75, 1.0}) {
    for (double cr : {0.0, 0.5, 1.0}) {
      for (int i = 0; i < n; ++i) {
        const double sl = std::min(smax - d, smax * i / (n - 1));
        for (int j = 0; j < n; ++j) {
          const double sr = std::min(smax - d, smax * j / (n - 1));
          const double F = upstream_mobility_flux(model, {sl, cl}, {sr, cr}).F;
          const double dl = upstream_mobility_flux(model, {sl + d, cl}, {sr, cr}).F - F;
          const double dr = upstream_mobility_flux(model, {sl, cl}, {sr + d, cr}).F - F;
          slope = std::max({slope, std::abs(dl) / d, std::abs(dr) / d});
        }
      }
    }
  }
  return std::max(base, 1.01 * slope);
}

InterfaceFlux interface_flux(SchemeKind kind, const FluxModel& model, State left, State right,
                             double lambda, FluxDiagnostics* diag) {
  switch (kind) {
    case SchemeKind::DFLU: return dflu_flux(model, left, right);
    case SchemeKind::Godunov: return godunov_flux(model, left, right);
    case SchemeKind::UpstreamMobility: return upstream_mobility_flux(model, left, right, diag);
    case SchemeKind::LaxFriedrichs: return lax_friedrichs_flux(model, left, right, lambda);
    case SchemeKind::Force: return force_flux(model, left, right, lambda, diag);
  }
  throw ConfigError("unhandled scheme");
}

}  // namespace polyflood
