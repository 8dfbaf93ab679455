#pragma once

#include <string>
#include <string_view>

#include "polyflood/model.hpp"

namespace polyflood {

enum class SchemeKind { DFLU, Godunov, UpstreamMobility, LaxFriedrichs, Force };

/// Short CLI names: dflu, godunov, um, lf, force.
std::string_view to_string(SchemeKind kind);
/// Throws ConfigError for unknown names.
SchemeKind parse_scheme(std::string_view name);

/// Numerical fluxes for the saturation (F) and polymer (G) equations.
struct InterfaceFlux {
  double F = 0.0;
  double G = 0.0;
};

/// Flags raised by fluxes that may leave their nominal domain.
struct FluxDiagnostics {
  int um_inconsistent = 0;  ///< no self-consistent upstream selection
  int force_clamped_s = 0;  ///< half-step saturation clamped into range
  int force_degenerate_c = 0;  ///< half-step concentration not bracketed
};

/// F = min{ f(min(s_L, theta_L), c_L), f(max(s_R, theta_R), c_R) },
/// G = c_L F.
InterfaceFlux dflu_flux(const FluxModel& model, State left, State right);
/// Same, with the argmax values already known.
InterfaceFlux dflu_flux(const FluxModel& model, State left, State right,
                        double theta_left, double theta_right);

/// Exact Godunov F with the same upwind G = c_L F.
InterfaceFlux godunov_flux(const FluxModel& model, State left, State right);

/// Reservoir-engineering upstream mobility flux. Requires a two-phase model.
InterfaceFlux upstream_mobility_flux(const FluxModel& model, State left,
                                     State right,
                                     FluxDiagnostics* diag = nullptr);

InterfaceFlux lax_friedrichs_flux(const FluxModel& model, State left,
                                  State right, double lambda);

/// FORCE: average of the Lax-Friedrichs flux and a two-step Lax-Wendroff
/// flux built on the half-step state.
InterfaceFlux force_flux(const FluxModel& model, State left, State right,
                         double lambda, FluxDiagnostics* diag = nullptr);

/// Speed bound governing monotonicity of the scheme's update: cfl_bound for
/// every scheme except upstream mobility, whose flux can be steeper in s_L and
/// s_R than f itself. For that one the bound also covers the largest
/// finite-difference slope of F over an `n` x `n` saturation grid at several
/// concentration pairs, inflated by 1%.
double scheme_speed_bound(SchemeKind kind, const FluxModel& model, int n = 129);

/// Dispatch on `kind`. `lambda` is only used by the centered schemes.
InterfaceFlux interface_flux(SchemeKind kind, const FluxModel& model,
                             State left, State right, double lambda,
                             FluxDiagnostics* diag = nullptr);

}  // namespace polyflood
