#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "polyflood/model.hpp"

namespace polyflood {

enum class WaveKind { SShock, SRarefaction, CContact };

std::string_view to_string(WaveKind kind);

/// One elementary wave of a Riemann fan. Shocks and contacts have
/// left_speed == right_speed.
struct Wave {
  WaveKind kind;
  double left_speed;
  double right_speed;
  State left_state;
  State right_state;
};

/// Which construction produced a fan.
///
/// Case1*/Case2* are the c_L > c_R constructions (split on s_L vs s*, then
/// s_R vs B or A). Mirror* are the c_L < c_R counterparts: the tangency point
/// lives on the right curve, Mirror1 when s_R >= that point, and the `b`
/// variants are those whose contact speed is set by the left state.
enum class RiemannCase {
  Constant,
  Scalar,
  Case1a,
  Case1b,
  Case2a,
  Case2b,
  Mirror1a,
  Mirror1b,
  Mirror2a,
  Mirror2b,
};

std::string_view to_string(RiemannCase rc);

/// Self-similar solution of one Riemann problem.
struct RiemannFan {
  FluxModel model;
  State left;
  State right;
  std::vector<Wave> waves;
  RiemannCase case_kind = RiemannCase::Constant;

  /// Tangency point: s* on the left curve (c_L > c_R) or its counterpart on
  /// the right curve (c_L < c_R).
  std::optional<double> s_star;
  /// Saturation on the far side of the contact that is not a data state.
  std::optional<double> s_bar;
  /// Upper intersection of the tangent line with the right curve (Case 2).
  std::optional<double> threshold_a;
  /// Upper intersection of the line through the left state (Case 1).
  std::optional<double> threshold_b;
  /// Lower intersection with the left curve in the mirrored constructions.
  std::optional<double> threshold_mirror;
  std::optional<double> contact_speed;
};

/// Roots of f(s, c) - sigma (s + abar) on either side of the maximum of
/// that difference. Either may be absent when the line misses the curve.
struct LineIntersections {
  std::optional<double> lower;
  std::optional<double> upper;
};

/// Contact slope f(s, c) / (s + abar).
inline double contact_ratio(const FluxModel& model, double s, double c,
                            double abar) {
  return model.f(s, c) / (s + abar);
}

/// Point on f(., c) where the line through (-abar, 0) is tangent, i.e. the
/// root of f_s(s, c) (s + abar) - f(s, c) in (0, theta(c)).
double tangent_point(const FluxModel& model, double c, double abar);

/// s* for the pair (c_L, c_R): tangent point on f(., c_L) with
/// abar = secant_adsorption(c_R, c_L).
double coincidence_s_star(const FluxModel& model, double c_left,
                          double c_right);

/// Intersections of f(., c) with the line of slope `sigma` through
/// (-abar, 0).
LineIntersections line_intersections(const FluxModel& model, double sigma,
                                     double c, double abar);

/// Same as line_intersections with abar = secant_adsorption(c, c_ref).
LineIntersections secant_intersections(const FluxModel& model, double sigma,
                                       double c, double c_ref);

/// Entropy solution of s_t + f(s, c)_x = 0 between s_l and s_r at fixed c,
/// built from the convex (s_l < s_r) or concave (s_l > s_r) envelope.
std::vector<Wave> scalar_s_wave(const FluxModel& model, double s_l,
                                double s_r, double c);

/// Exact Riemann solution for the polymer system.
RiemannFan solve_riemann(const FluxModel& model, State left, State right);

/// State on the ray x/t = xi. A discontinuity moving exactly at xi yields its
/// right state.
State sample(const RiemannFan& fan, double xi);

/// Scalar Godunov flux of f(., c): min over [s_l, s_r] if s_l <= s_r,
/// max over [s_r, s_l] otherwise.
double scalar_godunov_flux(const FluxModel& model, double s_l, double s_r,
                           double c);
double scalar_godunov_flux(const FluxModel& model, double s_l, double s_r,
                           double c, double theta);

/// Exact Godunov flux for the saturation equation, evaluated with the
/// compact case formula rather than by building the full fan.
double godunov_interface_flux(const FluxModel& model, State left,
                              State right);

}  // namespace polyflood
