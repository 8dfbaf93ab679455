#include "polyflood/riemann.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>

#include <fmt/format.h>

#include "polyflood/errors.hpp"
#include "polyflood/roots.hpp"

namespace polyflood {

std::string_view to_string(WaveKind kind) {
  switch (kind) {
    case WaveKind::SShock: return "s_shock";
    case WaveKind::SRarefaction: return "s_rarefaction";
    case WaveKind::CContact: return "c_contact";
  }
  return "?";
}

std::string_view to_string(RiemannCase rc) {
  switch (rc) {
    case RiemannCase::Constant: return "constant";
    case RiemannCase::Scalar: return "scalar";
    case RiemannCase::Case1a: return "1a";
    case RiemannCase::Case1b: return "1b";
    case RiemannCase::Case2a: return "2a";
    case RiemannCase::Case2b: return "2b";
    case RiemannCase::Mirror1a: return "mirror-1a";
    case RiemannCase::Mirror1b: return "mirror-1b";
    case RiemannCase::Mirror2a: return "mirror-2a";
    case RiemannCase::Mirror2b: return "mirror-2b";
  }
  return "?";
}

namespace {

void check_state(const FluxModel& model, State u, const char* side) {
  if (!model.admissible(u.s, u.c)) {
    throw DomainError(fmt::format("{} state (s={}, c={}) outside [0, {}] x [0, {}]", side, u.s,
                                  u.c, model.s_max(), model.c_max()));
  }
}

double theta_of(const FluxModel& model, double c) { return argmax_theta(model, c); }

}  // namespace

double tangent_point(const FluxModel& model, double c, double abar) {
  const double theta = theta_of(model, c);
  // g(0+) > 0 and g(theta) = -f(theta) < 0.
  auto g = [&](double s) { return model.f_s(s, c) * (s + abar) - model.f(s, c); };
  if (!(g(theta) < 0.0)) {
    throw ModelInvalidError(
        fmt::format("no tangent point on f(., {}) from (-{}, 0): g(theta) >= 0", c, abar));
  }
  return roots::bisect_oriented(g, 0.0, theta, true);
}

double coincidence_s_star(const FluxModel& model, double c_left, double c_right) {
  const double abar = secant_adsorption(model, c_right, c_left);
  return tangent_point(model, c_left, abar);
}

LineIntersections line_intersections(const FluxModel& model, double sigma, double c,
                                     double abar) {
  if (sigma < 0.0) throw DomainError(fmt::format("line slope sigma={} is negative", sigma));
  const double smax = model.s_max();
  auto phi = [&](double s) { return model.f(s, c) - sigma * (s + abar); };
  auto dphi = [&](double s) { return model.f_s(s, c) - sigma; };
  const double peak = roots::argmax_unimodal(phi, dphi, 0.0, smax);
  LineIntersections out;
  const double phi_peak = phi(peak);
  if (phi_peak < 0.0) return out;
  if (phi_peak == 0.0) {
    out.lower = peak;
    out.upper = peak;
    return out;
  }
  out.lower = roots::bisect(phi, 0.0, peak);
  out.upper = roots::bisect(phi, peak, smax);
  return out;
}

LineIntersections secant_intersections(const FluxModel& model, double sigma, double c,
                                       double c_ref) {
  return line_intersections(model, sigma, c, secant_adsorption(model, c, c_ref));
}

// --- scalar waves -----------------------------------------------------------

namespace {

struct Piece {
  bool chord;  // shock if true, rarefaction along f otherwise
  double s0;   // s0 < s1
  double s1;
};

constexpr int kEnvelopeSamples = 513;

// Pieces of the lower convex (convex == true) or upper concave envelope of
// f(., c) on [lo, hi], in increasing s.
std::vector<Piece> envelope(const FluxModel& model, double lo, double hi, double c, bool convex) {
  const int n = kEnvelopeSamples;
  std::vector<double> xs(n), ys(n);
  for (int i = 0; i < n; ++i) {
    xs[i] = (i == n - 1) ? hi : lo + (hi - lo) * i / (n - 1);
    ys[i] = model.f(xs[i], c);
  }
  const double sign = convex ? 1.0 : -1.0;
  std::vector<int> hull;
  for (int i = 0; i < n; ++i) {
    while (hull.size() >= 2) {
      const int o = hull[hull.size() - 2];
      const int a = hull.back();
      const double cross =
          (xs[a] - xs[o]) * (ys[i] - ys[o]) - (ys[a] - ys[o]) * (xs[i] - xs[o]);
      if (sign * cross <= 0.0) {
        hull.pop_back();
      } else {
        break;
      }
    }
    hull.push_back(i);
  }

  double yscale = 1.0;
  for (double y : ys) yscale = std::max(yscale, std::abs(y));

  std::vector<Piece> pieces;
  auto push_curve = [&](double s0, double s1) {
    if (!pieces.empty() && !pieces.back().chord) {
      pieces.back().s1 = s1;
    } else {
      pieces.push_back({false, s0, s1});
    }
  };
  for (std::size_t k = 0; k + 1 < hull.size(); ++k) {
    const int a = hull[k];
    const int b = hull[k + 1];
    bool chord = b - a > 1;
    if (chord) {
      // Nearly straight stretches of f drop samples from the hull by round-off;
      // those are still part of a rarefaction.
      double deviation = 0.0;
      const double slope = (ys[b] - ys[a]) / (xs[b] - xs[a]);
      for (int i = a + 1; i < b; ++i) {
        deviation = std::max(deviation, std::abs(ys[i] - (ys[a] + slope * (xs[i] - xs[a]))));
      }
      chord = deviation > 1e-12 * yscale;
    }
    if (chord) {
      pieces.push_back({true, xs[a], xs[b]});
    } else {
      push_curve(xs[a], xs[b]);
    }
  }

  // Sharpen chord endpoints that touch f tangentially (interior of [lo, hi]).
  const double dx = (hi - lo) / (n - 1);
  for (std::size_t k = 0; k < pieces.size(); ++k) {
    if (!pieces[k].chord) continue;
    const bool lo_fixed = pieces[k].s0 == lo;
    const bool hi_fixed = pieces[k].s1 == hi;
    if (lo_fixed == hi_fixed) continue;
    const double anchor = lo_fixed ? pieces[k].s0 : pieces[k].s1;
    const double guess = lo_fixed ? pieces[k].s1 : pieces[k].s0;
    const double f_anchor = model.f(anchor, c);
    auto tangency = [&](double t) {
      return model.f(t, c) - f_anchor - model.f_s(t, c) * (t - anchor);
    };
    const double far_end = lo_fixed ? std::min(hi, guess + 2.0 * dx) : std::max(lo, guess - 2.0 * dx);
    const double near_end = lo_fixed ? std::max(lo, guess - 2.0 * dx) : std::min(hi, guess + 2.0 * dx);
    // The anchor is a trivial root; widen towards it without touching it.
    std::optional<double> root;
    for (double shrink : {0.0, 0.5, 1e-2, 1e-4, 1e-6}) {
      if (shrink == 0.0 && near_end == anchor) continue;
      const double near = shrink == 0.0 ? near_end : anchor + shrink * (guess - anchor);
      root = roots::bisect(tangency, std::min(near, far_end), std::max(near, far_end));
      if (root && *root != anchor) break;
      root.reset();
    }
    if (!root || *root == anchor) continue;
    const double t = *root;
    if (lo_fixed) {
      pieces[k].s1 = t;
      if (k + 1 < pieces.size()) pieces[k + 1].s0 = t;
    } else {
      pieces[k].s0 = t;
      if (k > 0) pieces[k - 1].s1 = t;
    }
  }
  std::erase_if(pieces, [](const Piece& p) { return !(p.s1 > p.s0); });
  return pieces;
}

}  // namespace

std::vector<Wave> scalar_s_wave(const FluxModel& model, double s_l, double s_r, double c) {
  std::vector<Wave> waves;
  if (s_l == s_r) return waves;
  const bool increasing = s_l < s_r;
  const double lo = std::min(s_l, s_r);
  const double hi = std::max(s_l, s_r);
  std::vector<Piece> pieces = envelope(model, lo, hi, c, increasing);
  if (!increasing) std::reverse(pieces.begin(), pieces.end());

  for (const Piece& p : pieces) {
    const double from = increasing ? p.s0 : p.s1;
    const double to = increasing ? p.s1 : p.s0;
    Wave w;
    w.left_state = {from, c};
    w.right_state = {to, c};
    if (p.chord) {
      w.kind = WaveKind::SShock;
      const double speed = (model.f(to, c) - model.f(from, c)) / (to - from);
      w.left_speed = w.right_speed = speed;
    } else {
      w.kind = WaveKind::SRarefaction;
      w.left_speed = model.f_s(from, c);
      w.right_speed = model.f_s(to, c);
    }
    waves.push_back(w);
  }
  // Envelope endpoints are exact data values.
  waves.front().left_state.s = s_l;
  waves.back().right_state.s = s_r;
  return waves;
}

// --- full Riemann solver ----------------------------------------------------

namespace {

void append(std::vector<Wave>& into, std::vector<Wave> more) {
  into.insert(into.end(), more.begin(), more.end());
}

Wave contact(State from, State to, double speed) {
  return {WaveKind::CContact, speed, speed, from, to};
}

double required(const std::optional<double>& v, const char* what) {
  if (!v) throw ModelInvalidError(fmt::format("Riemann construction: {} not found", what));
  return *v;
}

}  // namespace

RiemannFan solve_riemann(const FluxModel& model, State left, State right) {
  check_state(model, left, "left");
  check_state(model, right, "right");
  RiemannFan fan{model, left, right, {}, RiemannCase::Constant};
  if (left == right) return fan;
  if (left.c == right.c) {
    fan.case_kind = RiemannCase::Scalar;
    fan.waves = scalar_s_wave(model, left.s, right.s, left.c);
    return fan;
  }

  const double c_l = left.c;
  const double c_r = right.c;
  const double abar = secant_adsorption(model, c_r, c_l);
  auto ratio = [&](double s, double c) { return contact_ratio(model, s, c, abar); };

  if (c_l > c_r) {
    const double s_star = tangent_point(model, c_l, abar);
    fan.s_star = s_star;
    const bool case2 = left.s >= s_star;
    // Contact leaves the left curve at s_L (Case 1) or at the tangency s* (Case 2).
    const double s_minus = case2 ? s_star : left.s;
    const double sigma_left = ratio(s_minus, c_l);
    const LineIntersections on_right = line_intersections(model, sigma_left, c_r, abar);
    const double threshold = required(on_right.upper, "upper intersection with right curve");
    (case2 ? fan.threshold_a : fan.threshold_b) = threshold;

    if (right.s >= threshold) {
      fan.case_kind = case2 ? RiemannCase::Case2b : RiemannCase::Case1b;
      const double sigma = ratio(right.s, c_r);
      const double s_bar =
          required(line_intersections(model, sigma, c_l, abar).upper, "s-bar on left curve");
      fan.s_bar = s_bar;
      fan.contact_speed = sigma;
      fan.waves = scalar_s_wave(model, left.s, s_bar, c_l);
      fan.waves.push_back(contact({s_bar, c_l}, right, sigma));
    } else {
      fan.case_kind = case2 ? RiemannCase::Case2a : RiemannCase::Case1a;
      const double s_bar = required(on_right.lower, "s-bar on right curve");
      fan.s_bar = s_bar;
      fan.contact_speed = sigma_left;
      fan.waves = scalar_s_wave(model, left.s, s_minus, c_l);
      fan.waves.push_back(contact({s_minus, c_l}, {s_bar, c_r}, sigma_left));
      append(fan.waves, scalar_s_wave(model, s_bar, right.s, c_r));
    }
    return fan;
  }

  // c_L < c_R: the right curve is the lower one and carries the tangency.
  const double t_right = tangent_point(model, c_r, abar);
  fan.s_star = t_right;
  const bool from_data = right.s >= t_right;
  const double s_plus = from_data ? right.s : t_right;
  const double sigma_right = ratio(s_plus, c_r);
  const LineIntersections on_left = line_intersections(model, sigma_right, c_l, abar);
  const double threshold = required(on_left.lower, "lower intersection with left curve");
  fan.threshold_mirror = threshold;

  if (left.s >= threshold) {
    fan.case_kind = from_data ? RiemannCase::Mirror1a : RiemannCase::Mirror2a;
    const double s_bar = required(on_left.upper, "s-bar on left curve");
    fan.s_bar = s_bar;
    fan.contact_speed = sigma_right;
    fan.waves = scalar_s_wave(model, left.s, s_bar, c_l);
    fan.waves.push_back(contact({s_bar, c_l}, {s_plus, c_r}, sigma_right));
    append(fan.waves, scalar_s_wave(model, s_plus, right.s, c_r));
  } else {
    fan.case_kind = from_data ? RiemannCase::Mirror1b : RiemannCase::Mirror2b;
    const double sigma = ratio(left.s, c_l);
    const double s_bar =
        required(line_intersections(model, sigma, c_r, abar).lower, "s-bar on right curve");
    fan.s_bar = s_bar;
    fan.contact_speed = sigma;
    fan.waves.push_back(contact(left, {s_bar, c_r}, sigma));
    append(fan.waves, scalar_s_wave(model, s_bar, right.s, c_r));
  }
  return fan;
}

State sample(const RiemannFan& fan, double xi) {
  for (const Wave& w : fan.waves) {
    if (xi < w.left_speed) return w.left_state;
    if (w.kind == WaveKind::SRarefaction && xi < w.right_speed) {
      const double c = w.left_state.c;
      const double a = w.left_state.s;
      const double b = w.right_state.s;
      // f_s runs from left_speed to right_speed along the wave.
      auto g = [&](double s) { return fan.model.f_s(s, c) - xi; };
      const auto root = roots::bisect(g, std::min(a, b), std::max(a, b));
      return {root.value_or(0.5 * (a + b)), c};
    }
  }
  return fan.right;
}

// --- Godunov flux -----------------------------------------------------------

double scalar_godunov_flux(const FluxModel& model, double s_l, double s_r, double c,
                           double theta) {
  return std::min(model.f(std::min(s_l, theta), c), model.f(std::max(s_r, theta), c));
}

double scalar_godunov_flux(const FluxModel& model, double s_l, double s_r, double c) {
  return scalar_godunov_flux(model, s_l, s_r, c, theta_of(model, c));
}

double godunov_interface_flux(const FluxModel& model, State left, State right) {
  check_state(model, left, "left");
  check_state(model, right, "right");
  const double c_l = left.c;
  const double c_r = right.c;
  const double theta_l = theta_of(model, c_l);
  if (c_l == c_r) return scalar_godunov_flux(model, left.s, right.s, c_l, theta_l);

  const double abar = secant_adsorption(model, c_r, c_l);
  auto ratio = [&](double s, double c) { return contact_ratio(model, s, c, abar); };
  const double f_left = model.f(left.s, c_l);

  if (c_l > c_r) {
    const double s_star = tangent_point(model, c_l, abar);
    const bool case2 = left.s >= s_star;
    const double reference = case2 ? ratio(s_star, c_l) : ratio(left.s, c_l);
    const double ratio_r = ratio(right.s, c_r);
    // Right state on the rising side of its own line through (-abar, 0).
    const bool right_low = model.f_s(right.s, c_r) >= ratio_r;
    if (right_low || ratio_r >= reference) {
      return case2 ? model.f(std::min(left.s, theta_l), c_l) : f_left;
    }
    const double s_bar =
        required(line_intersections(model, ratio_r, c_l, abar).upper, "s-bar on left curve");
    return scalar_godunov_flux(model, left.s, s_bar, c_l, theta_l);
  }

  const double t_right = tangent_point(model, c_r, abar);
  const double sigma_right = right.s >= t_right ? ratio(right.s, c_r) : ratio(t_right, c_r);
  const double ratio_l = ratio(left.s, c_l);
  const bool left_high = model.f_s(left.s, c_l) < ratio_l;
  if (left_high || ratio_l >= sigma_right) {
    const double s_bar =
        required(line_intersections(model, sigma_right, c_l, abar).upper, "s-bar on left curve");
    return scalar_godunov_flux(model, left.s, s_bar, c_l, theta_l);
  }
  return f_left;
}

}  // namespace polyflood
