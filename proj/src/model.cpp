#include "polyflood/model.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "polyflood/errors.hpp"
#include "polyflood/roots.hpp"

namespace polyflood {

Adsorption Adsorption::linear(double k) {
  if (!(k > 0.0)) throw DomainError(fmt::format("adsorption slope must be positive, got {}", k));
  return Adsorption(k, 0.0);
}

Adsorption Adsorption::langmuir(double k, double b) {
  if (!(k > 0.0) || !(b >= 0.0)) {
    throw DomainError(fmt::format("Langmuir adsorption needs k > 0, b >= 0 (got k={}, b={})", k, b));
  }
  return Adsorption(k, b);
}

double Adsorption::value(double c) const { return k_ * c / (1.0 + b_ * c); }

double Adsorption::derivative(double c) const {
  const double d = 1.0 + b_ * c;
  return k_ / (d * d);
}

// --- two-phase ------------------------------------------------------------

double TwoPhaseGravityModel::mobility_1(double s, double c) const {
  return std::pow(s, exponent_1) / (viscosity_1 + viscosity_1_slope * c);
}

double TwoPhaseGravityModel::mobility_2(double s, double) const {
  return std::pow(1.0 - s, exponent_2) / viscosity_2;
}

double TwoPhaseGravityModel::mobility_1_ds(double s, double c) const {
  return exponent_1 * std::pow(s, exponent_1 - 1.0) /
         (viscosity_1 + viscosity_1_slope * c);
}

double TwoPhaseGravityModel::mobility_2_ds(double s, double) const {
  return -exponent_2 * std::pow(1.0 - s, exponent_2 - 1.0) / viscosity_2;
}

double TwoPhaseGravityModel::flux(double s, double c) const {
  const double l1 = mobility_1(s, c);
  const double l2 = mobility_2(s, c);
  const double total = l1 + l2;
  if (total == 0.0) return 0.0;
  return l1 / total * (q + (g1 - g2) * l2);
}

double TwoPhaseGravityModel::flux_ds(double s, double c) const {
  const double l1 = mobility_1(s, c);
  const double l2 = mobility_2(s, c);
  const double dl1 = mobility_1_ds(s, c);
  const double dl2 = mobility_2_ds(s, c);
  const double total = l1 + l2;
  if (total == 0.0) return 0.0;
  const double dg = g1 - g2;
  const double drive = q + dg * l2;
  return (dl1 * drive + l1 * dg * dl2) / total -
         l1 * drive * (dl1 + dl2) / (total * total);
}

// --- FluxModel ------------------------------------------------------------

FluxModel::FluxModel(std::string name, Function f, std::optional<Function> f_s,
                     Adsorption adsorption, double s_max, double c_max)
    : name_(std::move(name)),
      f_(std::move(f)),
      f_s_(std::move(f_s)),
      adsorption_(adsorption),
      s_max_(s_max),
      c_max_(c_max) {
  if (!(s_max_ > 0.0) || !(c_max_ > 0.0)) {
    throw DomainError(fmt::format("model '{}': s_max and c_max must be positive", name_));
  }
}

double FluxModel::f_s(double s, double c) const {
  if (f_s_) return (*f_s_)(s, c);
  const double step = 1e-6 * s_max_;
  const double lo = std::max(0.0, s - step);
  const double hi = std::min(s_max_, s + step);
  return (f_(hi, c) - f_(lo, c)) / (hi - lo);
}

bool FluxModel::admissible(double s, double c) const {
  return s >= 0.0 && s <= s_max_ && c >= 0.0 && c <= c_max_;
}

FluxModel quadratic_test_model() {
  FluxModel model(
      "quadratic_test",
      [](double s, double c) { return s * (4.0 - s) / (1.0 + c); },
      [](double s, double c) { return (4.0 - 2.0 * s) / (1.0 + c); },
      Adsorption::linear(1.0), 4.0, 1.0);
  model.set_argmax([](double) { return 2.0; });
  // |f_s| peaks at 4 (s = 0 or 4, c = 0); f / (s + 1) stays below 1.53.
  model.set_speed_bound(4.0);
  return model;
}

FluxModel two_phase_gravity_model(const TwoPhaseGravityModel& params,
                                  Adsorption adsorption) {
  FluxModel model(
      "two_phase_gravity",
      [params](double s, double c) { return params.flux(s, c); },
      [params](double s, double c) { return params.flux_ds(s, c); },
      adsorption, 1.0, 1.0);
  model.set_two_phase(params);
  return model;
}

// --- checked operations ---------------------------------------------------

namespace {

void check_s(const FluxModel& model, double s) {
  if (!(s >= 0.0 && s <= model.s_max())) {
    throw DomainError(fmt::format("saturation s={} outside [0, {}]", s, model.s_max()));
  }
}

void check_c(const FluxModel& model, double c) {
  if (!(c >= 0.0 && c <= model.c_max())) {
    throw DomainError(fmt::format("concentration c={} outside [0, {}]", c, model.c_max()));
  }
}

}  // namespace

double eval_f(const FluxModel& model, double s, double c) {
  check_s(model, s);
  check_c(model, c);
  return model.f(s, c);
}

double secant_adsorption(const FluxModel& model, double c, double c_ref) {
  check_c(model, c);
  check_c(model, c_ref);
  if (c == c_ref) return model.a_prime(c);
  return (model.a(c) - model.a(c_ref)) / (c - c_ref);
}

double argmax_theta(const FluxModel& model, double c) {
  check_c(model, c);
  if (const auto& closed = model.argmax_closed_form()) return closed(c);
  const double smax = model.s_max();
  const double theta = roots::argmax_unimodal(
      [&](double s) { return model.f(s, c); },
      [&](double s) { return model.f_s(s, c); }, 0.0, smax);
  if (!std::isfinite(theta)) {
    throw ModelInvalidError(fmt::format("model '{}': no maximum of f(., {}) found", model.name(), c));
  }
  return theta;
}

Eigenvalues eigenvalues(const FluxModel& model, double s, double c) {
  check_s(model, s);
  check_c(model, c);
  const double denom = s + model.a_prime(c);
  if (denom == 0.0) {
    throw DomainError(fmt::format("s + a'(c) vanishes at s={}, c={}", s, c));
  }
  return {model.f_s(s, c), model.f(s, c) / denom};
}

double cfl_bound(const FluxModel& model, int ns, int nc) {
  if (auto exact = model.speed_bound_closed_form()) return *exact;
  double bound = 0.0;
  for (int j = 0; j <= nc; ++j) {
    const double c = model.c_max() * j / nc;
    const double ap = model.a_prime(c);
    for (int i = 0; i <= ns; ++i) {
      const double s = model.s_max() * i / ns;
      bound = std::max(bound, std::abs(model.f_s(s, c)));
      if (s + ap > 0.0) bound = std::max(bound, model.f(s, c) / (s + ap));
    }
  }
  return 1.01 * bound;
}

std::vector<std::string> validate_model(const FluxModel& model, int ns, int nc) {
  std::vector<std::string> issues;
  const double smax = model.s_max();
  const double scale = std::max(1.0, std::abs(model.f(0.5 * smax, 0.0)));
  for (int j = 0; j <= nc; ++j) {
    const double c = model.c_max() * j / nc;
    if (std::abs(model.f(0.0, c)) > 1e-12 * scale) {
      issues.push_back(fmt::format("f(0, {}) = {} is not zero", c, model.f(0.0, c)));
    }
    if (std::abs(model.f(smax, c)) > 1e-12 * scale) {
      issues.push_back(fmt::format("f(s_max, {}) = {} is not zero", c, model.f(smax, c)));
    }
    int rises_after_fall = 0;
    bool falling = false;
    double prev = model.f(0.0, c);
    for (int i = 1; i <= ns; ++i) {
      const double s = smax * i / ns;
      const double v = model.f(s, c);
      if (v < -1e-14 * scale) {
        issues.push_back(fmt::format("f({}, {}) = {} is negative", s, c, v));
      }
      if (v < prev) falling = true;
      if (falling && v > prev + 1e-14 * scale) ++rises_after_fall;
      prev = v;

      if (i < ns && j < nc) {
        const double dc = model.c_max() / nc;
        if (!(model.f(s, c + dc) < v)) {
          issues.push_back(fmt::format("f not decreasing in c at s={}, c={}", s, c));
        }
      }
      if (i < ns) {
        const double h = 1e-6 * smax;
        const double fd = (model.f(s + h, c) - model.f(s - h, c)) / (2.0 * h);
        const double an = model.f_s(s, c);
        if (std::abs(fd - an) > 1e-6 * std::max(1.0, std::abs(fd))) {
          issues.push_back(fmt::format("f_s({}, {}) = {} disagrees with finite difference {}", s, c, an, fd));
        }
      }
    }
    if (rises_after_fall > 0) {
      issues.push_back(fmt::format("f(., {}) is not unimodal", c));
    }
  }
  if (model.a(0.0) != 0.0) issues.push_back("a(0) is not zero");
  double prev_slope = model.a_prime(0.0);
  for (int j = 0; j <= nc; ++j) {
    const double c = model.c_max() * j / nc;
    const double slope = model.a_prime(c);
    if (!(slope > 0.0)) issues.push_back(fmt::format("a'({}) = {} is not positive", c, slope));
    if (slope > prev_slope + 1e-14) {
      issues.push_back(fmt::format("a' increases at c={}", c));
    }
    prev_slope = slope;
  }
  return issues;
}

}  // namespace polyflood
