#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace polyflood {

/// Saturation / concentration pair.
struct State {
  double s = 0.0;
  double c = 0.0;

  friend bool operator==(const State&, const State&) = default;
};

/// Adsorption isotherm a(c). Linear a = k c, or Langmuir a = k c / (1 + b c).
class Adsorption {
 public:
  static Adsorption linear(double k);
  static Adsorption langmuir(double k, double b);

  double value(double c) const;
  double derivative(double c) const;

  bool is_linear() const { return b_ == 0.0; }
  double k() const { return k_; }
  double b() const { return b_; }

 private:
  Adsorption(double k, double b) : k_(k), b_(b) {}
  double k_;
  double b_;
};

/// Two-phase flux with gravity, f = l1 / (l1 + l2) [q + (g1 - g2) l2].
///
/// Mobilities: l1(s, c) = s^n1 / (mu1 + mu1_c c), l2(s) = (1 - s)^n2 / mu2.
/// The defaults reproduce l1 = s^2 / (0.5 + c), l2 = (1 - s)^2, g1 = 2,
/// g2 = 1, q = 0.
struct TwoPhaseGravityModel {
  double exponent_1 = 2.0;
  double exponent_2 = 2.0;
  double viscosity_1 = 0.5;
  double viscosity_1_slope = 1.0;
  double viscosity_2 = 1.0;
  double g1 = 2.0;
  double g2 = 1.0;
  double q = 0.0;

  double mobility_1(double s, double c) const;
  double mobility_2(double s, double c) const;
  double mobility_1_ds(double s, double c) const;
  double mobility_2_ds(double s, double c) const;

  double flux(double s, double c) const;
  double flux_ds(double s, double c) const;
};

/// The pair (f, a) describing one polymer-flooding system.
///
/// Member evaluators are unchecked; the free functions below (eval_f,
/// eigenvalues, ...) validate their arguments.
class FluxModel {
 public:
  using Function = std::function<double(double, double)>;

  FluxModel(std::string name, Function f, std::optional<Function> f_s,
            Adsorption adsorption, double s_max, double c_max = 1.0);

  const std::string& name() const { return name_; }
  double s_max() const { return s_max_; }
  double c_max() const { return c_max_; }
  const Adsorption& adsorption() const { return adsorption_; }

  double f(double s, double c) const { return f_(s, c); }
  /// Analytic when supplied, otherwise a central difference with step
  /// 1e-6 * s_max (one-sided at the ends of the saturation interval).
  double f_s(double s, double c) const;
  double a(double c) const { return adsorption_.value(c); }
  double a_prime(double c) const { return adsorption_.derivative(c); }

  bool has_analytic_derivative() const { return f_s_.has_value(); }
  const std::optional<TwoPhaseGravityModel>& two_phase() const {
    return two_phase_;
  }

  /// Optional closed forms used instead of numerical searches.
  void set_argmax(std::function<double(double)> theta) {
    theta_ = std::move(theta);
  }
  void set_speed_bound(double bound) { speed_bound_ = bound; }
  void set_two_phase(TwoPhaseGravityModel tp) { two_phase_ = tp; }

  const std::function<double(double)>& argmax_closed_form() const {
    return theta_;
  }
  std::optional<double> speed_bound_closed_form() const {
    return speed_bound_;
  }

  bool admissible(double s, double c) const;

 private:
  std::string name_;
  Function f_;
  std::optional<Function> f_s_;
  Adsorption adsorption_;
  double s_max_;
  double c_max_;
  std::function<double(double)> theta_;
  std::optional<double> speed_bound_;
  std::optional<TwoPhaseGravityModel> two_phase_;
};

/// f(s, c) = s (4 - s) / (1 + c), a(c) = c, s in [0, 4].
FluxModel quadratic_test_model();

/// Flux induced by `params`; adsorption defaults to a(c) = 0.25 c.
FluxModel two_phase_gravity_model(
    const TwoPhaseGravityModel& params = {},
    Adsorption adsorption = Adsorption::linear(0.25));

// --- checked operations -----------------------------------------------------

/// f(s, c); throws DomainError naming the coordinate outside the rectangle.
double eval_f(const FluxModel& model, double s, double c);

/// Secant slope (a(c) - a(c_ref)) / (c - c_ref), or a'(c) when c == c_ref.
double secant_adsorption(const FluxModel& model, double c, double c_ref);

/// Unique interior maximizer theta(c) of f(., c).
double argmax_theta(const FluxModel& model, double c);

struct Eigenvalues {
  double lambda_s;
  double lambda_c;
};

/// lambda_s = f_s, lambda_c = f / (s + a'(c)).
Eigenvalues eigenvalues(const FluxModel& model, double s, double c);

/// Upper bound M of |lambda_s| and lambda_c over the admissible rectangle.
/// Uses the model's closed form when present; otherwise samples a
/// `ns` x `nc` grid and inflates the maximum by 1%.
double cfl_bound(const FluxModel& model, int ns = 2048, int nc = 64);

/// Dense-grid check of the structural hypotheses on (f, a). Returns one
/// message per violated property; an empty list means no violation found.
std::vector<std::string> validate_model(const FluxModel& model, int ns = 257,
                                        int nc = 17);

}  // namespace polyflood
