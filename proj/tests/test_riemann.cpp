#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "polyflood/analysis.hpp"
#include "polyflood/errors.hpp"
#include "polyflood/riemann.hpp"
#include "polyflood/solver.hpp"

using namespace polyflood;
using doctest::Approx;

namespace {

const State kIc1L{2.5, 0.5};
const State kIc1R{1.0, 0.0};
const State kIc2L{2.3, 0.5};
const State kIc2R{3.2, 0.0};

double plain_bisect(auto g, double lo, double hi) {
  const bool lo_positive = g(lo) > 0;
  for (int k = 0; k < 200; ++k) {
    const double mid = 0.5 * (lo + hi);
    ((g(mid) > 0) == lo_positive ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

State random_state(std::mt19937& rng, const FluxModel& m) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  return {m.s_max() * u(rng), m.c_max() * u(rng)};
}

}  // namespace

TEST_CASE("s* for the quadratic flux") {
  const FluxModel q = quadratic_test_model();
  CHECK(coincidence_s_star(q, 0.5, 0.0) == Approx(std::sqrt(5.0) - 1.0).epsilon(1e-11));
  CHECK(std::abs(coincidence_s_star(q, 0.5, 0.0) - 1.236) < 1e-3);
  // abar = a' = 1: f_s (s + 1) = f, solved independently.
  const double oracle = plain_bisect(
      [&](double s) { return q.f_s(s, 0.5) * (s + 1.0) - q.f(s, 0.5); }, 1e-9, 2.0);
  CHECK(coincidence_s_star(q, 0.5, 0.5) == Approx(oracle).epsilon(1e-11));

  const FluxModel tp = two_phase_gravity_model();
  for (double cl : {0.2, 0.9}) {
    CHECK(coincidence_s_star(tp, cl, 0.1) < argmax_theta(tp, cl));
  }
}

TEST_CASE("secant intersections") {
  const FluxModel q = quadratic_test_model();
  const auto ic1 = secant_intersections(q, 1.0186, 0.0, 0.5);
  REQUIRE(ic1.lower);
  REQUIRE(ic1.upper);
  CHECK(std::abs(*ic1.lower - 0.394) < 1e-3);
  CHECK(std::abs(*ic1.upper - 2.587) < 1e-3);

  const auto zero = secant_intersections(q, 0.0, 0.0, 0.5);
  CHECK(*zero.lower == Approx(0.0));
  CHECK(*zero.upper == Approx(4.0));

  const auto ic2 = secant_intersections(q, 0.6095, 0.5, 0.0);
  REQUIRE(ic2.upper);
  CHECK(std::abs(*ic2.upper - 2.7536) < 1e-3);

  CHECK_FALSE(secant_intersections(q, 50.0, 0.0, 0.5).upper.has_value());
  CHECK_THROWS_AS(secant_intersections(q, -1.0, 0.0, 0.5), DomainError);
}

TEST_CASE("scalar s-waves") {
  const FluxModel q = quadratic_test_model();
  CHECK(scalar_s_wave(q, 1.0, 1.0, 0.0).empty());

  const auto shock = scalar_s_wave(q, 0.394, 1.0, 0.0);
  REQUIRE(shock.size() == 1);
  CHECK(shock[0].kind == WaveKind::SShock);
  CHECK(std::abs(shock[0].left_speed - 2.606) < 1e-3);

  const auto fan = scalar_s_wave(q, 2.5, 1.236, 0.5);
  REQUIRE(fan.size() == 1);
  CHECK(fan[0].kind == WaveKind::SRarefaction);
  CHECK(fan[0].left_speed == Approx(-2.0 / 3.0));
  CHECK(std::abs(fan[0].right_speed - 1.018) < 1e-3);
}

TEST_CASE("scalar s-wave on a non-concave flux builds a shock followed by a rarefaction") {
  // Buckley-Leverett type S-shaped flux: s^2 / (s^2 + (1 - s)^2).
  const FluxModel bl(
      "bl", [](double s, double) { return s * s / (s * s + (1 - s) * (1 - s)); }, std::nullopt,
      Adsorption::linear(1.0), 1.0);
  const auto waves = scalar_s_wave(bl, 1.0, 0.0, 0.0);
  REQUIRE(waves.size() == 2);
  CHECK(waves[0].kind == WaveKind::SRarefaction);
  CHECK(waves[1].kind == WaveKind::SShock);
  // Welge tangent point of this flux: s = 1/sqrt(2).
  CHECK(waves[1].left_state.s == Approx(1.0 / std::sqrt(2.0)).epsilon(1e-8));
  CHECK(waves[0].right_speed == Approx(waves[1].left_speed).epsilon(1e-8));
}

TEST_CASE("IC1 fan") {
  const RiemannFan fan = solve_riemann(quadratic_test_model(), kIc1L, kIc1R);
  CHECK(fan.case_kind == RiemannCase::Case2a);
  REQUIRE(fan.waves.size() == 3);
  CHECK(fan.waves[0].kind == WaveKind::SRarefaction);
  CHECK(fan.waves[1].kind == WaveKind::CContact);
  CHECK(fan.waves[2].kind == WaveKind::SShock);
  CHECK(std::abs(fan.waves[0].left_speed + 2.0 / 3.0) < 1e-3);
  CHECK(std::abs(fan.waves[1].left_speed - 1.018) < 1e-3);
  CHECK(std::abs(fan.waves[2].left_speed - 2.606) < 1e-3);
  CHECK(std::abs(*fan.s_star - 1.236) < 1e-3);
  CHECK(std::abs(*fan.threshold_a - 2.587) < 1e-3);
  CHECK(std::abs(*fan.s_bar - 0.394) < 1e-3);
}

TEST_CASE("IC2 fan") {
  const RiemannFan fan = solve_riemann(quadratic_test_model(), kIc2L, kIc2R);
  CHECK(fan.case_kind == RiemannCase::Case2b);
  REQUIRE(fan.waves.size() == 2);
  CHECK(fan.waves[0].kind == WaveKind::SShock);
  CHECK(fan.waves[1].kind == WaveKind::CContact);
  CHECK(std::abs(fan.waves[0].left_speed + 0.702) < 1e-3);
  CHECK(std::abs(fan.waves[1].left_speed - 0.609) < 1e-3);
  CHECK(std::abs(*fan.s_bar - 2.7536) < 1e-3);
}

TEST_CASE("equal states give an empty fan") {
  const RiemannFan fan = solve_riemann(quadratic_test_model(), {1.0, 0.3}, {1.0, 0.3});
  CHECK(fan.waves.empty());
  CHECK(sample(fan, 0.7) == State{1.0, 0.3});
}

TEST_CASE("non-admissible data is rejected") {
  CHECK_THROWS_AS(solve_riemann(quadratic_test_model(), {5.0, 0.0}, {1.0, 0.0}), DomainError);
}

TEST_CASE("sampling the IC1 fan") {
  const RiemannFan fan = solve_riemann(quadratic_test_model(), kIc1L, kIc1R);
  const State at2 = sample(fan, 2.0);
  CHECK(std::abs(at2.s - 0.394) < 1e-3);
  CHECK(at2.c == 0.0);
  // (4 - 2 s) / 1.5 = 0
  const State at0 = sample(fan, 0.0);
  CHECK(at0.s == Approx(2.0).epsilon(1e-10));
  CHECK(at0.c == 0.5);
  CHECK(sample(fan, -10.0) == kIc1L);
  CHECK(sample(fan, 10.0) == kIc1R);
  // Discontinuity moving exactly at xi: right state.
  CHECK(sample(fan, fan.waves[2].left_speed) == kIc1R);
}

TEST_CASE("Godunov interface flux examples") {
  const FluxModel q = quadratic_test_model();
  CHECK(godunov_interface_flux(q, kIc1L, kIc1R) == Approx(8.0 / 3.0));
  CHECK(godunov_interface_flux(q, kIc2L, kIc2R) == Approx(q.f(2.7536, 0.5)).epsilon(1e-4));
  CHECK(std::abs(godunov_interface_flux(q, kIc2L, kIc2R) - 2.2882) < 1e-3);
  CHECK(godunov_interface_flux(q, {1.0, 0.2}, {1.0, 0.2}) == Approx(q.f(1.0, 0.2)));
}

TEST_CASE("Godunov flux with s_L above s-bar above theta (otherwise branch)") {
  // Exact value is the maximum of f_L on [s-bar, s_L], i.e. f_L(s-bar).
  const FluxModel q = quadratic_test_model();
  const State left{3.95, 0.5};
  const State right{3.9, 0.0};
  const RiemannFan fan = solve_riemann(q, left, right);
  const State at0 = sample(fan, 0.0);
  CHECK(godunov_interface_flux(q, left, right) == Approx(q.f(at0.s, at0.c)).epsilon(1e-10));
}

TEST_CASE("random fans satisfy the jump conditions and ordering") {
  std::mt19937 rng(1234);
  for (const FluxModel& m : {quadratic_test_model(), two_phase_gravity_model()}) {
    int counts[10] = {};
    const double scale = std::max(1.0, cfl_bound(m));
    for (int trial = 0; trial < 10000; ++trial) {
      const State l = random_state(rng, m);
      const State r = random_state(rng, m);
      const RiemannFan fan = solve_riemann(m, l, r);
      INFO(m.name(), " ", to_string(fan.case_kind), " L=(", l.s, ",", l.c, ") R=(", r.s, ",", r.c, ")");
      ++counts[static_cast<int>(fan.case_kind)];
      REQUIRE(!fan.waves.empty());
      CHECK(fan.waves.front().left_state == l);
      CHECK(fan.waves.back().right_state == r);
      for (std::size_t k = 0; k < fan.waves.size(); ++k) {
        const Wave& w = fan.waves[k];
        CHECK(w.left_speed <= w.right_speed + 1e-10 * scale);
        if (k + 1 < fan.waves.size()) {
          CHECK(fan.waves[k + 1].left_state == w.right_state);
          CHECK(w.right_speed <= fan.waves[k + 1].left_speed + 1e-10 * scale);
        }
        const State a = w.left_state;
        const State b = w.right_state;
        switch (w.kind) {
          case WaveKind::CContact: {
            const double abar = secant_adsorption(m, b.c, a.c);
            CHECK(a.c != b.c);
            CHECK(std::abs(m.f(a.s, a.c) / (a.s + abar) - w.left_speed) < 1e-9);
            CHECK(std::abs(m.f(b.s, b.c) / (b.s + abar) - w.left_speed) < 1e-9);
            break;
          }
          case WaveKind::SShock:
            CHECK(a.c == b.c);
            CHECK(std::abs((m.f(b.s, b.c) - m.f(a.s, a.c)) / (b.s - a.s) - w.left_speed) < 1e-9);
            break;
          case WaveKind::SRarefaction:
            CHECK(a.c == b.c);
            CHECK(w.left_speed == Approx(m.f_s(a.s, a.c)));
            CHECK(w.right_speed == Approx(m.f_s(b.s, b.c)));
            break;
        }
      }
    }
    for (RiemannCase rc : {RiemannCase::Case1a, RiemannCase::Case1b, RiemannCase::Case2a,
                           RiemannCase::Case2b, RiemannCase::Mirror1a, RiemannCase::Mirror1b,
                           RiemannCase::Mirror2a, RiemannCase::Mirror2b}) {
      INFO(m.name(), " ", to_string(rc));
      CHECK(counts[static_cast<int>(rc)] > 0);
    }
  }
}

TEST_CASE("sample is constant between consecutive wave speeds") {
  std::mt19937 rng(99);
  const FluxModel q = quadratic_test_model();
  for (int trial = 0; trial < 500; ++trial) {
    const RiemannFan fan = solve_riemann(q, random_state(rng, q), random_state(rng, q));
    for (std::size_t k = 0; k + 1 < fan.waves.size(); ++k) {
      const double a = fan.waves[k].right_speed;
      const double b = fan.waves[k + 1].left_speed;
      if (b - a < 1e-6) continue;
      const State u1 = sample(fan, a + 0.25 * (b - a));
      const State u2 = sample(fan, a + 0.75 * (b - a));
      CHECK(u1 == u2);
      CHECK(u1 == fan.waves[k].right_state);
    }
  }
}

TEST_CASE("compact Godunov formula agrees with the fan sampled at x/t = 0") {
  std::mt19937 rng(2024);
  for (const FluxModel& m : {quadratic_test_model(), two_phase_gravity_model()}) {
    for (int trial = 0; trial < 10000; ++trial) {
      const State l = random_state(rng, m);
      const State r = random_state(rng, m);
      const RiemannFan fan = solve_riemann(m, l, r);
      const bool speed_at_zero = std::any_of(fan.waves.begin(), fan.waves.end(), [](const Wave& w) {
        return std::abs(w.left_speed) < 1e-9 || std::abs(w.right_speed) < 1e-9;
      });
      if (speed_at_zero) continue;
      const State u = sample(fan, 0.0);
      INFO(m.name(), " ", to_string(fan.case_kind), " L=(", l.s, ",", l.c, ") R=(", r.s, ",", r.c, ")");
      CHECK(godunov_interface_flux(m, l, r) == Approx(m.f(u.s, u.c)).epsilon(1e-9).scale(1.0));
    }
  }
}

TEST_CASE("equal concentrations: Godunov flux matches a brute-force min/max") {
  std::mt19937 rng(5);
  for (const FluxModel& m : {quadratic_test_model(), two_phase_gravity_model()}) {
    for (int trial = 0; trial < 2000; ++trial) {
      const State l = random_state(rng, m);
      const State r{random_state(rng, m).s, l.c};
      const double lo = std::min(l.s, r.s);
      const double hi = std::max(l.s, r.s);
      double mn = 1e300;
      double mx = -1e300;
      for (int i = 0; i < 200; ++i) {
        const double v = m.f(lo + (hi - lo) * i / 199.0, l.c);
        mn = std::min(mn, v);
        mx = std::max(mx, v);
      }
      const double oracle = l.s <= r.s ? mn : mx;
      // The grid maximum undershoots an interior peak by O(grid^-2).
      CHECK(std::abs(godunov_interface_flux(m, l, r) - oracle) < 1e-4 * std::max(1.0, oracle));
      if (l.s <= r.s) CHECK(godunov_interface_flux(m, l, r) == Approx(oracle).epsilon(1e-12));
    }
  }
}

TEST_CASE("constructed fans agree with a fine-grid finite-volume solution") {
  // The finite-volume run does not use the Riemann solver; its L1 distance to
  // the sampled fan must shrink under refinement for every construction.
  struct Probe {
    FluxModel model;
    State left;
    State right;
    RiemannCase expected;
  };
  const FluxModel q = quadratic_test_model();
  const FluxModel tp = two_phase_gravity_model();
  const std::vector<Probe> probes = {
      {q, {0.5, 0.8}, {1.0, 0.1}, RiemannCase::Case1a},
      {q, {0.5, 0.8}, {3.9, 0.1}, RiemannCase::Case1b},
      {q, kIc1L, kIc1R, RiemannCase::Case2a},
      {q, kIc2L, kIc2R, RiemannCase::Case2b},
      {q, {0.822, 0.100}, {1.933, 0.614}, RiemannCase::Mirror1a},
      {q, {0.223, 0.244}, {1.955, 0.950}, RiemannCase::Mirror1b},
      {q, {2.181, 0.310}, {1.166, 0.921}, RiemannCase::Mirror2a},
      {q, {0.355, 0.107}, {1.013, 0.340}, RiemannCase::Mirror2b},
      {tp, {0.645, 0.367}, {0.856, 0.772}, RiemannCase::Mirror1a},
      {tp, {0.103, 0.172}, {0.540, 0.485}, RiemannCase::Mirror1b},
      {tp, {0.565, 0.666}, {0.212, 0.890}, RiemannCase::Mirror2a},
      {tp, {0.183, 0.164}, {0.337, 0.483}, RiemannCase::Mirror2b},
  };
  for (const auto& p : probes) {
    const RiemannFan fan = solve_riemann(p.model, p.left, p.right);
    INFO(p.model.name(), " ", to_string(p.expected));
    REQUIRE(fan.case_kind == p.expected);
    const double m = cfl_bound(p.model);
    const double t = 0.5 / m;
    std::vector<double> errors;
    for (int n : {200, 800}) {
      RunConfig cfg;
      cfg.model = p.model;
      cfg.grid = {0.0, 1.0, n};
      cfg.lambda = 0.9 / m;
      cfg.t_end = t;
      cfg.boundary = Dirichlet{p.left, p.right};
      cfg.initial = InitialCondition::riemann(0.5, p.left, p.right);
      const auto e = l1_error(run(cfg).snapshots.back().state, cfg.grid, fan, 0.5, t);
      errors.push_back(e.s + e.c);
    }
    CHECK(errors[1] < 0.75 * errors[0]);
    CHECK(errors[1] < 0.02 * p.model.s_max());
  }
}
