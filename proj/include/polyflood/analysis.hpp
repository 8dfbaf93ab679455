#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "polyflood/riemann.hpp"
#include "polyflood/solver.hpp"

namespace polyflood {

struct L1Error {
  double s = 0.0;
  double c = 0.0;
};

/// Sum of h |u_i - u(x_i, t)| with the exact fan sampled at cell centers
/// on the ray (x_i - x0) / t. At t = 0 the Riemann data itself is used.
L1Error l1_error(const SolverState& state, const Grid1D& grid,
                 const RiemannFan& exact, double x0, double t);

/// alpha_k = log2(e_{k-1} / e_k); the first entry is always empty, as is any
/// entry touching a zero (or non-positive) error.
std::vector<std::optional<double>> convergence_rates(std::span<const double> errors);

double total_variation(std::span<const double> values);

/// (sum s_i h, sum (c_i s_i + a(c_i)) h).
std::pair<double, double> mass_totals(const SolverState& state,
                                      const FluxModel& model, double h);

struct ErrorRow {
  double h;
  double error_s;
  double error_c;
  std::optional<double> rate_s;
  std::optional<double> rate_c;
};

/// Convergence table for one scheme.
struct ErrorReport {
  std::string scheme;
  std::vector<ErrorRow> rows;

  /// Fills the rate columns from the error columns.
  void compute_rates();
};

/// Side-by-side plain-text table with one column group per report. All
/// reports must share the same h ladder.
std::string render_table(const std::vector<ErrorReport>& reports);
/// Long-format CSV: scheme,h,error_s,rate_s,error_c,rate_c.
std::string render_csv(const std::vector<ErrorReport>& reports);

}  // namespace polyflood
