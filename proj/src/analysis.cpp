#include "polyflood/analysis.hpp"

#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

#include "polyflood/errors.hpp"

namespace polyflood {

L1Error l1_error(const SolverState& state, const Grid1D& grid, const RiemannFan& exact,
                 double x0, double t) {
  if (state.size() != static_cast<std::size_t>(grid.n_cells)) {
    throw DomainError(fmt::format("state has {} cells, grid has {}", state.size(), grid.n_cells));
  }
  const double h = grid.h();
  L1Error err;
  for (int i = 0; i < grid.n_cells; ++i) {
    const double x = grid.center(i);
    State u;
    if (t > 0.0) {
      u = sample(exact, (x - x0) / t);
    } else {
      u = x < x0 ? exact.left : exact.right;
    }
    err.s += h * std::abs(state.s[i] - u.s);
    err.c += h * std::abs(state.c[i] - u.c);
  }
  return err;
}

std::vector<std::optional<double>> convergence_rates(std::span<const double> errors) {
  std::vector<std::optional<double>> rates(errors.size());
  for (std::size_t k = 1; k < errors.size(); ++k) {
    if (errors[k - 1] > 0.0 && errors[k] > 0.0) {
      rates[k] = std::log(errors[k - 1] / errors[k]) / std::log(2.0);
    }
  }
  return rates;
}

double total_variation(std::span<const double> values) {
  double tv = 0.0;
  for (std::size_t i = 1; i < values.size(); ++i) tv += std::abs(values[i] - values[i - 1]);
  return tv;
}

std::pair<double, double> mass_totals(const SolverState& state, const FluxModel& model,
                                      double h) {
  double ms = 0.0;
  double mp = 0.0;
  for (std::size_t i = 0; i < state.size(); ++i) {
    ms += state.s[i];
    mp += state.c[i] * state.s[i] + model.a(state.c[i]);
  }
  return {ms * h, mp * h};
}

void ErrorReport::compute_rates() {
  std::vector<double> es;
  std::vector<double> ec;
  for (const auto& r : rows) {
    es.push_back(r.error_s);
    ec.push_back(r.error_c);
  }
  const auto rs = convergence_rates(es);
  const auto rc = convergence_rates(ec);
  for (std::size_t k = 0; k < rows.size(); ++k) {
    rows[k].rate_s = rs[k];
    rows[k].rate_c = rc[k];
  }
}

namespace {

std::string fmt_rate(const std::optional<double>& r) {
  return r ? fmt::format("{:.4f}", *r) : std::string("-");
}

std::string fmt_h(double h) {
  const double inv = 1.0 / h;
  if (std::abs(inv - std::round(inv)) < 1e-9 * inv) return fmt::format("1/{}", std::lround(inv));
  return fmt::format("{:.6g}", h);
}

}  // namespace

std::string render_table(const std::vector<ErrorReport>& reports) {
  if (reports.empty()) return {};
  const std::size_t n = reports.front().rows.size();
  for (const auto& r : reports) {
    if (r.rows.size() != n) throw std::invalid_argument("reports have different h ladders");
  }
  std::string out;
  for (const char* quantity : {"s", "c"}) {
    const bool is_s = quantity[0] == 's';
    out += fmt::format("L1 error in {}\n", quantity);
    out += fmt::format("{:>8}", "h");
    for (const auto& r : reports) out += fmt::format(" | {:>12} {:>8}", r.scheme, "alpha");
    out += '\n';
    for (std::size_t k = 0; k < n; ++k) {
      out += fmt::format("{:>8}", fmt_h(reports.front().rows[k].h));
      for (const auto& r : reports) {
        const auto& row = r.rows[k];
        out += fmt::format(" | {:>12.5e} {:>8}", is_s ? row.error_s : row.error_c,
                           fmt_rate(is_s ? row.rate_s : row.rate_c));
      }
      out += '\n';
    }
    out += '\n';
  }
  return out;
}

std::string render_csv(const std::vector<ErrorReport>& reports) {
  std::string out = "scheme,h,error_s,rate_s,error_c,rate_c\n";
  auto opt = [](const std::optional<double>& r) {
    return r ? fmt::format("{:.17g}", *r) : std::string();
  };
  for (const auto& r : reports) {
    for (const auto& row : r.rows) {
      out += fmt::format("{},{:.17g},{:.17g},{},{:.17g},{}\n", r.scheme, row.h, row.error_s,
                         opt(row.rate_s), row.error_c, opt(row.rate_c));
    }
  }
  return out;
}

}  // namespace polyflood
