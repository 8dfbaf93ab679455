#include "polyflood/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include "polyflood/config.hpp"
#include "polyflood/errors.hpp"
#include "polyflood/experiments.hpp"
#include "polyflood/io.hpp"

namespace polyflood {

namespace {

struct Options {
  std::string model;
  std::vector<std::string> schemes;
  std::vector<std::string> h;
  std::optional<double> lambda;
  std::optional<double> t_end;
  std::string out;
  std::string preset;
  std::string config;
  // riemann
  std::vector<double> left;
  std::vector<double> right;
  int samples = 201;
  std::optional<double> xi_min;
  std::optional<double> xi_max;
  // compare
  std::vector<std::string> times;
};

class UsageError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<double> numbers(const std::vector<std::string>& items) {
  std::vector<double> v;
  for (const auto& s : items) v.push_back(parse_number(s));
  return v;
}

std::vector<SchemeKind> schemes_of(const Options& o) {
  std::vector<SchemeKind> v;
  for (const auto& s : o.schemes) v.push_back(parse_scheme(s));
  return v;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error(fmt::format("cannot write {}", path));
  os << text;
}

/// Preset or config file, with the global overrides applied.
struct Loaded {
  RunConfig config;
  const ExperimentPreset* preset = nullptr;
};

Loaded load(const Options& o) {
  if (o.preset.empty() == o.config.empty()) {
    throw UsageError("exactly one of --preset and --config is required");
  }
  Loaded l;
  if (!o.preset.empty()) {
    l.preset = &find_preset(o.preset);
    l.config = l.preset->config;
  } else {
    l.config = load_config(o.config);
  }
  if (!o.model.empty()) l.config.model = model_by_name(o.model);
  if (!o.schemes.empty()) l.config.scheme = parse_scheme(o.schemes.front());
  if (!o.h.empty()) {
    l.config.grid = grid_with_spacing(l.config.grid.x_min, l.config.grid.x_max,
                                      parse_number(o.h.front()));
  }
  if (o.lambda) l.config.lambda = *o.lambda;
  if (o.t_end) {
    l.config.t_end = *o.t_end;
    std::erase_if(l.config.snapshot_times, [&](double t) { return t > *o.t_end; });
  }
  return l;
}

void warn_cfl(const RunConfig& cfg, std::ostream& err) {
  const double m = scheme_speed_bound(cfg.scheme, cfg.model);
  if (cfg.lambda * m > 1.0) {
    fmt::print(err, "warning: lambda * M = {:.4g} exceeds 1 (M = {:.4g})\n", cfg.lambda * m, m);
  }
}

int cmd_run(const Options& o, std::ostream& out, std::ostream& err) {
  Loaded l = load(o);
  l.config.diagnostics = true;
  warn_cfl(l.config, err);
  const RunResult result = run(l.config);
  const std::string prefix = o.out.empty() ? (o.preset.empty() ? "run" : o.preset) : o.out;
  for (const auto& snap : result.snapshots) {
    const std::string path = snapshot_filename(prefix, snap.t);
    write_csv(path, snap.state, l.config.grid);
    fmt::print(out, "wrote {}\n", path);
  }
  double min_s = l.config.model.s_max();
  double max_s = 0.0;
  for (const auto& d : result.diagnostics) {
    min_s = std::min(min_s, d.min_s);
    max_s = std::max(max_s, d.max_s);
  }
  const auto& first = result.diagnostics.front();
  const auto& last = result.diagnostics.back();
  fmt::print(out, "scheme {}  cells {}  h {:.6g}  lambda {:.6g}  steps {}  t {:.6g}\n",
             to_string(l.config.scheme), l.config.grid.n_cells, l.config.grid.h(),
             l.config.lambda, result.steps, last.t);
  fmt::print(out, "s range [{:.6g}, {:.6g}]  TV(c) {:.6g} -> {:.6g}\n", min_s, max_s, first.tv_c,
             last.tv_c);
  fmt::print(out, "mass s {:.12g} -> {:.12g} (net inflow {:.6g})\n", first.mass_s, last.mass_s,
             result.net_inflow_s);
  fmt::print(out, "mass polymer {:.12g} -> {:.12g} (net inflow {:.6g})\n", first.mass_polymer,
             last.mass_polymer, result.net_inflow_polymer);
  const auto& ff = result.flux_flags;
  if (ff.um_inconsistent + ff.force_clamped_s + ff.force_degenerate_c > 0) {
    fmt::print(out, "flux flags: um_inconsistent {}  force_clamped_s {}  force_degenerate_c {}\n",
               ff.um_inconsistent, ff.force_clamped_s, ff.force_degenerate_c);
  }
  return 0;
}

int cmd_riemann(const Options& o, std::ostream& out) {
  FluxModel model = quadratic_test_model();
  State left;
  State right;
  if (!o.preset.empty()) {
    const auto& p = find_preset(o.preset);
    model = p.config.model;
    left = p.config.initial.states.front();
    right = p.config.initial.states.back();
  }
  if (!o.model.empty()) model = model_by_name(o.model);
  if (!o.left.empty()) left = {o.left[0], o.left[1]};
  if (!o.right.empty()) right = {o.right[0], o.right[1]};
  if (o.preset.empty() && (o.left.empty() || o.right.empty())) {
    throw UsageError("--left and --right (or --preset) are required");
  }
  if (o.samples < 1) throw UsageError("--samples must be positive");

  const RiemannFan fan = solve_riemann(model, left, right);
  fmt::print(out, "# case {}\n", to_string(fan.case_kind));
  fmt::print(out, "# kind,left_speed,right_speed,s_left,c_left,s_right,c_right\n");
  for (const auto& w : fan.waves) {
    fmt::print(out, "# {},{:.4f},{:.4f},{:.6g},{:.6g},{:.6g},{:.6g}\n", to_string(w.kind),
               w.left_speed, w.right_speed, w.left_state.s, w.left_state.c, w.right_state.s,
               w.right_state.c);
  }
  double lo = -1.0;
  double hi = 1.0;
  if (!fan.waves.empty()) {
    lo = fan.waves.front().left_speed;
    hi = fan.waves.back().right_speed;
    const double pad = 0.25 * std::max(hi - lo, 1.0);
    lo -= pad;
    hi += pad;
  }
  lo = o.xi_min.value_or(lo);
  hi = o.xi_max.value_or(hi);
  std::string csv = "xi,s,c\n";
  for (int k = 0; k < o.samples; ++k) {
    const double xi = o.samples == 1 ? lo : lo + (hi - lo) * k / (o.samples - 1);
    const State u = sample(fan, xi);
    csv += fmt::format("{:.17g},{:.17g},{:.17g}\n", xi, u.s, u.c);
  }
  if (o.out.empty()) {
    out << csv;
  } else {
    write_file(o.out, csv);
    fmt::print(out, "wrote {}\n", o.out);
  }
  return 0;
}

int cmd_convergence(const Options& o, std::ostream& out) {
  if (o.preset.empty()) throw UsageError("--preset is required");
  const auto& p = find_preset(o.preset);
  std::vector<SchemeKind> schemes = schemes_of(o);
  if (o.schemes.empty()) schemes = {SchemeKind::Godunov, SchemeKind::DFLU};
  const std::vector<double> hs = o.h.empty() ? p.h_ladder : numbers(o.h);
  if (hs.empty()) throw UsageError("no h values given");
  ExperimentPreset preset = p;
  if (!o.model.empty()) preset.config.model = model_by_name(o.model);
  if (o.t_end) preset.config.t_end = *o.t_end;
  const double lambda = o.lambda.value_or(p.config.lambda);

  std::vector<ErrorReport> reports;
  for (SchemeKind k : schemes) reports.push_back(convergence_study(preset, k, hs, lambda));
  out << render_table(reports);
  if (!o.out.empty()) {
    write_file(o.out + ".csv", render_csv(reports));
    fmt::print(out, "wrote {}.csv\n", o.out);
  }
  return 0;
}

int cmd_compare(const Options& o, std::ostream& out, std::ostream& err) {
  if (o.schemes.empty()) throw UsageError("compare needs at least one --scheme");
  Loaded l = load(o);
  const auto schemes = schemes_of(o);
  std::vector<double> times = o.times.empty() ? l.config.snapshot_times : numbers(o.times);
  if (times.empty()) times = {l.config.t_end};
  std::sort(times.begin(), times.end());
  const std::string prefix = o.out.empty() ? "compare" : o.out;

  // Run everything first, then write.
  std::vector<std::pair<SchemeKind, RunResult>> results;
  for (SchemeKind k : schemes) {
    RunConfig cfg = l.config;
    cfg.scheme = k;
    cfg.snapshot_times = times;
    cfg.t_end = times.back();
    warn_cfl(cfg, err);
    results.emplace_back(k, run(cfg));
  }
  std::vector<PlotPanel> panels;
  for (double t : times) panels.push_back({t, {}});
  for (const auto& [kind, result] : results) {
    for (const auto& snap : result.snapshots) {
      const auto panel = std::find_if(panels.begin(), panels.end(),
                                      [&](const PlotPanel& p) { return p.t == snap.t; });
      if (panel == panels.end()) continue;
      const std::string path =
          snapshot_filename(fmt::format("{}_{}", prefix, to_string(kind)), snap.t);
      write_csv(path, snap.state, l.config.grid);
      fmt::print(out, "wrote {}\n", path);
      panel->series.push_back(
          {std::string(to_string(kind)), std::filesystem::path(path).filename().string()});
    }
  }
  const std::string script = prefix + "_plot.gp";
  write_file(script, gnuplot_script(panels, std::filesystem::path(prefix).filename().string()));
  fmt::print(out, "wrote {}\n", script);
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Finite-volume solver for the polymer flooding system"};
  app.require_subcommand(1);
  app.set_help_flag("--help", "print help");
  Options o;
  app.add_option("--model", o.model, "quadratic_test or two_phase_gravity");
  app.add_option("--scheme", o.schemes, "dflu, godunov, um, lf, force (comma list)")
      ->delimiter(',');
  app.add_option("--h", o.h, "cell size(s), fractions allowed, e.g. 1/50,1/100")->delimiter(',');
  app.add_option("--lambda", o.lambda, "dt / h");
  app.add_option("--t-end", o.t_end, "end time");
  app.add_option("--out", o.out, "output path or prefix");
  app.add_option("--preset", o.preset, "ic1, ic2, two_phase_ivp, closed_boundary, no_polymer");
  app.add_option("--config", o.config, "INI configuration file");

  auto* run_cmd = app.add_subcommand("run", "integrate one configuration, write CSV snapshots");
  auto* riemann_cmd = app.add_subcommand("riemann", "print the exact Riemann fan and samples");
  riemann_cmd->add_option("--left", o.left, "s,c")->delimiter(',')->expected(2);
  riemann_cmd->add_option("--right", o.right, "s,c")->delimiter(',')->expected(2);
  riemann_cmd->add_option("--samples", o.samples, "number of xi samples");
  riemann_cmd->add_option("--xi-min", o.xi_min);
  riemann_cmd->add_option("--xi-max", o.xi_max);
  auto* conv_cmd = app.add_subcommand("convergence", "L1 error table over an h ladder");
  auto* cmp_cmd = app.add_subcommand("compare", "run several schemes, write CSVs and a plot script");
  cmp_cmd->add_option("--times", o.times, "snapshot times")->delimiter(',');
  for (auto* sub : {run_cmd, riemann_cmd, conv_cmd, cmp_cmd}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*run_cmd) return cmd_run(o, out, err);
    if (*riemann_cmd) return cmd_riemann(o, out);
    if (*conv_cmd) return cmd_convergence(o, out);
    if (*cmp_cmd) return cmd_compare(o, out, err);
  } catch (const UsageError& e) {
    fmt::print(err, "usage error: {}\n", e.what());
    return 2;
  } catch (const ConfigError& e) {
    fmt::print(err, "configuration error: {}\n", e.what());
    return 2;
  } catch (const NumericalError& e) {
    fmt::print(err, "error: {}\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    fmt::print(err, "error: {}\n", e.what());
    return 1;
  }
  return 2;
}

}  // namespace polyflood
