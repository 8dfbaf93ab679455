#pragma once

#include <string>
#include <vector>

#include "polyflood/solver.hpp"

namespace polyflood {

struct ProfileRow {
  double x;
  double s;
  double c;
};

/// `x,s,c` header and one row per cell, 17 significant digits.
std::string format_csv(const SolverState& state, const Grid1D& grid);
void write_csv(const std::string& path, const SolverState& state, const Grid1D& grid);
/// Throws ConfigError naming the offending line.
std::vector<ProfileRow> read_csv(const std::string& path);

/// `<prefix>_t<time>.csv`, time in shortest round-trip form.
std::string snapshot_filename(const std::string& prefix, double t);

/// One curve of an overlay plot.
struct PlotSeries {
  std::string title;
  std::string csv;  ///< path relative to the script
};

/// Panel per snapshot time and field.
struct PlotPanel {
  double t;
  std::vector<PlotSeries> series;
};

/// Gnuplot script drawing s and c profiles for each panel into PNG files
/// named after `image_prefix`.
std::string gnuplot_script(const std::vector<PlotPanel>& panels,
                           const std::string& image_prefix);

}  // namespace polyflood
