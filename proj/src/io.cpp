#include "polyflood/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "polyflood/errors.hpp"

namespace polyflood {

std::string format_csv(const SolverState& state, const Grid1D& grid) {
  std::string out = "x,s,c\n";
  for (std::size_t i = 0; i < state.size(); ++i) {
    out += fmt::format("{:.17g},{:.17g},{:.17g}\n", grid.center(static_cast<int>(i)), state.s[i],
                       state.c[i]);
  }
  return out;
}

void write_csv(const std::string& path, const SolverState& state, const Grid1D& grid) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error(fmt::format("cannot write {}", path));
  os << format_csv(state, grid);
  if (!os) throw std::runtime_error(fmt::format("write to {} failed", path));
}

namespace {

double parse_field(std::string_view text, const std::string& path, int line) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw ConfigError(fmt::format("{}:{}: bad number '{}'", path, line, text));
  }
  return v;
}

}  // namespace

std::vector<ProfileRow> read_csv(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError(fmt::format("cannot open {}", path));
  std::string line;
  if (!std::getline(is, line) || line != "x,s,c") {
    throw ConfigError(fmt::format("{}:1: expected header 'x,s,c'", path));
  }
  std::vector<ProfileRow> rows;
  int n = 1;
  while (std::getline(is, line)) {
    ++n;
    if (line.empty()) continue;
    const auto a = line.find(',');
    const auto b = a == std::string::npos ? a : line.find(',', a + 1);
    if (b == std::string::npos) throw ConfigError(fmt::format("{}:{}: expected 3 fields", path, n));
    const std::string_view sv(line);
    rows.push_back({parse_field(sv.substr(0, a), path, n),
                    parse_field(sv.substr(a + 1, b - a - 1), path, n),
                    parse_field(sv.substr(b + 1), path, n)});
  }
  return rows;
}

std::string snapshot_filename(const std::string& prefix, double t) {
  return fmt::format("{}_t{}.csv", prefix, t);
}

std::string gnuplot_script(const std::vector<PlotPanel>& panels, const std::string& image_prefix) {
  std::ostringstream os;
  os << "set datafile separator ','\n"
     << "set terminal pngcairo size 900,600\n"
     << "set key outside right\n"
     << "set xlabel 'x'\n";
  for (const auto& panel : panels) {
    for (const auto& [field, column] : {std::pair{"s", 2}, std::pair{"c", 3}}) {
      os << fmt::format("\nset output '{}_{}_t{}.png'\n", image_prefix, field, panel.t);
      os << fmt::format("set title '{} at t = {}'\n", field, panel.t);
      os << fmt::format("set ylabel '{}'\n", field);
      os << "plot ";
      for (std::size_t k = 0; k < panel.series.size(); ++k) {
        const auto& s = panel.series[k];
        os << fmt::format("{}'{}' every ::1 using 1:{} with lines title '{}'",
                          k ? ", \\\n     " : "", s.csv, column, s.title);
      }
      os << '\n';
    }
  }
  os << "\nunset output\n";
  return os.str();
}

}  // namespace polyflood
