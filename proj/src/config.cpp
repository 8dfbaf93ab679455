#include "polyflood/config.hpp"

#include <cctype>
#include <charconv>
#include <fstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <fmt/format.h>

#include "polyflood/errors.hpp"

namespace polyflood {

namespace pt = boost::property_tree;

namespace {

std::string canonical_model(const std::string& name) {
  if (name == "quadratic" || name == "quadratic_test") return "quadratic_test";
  if (name == "two_phase" || name == "two_phase_gravity") return "two_phase_gravity";
  throw ConfigError(
      fmt::format("unknown model '{}' (expected quadratic_test or two_phase_gravity)", name));
}

}  // namespace

FluxModel model_by_name(const std::string& name) {
  if (canonical_model(name) == "quadratic_test") return quadratic_test_model();
  return two_phase_gravity_model();
}

double parse_number(const std::string& text) {
  auto parse = [&](std::string_view part) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
    if (part.empty() || ec != std::errc() || ptr != part.data() + part.size()) {
      throw ConfigError(fmt::format("'{}' is not a number", text));
    }
    return v;
  };
  const std::string_view sv(text);
  const auto slash = sv.find('/');
  if (slash == std::string_view::npos) return parse(sv);
  const double den = parse(sv.substr(slash + 1));
  if (den == 0.0) throw ConfigError(fmt::format("'{}' divides by zero", text));
  return parse(sv.substr(0, slash)) / den;
}

std::vector<double> parse_number_list(const std::string& text) {
  std::vector<double> out;
  std::string token;
  for (char ch : text + ' ') {
    if (ch == ',' || ch == ' ' || ch == '\t') {
      if (!token.empty()) out.push_back(parse_number(token));
      token.clear();
    } else {
      token += ch;
    }
  }
  return out;
}

namespace {

class Reader {
 public:
  Reader(const pt::ptree& tree, std::string source) : tree_(tree), source_(std::move(source)) {}

  /// Value with any inline "; comment" or "# comment" removed.
  std::optional<std::string> text(const std::string& key) const {
    auto v = tree_.get_optional<std::string>(pt::ptree::path_type(key, '.'));
    if (!v) return std::nullopt;
    std::string value = *v;
    const auto mark = value.find_first_of(";#");
    if (mark != std::string::npos) value.erase(mark);
    while (!value.empty() && std::isspace(static_cast<unsigned char>(value.back()))) value.pop_back();
    return value;
  }

  double number(const std::string& key, std::optional<double> fallback = std::nullopt) const {
    const auto v = text(key);
    if (!v) {
      if (fallback) return *fallback;
      throw ConfigError(fmt::format("{}: missing field '{}'", source_, key));
    }
    try {
      return parse_number(*v);
    } catch (const ConfigError& e) {
      throw ConfigError(fmt::format("{}: field '{}': {}", source_, key, e.what()));
    }
  }

  std::vector<double> list(const std::string& key) const {
    const auto v = text(key);
    if (!v) throw ConfigError(fmt::format("{}: missing field '{}'", source_, key));
    try {
      return parse_number_list(*v);
    } catch (const ConfigError& e) {
      throw ConfigError(fmt::format("{}: field '{}': {}", source_, key, e.what()));
    }
  }

  [[noreturn]] void fail(const std::string& key, const std::string& why) const {
    throw ConfigError(fmt::format("{}: field '{}': {}", source_, key, why));
  }

 private:
  const pt::ptree& tree_;
  std::string source_;
};

FluxModel read_model(const Reader& r) {
  std::string name = "quadratic_test";
  if (auto given = r.text("model.name")) {
    try {
      name = canonical_model(*given);
    } catch (const ConfigError& e) {
      r.fail("model.name", e.what());
    }
  }
  const std::string kind = r.text("model.adsorption").value_or("linear");
  if (kind != "linear" && kind != "langmuir") r.fail("model.adsorption", "expected linear or langmuir");
  if (name == "quadratic_test") {
    if (kind != "linear" || r.text("model.k")) {
      r.fail("model.adsorption", "the quadratic model has fixed a(c) = c");
    }
    return quadratic_test_model();
  }
  TwoPhaseGravityModel tp;
  tp.exponent_1 = r.number("model.n1", tp.exponent_1);
  tp.exponent_2 = r.number("model.n2", tp.exponent_2);
  tp.viscosity_1 = r.number("model.mu1", tp.viscosity_1);
  tp.viscosity_1_slope = r.number("model.mu1_c", tp.viscosity_1_slope);
  tp.viscosity_2 = r.number("model.mu2", tp.viscosity_2);
  tp.g1 = r.number("model.g1", tp.g1);
  tp.g2 = r.number("model.g2", tp.g2);
  tp.q = r.number("model.q", tp.q);
  const double k = r.number("model.k", 0.25);
  const Adsorption ads =
      kind == "linear" ? Adsorption::linear(k) : Adsorption::langmuir(k, r.number("model.b"));
  return two_phase_gravity_model(tp, ads);
}

}  // namespace

RunConfig parse_config(std::istream& in, const std::string& source) {
  pt::ptree tree;
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(fmt::format("{}:{}: {}", source, e.line(), e.message()));
  }
  const Reader r(tree, source);
  RunConfig cfg;
  cfg.model = read_model(r);

  const double x_min = r.number("grid.x_min", 0.0);
  const double x_max = r.number("grid.x_max", 1.0);
  if (r.text("grid.n_cells")) {
    const double n = r.number("grid.n_cells");
    if (n < 1.0 || n != std::floor(n)) r.fail("grid.n_cells", "expected a positive integer");
    if (!(x_max > x_min)) r.fail("grid.x_max", "must exceed x_min");
    cfg.grid = {x_min, x_max, static_cast<int>(n)};
  } else {
    cfg.grid = grid_with_spacing(x_min, x_max, r.number("grid.h"));
  }

  if (auto name = r.text("scheme.name")) cfg.scheme = parse_scheme(*name);
  cfg.lambda = r.number("scheme.lambda", 0.25);
  if (!(cfg.lambda > 0.0)) r.fail("scheme.lambda", "must be positive");

  const std::string type = r.text("boundary.type").value_or("closed");
  if (type == "dirichlet") {
    cfg.boundary = Dirichlet{{r.number("boundary.s_left"), r.number("boundary.c_left")},
                             {r.number("boundary.s_right"), r.number("boundary.c_right")}};
  } else if (type != "closed") {
    r.fail("boundary.type", "expected dirichlet or closed");
  }

  const auto s = r.list("initial.s");
  const auto c = r.list("initial.c");
  cfg.initial.breaks = r.text("initial.breaks") ? r.list("initial.breaks") : std::vector<double>{};
  if (s.size() != c.size()) r.fail("initial.c", "needs as many entries as initial.s");
  if (s.size() != cfg.initial.breaks.size() + 1) {
    r.fail("initial.s", "needs one more entry than initial.breaks");
  }
  for (std::size_t k = 0; k < s.size(); ++k) {
    if (!cfg.model.admissible(s[k], c[k])) {
      r.fail("initial.s", fmt::format("state {} (s={}, c={}) is not admissible", k, s[k], c[k]));
    }
    cfg.initial.states.push_back({s[k], c[k]});
  }

  cfg.t_end = r.number("run.t_end");
  if (cfg.t_end < 0.0) r.fail("run.t_end", "must be non-negative");
  if (r.text("run.snapshots")) cfg.snapshot_times = r.list("run.snapshots");
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(fmt::format("cannot open config file {}", path));
  return parse_config(in, path);
}

}  // namespace polyflood
