#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "polyflood/cli.hpp"
#include "polyflood/config.hpp"
#include "polyflood/errors.hpp"
#include "polyflood/experiments.hpp"
#include "polyflood/io.hpp"
#include "polyflood/presets.hpp"

using namespace polyflood;
using doctest::Approx;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome cli(std::vector<std::string> args) {
  args.insert(args.begin(), "polyflood");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

struct TempDir {
  fs::path path;
  TempDir() {
    std::random_device rd;
    path = fs::temp_directory_path() / ("polyflood-test-" + std::to_string(rd()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string operator/(const std::string& name) const { return (path / name).string(); }
};

std::size_t count_files(const fs::path& dir, const std::string& ext) {
  std::size_t n = 0;
  for (const auto& e : fs::directory_iterator(dir)) n += e.path().extension() == ext;
  return n;
}

const char* kConfig = R"([model]
name = two_phase
adsorption = langmuir
k = 0.5
b = 2

[grid]
x_min = 0
x_max = 2
h = 1/100

[scheme]
name = um
lambda = 0.5

[boundary]
type = dirichlet
s_left = 0.9
c_left = 0.9
s_right = 0.1
c_right = 0.3

[initial]
breaks = 0.5
s = 0.9, 0.1
c = 0.9 0.3

[run]
t_end = 1.5
snapshots = 0.5, 1
)";

RunConfig parse(const std::string& text) {
  std::istringstream in(text);
  return parse_config(in, "case.ini");
}

std::string error_of(const std::string& text) {
  try {
    parse(text);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return {};
}

std::string replace(std::string text, const std::string& from, const std::string& to) {
  text.replace(text.find(from), from.size(), to);
  return text;
}

}  // namespace

TEST_CASE("numbers and lists") {
  CHECK(parse_number("0.25") == 0.25);
  CHECK(parse_number("1/50") == 0.02);
  CHECK(parse_number("-3e-2") == -0.03);
  CHECK_THROWS_AS(parse_number("abc"), ConfigError);
  CHECK_THROWS_AS(parse_number("1/0"), ConfigError);
  CHECK_THROWS_AS(parse_number(""), ConfigError);
  CHECK(parse_number_list("1, 2 3,,4") == std::vector<double>{1, 2, 3, 4});
  CHECK(parse_number_list("") .empty());
}

TEST_CASE("configuration file") {
  const RunConfig cfg = parse(kConfig);
  CHECK(cfg.model.name() == "two_phase_gravity");
  CHECK_FALSE(cfg.model.adsorption().is_linear());
  CHECK(cfg.grid.n_cells == 200);
  CHECK(cfg.grid.x_max == 2.0);
  CHECK(cfg.scheme == SchemeKind::UpstreamMobility);
  CHECK(cfg.lambda == 0.5);
  REQUIRE(std::holds_alternative<Dirichlet>(cfg.boundary));
  CHECK(std::get<Dirichlet>(cfg.boundary).right.c == 0.3);
  CHECK(cfg.initial.breaks == std::vector<double>{0.5});
  CHECK(cfg.initial.states[1].s == 0.1);
  CHECK(cfg.t_end == 1.5);
  CHECK(cfg.snapshot_times == std::vector<double>{0.5, 1.0});

  SUBCASE("inline comments") {
    const RunConfig c = parse(replace(kConfig, "lambda = 0.5", "lambda = 0.4    ; dt / h"));
    CHECK(c.lambda == 0.4);
    CHECK(parse(replace(kConfig, "name = um", "name = dflu # default")).scheme == SchemeKind::DFLU);
  }

  SUBCASE("errors name the field or line") {
    CHECK(error_of(replace(kConfig, "lambda = 0.5", "lambda = fast")).find("scheme.lambda") !=
          std::string::npos);
    CHECK(error_of(replace(kConfig, "t_end = 1.5\n", "")).find("missing field 'run.t_end'") !=
          std::string::npos);
    CHECK(error_of(replace(kConfig, "type = dirichlet", "type = periodic")).find("boundary.type") !=
          std::string::npos);
    CHECK(error_of(replace(kConfig, "name = two_phase", "name = cubic")).find("model.name") !=
          std::string::npos);
    CHECK(error_of(replace(kConfig, "c = 0.9 0.3", "c = 0.9")).find("initial.c") !=
          std::string::npos);
    CHECK(error_of(replace(kConfig, "s = 0.9, 0.1", "s = 1.5, 0.1")).find("not admissible") !=
          std::string::npos);
    CHECK(error_of(replace(kConfig, "h = 1/100", "h = 0.3")).find("whole cells") !=
          std::string::npos);
    CHECK(error_of(replace(kConfig, "[grid]", "[grid")).find("case.ini:") == 0);
    CHECK(error_of(replace(kConfig, "name = two_phase", "name = quadratic")).find("a(c) = c") !=
          std::string::npos);
  }
}

TEST_CASE("csv round trip is exact") {
  TempDir dir;
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  SolverState st;
  for (int i = 0; i < 257; ++i) {
    st.s.push_back(u(rng));
    st.c.push_back(i % 3 == 0 ? 0.0 : u(rng) / 3.0);
  }
  const Grid1D g{-0.3, 1.7, 257};
  write_csv(dir / "p.csv", st, g);
  const auto rows = read_csv(dir / "p.csv");
  REQUIRE(rows.size() == 257);
  for (int i = 0; i < 257; ++i) {
    CHECK(rows[i].x == g.center(i));
    CHECK(rows[i].s == st.s[i]);
    CHECK(rows[i].c == st.c[i]);
  }
  std::ofstream(dir / "bad.csv") << "x,s,c\n0.1,0.2,0.3\n0.2,zero,0.3\n";
  try {
    read_csv(dir / "bad.csv");
    FAIL("expected a ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("bad.csv:3") != std::string::npos);
  }
  CHECK(snapshot_filename("out/ic1", 0.5) == "out/ic1_t0.5.csv");
}

TEST_CASE("every preset runs") {
  for (const auto& p : presets()) {
    INFO(p.name);
    RunConfig cfg = p.config;
    cfg.grid.n_cells = std::max(20, cfg.grid.n_cells / 4);
    const RunResult r = run(cfg);
    CHECK_FALSE(r.cfl_violated);
    CHECK(r.snapshots.back().t == cfg.t_end);
  }
  CHECK_THROWS_WITH_AS(find_preset("ic3"), doctest::Contains("two_phase_ivp"), ConfigError);
}

TEST_CASE("run subcommand") {
  TempDir dir;
  const auto r = cli({"run", "--preset", "ic1", "--scheme", "dflu", "--out", dir / "ic1"});
  INFO(r.err);
  REQUIRE(r.code == 0);
  CHECK(r.out.find("scheme dflu") != std::string::npos);
  CHECK(r.out.find("cells 100") != std::string::npos);
  const auto rows = read_csv(dir / "ic1_t0.5.csv");
  CHECK(rows.size() == 100);

  const auto z = cli({"run", "--preset", "ic1", "--t-end", "0", "--out", dir / "z"});
  REQUIRE(z.code == 0);
  const auto ic = read_csv(dir / "z_t0.csv");
  REQUIRE(ic.size() == 100);
  CHECK(ic.front().s == 2.5);
  CHECK(ic.front().c == 0.5);
  CHECK(ic.back().s == 1.0);
  CHECK(ic.back().c == 0.0);

  std::ofstream(dir / "case.ini") << kConfig;
  const auto c = cli({"run", "--config", dir / "case.ini", "--out", dir / "cfg"});
  INFO(c.err);
  CHECK(c.code == 0);
  CHECK(fs::exists(dir / "cfg_t0.5.csv"));
  CHECK(fs::exists(dir / "cfg_t1.csv"));
  CHECK(fs::exists(dir / "cfg_t1.5.csv"));

  const auto h = cli({"run", "--preset", "ic2", "--h", "1/40", "--out", dir / "h"});
  CHECK(h.code == 0);
  CHECK(read_csv(dir / "h_t0.5.csv").size() == 40);
}

TEST_CASE("run subcommand errors") {
  TempDir dir;
  auto r = cli({"run", "--preset", "ic1", "--scheme", "nope", "--out", dir / "a"});
  CHECK(r.code == 2);
  CHECK(r.err.find("nope") != std::string::npos);

  r = cli({"run", "--preset", "ic1", "--scheme", "um", "--out", dir / "a"});
  CHECK(r.code == 1);
  CHECK(r.err.find("upstream mobility") != std::string::npos);

  r = cli({"run", "--out", dir / "a"});
  CHECK(r.code == 2);
  r = cli({"run", "--preset", "ic1", "--config", "x.ini"});
  CHECK(r.code == 2);
  r = cli({"run", "--config", dir / "missing.ini"});
  CHECK(r.code == 2);
  CHECK(r.err.find("missing.ini") != std::string::npos);
  r = cli({});
  CHECK(r.code == 2);
  r = cli({"--help"});
  CHECK(r.code == 0);
  CHECK(r.out.find("riemann") != std::string::npos);

  r = cli({"run", "--preset", "ic1", "--scheme", "lf", "--lambda", "5", "--out", dir / "a"});
  CHECK(r.code == 1);
  CHECK(r.err.find("warning: lambda * M") != std::string::npos);
}

TEST_CASE("riemann subcommand") {
  auto r = cli({"riemann", "--preset", "ic1", "--samples", "11"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("# case 2a") != std::string::npos);
  CHECK(r.out.find("c_contact,1.018") != std::string::npos);
  CHECK(r.out.find("xi,s,c\n") != std::string::npos);

  r = cli({"riemann", "--preset", "ic2"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("# case 2b") != std::string::npos);

  r = cli({"riemann", "--left", "1,0.5", "--right", "1,0.5", "--samples", "3"});
  REQUIRE(r.code == 0);
  CHECK(r.out == "# case constant\n# kind,left_speed,right_speed,s_left,c_left,s_right,c_right\n"
                 "xi,s,c\n-1,1,0.5\n0,1,0.5\n1,1,0.5\n");

  CHECK(cli({"riemann", "--left", "1,0.5"}).code == 2);
  CHECK(cli({"riemann", "--left", "5,0.5", "--right", "1,0"}).code == 1);
}

TEST_CASE("convergence subcommand") {
  TempDir dir;
  auto r = cli({"convergence", "--preset", "ic2", "--h", "1/50", "--scheme", "dflu"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("1/50") != std::string::npos);
  CHECK(r.out.find(" -\n") != std::string::npos);

  r = cli({"convergence", "--preset", "ic1", "--h", "1/50,1/100", "--out", dir / "t"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("godunov") != std::string::npos);
  CHECK(r.out.find("dflu") != std::string::npos);
  std::ifstream csv(dir / "t.csv");
  std::string header;
  std::getline(csv, header);
  CHECK(header == "scheme,h,error_s,rate_s,error_c,rate_c");

  CHECK(cli({"convergence", "--preset", "two_phase_ivp", "--h", "0.01"}).code == 2);
  CHECK(cli({"convergence"}).code == 2);
}

TEST_CASE("compare subcommand") {
  TempDir dir;
  const auto r = cli({"compare", "--preset", "two_phase_ivp", "--scheme", "dflu,um,lf,force",
                      "--times", "1,1.5", "--out", dir / "cmp"});
  INFO(r.err);
  REQUIRE(r.code == 0);
  CHECK(count_files(dir.path, ".csv") == 8);
  CHECK(fs::exists(dir / "cmp_force_t1.5.csv"));
  std::ifstream gp(dir / "cmp_plot.gp");
  std::stringstream script;
  script << gp.rdbuf();
  CHECK(script.str().find("cmp_um_t1.csv") != std::string::npos);
  CHECK(script.str().find("cmp_s_t1.5.png") != std::string::npos);

  CHECK(cli({"compare", "--preset", "two_phase_ivp", "--out", dir / "x"}).code == 2);
}

TEST_CASE("closed boundary slows the front compared with no polymer") {
  for (double t : {1.0, 3.0}) {
    auto with = find_preset("closed_boundary").config;
    auto without = find_preset("no_polymer").config;
    with.t_end = without.t_end = t;
    with.snapshot_times.clear();
    without.snapshot_times.clear();
    // Leading edge: first rise above the initial right state. The polymer-free
    // profile is a long rarefaction below s = 0.5, so the midpoint level would
    // track its trailing part instead.
    const double threshold = 0.1 + 0.1 * (0.9 - 0.1);
    const double a = front_position(run(with).snapshots.back().state, with.grid, threshold);
    const double b = front_position(run(without).snapshots.back().state, without.grid, threshold);
    INFO("t = " << t << "  polymer " << a << "  no polymer " << b);
    CHECK(b > a + 0.1);
  }
}
