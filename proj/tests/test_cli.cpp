// End-to-end tests of the almost-thermal CLI binary: exit codes, CSV
// schemas, manifests, determinism, config plumbing.
//
// Categories:
//   1. Exit codes: success, config errors (2), numeric errors (3)
//   2. dynamics tables: sigma = 0 degenerate run, MC vs analytic columns
//   3. Determinism: byte-identical reruns under a fixed seed
//   4. Manifests: checksums, config echo, version
//   5. Config file + --param overrides + output directory resolution
//   6. JSON table bundles
//   7. scaling / second-laws table contents vs library recomputation

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "athermal/collision.hpp"
#include "athermal/csv.hpp"
#include "athermal/model.hpp"
#include "athermal/version.hpp"

namespace fs = std::filesystem;
using namespace athermal;

namespace {

const char* kBin = ALMOST_THERMAL_BIN;

fs::path scratch_root() {
  static fs::path root = [] {
    fs::path p = fs::temp_directory_path() / "athermal_cli_tests";
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
  }();
  return root;
}

fs::path fresh_dir(const std::string& name) {
  fs::path p = scratch_root() / name;
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

int run(const std::string& args, const fs::path& stderr_to = {}) {
  std::string cmd = std::string(kBin) + " " + args;
  if (!stderr_to.empty()) cmd += " 2>" + stderr_to.string();
  else cmd += " 2>/dev/null";
  cmd += " >/dev/null";
  int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Csv {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  int col(const std::string& name) const {
    for (std::size_t i = 0; i < columns.size(); ++i)
      if (columns[i] == name) return static_cast<int>(i);
    return -1;
  }
};

Csv parse_csv(const fs::path& p) {
  Csv out;
  std::ifstream in(p);
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (header) {
      out.columns = cells;
      header = false;
    } else {
      std::vector<double> row;
      for (const auto& c : cells) row.push_back(std::stod(c));
      out.rows.push_back(row);
    }
  }
  return out;
}

}  // namespace

TEST_CASE("exit codes: version and config errors") {
  CHECK(run("--version") == 0);
  CHECK(run("") == 2);          // missing experiment
  CHECK(run("bogus-exp") == 2);  // unknown experiment

  fs::path err = scratch_root() / "err.txt";
  CHECK(run("dynamics --param bogus_key=1", err) == 2);
  CHECK(slurp(err).find("bogus_key") != std::string::npos);

  CHECK(run("dynamics --param d=1") == 2);
  CHECK(run("dynamics --param kind=warm") == 2);
  CHECK(run("dynamics --format xml") == 2);
  CHECK(run("dynamics --param sigma=-0.1") == 2);
  CHECK(run("second-laws --param delta_min=-2") == 2);
  CHECK(run("dynamics --param p0=1.5") == 2);
  CHECK(run("dynamics --param samples=0") == 2);
  CHECK(run("work-dist --param sigma=0") == 2);  // needs a distribution
  CHECK(run("work-dist --param kind=temperature") == 2);  // work needs detuning
  CHECK(run("dynamics --param theta=abc") == 2);
}

TEST_CASE("exit codes: quadrature failure surfaces as numeric error") {
  auto dir = fresh_dir("numeric");
  fs::path err = scratch_root() / "numeric_err.txt";
  CHECK(run("dynamics --param sigma=0.5 --param samples=5 --out " +
                dir.string(),
            err) == 3);
  CHECK(slurp(err).find("numeric error") != std::string::npos);
}

TEST_CASE("dynamics: sigma = 0 collapses MC onto the analytic column") {
  auto dir = fresh_dir("dyn0");
  CHECK(run("dynamics --seed 4 --out " + dir.string() +
            " --param sigma=0 --param samples=40 --param steps=25") == 0);
  Csv t = parse_csv(dir / "dynamics.csv");
  REQUIRE(t.rows.size() == 26u);
  int ap0 = t.col("analytic_p0"), mp0 = t.col("mc_p0"), fp0 = t.col("frozen_p0");
  int se0 = t.col("mc_se_p0");
  int dts = t.col("dist_tau_s"), dtb = t.col("dist_tau_bar");
  REQUIRE(ap0 >= 0);
  REQUIRE(mp0 >= 0);
  REQUIRE(fp0 >= 0);
  REQUIRE(se0 >= 0);
  for (const auto& r : t.rows) {
    CHECK(std::abs(r[mp0] - r[ap0]) < 1e-12);
    CHECK(std::abs(r[fp0] - r[ap0]) < 1e-12);
    CHECK(r[se0] < 1e-15);
    // tau_bar = tau_S at sigma = 0.
    CHECK(std::abs(r[dts] - r[dtb]) < 1e-15);
  }

  // Library recomputation of the analytic column.
  ModelParams mp;
  auto tau = thermal_populations(mp, 0.0);
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    auto want = analytic_state({0.75, 0.25}, tau, mp.theta, static_cast<int>(r));
    CHECK(std::abs(t.rows[r][ap0] - want[0]) < 1e-15);
  }
}

TEST_CASE("dynamics: steps = 0 emits the single initial row") {
  auto dir = fresh_dir("dyn_zero");
  CHECK(run("dynamics --out " + dir.string() +
            " --param steps=0 --param samples=1 --param sigma=0 --param "
            "p0=0.6") == 0);
  Csv t = parse_csv(dir / "dynamics.csv");
  REQUIRE(t.rows.size() == 1u);
  CHECK(t.rows[0][t.col("step")] == 0.0);
  CHECK(std::abs(t.rows[0][t.col("analytic_p0")] - 0.6) < 1e-15);
  CHECK(std::abs(t.rows[0][t.col("mc_p0")] - 0.6) < 1e-15);
}

TEST_CASE("dynamics: MC column tracks analytic within 3 standard errors") {
  auto dir = fresh_dir("dyn_mc");
  CHECK(run("dynamics --seed 11 --out " + dir.string() +
            " --param sigma=0.05 --param samples=2000 --param steps=40") == 0);
  Csv t = parse_csv(dir / "dynamics.csv");
  int ap0 = t.col("analytic_p0"), mp0 = t.col("mc_p0"), se0 = t.col("mc_se_p0");
  int step = t.col("step");
  for (const auto& r : t.rows) {
    if (r[step] == 0.0) continue;  // exact start, SE = 0
    CHECK(std::abs(r[mp0] - r[ap0]) <= 3.0 * r[se0] + 1e-12);
    CHECK(r[se0] > 0.0);
  }
}

TEST_CASE("reruns with one seed are byte-identical; seeds differ") {
  auto a = fresh_dir("det_a"), b = fresh_dir("det_b"), c = fresh_dir("det_c");
  std::string args = " --param samples=4000 --param steps=15 --param sigma=0.05";
  CHECK(run("dynamics --seed 5 --out " + a.string() + args) == 0);
  CHECK(run("dynamics --seed 5 --out " + b.string() + args) == 0);
  CHECK(run("dynamics --seed 6 --out " + c.string() + args) == 0);
  CHECK(slurp(a / "dynamics.csv") == slurp(b / "dynamics.csv"));
  CHECK(slurp(a / "dynamics.csv") != slurp(c / "dynamics.csv"));

  auto wa = fresh_dir("wdet_a"), wb = fresh_dir("wdet_b");
  std::string wargs = " --param samples=3000";
  CHECK(run("work-dist --seed 9 --out " + wa.string() + wargs) == 0);
  CHECK(run("work-dist --seed 9 --out " + wb.string() + wargs) == 0);
  for (int i = 0; i < 3; ++i) {
    std::string f = "work_dist_" + std::to_string(i) + ".csv";
    CHECK(slurp(wa / f) == slurp(wb / f));
  }
}

TEST_CASE("manifests: checksums, version, config echo") {
  auto dir = fresh_dir("manifest");
  CHECK(run("scaling --seed 21 --out " + dir.string()) == 0);
  std::string manifest = slurp(dir / "scaling_manifest.json");
  CHECK(manifest.find("\"version\": \"" + std::string(kVersion) + "\"") !=
        std::string::npos);
  CHECK(manifest.find("\"seed\": 21") != std::string::npos);
  CHECK(manifest.find("\"experiment\": \"scaling\"") != std::string::npos);

  // The recorded checksum must match the emitted bytes.
  std::string bytes = slurp(dir / "scaling.csv");
  std::string digest = fnv1a64_hex(bytes);
  CHECK(manifest.find("\"scaling.csv\": \"" + digest + "\"") !=
        std::string::npos);
}

TEST_CASE("config file and --param overrides reach the run") {
  auto dir = fresh_dir("config");
  fs::path cfg = scratch_root() / "case.json";
  std::ofstream(cfg) << "{\"sigma\": 0.01, \"samples\": 17, \"steps\": 3}";
  CHECK(run("dynamics --config " + cfg.string() + " --out " + dir.string() +
            " --param theta=0.2") == 0);
  std::string manifest = slurp(dir / "dynamics_manifest.json");
  CHECK(manifest.find("\"sigma\": 0.01") != std::string::npos);
  CHECK(manifest.find("\"samples\": 17") != std::string::npos);
  CHECK(manifest.find("\"theta\": 0.2") != std::string::npos);
  Csv t = parse_csv(dir / "dynamics.csv");
  CHECK(t.rows.size() == 4u);

  // Malformed config file: config error.
  fs::path bad = scratch_root() / "bad.json";
  std::ofstream(bad) << "{\"sigma\": ";
  CHECK(run("dynamics --config " + bad.string()) == 2);
  CHECK(run("dynamics --config /nonexistent/path.json") == 2);
}

TEST_CASE("output directory: environment fallback") {
  auto dir = fresh_dir("envout");
  std::string cmd = "ALMOST_THERMAL_OUT=" + dir.string() + " " + kBin +
                    " scaling >/dev/null 2>&1";
  int status = std::system(cmd.c_str());
  CHECK(WEXITSTATUS(status) == 0);
  CHECK(fs::exists(dir / "scaling.csv"));
}

TEST_CASE("json format bundles every table with the same checksums") {
  auto dir = fresh_dir("json");
  CHECK(run("second-laws --format json --out " + dir.string()) == 0);
  CHECK(fs::exists(dir / "second-laws_tables.json"));
  CHECK(!fs::exists(dir / "second_laws.csv"));
  std::string bundle = slurp(dir / "second-laws_tables.json");
  CHECK(bundle.find("\"columns\"") != std::string::npos);
  CHECK(bundle.find("\"second_laws\"") != std::string::npos);
  CHECK(bundle.find("beta_dF_alpha_inf") != std::string::npos);
  std::string manifest = slurp(dir / "second-laws_manifest.json");
  CHECK(manifest.find("\"format\": \"json\"") != std::string::npos);
}

TEST_CASE("scaling table: schedule columns match the library") {
  auto dir = fresh_dir("scaling");
  CHECK(run("scaling --out " + dir.string()) == 0);
  Csv t = parse_csv(dir / "scaling.csv");
  REQUIRE(t.rows.size() == 18u);  // 3 xi values x 6 N values
  int xi = t.col("xi"), N = t.col("N"), w = t.col("accumulated_work");
  int ratio = t.col("distance_ratio");
  bool checked = false;
  for (const auto& r : t.rows) {
    if (r[xi] == 1.0 && r[N] == 10000.0) {
      CHECK(std::abs(r[ratio] - std::exp(-3.0)) < 1e-3);
      CHECK(r[w] > 0.0);
      checked = true;
    }
  }
  CHECK(checked);
}

TEST_CASE("second-laws table: grid edges and flag domain") {
  auto dir = fresh_dir("slaw");
  CHECK(run("second-laws --out " + dir.string()) == 0);
  Csv t = parse_csv(dir / "second_laws.csv");
  REQUIRE(t.rows.size() == 401u);
  CHECK(std::abs(t.rows.front()[t.col("delta")] + 0.2) < 1e-15);
  CHECK(std::abs(t.rows.back()[t.col("delta")] - 0.2) < 1e-15);
  int flag = t.col("violates_bound_alpha_3");
  REQUIRE(flag >= 0);
  bool any = false;
  for (const auto& r : t.rows) {
    CHECK((r[flag] == 0.0 || r[flag] == 1.0));
    if (r[flag] == 1.0) any = true;
  }
  CHECK(any);  // alpha = 3 bound is violated somewhere on the grid
}
