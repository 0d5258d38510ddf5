#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "athermal/csv.hpp"
#include "athermal/divergences.hpp"
#include "athermal/model.hpp"

namespace athermal {

// Effective configuration of one experiment run. Defaults depend on the
// experiment (see default_config); every field can be set from the JSON
// config document and overridden per key on the command line.
struct ExperimentConfig {
  std::string experiment;
  ModelParams params;
  ReservoirModel res;
  Population p0;  // full population; scalar configs fill {p0, 1-p0}
  long long steps = 200;     // collision count N
  long long samples = 10000; // Monte Carlo trajectory/sample count n
  AlphaGrid alphas = AlphaGrid::defaults();
  std::uint64_t seed = 1;
  std::string out_dir;
  std::string format = "csv";  // "csv" or "json"

  // distribution experiments: one curve per input ground population
  std::vector<double> p0_list;
  // scaling experiment: sin^2(theta) = c * N^(-xi) sweep
  double c = 3.0;
  std::vector<double> xi_list{0.5, 1.0, 2.0};
  std::vector<long long> n_list{10, 100, 1000, 10000, 100000, 1000000};
  // second-laws experiment: uniform delta grid
  double delta_min = -0.2;
  double delta_max = 0.2;
  int delta_points = 401;
};

// Baseline parameters for each experiment (beta*g0 = 1 throughout):
//   dynamics:    sigma = 0.05, p0 = 0.75, theta = 0.1, N = 200, n = 1e4
//   work-dist:   sigma = 0.02, p0_list = {0.5, 1/(1+1/e), 0.9}, n = 1e6
//   heat-dist:   same as work-dist (kind chooses the heat flavor)
//   second-laws: theta = 0.1, p0 = 0.75, delta in [-0.2, 0.2]
//   long-term:   sigma = 0.05, p0 = 0.735, theta = 0.1, N = 200, n = 100
//   scaling:     sigma = 0.02, c = 3, xi in {0.5, 1, 2}, N up to 1e6
ExperimentConfig default_config(const std::string& experiment);

// default_config overlaid with a JSON document and then key=value
// overrides (values parsed as JSON scalars when possible). Unknown keys
// and malformed values throw config_error naming the offending field.
ExperimentConfig make_config(
    const std::string& experiment, const std::string& config_json,
    const std::vector<std::pair<std::string, std::string>>& overrides);

// Canonical JSON echo of the effective configuration (manifest payload).
std::string config_to_json(const ExperimentConfig& config);

std::vector<Table> run_dynamics(const ExperimentConfig& config);
std::vector<Table> run_work_dist(const ExperimentConfig& config);
std::vector<Table> run_heat_dist(const ExperimentConfig& config);
std::vector<Table> run_second_laws(const ExperimentConfig& config);
std::vector<Table> run_long_term(const ExperimentConfig& config);
std::vector<Table> run_scaling(const ExperimentConfig& config);

// Dispatch on config.experiment; throws config_error for unknown names.
std::vector<Table> run_experiment(const ExperimentConfig& config);

struct RunManifest {
  std::string experiment;
  std::string config_echo;  // canonical JSON of the effective config
  std::uint64_t seed = 0;
  std::string version;
  double duration_seconds = 0.0;
  // (output filename, FNV-1a 64 checksum of its bytes)
  std::vector<std::pair<std::string, std::string>> checksums;
};

std::string manifest_to_json(const RunManifest& manifest);

}  // namespace athermal
