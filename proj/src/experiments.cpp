#include "athermal/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "athermal/collision.hpp"
#include "athermal/energetics.hpp"
#include "athermal/errors.hpp"
#include "athermal/rng.hpp"
#include "athermal/statistics.hpp"
#include "athermal/version.hpp"
#include "json.hpp"

namespace athermal {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr double kInf = std::numeric_limits<double>::infinity();
// dedicated stream id for the single frozen-configuration trajectory, far
// above any Monte Carlo trajectory index so sample-count changes never
// reshuffle it
constexpr std::uint64_t kFrozenStream = 0xFFFFFFFFFFFFFFFFull;

std::string alpha_label(double alpha) {
  if (std::isinf(alpha)) return "inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", alpha);
  return buf;
}

std::string short_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

void require_experiment_qubit(const ExperimentConfig& config) {
  if (config.params.d != 2)
    throw config_error("d: experiment '" + config.experiment +
                       "' supports qubits only (d = 2)");
}

double scalar_p0(const ExperimentConfig& config) {
  return config.p0.at(0);
}

// evolve one trajectory, collecting the system population after every step
std::vector<Population> sampled_trajectory(const ExperimentConfig& config,
                                           std::uint64_t stream_id) {
  RandomStream stream(config.seed, stream_id);
  std::vector<Population> states;
  states.reserve(config.steps + 1);
  Population p = config.p0;
  states.push_back(p);
  for (long long r = 0; r < config.steps; ++r) {
    double delta = sample_delta(config.res, stream);
    Population q = thermal_populations(config.params, delta);
    p = collide(p, q, config.params.theta).first;
    states.push_back(p);
  }
  return states;
}

}  // namespace

ExperimentConfig default_config(const std::string& experiment) {
  ExperimentConfig cfg;
  cfg.experiment = experiment;
  cfg.params = ModelParams{2, 1.0, 1.0, 0.1};
  cfg.res.kind = Inhomogeneity::kHamiltonian;
  cfg.res.sigma = 0.05;
  cfg.p0 = {0.75, 0.25};
  if (experiment == "dynamics") {
    cfg.steps = 200;
    cfg.samples = 10000;
  } else if (experiment == "work-dist" || experiment == "heat-dist") {
    cfg.res.sigma = 0.02;
    cfg.samples = 1000000;
    cfg.p0_list = {0.5, 1.0 / (1.0 + std::exp(-1.0)), 0.9};
  } else if (experiment == "second-laws") {
    cfg.res.sigma = 0.05;
  } else if (experiment == "long-term") {
    cfg.p0 = {0.735, 0.265};
    cfg.steps = 200;
    cfg.samples = 100;
  } else if (experiment == "scaling") {
    cfg.res.sigma = 0.02;
  } else {
    throw config_error("experiment: unknown name '" + experiment +
                       "' (expected dynamics, work-dist, heat-dist, "
                       "second-laws, long-term or scaling)");
  }
  return cfg;
}

namespace {

double number_field(const ordered_json& v, const std::string& key) {
  if (!v.is_number())
    throw config_error("config field '" + key + "': expected a number");
  return v.get<double>();
}

long long int_field(const ordered_json& v, const std::string& key) {
  if (!v.is_number_integer())
    throw config_error("config field '" + key + "': expected an integer");
  return v.get<long long>();
}

double alpha_from_json(const ordered_json& v) {
  if (v.is_string()) {
    std::string s = v.get<std::string>();
    if (s == "inf" || s == "Inf" || s == "infinity" || s == "Infinity")
      return kInf;
    throw config_error("config field 'alphas': unrecognized entry '" + s +
                       "'");
  }
  if (!v.is_number())
    throw config_error("config field 'alphas': entries must be numbers or "
                       "\"inf\"");
  return v.get<double>();
}

void apply_field(ExperimentConfig& cfg, const std::string& key,
                 const ordered_json& v) {
  if (key == "experiment") {
    std::string name = v.is_string() ? v.get<std::string>() : std::string();
    if (name != cfg.experiment)
      throw config_error("config field 'experiment': config says '" + name +
                         "' but the command line selected '" +
                         cfg.experiment + "'");
  } else if (key == "d") {
    cfg.params.d = static_cast<int>(int_field(v, key));
  } else if (key == "beta") {
    cfg.params.beta = number_field(v, key);
  } else if (key == "g0") {
    cfg.params.g0 = number_field(v, key);
  } else if (key == "theta") {
    cfg.params.theta = number_field(v, key);
  } else if (key == "kind") {
    std::string s = v.is_string() ? v.get<std::string>() : std::string();
    if (s == "hamiltonian")
      cfg.res.kind = Inhomogeneity::kHamiltonian;
    else if (s == "temperature")
      cfg.res.kind = Inhomogeneity::kTemperature;
    else
      throw config_error(
          "config field 'kind': expected \"hamiltonian\" or \"temperature\"");
  } else if (key == "sigma") {
    cfg.res.sigma = number_field(v, key);
  } else if (key == "n_sigma") {
    cfg.res.n_sigma = number_field(v, key);
  } else if (key == "p0") {
    if (v.is_number()) {
      cfg.p0 = {v.get<double>(), 1.0 - v.get<double>()};
    } else if (v.is_array()) {
      cfg.p0.clear();
      for (const auto& e : v) cfg.p0.push_back(number_field(e, key));
    } else {
      throw config_error(
          "config field 'p0': expected a number (qubit ground population) "
          "or an array of level populations");
    }
  } else if (key == "steps") {
    cfg.steps = int_field(v, key);
  } else if (key == "samples") {
    cfg.samples = int_field(v, key);
  } else if (key == "alphas") {
    if (!v.is_array())
      throw config_error("config field 'alphas': expected an array");
    cfg.alphas.alphas.clear();
    for (const auto& e : v) cfg.alphas.alphas.push_back(alpha_from_json(e));
  } else if (key == "seed") {
    if (!v.is_number_unsigned() && !v.is_number_integer())
      throw config_error("config field 'seed': expected an integer");
    cfg.seed = v.get<std::uint64_t>();
  } else if (key == "out") {
    if (!v.is_string())
      throw config_error("config field 'out': expected a string");
    cfg.out_dir = v.get<std::string>();
  } else if (key == "format") {
    if (!v.is_string())
      throw config_error("config field 'format': expected a string");
    cfg.format = v.get<std::string>();
  } else if (key == "p0_list") {
    if (!v.is_array())
      throw config_error("config field 'p0_list': expected an array");
    cfg.p0_list.clear();
    for (const auto& e : v) cfg.p0_list.push_back(number_field(e, key));
  } else if (key == "c") {
    cfg.c = number_field(v, key);
  } else if (key == "xi_list") {
    if (!v.is_array())
      throw config_error("config field 'xi_list': expected an array");
    cfg.xi_list.clear();
    for (const auto& e : v) cfg.xi_list.push_back(number_field(e, key));
  } else if (key == "N_list") {
    if (!v.is_array())
      throw config_error("config field 'N_list': expected an array");
    cfg.n_list.clear();
    for (const auto& e : v) cfg.n_list.push_back(int_field(e, key));
  } else if (key == "delta_min") {
    cfg.delta_min = number_field(v, key);
  } else if (key == "delta_max") {
    cfg.delta_max = number_field(v, key);
  } else if (key == "delta_points") {
    cfg.delta_points = static_cast<int>(int_field(v, key));
  } else {
    throw config_error("unknown config field: '" + key + "'");
  }
}

void validate_config(ExperimentConfig& cfg) {
  cfg.params.validate();
  cfg.res.validate();
  if (static_cast<int>(cfg.p0.size()) != cfg.params.d)
    throw config_error("config field 'p0': population has " +
                       std::to_string(cfg.p0.size()) + " entries but d = " +
                       std::to_string(cfg.params.d));
  validate_population(cfg.p0);
  if (cfg.steps < 0) throw config_error("config field 'steps': must be >= 0");
  if (cfg.samples < 1)
    throw config_error("config field 'samples': must be >= 1");
  if (cfg.format != "csv" && cfg.format != "json")
    throw config_error("config field 'format': expected \"csv\" or \"json\"");
  if (cfg.alphas.alphas.empty())
    throw config_error("config field 'alphas': must not be empty");
  for (double p0 : cfg.p0_list)
    if (p0 < 0.0 || p0 > 1.0)
      throw config_error(
          "config field 'p0_list': entries must lie in [0, 1]");
  if (!(cfg.delta_min > -1.0))
    throw config_error("config field 'delta_min': must be > -1");
  if (cfg.delta_max < cfg.delta_min)
    throw config_error("config field 'delta_max': must be >= delta_min");
  if (cfg.delta_points < 1)
    throw config_error("config field 'delta_points': must be >= 1");
  if (!(cfg.c > 0.0)) throw config_error("config field 'c': must be > 0");
  for (long long n : cfg.n_list)
    if (n < 1)
      throw config_error("config field 'N_list': entries must be >= 1");
}

}  // namespace

ExperimentConfig make_config(
    const std::string& experiment, const std::string& config_json,
    const std::vector<std::pair<std::string, std::string>>& overrides) {
  ExperimentConfig cfg = default_config(experiment);
  ordered_json doc = ordered_json::object();
  if (!config_json.empty()) {
    try {
      doc = ordered_json::parse(config_json);
    } catch (const nlohmann::json::parse_error& e) {
      throw config_error(std::string("config: invalid JSON: ") + e.what());
    }
    if (!doc.is_object())
      throw config_error("config: top level must be a JSON object");
  }
  for (const auto& kv : overrides) {
    ordered_json v;
    try {
      v = ordered_json::parse(kv.second);
    } catch (const nlohmann::json::parse_error&) {
      v = kv.second;  // bare words (e.g. kind=temperature) pass as strings
    }
    doc[kv.first] = v;
  }
  for (const auto& item : doc.items())
    apply_field(cfg, item.key(), item.value());
  validate_config(cfg);
  return cfg;
}

std::string config_to_json(const ExperimentConfig& config) {
  ordered_json j;
  j["experiment"] = config.experiment;
  j["d"] = config.params.d;
  j["beta"] = config.params.beta;
  j["g0"] = config.params.g0;
  j["theta"] = config.params.theta;
  j["kind"] = config.res.kind == Inhomogeneity::kHamiltonian ? "hamiltonian"
                                                             : "temperature";
  j["sigma"] = config.res.sigma;
  j["n_sigma"] = config.res.n_sigma;
  j["p0"] = config.p0;
  j["steps"] = config.steps;
  j["samples"] = config.samples;
  ordered_json alphas = ordered_json::array();
  for (double a : config.alphas.alphas) {
    if (std::isinf(a))
      alphas.push_back("inf");
    else
      alphas.push_back(a);
  }
  j["alphas"] = alphas;
  j["seed"] = config.seed;
  j["format"] = config.format;
  j["p0_list"] = config.p0_list;
  j["c"] = config.c;
  j["xi_list"] = config.xi_list;
  j["N_list"] = config.n_list;
  j["delta_min"] = config.delta_min;
  j["delta_max"] = config.delta_max;
  j["delta_points"] = config.delta_points;
  return j.dump(2);
}

std::vector<Table> run_dynamics(const ExperimentConfig& config) {
  const ModelParams& params = config.params;
  Population tau_s = thermal_populations(params, 0.0);
  Population tau_bar = ensemble_avg_thermal(params, config.res);
  long long n = config.samples;
  long long steps = config.steps;

  // Monte Carlo ensemble mean and its standard error, trajectory-major so
  // per-trajectory streams stay independent of the trajectory count.
  // Welford accumulation keeps the variance exactly zero when every
  // trajectory coincides (sigma = 0).
  std::vector<std::vector<double>> mc(steps + 1,
                                      std::vector<double>(params.d, 0.0));
  std::vector<std::vector<double>> m2(steps + 1,
                                      std::vector<double>(params.d, 0.0));
  for (long long t = 0; t < n; ++t) {
    std::vector<Population> traj =
        sampled_trajectory(config, static_cast<std::uint64_t>(t));
    for (long long r = 0; r <= steps; ++r)
      for (int j = 0; j < params.d; ++j) {
        double d1 = traj[r][j] - mc[r][j];
        mc[r][j] += d1 / static_cast<double>(t + 1);
        m2[r][j] += d1 * (traj[r][j] - mc[r][j]);
      }
  }
  std::vector<std::vector<double>> mc_se(steps + 1,
                                         std::vector<double>(params.d, 0.0));
  if (n > 1)
    for (long long r = 0; r <= steps; ++r)
      for (int j = 0; j < params.d; ++j)
        mc_se[r][j] = std::sqrt(m2[r][j] / static_cast<double>(n - 1) /
                                static_cast<double>(n));

  std::vector<Population> frozen = sampled_trajectory(config, kFrozenStream);

  Table table;
  table.name = "dynamics";
  table.columns = {"step"};
  for (int j = 0; j < params.d; ++j)
    table.columns.push_back("analytic_p" + std::to_string(j));
  for (int j = 0; j < params.d; ++j)
    table.columns.push_back("mc_p" + std::to_string(j));
  for (int j = 0; j < params.d; ++j)
    table.columns.push_back("mc_se_p" + std::to_string(j));
  for (int j = 0; j < params.d; ++j)
    table.columns.push_back("frozen_p" + std::to_string(j));
  table.columns.push_back("dist_tau_s");
  table.columns.push_back("dist_tau_bar");
  for (long long r = 0; r <= steps; ++r) {
    Population analytic =
        analytic_state(config.p0, tau_bar, params.theta, static_cast<int>(r));
    std::vector<std::string> row{format_int(r)};
    for (int j = 0; j < params.d; ++j)
      row.push_back(format_double(analytic[j]));
    for (int j = 0; j < params.d; ++j) row.push_back(format_double(mc[r][j]));
    for (int j = 0; j < params.d; ++j)
      row.push_back(format_double(mc_se[r][j]));
    for (int j = 0; j < params.d; ++j)
      row.push_back(format_double(frozen[r][j]));
    row.push_back(format_double(trace_distance(analytic, tau_s)));
    row.push_back(format_double(trace_distance(analytic, tau_bar)));
    table.rows.push_back(std::move(row));
  }
  return {table};
}

namespace {

std::vector<Table> dist_tables(const ExperimentConfig& config,
                               ObservableKind obs, const std::string& stem) {
  require_experiment_qubit(config);
  const ModelParams& params = config.params;
  double sigma = config.res.sigma;
  if (!(sigma > 0.0))
    throw config_error(
        "config field 'sigma': distribution experiments need sigma > 0");

  std::vector<Table> tables;
  for (std::size_t idx = 0; idx < config.p0_list.size(); ++idx) {
    double p0 = config.p0_list[idx];
    Pushforward pf(obs, p0, params, sigma);
    auto exact_im = pf.image();
    auto quad_im = quadratic_image(obs, p0, params, sigma);
    double ymin = std::min(exact_im.first, quad_im.first);
    double ymax = std::max(exact_im.second, quad_im.second);
    std::vector<double> singular = pf.singular_values();
    for (double s : quadratic_singular_values(obs, p0, params, sigma))
      singular.push_back(s);

    const int n_points = 2001;
    double cell = (ymax - ymin) / (n_points - 1);
    SampleSet set = empirical_distribution(obs, p0, params, sigma,
                                           config.samples, config.seed);
    std::vector<double> sorted = set.values;
    std::sort(sorted.begin(), sorted.end());

    auto quad_at = [&](double y) {
      return obs == ObservableKind::kWork
                 ? work_density(y, p0, params, sigma,
                                DensityMode::kQuadraticApprox)
                 : heat_density(y, p0, params, sigma,
                                obs == ObservableKind::kHeatHamiltonian
                                    ? Inhomogeneity::kHamiltonian
                                    : Inhomogeneity::kTemperature,
                                DensityMode::kQuadraticApprox);
    };

    Table table;
    table.name = stem + "_" + std::to_string(idx);
    table.columns = {"y", "quad_density", "exact_density", "empirical_cdf"};
    for (int i = 0; i < n_points; ++i) {
      double y = ymin + i * cell;
      for (double ys : singular) {
        if (std::abs(y - ys) <
            1e-12 * std::max(1.0, std::abs(ys)) + 1e-300) {
          y = ys +
              (std::abs(ys - ymin) < std::abs(ymax - ys) ? 0.5 : -0.5) * cell;
        }
      }
      double ge = pf.density(y);
      double gq = quad_at(y);
      for (int tries = 0; (!std::isfinite(ge) || !std::isfinite(gq)) &&
                          tries < 3;
           ++tries) {
        y += (y < 0.5 * (ymin + ymax) ? 0.25 : -0.25) * cell;
        ge = pf.density(y);
        gq = quad_at(y);
      }
      auto count =
          std::upper_bound(sorted.begin(), sorted.end(), y) - sorted.begin();
      double ecdf =
          static_cast<double>(count) / static_cast<double>(sorted.size());
      table.rows.push_back({format_double(y), format_double(gq),
                            format_double(ge), format_double(ecdf)});
    }
    tables.push_back(std::move(table));
  }
  return tables;
}

}  // namespace

std::vector<Table> run_work_dist(const ExperimentConfig& config) {
  if (config.res.kind != Inhomogeneity::kHamiltonian)
    throw config_error(
        "config field 'kind': work-dist requires the Hamiltonian kind "
        "(the Temperature kind performs no work)");
  return dist_tables(config, ObservableKind::kWork, "work_dist");
}

std::vector<Table> run_heat_dist(const ExperimentConfig& config) {
  ObservableKind obs = config.res.kind == Inhomogeneity::kHamiltonian
                           ? ObservableKind::kHeatHamiltonian
                           : ObservableKind::kHeatTemperature;
  return dist_tables(config, obs, "heat_dist");
}

std::vector<Table> run_second_laws(const ExperimentConfig& config) {
  require_experiment_qubit(config);
  if (config.res.kind != Inhomogeneity::kHamiltonian)
    throw config_error(
        "config field 'kind': second-laws compares against work of the "
        "Hamiltonian kind");
  std::vector<double> grid;
  grid.reserve(config.delta_points);
  if (config.delta_points == 1) {
    grid.push_back(config.delta_min);
  } else {
    double step = (config.delta_max - config.delta_min) /
                  (config.delta_points - 1);
    for (int i = 0; i < config.delta_points; ++i)
      grid.push_back(config.delta_min + i * step);
  }
  std::vector<DeltaFRow> rows = delta_F_vs_work(
      scalar_p0(config), grid, config.params, config.alphas);

  Table table;
  table.name = "second_laws";
  table.columns = {"delta", "beta_W"};
  for (double a : config.alphas.alphas)
    table.columns.push_back("beta_dF_alpha_" + alpha_label(a));
  for (double a : config.alphas.alphas)
    table.columns.push_back("violates_bound_alpha_" + alpha_label(a));
  for (const DeltaFRow& r : rows) {
    std::vector<std::string> row{format_double(r.delta),
                                 format_double(r.beta_work)};
    for (double df : r.beta_delta_F) row.push_back(format_double(df));
    for (double df : r.beta_delta_F)
      row.push_back(df > r.beta_work + 1e-12 ? "1" : "0");
    table.rows.push_back(std::move(row));
  }
  return {table};
}

std::vector<Table> run_long_term(const ExperimentConfig& config) {
  const ModelParams& params = config.params;
  Population tau_s = thermal_populations(params, 0.0);
  Population tau_bar = ensemble_avg_thermal(params, config.res);
  long long steps = config.steps;
  long long m = config.samples;

  std::vector<Population> frozen = sampled_trajectory(config, kFrozenStream);
  std::vector<double> avg_d1(steps + 1, 0.0), avg_dinf(steps + 1, 0.0);
  for (long long t = 0; t < m; ++t) {
    std::vector<Population> traj =
        sampled_trajectory(config, static_cast<std::uint64_t>(t));
    for (long long r = 0; r <= steps; ++r) {
      avg_d1[r] += renyi_divergence(traj[r], tau_s, 1.0);
      avg_dinf[r] += renyi_divergence(traj[r], tau_s, kInf);
    }
  }
  for (long long r = 0; r <= steps; ++r) {
    avg_d1[r] /= static_cast<double>(m);
    avg_dinf[r] /= static_cast<double>(m);
  }

  Table table;
  table.name = "long_term";
  table.columns = {"step",      "ensemble_D1",   "ensemble_Dinf",
                   "frozen_D1", "frozen_Dinf",   "frozen_avg_D1",
                   "frozen_avg_Dinf"};
  for (long long r = 0; r <= steps; ++r) {
    Population ens =
        analytic_state(config.p0, tau_bar, params.theta, static_cast<int>(r));
    table.rows.push_back(
        {format_int(r),
         format_double(renyi_divergence(ens, tau_s, 1.0)),
         format_double(renyi_divergence(ens, tau_s, kInf)),
         format_double(renyi_divergence(frozen[r], tau_s, 1.0)),
         format_double(renyi_divergence(frozen[r], tau_s, kInf)),
         format_double(avg_d1[r]), format_double(avg_dinf[r])});
  }
  return {table};
}

std::vector<Table> run_scaling(const ExperimentConfig& config) {
  if (config.res.kind != Inhomogeneity::kHamiltonian)
    throw config_error(
        "config field 'kind': scaling accumulates work, which needs the "
        "Hamiltonian kind");
  Table table;
  table.name = "scaling";
  table.columns = {"xi", "c", "N", "sin2_theta", "accumulated_work",
                   "distance_ratio"};
  for (double xi : config.xi_list) {
    for (long long n : config.n_list) {
      AccumulatedWork acc =
          accumulated_work(config.params, config.res.sigma, n, config.c, xi);
      double s2 = config.c * std::pow(static_cast<double>(n), -xi);
      table.rows.push_back({short_double(xi), short_double(config.c),
                            format_int(n), format_double(s2),
                            format_double(acc.work),
                            format_double(acc.distance_ratio)});
    }
  }
  return {table};
}

std::vector<Table> run_experiment(const ExperimentConfig& config) {
  if (config.experiment == "dynamics") return run_dynamics(config);
  if (config.experiment == "work-dist") return run_work_dist(config);
  if (config.experiment == "heat-dist") return run_heat_dist(config);
  if (config.experiment == "second-laws") return run_second_laws(config);
  if (config.experiment == "long-term") return run_long_term(config);
  if (config.experiment == "scaling") return run_scaling(config);
  throw config_error("experiment: unknown name '" + config.experiment + "'");
}

std::string manifest_to_json(const RunManifest& manifest) {
  ordered_json j;
  j["experiment"] = manifest.experiment;
  j["seed"] = manifest.seed;
  j["version"] = manifest.version;
  j["duration_seconds"] = manifest.duration_seconds;
  ordered_json sums = ordered_json::object();
  for (const auto& kv : manifest.checksums) sums[kv.first] = kv.second;
  j["checksums"] = sums;
  j["config"] = ordered_json::parse(manifest.config_echo);
  return j.dump(2);
}

}  // namespace athermal
