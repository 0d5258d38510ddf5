#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "athermal/errors.hpp"
#include "athermal/experiments.hpp"
#include "athermal/version.hpp"
#include "json.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw athermal::config_error("config: cannot open file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& data) {
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw athermal::config_error("out: cannot write file '" + path.string() +
                                 "'");
  out << data;
}

std::vector<std::pair<std::string, std::string>> split_params(
    const std::vector<std::string>& raw) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const std::string& kv : raw) {
    auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0)
      throw athermal::config_error("--param: expected key=value, got '" + kv +
                                   "'");
    out.emplace_back(kv.substr(0, eq), kv.substr(eq + 1));
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"almost-thermal: collisional qudit thermalization with "
               "inhomogeneous reservoirs"};
  app.set_version_flag("--version", athermal::kVersion);

  std::string experiment;
  app.add_option("experiment", experiment,
                 "dynamics | work-dist | heat-dist | second-laws | "
                 "long-term | scaling")
      ->required();
  std::string config_path;
  app.add_option("--config", config_path, "JSON configuration file");
  std::string seed_text;
  app.add_option("--seed", seed_text, "root RNG seed (overrides config)");
  std::string out_dir;
  app.add_option("--out", out_dir,
                 "output directory (overrides config and "
                 "ALMOST_THERMAL_OUT)");
  std::string format;
  app.add_option("--format", format, "csv | json (overrides config)");
  std::vector<std::string> raw_params;
  app.add_option("--param", raw_params,
                 "key=value config override, repeatable");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;  // bad flags are configuration errors
  }

  try {
    std::string config_json =
        config_path.empty() ? std::string() : read_file(config_path);
    auto overrides = split_params(raw_params);
    if (!seed_text.empty()) overrides.emplace_back("seed", seed_text);
    if (!format.empty()) overrides.emplace_back("format", format);
    athermal::ExperimentConfig config =
        athermal::make_config(experiment, config_json, overrides);

    // output directory precedence: --out, config "out", env, cwd
    std::string dir = out_dir;
    if (dir.empty()) dir = config.out_dir;
    if (dir.empty()) {
      const char* env = std::getenv("ALMOST_THERMAL_OUT");
      if (env && *env) dir = env;
    }
    if (dir.empty()) dir = ".";
    config.out_dir = dir;
    std::filesystem::create_directories(dir);

    auto t0 = std::chrono::steady_clock::now();
    std::vector<athermal::Table> tables = athermal::run_experiment(config);
    auto t1 = std::chrono::steady_clock::now();

    athermal::RunManifest manifest;
    manifest.experiment = config.experiment;
    manifest.config_echo = athermal::config_to_json(config);
    manifest.seed = config.seed;
    manifest.version = athermal::kVersion;
    manifest.duration_seconds =
        std::chrono::duration<double>(t1 - t0).count();

    std::filesystem::path base(dir);
    if (config.format == "csv") {
      for (const athermal::Table& table : tables) {
        std::string csv = athermal::table_to_csv(table);
        std::string filename = table.name + ".csv";
        write_file(base / filename, csv);
        manifest.checksums.emplace_back(filename,
                                        athermal::fnv1a64_hex(csv));
        std::fprintf(stdout, "wrote %s\n", (base / filename).string().c_str());
      }
    } else {
      // one bundle: tables embedded as column-name -> row arrays
      nlohmann::ordered_json bundle;
      for (const athermal::Table& table : tables) {
        nlohmann::ordered_json jt;
        jt["columns"] = table.columns;
        jt["rows"] = table.rows;
        bundle[table.name] = jt;
        manifest.checksums.emplace_back(
            table.name + ".csv", athermal::fnv1a64_hex(table_to_csv(table)));
      }
      std::string text = bundle.dump(2);
      std::string filename = config.experiment + "_tables.json";
      write_file(base / filename, text);
      manifest.checksums.emplace_back(filename, athermal::fnv1a64_hex(text));
      std::fprintf(stdout, "wrote %s\n", (base / filename).string().c_str());
    }
    std::string manifest_name = config.experiment + "_manifest.json";
    write_file(base / manifest_name,
               athermal::manifest_to_json(manifest) + "\n");
    std::fprintf(stdout, "wrote %s\n", (base / manifest_name).string().c_str());
    return 0;
  } catch (const athermal::config_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const athermal::numeric_error& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
