// Copyright 2026 The fracbloch Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// Batch front-end: fracbloch run | preset | presets | render | analyze.

#include <CLI11.hpp>
#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <thread>

#include "fracbloch/cli/config.hpp"
#include "fracbloch/cli/csv.hpp"
#include "fracbloch/cli/numbers.hpp"
#include "fracbloch/cli/pixmap.hpp"
#include "fracbloch/cli/scenario.hpp"
#include "fracbloch/errors.hpp"

namespace {

using namespace fracbloch;
using namespace fracbloch::cli;

enum ExitCode { kOk = 0, kFailure = 1, kConfig = 2, kResource = 3, kIo = 4 };

std::vector<int> parse_site(const std::string &text) {
  std::vector<int> site;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    const auto v = parse_integer(item);
    if (!v) throw ConfigError("bad site '" + text + "'");
    site.push_back(static_cast<int>(*v));
  }
  return site;
}

void print_run(const RunSummary &run) {
  std::cout << run.json["name"].get<std::string>() << " -> " << run.output_dir << "\n";
  const auto &refocus = run.json["refocus"]["positions_cm"];
  if (!refocus.empty()) std::cout << "  refocus at " << refocus.dump() << " cm\n";
  if (run.json.contains("confinement")) {
    std::cout << "  confinement min " << run.json["confinement"]["min"].dump() << "\n";
  }
  if (run.json.contains("comparison")) {
    std::cout << "  frequency ratio vs " << run.json["comparison"]["preset"].get<std::string>()
              << ": " << run.json["comparison"]["frequency_ratio"].dump() << "\n";
  }
}

int run_configs(const std::vector<std::string> &paths, const std::string &out, int jobs) {
  std::vector<ScenarioConfig> configs;
  for (const auto &path : paths) {
    try {
      configs.push_back(load_config(path));
    } catch (const ConfigError &e) {
      throw ConfigError(path + ": " + e.what());
    }
  }
  const auto output_for = [&](const ScenarioConfig &cfg) -> std::string {
    if (out.empty()) return {};
    if (configs.size() == 1) return out;
    return (std::filesystem::path(out) / cfg.name).string();
  };

  // Scenarios are independent; each owns its output directory.
  std::vector<std::optional<RunSummary>> results(configs.size());
  std::vector<std::exception_ptr> errors(configs.size());
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t i = next++; i < configs.size(); i = next++) {
      try {
        results[i] = run_scenario(configs[i], output_for(configs[i]));
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const int threads = std::clamp(jobs, 1, static_cast<int>(configs.size()));
  std::vector<std::jthread> pool;
  for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  pool.clear();

  for (std::size_t i = 0; i < configs.size(); ++i) {
    if (errors[i]) std::rethrow_exception(errors[i]);
    print_run(*results[i]);
  }
  return kOk;
}

int print_presets(bool as_json) {
  const auto presets = list_presets();
  if (as_json) {
    nlohmann::json table = nlohmann::json::array();
    for (const auto &p : presets) {
      table.push_back({{"name", p.name}, {"description", p.description},
                       {"parameters", p.parameters}});
    }
    std::cout << table.dump(2) << "\n";
    return kOk;
  }
  for (const auto &p : presets) {
    std::cout << p.name << "\n  " << p.description << "\n  ";
    bool first = true;
    for (const auto &[key, value] : p.parameters.items()) {
      std::cout << (first ? "" : ", ") << key << "=" << value.dump();
      first = false;
    }
    std::cout << "\n";
  }
  return kOk;
}

int render(const std::string &csv, const std::string &axis_name, const std::string &norm_name,
           double z, std::string out) {
  const LoadedTrajectory loaded = read_trajectory_csv(csv);
  HeatmapAxis axis = loaded.geometry == Geometry::kTwoDDiagonal ? HeatmapAxis::kDiagonalVsZ
                                                                : HeatmapAxis::kChainVsZ;
  if (axis_name == "full-2d") axis = HeatmapAxis::kFullSlice;
  else if (axis_name == "diagonal") axis = HeatmapAxis::kDiagonalVsZ;
  else if (axis_name == "1d") axis = HeatmapAxis::kChainVsZ;
  else if (!axis_name.empty()) throw ConfigError("unknown axis '" + axis_name + "'");
  const Normalization norm = norm_name == "global" ? Normalization::kGlobal
                                                   : Normalization::kPerColumn;
  if (out.empty()) {
    out = std::filesystem::path(csv).replace_extension(".pgm").string();
  }
  try {
    write_pgm(out, render_heatmap(loaded.traj, loaded.geometry, axis, norm, z));
  } catch (const std::invalid_argument &e) {
    throw ConfigError(e.what());
  }
  std::cout << out << "\n";
  return kOk;
}

int analyze_file(const std::string &csv, const std::string &site, double threshold,
                 const std::string &out) {
  AnalyzeOptions options;
  if (!site.empty()) options.site = parse_site(site);
  options.threshold = threshold;
  const nlohmann::json result = analyze(read_trajectory_csv(csv), options);
  if (out.empty()) {
    std::cout << result.dump(2) << "\n";
  } else {
    std::ofstream f(out, std::ios::binary);
    if (!f) throw IoError("cannot write " + out);
    f << result.dump(2) << "\n";
  }
  return kOk;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Two-boson Bloch oscillation simulator for waveguide lattices"};
  app.require_subcommand(1);

  std::vector<std::string> configs;
  std::string out;
  int jobs = 1;
  auto *run = app.add_subcommand("run", "Run scenarios from config files");
  run->add_option("config", configs, "Scenario config file(s)")->required();
  run->add_option("--out", out, "Output directory");
  run->add_option("-j,--jobs", jobs, "Scenarios to run in parallel");

  std::string preset_name;
  bool print_config = false;
  auto *preset_cmd = app.add_subcommand("preset", "Run a built-in preset");
  preset_cmd->add_option("name", preset_name, "Preset name")->required();
  preset_cmd->add_option("--out", out, "Output directory");
  preset_cmd->add_flag("--print-config", print_config,
                       "Print the preset as a config file instead of running it");

  bool as_json = false;
  auto *presets_cmd = app.add_subcommand("presets", "List presets");
  presets_cmd->add_flag("--json", as_json, "Machine-readable output");

  std::string csv, axis, norm = "per-column";
  double z = 0.0;
  auto *render_cmd = app.add_subcommand("render", "Render a trajectory CSV as a P5 pixmap");
  render_cmd->add_option("trajectory", csv, "trajectory.csv")->required();
  render_cmd->add_option("--axis", axis, "full-2d | diagonal | 1d");
  render_cmd->add_option("--norm", norm, "per-column | global")
      ->check(CLI::IsMember({"per-column", "global"}));
  render_cmd->add_option("--z", z, "Propagation distance for full-2d frames (cm)");
  render_cmd->add_option("--out", out, "Output pixmap");

  std::string site;
  double threshold = kDefaultRefocusThreshold;
  auto *analyze_cmd = app.add_subcommand("analyze", "Observables from a trajectory CSV");
  analyze_cmd->add_option("trajectory", csv, "trajectory.csv")->required();
  analyze_cmd->add_option("--site", site, "Reference site n or n,m (default centre)");
  analyze_cmd->add_option("--threshold", threshold, "Refocus threshold");
  analyze_cmd->add_option("--out", out, "Write JSON here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfig;
  }

  try {
    if (*run) return run_configs(configs, out, jobs);
    if (*preset_cmd) {
      const ScenarioConfig cfg = preset(preset_name);
      if (print_config) {
        std::cout << to_config_text(cfg);
        return kOk;
      }
      print_run(run_scenario(cfg, out));
      return kOk;
    }
    if (*presets_cmd) return print_presets(as_json);
    if (*render_cmd) return render(csv, axis, norm, z, out);
    if (*analyze_cmd) return analyze_file(csv, site, threshold, out);
  } catch (const ConfigError &e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfig;
  } catch (const ResourceError &e) {
    std::cerr << "resource error: " << e.what() << "\n";
    return kResource;
  } catch (const IoError &e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return kIo;
  } catch (const std::invalid_argument &e) {
    std::cerr << "invalid argument: " << e.what() << "\n";
    return kConfig;
  } catch (const std::out_of_range &e) {
    std::cerr << "invalid argument: " << e.what() << "\n";
    return kConfig;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailure;
  }
  return kFailure;
}
