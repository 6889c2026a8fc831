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


#ifndef FRACBLOCH_CLI_SCENARIO_HPP
#define FRACBLOCH_CLI_SCENARIO_HPP

#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "fracbloch/cli/config.hpp"
#include "fracbloch/cli/csv.hpp"
#include "fracbloch/observables.hpp"
#include "fracbloch/propagator.hpp"

namespace fracbloch::cli {

/// Everything a scenario computes before anything touches the disk.
struct SimulationResult {
  ScenarioConfig config;
  ModelParams params;
  bool extrapolated = false;
  Geometry geometry = Geometry::kOneD;
  std::vector<int> excitation;  // resolved site coordinates
  Eigen::Index excitation_index = 0;
  Trajectory<double> trajectory;
  PopulationTrajectory populations;

  ObservableSeries return_probability;
  ObservableSeries width;
  ObservableSeries participation;
  ObservableSeries edge;
  std::optional<ObservableSeries> confinement;

  RefocusReport refocus;       // from the return probability
  RefocusReport width_period;  // twice the width-maximum position
  /// Pair models use the refocus period; chains fall back to the width
  /// period when no revival fits in the device.
  std::optional<double> frequency_estimate;
  double max_edge_population = 0.0;
  bool truncated = false;
};

/// Generator for the scenario's model kind.
Operator build_operator(ModelKind kind, const ModelParams &params);
std::string generator_id(ModelKind kind, const ModelParams &params);

SimulationResult simulate(const ScenarioConfig &config);

struct RunSummary {
  nlohmann::json json;
  std::vector<std::string> files;  // paths relative to the output directory
  std::string output_dir;
};

/// Simulates, then writes trajectory.csv, observables.csv, heatmap.pgm,
/// one snapshot_<z>.pgm per requested snapshot and summary.json into the
/// output directory (override > config > "out/<name>").
RunSummary run_scenario(const ScenarioConfig &config,
                        const std::string &output_override = {});

/// Summary for a scenario already simulated, with an optional companion run
/// supplying the frequency ratio.
nlohmann::json summarize(const SimulationResult &result,
                         const SimulationResult *companion = nullptr);

/// Pair frequency over chain frequency for two simulated scenarios, when
/// both carry estimates.
std::optional<double> companion_ratio(const SimulationResult &a,
                                      const SimulationResult &b);

struct AnalyzeOptions {
  std::vector<int> site;  // empty: centre (or centre diagonal site)
  double threshold = kDefaultRefocusThreshold;
  double truncation_tolerance = kDefaultTruncationTolerance;
};

/// Observables recomputed from a trajectory CSV.
nlohmann::json analyze(const LoadedTrajectory &loaded, const AnalyzeOptions &options);

struct PresetInfo {
  std::string name;
  std::string description;
  nlohmann::json parameters;
};

std::vector<std::string> preset_names();
/// Throws ConfigError for an unknown name.
ScenarioConfig preset(const std::string &name);
std::vector<PresetInfo> list_presets();

}  // namespace fracbloch::cli

#endif  // FRACBLOCH_CLI_SCENARIO_HPP
