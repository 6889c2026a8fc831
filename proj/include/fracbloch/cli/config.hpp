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


#ifndef FRACBLOCH_CLI_CONFIG_HPP
#define FRACBLOCH_CLI_CONFIG_HPP

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "fracbloch/cli/pixmap.hpp"
#include "fracbloch/model.hpp"
#include "fracbloch/observables.hpp"
#include "fracbloch/photonics.hpp"

namespace fracbloch::cli {

enum class ModelKind { kFock, kSingle, kEffective };

struct WaveguideSource {
  WaveguideArraySpec spec;
  CouplingCalibration coupling;
  ForceMode force_mode = ForceMode::kCalibrated;
  ForceCalibration force_calibration;
  /// Bend the (linear) array with R * sqrt(2) instead of R.
  bool project_radius = false;
};

using ParameterSource = std::variant<ModelParams, WaveguideSource>;

struct ScenarioConfig {
  std::string name = "scenario";
  std::string description;
  ModelKind model = ModelKind::kFock;
  ParameterSource source = ModelParams{};
  /// Empty means the centre site; {n} on a chain, {n, m} on the pair lattice.
  std::vector<int> excitation;
  std::optional<double> z_max;  // defaults to the waveguide length
  double dz = 0.01;
  std::vector<std::string> observables;  // empty means every applicable one
  double refocus_threshold = kDefaultRefocusThreshold;
  double truncation_tolerance = kDefaultTruncationTolerance;
  Normalization normalization = Normalization::kPerColumn;
  std::vector<double> snapshots;
  std::string compare_preset;
  std::string output_dir;
};

/// Observables a scenario may request.
const std::vector<std::string> &known_observables();

const char *to_string(ModelKind kind);

/// Parses the sectioned key = value format (see config/schema.ini).
/// Unknown sections or keys, duplicates, malformed values and violated
/// invariants raise ConfigError carrying the offending line.
ScenarioConfig parse_config(const std::string &text);
ScenarioConfig load_config(const std::string &path);

/// Model parameters the scenario describes, mapping waveguide geometry
/// through the photonic calibration when needed.
PhotonicMapping resolve_params(const ScenarioConfig &config);

/// Lattice geometry the chosen model evolves on.
Geometry geometry_of(ModelKind kind);

/// z_max, falling back to the waveguide length.
double resolved_z_max(const ScenarioConfig &config);

/// Inverse of parse_config for every field it reads.
std::string to_config_text(const ScenarioConfig &config);

}  // namespace fracbloch::cli

#endif  // FRACBLOCH_CLI_CONFIG_HPP
