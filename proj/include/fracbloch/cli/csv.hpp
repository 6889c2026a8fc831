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


#ifndef FRACBLOCH_CLI_CSV_HPP
#define FRACBLOCH_CLI_CSV_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "fracbloch/observables.hpp"
#include "fracbloch/trajectory.hpp"

namespace fracbloch::cli {

// Trajectory CSV layouts (UTF-8, LF):
//   pair lattice, long form:  z_cm,n,m,probability
//   chain, wide form:         z_cm,p0,p1,...,p{N-1}
// z in cm, probabilities dimensionless in [0, 1].

void write_trajectory_csv(std::ostream &out, const PopulationTrajectory &traj,
                          Geometry geometry);
void write_trajectory_csv(const std::string &path, const PopulationTrajectory &traj,
                          Geometry geometry);

struct LoadedTrajectory {
  PopulationTrajectory traj;
  Geometry geometry = Geometry::kOneD;
};

/// Reads either layout back; throws IoError on malformed input.
LoadedTrajectory read_trajectory_csv(std::istream &in);
LoadedTrajectory read_trajectory_csv(const std::string &path);

/// z_cm followed by one column per series (all sharing the same z grid).
void write_observables_csv(const std::string &path,
                           const std::vector<ObservableSeries> &series);

}  // namespace fracbloch::cli

#endif  // FRACBLOCH_CLI_CSV_HPP
