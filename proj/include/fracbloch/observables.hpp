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


#ifndef FRACBLOCH_OBSERVABLES_HPP
#define FRACBLOCH_OBSERVABLES_HPP

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "fracbloch/model.hpp"
#include "fracbloch/trajectory.hpp"

namespace fracbloch {

enum class Geometry {
  kOneD,          // chain of N sites
  kTwoDDiagonal,  // N x N two-particle lattice, read along n == m
};

inline constexpr double kDefaultRefocusThreshold = 0.8;
inline constexpr double kDefaultTruncationTolerance = 1e-3;

/// Side N of an N x N flattened lattice; throws std::invalid_argument when
/// `dim` is not a perfect square.
int lattice_side(Eigen::Index dim);

/// Sum over n of |c_{n,n}|^2.
ObservableSeries diagonal_confinement(const PopulationTrajectory &traj,
                                      int n_sites);

/// RMS displacement (site units) from `origin`, which defaults to the
/// centre site. On the 2D lattice the diagonal populations are renormalized
/// by the confinement first; samples with no diagonal population are
/// flagged and hold NaN.
ObservableSeries breathing_width(const PopulationTrajectory &traj,
                                 Geometry geometry,
                                 std::optional<int> origin = std::nullopt);

/// 1 / sum p^2 over the same populations breathing_width uses.
ObservableSeries participation_ratio(const PopulationTrajectory &traj,
                                     Geometry geometry);

/// Population on boundary sites (chain ends, or the rim of the N x N
/// lattice).
ObservableSeries edge_population(const PopulationTrajectory &traj,
                                 Geometry geometry);

/// Marks `series` truncated when any edge sample exceeds `tolerance`.
/// Returns the flag.
bool apply_truncation_guard(ObservableSeries &series,
                            const ObservableSeries &edge,
                            double tolerance = kDefaultTruncationTolerance);

struct RefocusReport {
  std::vector<double> refocus_positions;
  std::vector<double> peak_values;
  std::optional<double> period_estimate;
  std::optional<double> frequency_estimate;
  /// z of the first sample when it is itself a peak above threshold; counts
  /// as the start of the first period.
  std::optional<double> origin_anchor;
  bool truncated = false;
};

/// Refocus events of a return-probability series: each return above
/// `threshold` after a drop below it contributes its highest interior local
/// maximum, refined by a parabola through the three surrounding samples.
/// The period is the mean gap between consecutive refocus positions
/// (anchored at z_0 when the series starts on a peak); truncated series get
/// no period.
RefocusReport find_refocus(const ObservableSeries &series, double threshold);

/// Single-particle report for devices shorter than one revival: the period
/// is twice the (refined) position of the breathing-width maximum.
RefocusReport period_from_width_maximum(const ObservableSeries &width);

/// Pair frequency over single-particle frequency.
double frequency_ratio(const RefocusReport &pair_report,
                       const RefocusReport &single_report);

struct SpacingStats {
  double mean = 0.0;
  double spread = 0.0;  // standard deviation of consecutive differences
};

/// Statistics of consecutive eigenvalue gaps in the central
/// `interior_fraction` of the sorted spectrum of a chain operator.
SpacingStats wannier_stark_spacing(const Operator &h, double interior_fraction);

/// Position and value of the parabola vertex through three samples around
/// index `k`; falls back to the sample itself when the fit is not concave.
std::pair<double, double> refine_peak(const std::vector<double> &z,
                                      const std::vector<double> &values,
                                      std::size_t k);

}  // namespace fracbloch

#endif  // FRACBLOCH_OBSERVABLES_HPP
