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


#ifndef FRACBLOCH_TRAJECTORY_HPP
#define FRACBLOCH_TRAJECTORY_HPP

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace fracbloch {

template <typename Real>
Real normalization_tolerance() {
  return std::max(Real(1e-12), Real(100) * std::numeric_limits<Real>::epsilon());
}

/// Complex amplitudes over lattice sites, normalized to one.
template <typename Real>
class StateVector {
 public:
  using Complex = std::complex<Real>;
  using Amplitudes = Eigen::Matrix<Complex, Eigen::Dynamic, 1>;

  /// Throws std::invalid_argument unless sum |a|^2 = 1 within tolerance.
  explicit StateVector(Amplitudes amplitudes) : amplitudes_(std::move(amplitudes)) {
    if (amplitudes_.size() == 0) {
      throw std::invalid_argument("state vector must have positive dimension");
    }
    const Real deviation = std::abs(amplitudes_.squaredNorm() - Real(1));
    if (!(deviation <= normalization_tolerance<Real>())) {
      throw std::invalid_argument("state vector is not normalized");
    }
  }

  static StateVector localized(Eigen::Index dim, Eigen::Index site) {
    if (site < 0 || site >= dim) {
      throw std::out_of_range("excitation site " + std::to_string(site) +
                              " outside dimension " + std::to_string(dim));
    }
    Amplitudes a = Amplitudes::Zero(dim);
    a(site) = Complex(1);
    return StateVector(std::move(a));
  }

  /// Rescales arbitrary nonzero amplitudes to unit norm.
  static StateVector normalized(const Amplitudes &raw) {
    const Real norm = raw.norm();
    if (!(norm > Real(0)) || !std::isfinite(norm)) {
      throw std::invalid_argument("cannot normalize a zero or non-finite vector");
    }
    return StateVector(raw / norm);
  }

  Eigen::Index dim() const { return amplitudes_.size(); }
  const Amplitudes &amplitudes() const { return amplitudes_; }
  Real norm_squared() const { return amplitudes_.squaredNorm(); }

 private:
  Amplitudes amplitudes_;
};

/// Site populations |psi|^2 sampled along z; what the observables consume.
/// Also the in-memory form of a trajectory CSV read back from disk.
struct PopulationTrajectory {
  std::vector<double> z;
  Eigen::MatrixXd probabilities;  // dim x samples

  Eigen::Index dim() const { return probabilities.rows(); }
  Eigen::Index samples() const { return probabilities.cols(); }
};

/// Sampled evolution: column k of `states` is psi(z[k]).
template <typename Real>
struct Trajectory {
  using Complex = std::complex<Real>;

  std::vector<Real> z;
  Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic> states;
  std::string generator_id;

  Eigen::Index dim() const { return states.rows(); }
  Eigen::Index samples() const { return states.cols(); }

  StateVector<Real> state(Eigen::Index k) const {
    return StateVector<Real>(states.col(k));
  }

  PopulationTrajectory populations() const {
    PopulationTrajectory out;
    out.z.assign(z.begin(), z.end());
    out.probabilities = states.cwiseAbs2().template cast<double>();
    return out;
  }
};

/// Scalar diagnostic along z. `flagged` marks samples where the value is
/// undefined (stored as NaN); `truncated` marks series whose trajectory put
/// more than the tolerated population on the lattice boundary.
struct ObservableSeries {
  std::vector<double> z;
  std::vector<double> values;
  std::string label;
  std::vector<bool> flagged;
  bool truncated = false;

  std::size_t size() const { return values.size(); }
};

}  // namespace fracbloch

#endif  // FRACBLOCH_TRAJECTORY_HPP
