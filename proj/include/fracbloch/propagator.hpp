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


#ifndef FRACBLOCH_PROPAGATOR_HPP
#define FRACBLOCH_PROPAGATOR_HPP

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include "fracbloch/errors.hpp"
#include "fracbloch/model.hpp"
#include "fracbloch/trajectory.hpp"

namespace fracbloch {

/// Sample grid z_k = k dz for k dz <= z_max. z_max is appended when it falls
/// off the grid by more than rounding.
template <typename Real>
std::vector<Real> sample_grid(Real z_max, Real dz) {
  if (!(dz > Real(0)) || !(dz <= z_max) || !std::isfinite(z_max)) {
    throw std::invalid_argument("sampling requires 0 < dz <= z_max");
  }
  const auto steps = static_cast<long long>(std::floor(z_max / dz + Real(1e-9)));
  std::vector<Real> z;
  z.reserve(static_cast<std::size_t>(steps) + 2);
  for (long long k = 0; k <= steps; ++k) z.push_back(Real(k) * dz);
  if (z_max - z.back() > Real(1e-9) * dz) z.push_back(z_max);
  return z;
}

/// One-time eigendecomposition of a real symmetric generator, reused for
/// every sample: psi(z) = V exp(-i Lambda z) V^T psi0, i.e. i dpsi/dz = H psi.
/// Immutable after construction and safe to share across threads.
template <typename Real>
class PropagationPlan {
 public:
  using Complex = std::complex<Real>;
  using RealMatrix = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;
  using RealVector = Eigen::Matrix<Real, Eigen::Dynamic, 1>;
  using ComplexVector = Eigen::Matrix<Complex, Eigen::Dynamic, 1>;

  explicit PropagationPlan(const HermitianOperator<Real> &h,
                           std::string generator_id = {})
      : generator_id_(std::move(generator_id)) {
    if (h.rows() != h.cols() || h.rows() == 0) {
      throw std::invalid_argument("generator must be a non-empty square matrix");
    }
    detail::check_dimension(h.rows(), "propagation");
    for (Eigen::Index k = 0; k < h.size(); ++k) {
      if (!std::isfinite(h.data()[k])) {
        throw NumericError("non-finite generator entry", k);
      }
    }
    Eigen::SelfAdjointEigenSolver<RealMatrix> solver(h);
    if (solver.info() != Eigen::Success) {
      throw NumericError("eigendecomposition failed", -1);
    }
    energies_ = solver.eigenvalues();
    modes_ = solver.eigenvectors();
    if (generator_id_.empty()) {
      generator_id_ = "operator:dim=" + std::to_string(h.rows());
    }
  }

  Eigen::Index dim() const { return energies_.size(); }
  const RealVector &energies() const { return energies_; }
  const RealMatrix &modes() const { return modes_; }
  const std::string &generator_id() const { return generator_id_; }

  /// Coefficients of psi0 in the eigenbasis.
  ComplexVector project(const StateVector<Real> &psi0) const {
    check_dim(psi0);
    const auto &a = psi0.amplitudes();
    const RealVector re = modes_.transpose() * a.real();
    const RealVector im = modes_.transpose() * a.imag();
    ComplexVector c(dim());
    for (Eigen::Index k = 0; k < dim(); ++k) c(k) = Complex(re(k), im(k));
    return c;
  }

  ComplexVector synthesize(const ComplexVector &coefficients, Real z) const {
    ComplexVector phased(dim());
    for (Eigen::Index k = 0; k < dim(); ++k) {
      phased(k) = std::polar(Real(1), -energies_(k) * z) * coefficients(k);
    }
    const RealVector re = modes_ * phased.real();
    const RealVector im = modes_ * phased.imag();
    ComplexVector out(dim());
    for (Eigen::Index k = 0; k < dim(); ++k) out(k) = Complex(re(k), im(k));
    return out;
  }

  StateVector<Real> evolve(const StateVector<Real> &psi0, Real z) const {
    return StateVector<Real>(synthesize(project(psi0), z));
  }

  Trajectory<Real> propagate(const StateVector<Real> &psi0, Real z_max,
                             Real dz) const {
    Trajectory<Real> traj;
    traj.z = sample_grid(z_max, dz);
    traj.generator_id = generator_id_;
    traj.states.resize(dim(), static_cast<Eigen::Index>(traj.z.size()));
    const ComplexVector c = project(psi0);
    traj.states.col(0) = psi0.amplitudes();
    for (std::size_t k = 1; k < traj.z.size(); ++k) {
      traj.states.col(static_cast<Eigen::Index>(k)) = synthesize(c, traj.z[k]);
    }
    return traj;
  }

  /// <psi|H|psi> evaluated in the eigenbasis.
  Real energy(const StateVector<Real> &psi) const {
    return (project(psi).cwiseAbs2().array() * energies_.array()).sum();
  }

 private:
  void check_dim(const StateVector<Real> &psi) const {
    if (psi.dim() != dim()) {
      throw std::invalid_argument("state dimension " + std::to_string(psi.dim()) +
                                  " does not match generator dimension " +
                                  std::to_string(dim()));
    }
  }

  RealVector energies_;
  RealMatrix modes_;
  std::string generator_id_;
};

template <typename Real>
Trajectory<Real> propagate(const HermitianOperator<Real> &h,
                           const StateVector<Real> &psi0, Real z_max, Real dz,
                           std::string generator_id = {}) {
  if (h.rows() != psi0.dim()) {
    throw std::invalid_argument("state dimension does not match generator");
  }
  return PropagationPlan<Real>(h, std::move(generator_id)).propagate(psi0, z_max, dz);
}

/// |psi_site(z)|^2 at every sample.
ObservableSeries return_probability(const PopulationTrajectory &traj,
                                    Eigen::Index site);

template <typename Real>
ObservableSeries return_probability(const Trajectory<Real> &traj,
                                    Eigen::Index site) {
  return return_probability(traj.populations(), site);
}

}  // namespace fracbloch

#endif  // FRACBLOCH_PROPAGATOR_HPP
