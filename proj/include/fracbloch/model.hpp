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


#ifndef FRACBLOCH_MODEL_HPP
#define FRACBLOCH_MODEL_HPP

#include <Eigen/Dense>
#include <cstddef>
#include <cstdlib>
#include <optional>
#include <stdexcept>
#include <string>

#include "fracbloch/errors.hpp"

namespace fracbloch {

/// Dense matrix form of a lattice Hamiltonian. Every builder in this header
/// emits a real symmetric matrix; complex scalars are accepted for callers
/// that want to add non-real couplings themselves.
template <typename Scalar>
using HermitianOperator = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using Operator = HermitianOperator<double>;

/// Which nearest-neighbour bonds of the two-particle lattice carry kappa1.
enum class Kappa1Bonds {
  kMainDiagonalIncident,  // (n,n) to its four neighbours
  kThreeDiagonal,         // any bond touching a site with |n-m| <= 1
};

/// Physical rates of the two-boson lattice, in cm^-1 (z plays the role of
/// time). Build with `photonic` when the couplings are measured directly, or
/// with `extended_bose_hubbard` when J and eps are the inputs.
struct ModelParams {
  double kappa = 0.0;
  double kappa1 = 0.0;
  double rho = 0.0;
  double u0 = 0.0;
  /// Site energy on the |n-m| = 1 diagonals; 2 eps^2 u0 in EBH mode.
  double near_diagonal_defect = 0.0;
  std::optional<double> eps;
  std::optional<double> j_hop;
  double fd = 0.0;
  int n_sites = 2;
  Kappa1Bonds kappa1_bonds = Kappa1Bonds::kMainDiagonalIncident;

  static ModelParams photonic(int n_sites, double kappa, double rho, double u0,
                              double fd);

  /// kappa = eps J / 2, kappa1 = kappa - u0 eps^{3/2}, rho = -2 u0 eps^2,
  /// near-diagonal defect 2 eps^2 u0.
  static ModelParams extended_bose_hubbard(int n_sites, double j_hop,
                                           double eps, double u0, double fd);

  /// Throws std::invalid_argument on a violated invariant, including an
  /// inconsistent eps/J parameterization.
  void validate() const;
};

/// Coordinates (n, m) of the two particles; flattened as n * N + m.
struct SiteIndex2D {
  int n = 0;
  int m = 0;

  Eigen::Index flatten(int n_sites) const {
    return static_cast<Eigen::Index>(n) * n_sites + m;
  }
  static SiteIndex2D unflatten(Eigen::Index index, int n_sites) {
    return {static_cast<int>(index / n_sites), static_cast<int>(index % n_sites)};
  }
  bool on_main_diagonal() const { return n == m; }
  friend bool operator==(const SiteIndex2D &, const SiteIndex2D &) = default;
};

/// Largest operator dimension the builders and the propagator accept.
/// Defaults to 4096; FRACBLOCH_DIM_CAP overrides it.
std::size_t dimension_cap();

/// Excited waveguide; carries tilt energy zero.
constexpr int center_site(int n_sites) { return n_sites / 2; }

/// Effective hopping of the bound pair: second-order tunneling plus direct
/// pair tunneling.
double kappa_eff(double kappa, double rho, double u0);

/// Permutation (n,m) -> (m,n) on the flattened two-particle lattice.
Eigen::PermutationMatrix<Eigen::Dynamic, Eigen::Dynamic, int> swap_permutation(
    int n_sites);

namespace detail {

inline void check_dimension(Eigen::Index dim, const char *what) {
  const auto cap = dimension_cap();
  if (dim < 0 || static_cast<std::size_t>(dim) > cap) {
    throw ResourceError(std::string(what) + " needs dimension " +
                            std::to_string(dim),
                        cap);
  }
}

}  // namespace detail

/// Tilted tight-binding chain with open ends:
/// H[n][n+-1] = -kappa, H[n][n] = fd (n - n0).
template <typename Scalar = double>
HermitianOperator<Scalar> build_single_particle_hamiltonian(int n_sites,
                                                            Scalar kappa,
                                                            Scalar fd) {
  if (n_sites < 2) {
    throw std::invalid_argument("n_sites must be >= 2, got " +
                                std::to_string(n_sites));
  }
  if (!(Eigen::numext::real(kappa) >= 0)) {
    throw std::invalid_argument("kappa must be >= 0");
  }
  detail::check_dimension(n_sites, "single-particle operator");

  const int origin = center_site(n_sites);
  HermitianOperator<Scalar> h = HermitianOperator<Scalar>::Zero(n_sites, n_sites);
  for (int n = 0; n < n_sites; ++n) {
    h(n, n) = fd * Scalar(n - origin);
    if (n + 1 < n_sites) {
      h(n, n + 1) = -kappa;
      h(n + 1, n) = -kappa;
    }
  }
  return h;
}

/// Two bosons on a chain of N sites as one particle on an N x N lattice.
///
/// Starts from the Kronecker sum of two tilted chains and then applies the
/// interaction fingerprints: u0 on the main diagonal, the near-diagonal
/// defect on |n-m| = 1, kappa1 on the bonds selected by `kappa1_bonds`, and
/// rho between consecutive main-diagonal sites.
template <typename Scalar = double>
HermitianOperator<Scalar> build_fock_hamiltonian(const ModelParams &params) {
  params.validate();
  const int size = params.n_sites;
  const Eigen::Index dim = static_cast<Eigen::Index>(size) * size;
  detail::check_dimension(dim, "two-particle operator");

  const HermitianOperator<Scalar> chain = build_single_particle_hamiltonian<Scalar>(
      size, Scalar(params.kappa), Scalar(params.fd));
  HermitianOperator<Scalar> h = HermitianOperator<Scalar>::Zero(dim, dim);
  // H1 (x) I + I (x) H1
  for (int n = 0; n < size; ++n) {
    for (int np = 0; np < size; ++np) {
      if (chain(n, np) == Scalar(0)) continue;
      for (int m = 0; m < size; ++m) {
        h(SiteIndex2D{n, m}.flatten(size), SiteIndex2D{np, m}.flatten(size)) +=
            chain(n, np);
        h(SiteIndex2D{m, n}.flatten(size), SiteIndex2D{m, np}.flatten(size)) +=
            chain(n, np);
      }
    }
  }

  const auto band = [&](const SiteIndex2D &s) { return std::abs(s.n - s.m); };
  const auto uses_kappa1 = [&](const SiteIndex2D &a, const SiteIndex2D &b) {
    if (params.kappa1_bonds == Kappa1Bonds::kMainDiagonalIncident) {
      return band(a) == 0 || band(b) == 0;
    }
    return band(a) <= 1 || band(b) <= 1;
  };

  for (Eigen::Index i = 0; i < dim; ++i) {
    const SiteIndex2D site = SiteIndex2D::unflatten(i, size);
    if (band(site) == 0) h(i, i) += Scalar(params.u0);
    if (band(site) == 1) h(i, i) += Scalar(params.near_diagonal_defect);

    const SiteIndex2D right{site.n + 1, site.m};
    const SiteIndex2D up{site.n, site.m + 1};
    for (const SiteIndex2D &other : {right, up}) {
      if (other.n >= size || other.m >= size) continue;
      if (!uses_kappa1(site, other)) continue;
      const Eigen::Index j = other.flatten(size);
      h(i, j) = Scalar(-params.kappa1);
      h(j, i) = Scalar(-params.kappa1);
    }
  }

  for (int n = 0; n + 1 < size; ++n) {
    const Eigen::Index a = SiteIndex2D{n, n}.flatten(size);
    const Eigen::Index b = SiteIndex2D{n + 1, n + 1}.flatten(size);
    h(a, b) = Scalar(-params.rho);
    h(b, a) = Scalar(-params.rho);
  }
  return h;
}

/// Bound-pair chain: single-particle structure with kappa -> kappa_eff and
/// fd -> 2 fd. Throws SingularParameterError when u0 == 0.
template <typename Scalar = double>
HermitianOperator<Scalar> build_effective_hamiltonian(const ModelParams &params) {
  params.validate();
  const double hopping = kappa_eff(params.kappa, params.rho, params.u0);
  // A negative kappa_eff is a gauge choice away from |kappa_eff|; keep the
  // sign so spectra match the pair lattice, bypassing the kappa >= 0 guard.
  HermitianOperator<Scalar> h = build_single_particle_hamiltonian<Scalar>(
      params.n_sites, Scalar(0), Scalar(2.0 * params.fd));
  for (int n = 0; n + 1 < params.n_sites; ++n) {
    h(n, n + 1) = Scalar(-hopping);
    h(n + 1, n) = Scalar(-hopping);
  }
  return h;
}

/// Entrywise exact check of H == H^dagger.
template <typename Derived>
bool is_hermitian(const Eigen::MatrixBase<Derived> &h) {
  if (h.rows() != h.cols()) return false;
  for (Eigen::Index i = 0; i < h.rows(); ++i) {
    for (Eigen::Index j = i; j < h.cols(); ++j) {
      if (h(i, j) != Eigen::numext::conj(h(j, i))) return false;
    }
  }
  return true;
}

}  // namespace fracbloch

#endif  // FRACBLOCH_MODEL_HPP
