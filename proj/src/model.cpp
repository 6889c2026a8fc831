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


#include "fracbloch/model.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <limits>

namespace fracbloch {

namespace {

constexpr std::size_t kDefaultDimensionCap = 4096;

bool close(double a, double b) {
  return std::abs(a - b) <= 1e-12 * std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace

ModelParams ModelParams::photonic(int n_sites, double kappa, double rho,
                                  double u0, double fd) {
  ModelParams p;
  p.n_sites = n_sites;
  p.kappa = kappa;
  p.kappa1 = kappa;
  p.rho = rho;
  p.u0 = u0;
  p.fd = fd;
  p.validate();
  return p;
}

ModelParams ModelParams::extended_bose_hubbard(int n_sites, double j_hop,
                                               double eps, double u0,
                                               double fd) {
  ModelParams p;
  p.n_sites = n_sites;
  p.eps = eps;
  p.j_hop = j_hop;
  p.kappa = eps * j_hop / 2.0;
  p.kappa1 = p.kappa - u0 * std::pow(eps, 1.5);
  p.rho = -2.0 * u0 * eps * eps;
  p.near_diagonal_defect = 2.0 * eps * eps * u0;
  p.u0 = u0;
  p.fd = fd;
  p.validate();
  return p;
}

void ModelParams::validate() const {
  if (n_sites < 2) {
    throw std::invalid_argument("n_sites must be >= 2, got " +
                                std::to_string(n_sites));
  }
  for (double v : {kappa, kappa1, rho, u0, near_diagonal_defect, fd}) {
    if (!std::isfinite(v)) throw std::invalid_argument("non-finite model rate");
  }
  if (kappa < 0.0) throw std::invalid_argument("kappa must be >= 0");
  if (fd < 0.0) throw std::invalid_argument("fd must be >= 0");
  if (eps && !(*eps >= 0.0 && *eps < 1.0)) {
    throw std::invalid_argument("eps must lie in [0, 1)");
  }
  if (eps && j_hop) {
    const double e = *eps;
    const double expected_kappa = e * *j_hop / 2.0;
    if (!close(kappa, expected_kappa)) {
      throw std::invalid_argument("kappa inconsistent with eps*J/2");
    }
    if (!close(kappa1, expected_kappa - u0 * std::pow(e, 1.5))) {
      throw std::invalid_argument("kappa1 inconsistent with kappa - u0*eps^1.5");
    }
    if (!close(rho, -2.0 * u0 * e * e)) {
      throw std::invalid_argument("rho inconsistent with -2*u0*eps^2");
    }
    if (!close(near_diagonal_defect, 2.0 * e * e * u0)) {
      throw std::invalid_argument(
          "near-diagonal defect inconsistent with 2*eps^2*u0");
    }
  }
}

std::size_t dimension_cap() {
  const char *env = std::getenv("FRACBLOCH_DIM_CAP");
  if (env == nullptr || *env == '\0') return kDefaultDimensionCap;
  errno = 0;
  char *end = nullptr;
  const unsigned long long v = std::strtoull(env, &end, 10);
  if (errno != 0 || end == env || *end != '\0' || v == 0) {
    return kDefaultDimensionCap;
  }
  return static_cast<std::size_t>(v);
}

double kappa_eff(double kappa, double rho, double u0) {
  if (u0 == 0.0) {
    throw SingularParameterError(
        "kappa_eff undefined for u0 == 0: second-order tunneling diverges");
  }
  return -2.0 * kappa * kappa / u0 + rho;
}

Eigen::PermutationMatrix<Eigen::Dynamic, Eigen::Dynamic, int> swap_permutation(
    int n_sites) {
  const Eigen::Index dim = static_cast<Eigen::Index>(n_sites) * n_sites;
  Eigen::PermutationMatrix<Eigen::Dynamic, Eigen::Dynamic, int> p(dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    const SiteIndex2D s = SiteIndex2D::unflatten(i, n_sites);
    p.indices()(i) = static_cast<int>(SiteIndex2D{s.m, s.n}.flatten(n_sites));
  }
  return p;
}

}  // namespace fracbloch
