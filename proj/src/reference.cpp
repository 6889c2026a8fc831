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


#include "fracbloch/reference.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace fracbloch::reference {

double bessel_j(int n, double x) {
  // J_{-n} = (-1)^n J_n and J_n(-x) = (-1)^n J_n(x).
  const int order = std::abs(n);
  double sign = (n < 0 && (order % 2) == 1) ? -1.0 : 1.0;
  if (x < 0.0 && (order % 2) == 1) sign = -sign;
  return sign * std::cyl_bessel_j(static_cast<double>(order), std::abs(x));
}

double analytic_ws_amplitude(const BesselOracleParams &p) {
  if (!(p.fd > 0.0)) {
    throw std::invalid_argument("analytic Wannier-Stark solution needs fd > 0");
  }
  const double zeta = (4.0 * p.kappa / p.fd) * std::abs(std::sin(p.fd * p.z / 2.0));
  return std::abs(bessel_j(p.n, zeta));
}

std::pair<double, double> two_site_coupler(double kappa, double z) {
  if (kappa < 0.0) throw std::invalid_argument("kappa must be >= 0");
  const double c = std::cos(kappa * z);
  const double p_in = c * c;
  return {p_in, 1.0 - p_in};
}

FockBondList enumerate_fock_bonds(const ModelParams &params) {
  params.validate();
  const int size = params.n_sites;
  detail::check_dimension(static_cast<Eigen::Index>(size) * size,
                          "bond enumeration");
  const int origin = center_site(size);

  FockBondList list;
  list.n_sites = size;
  std::vector<SiteIndex2D> sites;
  for (int n = 0; n < size; ++n) {
    for (int m = 0; m < size; ++m) sites.push_back({n, m});
  }

  for (const SiteIndex2D &s : sites) {
    // Each particle contributes its own tilt energy.
    double energy = params.fd * double(s.n - origin) + params.fd * double(s.m - origin);
    const int separation = std::abs(s.n - s.m);
    if (separation == 0) energy += params.u0;
    if (separation == 1) energy += params.near_diagonal_defect;
    list.energies.push_back({s, energy});
  }

  const auto near_band = [&](const SiteIndex2D &s, int width) {
    return std::abs(s.n - s.m) <= width;
  };
  for (std::size_t i = 0; i < sites.size(); ++i) {
    for (std::size_t j = i + 1; j < sites.size(); ++j) {
      const SiteIndex2D &a = sites[i];
      const SiteIndex2D &b = sites[j];
      const int dn = b.n - a.n;
      const int dm = b.m - a.m;
      if (std::abs(dn) + std::abs(dm) == 1) {
        const int width =
            params.kappa1_bonds == Kappa1Bonds::kMainDiagonalIncident ? 0 : 1;
        const bool corrected = near_band(a, width) || near_band(b, width);
        list.bonds.push_back({a, b, corrected ? -params.kappa1 : -params.kappa});
      } else if (dn == 1 && dm == 1 && a.n == a.m && params.rho != 0.0) {
        list.bonds.push_back({a, b, -params.rho});
      }
    }
  }
  return list;
}

Operator assemble(const FockBondList &list) {
  const int size = list.n_sites;
  const Eigen::Index dim = static_cast<Eigen::Index>(size) * size;
  Operator h = Operator::Zero(dim, dim);
  for (const FockSiteEnergy &e : list.energies) {
    h(e.site.flatten(size), e.site.flatten(size)) += e.energy;
  }
  for (const FockBond &bond : list.bonds) {
    const Eigen::Index i = bond.a.flatten(size);
    const Eigen::Index j = bond.b.flatten(size);
    h(i, j) += bond.amplitude;
    h(j, i) += bond.amplitude;
  }
  return h;
}

}  // namespace fracbloch::reference
