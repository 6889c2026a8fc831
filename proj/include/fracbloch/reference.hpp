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


#ifndef FRACBLOCH_REFERENCE_HPP
#define FRACBLOCH_REFERENCE_HPP

#include <utility>
#include <vector>

#include "fracbloch/model.hpp"

namespace fracbloch::reference {

/// Integer-order Bessel function of the first kind, any sign of n and x.
double bessel_j(int n, double x);

struct BesselOracleParams {
  double kappa = 0.0;
  double fd = 0.0;
  double z = 0.0;
  int n = 0;  // offset from the excited site
};

/// |A_n(z)| for a single-site excitation on an infinite tilted chain:
/// |J_n(zeta)|, zeta = (4 kappa / fd) |sin(fd z / 2)|.
double analytic_ws_amplitude(const BesselOracleParams &p);

/// Populations (input guide, other guide) of a directional coupler.
std::pair<double, double> two_site_coupler(double kappa, double z);

struct FockBond {
  SiteIndex2D a;
  SiteIndex2D b;
  double amplitude = 0.0;
};

struct FockSiteEnergy {
  SiteIndex2D site;
  double energy = 0.0;
};

struct FockBondList {
  int n_sites = 0;
  std::vector<FockBond> bonds;  // each undirected bond once
  std::vector<FockSiteEnergy> energies;
};

/// Bond and site-energy list of the two-particle lattice, enumerated pair by
/// pair from the lattice rules. Shares no code with build_fock_hamiltonian.
FockBondList enumerate_fock_bonds(const ModelParams &params);

/// Dense matrix assembled from a bond list.
Operator assemble(const FockBondList &list);

}  // namespace fracbloch::reference

#endif  // FRACBLOCH_REFERENCE_HPP
