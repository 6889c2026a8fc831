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

#include <doctest.h>

#include <cmath>
#include <numbers>

#include "fracbloch/model.hpp"
#include "fracbloch/reference.hpp"

using namespace fracbloch;
using namespace fracbloch::reference;

namespace {

// J_n(x) = sum_k (-1)^k (x/2)^{2k+n} / (k! (n+k)!), summed in log space.
double bessel_series(int n, double x) {
  double sum = 0.0;
  for (int k = 0; k < 80; ++k) {
    const double log_term = (2.0 * k + n) * std::log(x / 2.0) - std::lgamma(k + 1.0) -
                            std::lgamma(n + k + 1.0);
    sum += (k % 2 ? -1.0 : 1.0) * std::exp(log_term);
  }
  return sum;
}

}  // namespace

TEST_CASE("Bessel values against the power series and tabulated values") {
  for (int n : {0, 1, 2, 5, 10, 15}) {
    for (double x : {0.1, 1.0, 2.5, 5.0, 7.86}) {
      CAPTURE(n);
      CAPTURE(x);
      CHECK(bessel_j(n, x) == doctest::Approx(bessel_series(n, x)).epsilon(1e-9).scale(1.0));
    }
  }
  // Values from an arbitrary-precision evaluation.
  CHECK(bessel_j(0, 7.863) == doctest::Approx(0.2023554445883391).epsilon(1e-12));
  CHECK(bessel_j(3, 2.5) == doctest::Approx(0.21660039103911352).epsilon(1e-12));
  CHECK(bessel_j(20, 7.86) == doctest::Approx(1.5022228780172906e-07).epsilon(1e-9));
  CHECK(bessel_j(-3, 2.5) == doctest::Approx(-0.21660039103911352).epsilon(1e-12));
  CHECK(bessel_j(3, -2.5) == doctest::Approx(-0.21660039103911352).epsilon(1e-12));
}

TEST_CASE("analytic Wannier-Stark amplitude") {
  const double kappa = 0.95, fd = 0.4833;
  const double period = 2.0 * std::numbers::pi / fd;
  for (int n : {-2, 0, 3}) {
    CHECK(analytic_ws_amplitude({kappa, fd, 0.0, n}) == (n == 0 ? 1.0 : 0.0));
    CHECK(analytic_ws_amplitude({kappa, fd, period, n}) ==
          doctest::Approx(n == 0 ? 1.0 : 0.0).epsilon(1e-12).scale(1.0));
  }
  // zeta(6.5) = (4 kappa / fd) |sin(fd 6.5 / 2)| = 7.862611194565957
  CHECK(analytic_ws_amplitude({kappa, fd, 6.5, 0}) ==
        doctest::Approx(0.20243818998197421).epsilon(1e-10));
  CHECK_THROWS_AS(analytic_ws_amplitude({kappa, 0.0, 1.0, 0}), std::invalid_argument);
}

TEST_CASE("Bessel sum rule and periodicity") {
  const double kappa = 0.95, fd = 0.4833;
  const double zeta_max = 4.0 * kappa / fd;
  const int reach = static_cast<int>(std::ceil(3.0 * zeta_max));
  const double period = 2.0 * std::numbers::pi / fd;
  for (double z = 0.0; z < period; z += 0.37) {
    double total = 0.0;
    for (int n = -reach; n <= reach; ++n) total += std::pow(analytic_ws_amplitude({kappa, fd, z, n}), 2);
    CHECK(std::abs(total - 1.0) <= 1e-8);
    for (int n : {0, 4, -7}) {
      CHECK(analytic_ws_amplitude({kappa, fd, z + period, n}) ==
            doctest::Approx(analytic_ws_amplitude({kappa, fd, z, n})).epsilon(1e-9).scale(1.0));
    }
  }
}

TEST_CASE("two-site coupler") {
  CHECK(two_site_coupler(0.95, 0.0) == std::pair{1.0, 0.0});
  const auto [half_in, half_cross] = two_site_coupler(1.0, std::numbers::pi / 4.0);
  CHECK(half_in == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(half_cross == doctest::Approx(0.5).epsilon(1e-15));
  const auto [p_in, p_cross] = two_site_coupler(0.95, 1.0);
  CHECK(p_in == doctest::Approx(std::pow(std::cos(0.95), 2)).epsilon(1e-15));
  CHECK(p_cross == doctest::Approx(std::pow(std::sin(0.95), 2)).epsilon(1e-15));
  for (double z = 0.0; z < 10.0; z += 0.013) {
    const auto [a, b] = two_site_coupler(0.95, z);
    CHECK(a + b == 1.0);
  }
  CHECK_THROWS_AS(two_site_coupler(-1.0, 1.0), std::invalid_argument);
}

TEST_CASE("bond enumeration, hand-enumerable lattices") {
  SUBCASE("N=2, no defects") {
    const FockBondList list = enumerate_fock_bonds(ModelParams::photonic(2, 0.7, 0.0, 0.0, 0.0));
    CHECK(list.bonds.size() == 4);
    for (const auto &b : list.bonds) CHECK(b.amplitude == -0.7);
    CHECK(list.energies.size() == 4);
    for (const auto &e : list.energies) CHECK(e.energy == 0.0);
  }
  SUBCASE("N=3 with u0 and rho") {
    const FockBondList list = enumerate_fock_bonds(ModelParams::photonic(3, 1.0, 0.1, 1.0, 0.0));
    const auto has_bond = [&](SiteIndex2D a, SiteIndex2D b, double amp) {
      for (const auto &bond : list.bonds) {
        if (bond.a == a && bond.b == b && bond.amplitude == amp) return true;
      }
      return false;
    };
    CHECK(has_bond({0, 0}, {1, 1}, -0.1));
    CHECK(has_bond({1, 1}, {2, 2}, -0.1));
    for (const auto &e : list.energies) {
      CHECK(e.energy == (e.site.n == e.site.m ? 1.0 : 0.0));
    }
    // 12 nearest-neighbour bonds plus 2 pair bonds on a 3x3 grid.
    CHECK(list.bonds.size() == 14);
  }
}

TEST_CASE("bond list assembles to a symmetric matrix with each bond once") {
  const ModelParams p = ModelParams::photonic(15, 0.95, 0.3, -4.0, 0.4833);
  const FockBondList list = enumerate_fock_bonds(p);
  for (std::size_t i = 0; i < list.bonds.size(); ++i) {
    for (std::size_t j = i + 1; j < list.bonds.size(); ++j) {
      const auto &x = list.bonds[i];
      const auto &y = list.bonds[j];
      const bool same = (x.a == y.a && x.b == y.b) || (x.a == y.b && x.b == y.a);
      REQUIRE_FALSE(same);
    }
  }
  const Operator h = assemble(list);
  CHECK(is_hermitian(h));
  CHECK(h == build_fock_hamiltonian(p));
}
