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
#include <unsupported/Eigen/KroneckerProduct>

#include "fracbloch/model.hpp"
#include "fracbloch/observables.hpp"
#include "fracbloch/photonics.hpp"
#include "fracbloch/propagator.hpp"

using namespace fracbloch;

namespace {

WaveguideArraySpec square_array(double radius_cm) {
  WaveguideArraySpec spec;
  spec.shape = ArrayShape::kSquare;
  spec.n_guides = 15;
  spec.spacing_um = 19.0;
  spec.bend_radius_cm = radius_cm;
  spec.detuning = -4.0;
  return spec;
}

WaveguideArraySpec linear_array(double radius_cm) {
  WaveguideArraySpec spec;
  spec.shape = ArrayShape::kLinear;
  spec.n_guides = 23;
  spec.spacing_um = 19.0;
  spec.bend_radius_cm = radius_cm;
  return spec;
}

}  // namespace

TEST_CASE("straight square array maps to the calibrated couplings") {
  const PhotonicMapping m = waveguide_to_model(square_array(INFINITY), CouplingCalibration{});
  CHECK(m.params.kappa == 0.95);
  CHECK(m.params.kappa1 == 0.95);
  CHECK(m.params.rho == 0.3);
  CHECK(m.params.u0 == -4.0);
  CHECK(m.params.fd == 0.0);
  CHECK(m.params.n_sites == 15);
  CHECK_FALSE(m.extrapolated);
}

TEST_CASE("zero detuning and no next-nearest coupling factorize") {
  WaveguideArraySpec spec = square_array(400.0);
  spec.detuning = 0.0;
  spec.n_guides = 7;
  CouplingCalibration cal;
  cal.rho_ref = 0.0;
  const PhotonicMapping m = waveguide_to_model(spec, cal);
  const Operator h1 = build_single_particle_hamiltonian(7, m.params.kappa, m.params.fd);
  const Operator id = Operator::Identity(7, 7);
  const Operator sum = Eigen::kroneckerProduct(h1, id) + Eigen::kroneckerProduct(id, h1);
  CHECK((build_fock_hamiltonian(m.params) - sum).cwiseAbs().maxCoeff() <= 1e-15);
}

TEST_CASE("calibrated force") {
  const double at400 = curvature_to_force(square_array(400.0));
  CHECK(at400 == doctest::Approx(std::numbers::pi / 6.5).epsilon(1e-14));
  CHECK(at400 == doctest::Approx(0.4833).epsilon(1e-4));
  CHECK(curvature_to_force(square_array(200.0)) == doctest::Approx(0.9666).epsilon(1e-4));
  CHECK(curvature_to_force(square_array(INFINITY)) == 0.0);
  CHECK_THROWS_AS(curvature_to_force(square_array(400.0), ForceMode::kCalibrated, std::nullopt),
                  std::invalid_argument);
  CHECK_THROWS_AS(curvature_to_force(square_array(-1.0)), std::invalid_argument);
}

TEST_CASE("force is homogeneous of degree -1 in the radius") {
  for (ForceMode mode : {ForceMode::kCalibrated, ForceMode::kFirstPrinciples}) {
    for (double r : {50.0, 400.0, 1234.5}) {
      for (double lambda : {0.5, 2.0, 7.0}) {
        const double base = curvature_to_force(square_array(r), mode);
        const double scaled = curvature_to_force(square_array(lambda * r), mode);
        CHECK(scaled == doctest::Approx(base / lambda).epsilon(1e-12));
        CHECK(scaled > 0.0);
      }
    }
  }
}

TEST_CASE("first-principles force uses consistent units") {
  WaveguideArraySpec spec = square_array(400.0);
  spec.wavelength_nm = 633.0;
  spec.n_eff = 1.45;
  const double pitch_cm = 19.0e-4 / std::numbers::sqrt2;
  const double expected = 2.0 * std::numbers::pi * 1.45 * pitch_cm / (633.0e-7 * 400.0);
  CHECK(curvature_to_force(spec, ForceMode::kFirstPrinciples) ==
        doctest::Approx(expected).epsilon(1e-14));
}

TEST_CASE("single-particle radius projection") {
  CHECK(project_single_particle_radius(400.0) == doctest::Approx(565.685).epsilon(1e-6));
  CHECK(project_single_particle_radius(1.0) == doctest::Approx(std::numbers::sqrt2).epsilon(1e-15));
  CHECK_THROWS_AS(project_single_particle_radius(0.0), std::invalid_argument);
  CHECK_THROWS_AS(project_single_particle_radius(INFINITY), std::invalid_argument);

  for (double r : {100.0, 400.0, 900.0}) {
    for (ForceMode mode : {ForceMode::kCalibrated, ForceMode::kFirstPrinciples}) {
      const double square = curvature_to_force(square_array(r), mode);
      const double line = curvature_to_force(linear_array(project_single_particle_radius(r)), mode);
      CHECK(line == doctest::Approx(square).epsilon(1e-12));
    }
  }
}

TEST_CASE("spacing outside the calibration") {
  WaveguideArraySpec spec = square_array(400.0);
  spec.spacing_um = 21.0;
  CHECK_THROWS_AS(waveguide_to_model(spec, CouplingCalibration{}), std::invalid_argument);

  CouplingCalibration cal;
  cal.decay_gamma = 0.2;
  const PhotonicMapping m = waveguide_to_model(spec, cal);
  CHECK(m.extrapolated);
  CHECK(m.params.kappa == doctest::Approx(0.95 * std::exp(-0.4)).epsilon(1e-14));
  CHECK(m.params.rho == doctest::Approx(0.3 * std::exp(-0.4 * std::numbers::sqrt2)).epsilon(1e-14));
  CHECK(m.params.kappa < 0.95);
}

TEST_CASE("single-particle breathing agrees with the pair refocus") {
  const PhotonicMapping pair = waveguide_to_model(square_array(400.0), CouplingCalibration{});
  const PhotonicMapping single =
      waveguide_to_model(linear_array(project_single_particle_radius(400.0)), CouplingCalibration{});
  CHECK(single.params.fd == doctest::Approx(pair.params.fd).epsilon(1e-12));

  const Operator h1 = build_single_particle_hamiltonian(23, single.params.kappa, single.params.fd);
  const auto width = breathing_width(
      propagate(h1, StateVector<double>::localized(23, 11), 8.5, 0.01).populations(),
      Geometry::kOneD);
  const double single_half = *period_from_width_maximum(width).period_estimate / 2.0;

  const Operator heff = build_effective_hamiltonian(pair.params);
  const auto ret = return_probability(
      propagate(heff, StateVector<double>::localized(15, 7), 8.5, 0.01).populations(), 7);
  const RefocusReport r = find_refocus(ret, 0.8);
  REQUIRE_FALSE(r.refocus_positions.empty());
  CHECK(std::abs(single_half - r.refocus_positions.front()) <= 0.02 * r.refocus_positions.front());
}
