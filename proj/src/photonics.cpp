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


#include "fracbloch/photonics.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace fracbloch {

namespace {

constexpr double kUmToCm = 1e-4;
constexpr double kNmToCm = 1e-7;

}  // namespace

void WaveguideArraySpec::validate() const {
  if (n_guides < 2) throw std::invalid_argument("array needs at least 2 guides");
  if (!(spacing_um > 0.0)) throw std::invalid_argument("spacing must be > 0");
  if (!(length_cm > 0.0)) throw std::invalid_argument("length must be > 0");
  if (!(bend_radius_cm > 0.0)) {
    throw std::invalid_argument("bend radius must be > 0 or infinite");
  }
  if (!std::isfinite(detuning)) throw std::invalid_argument("non-finite detuning");
  if (!(wavelength_nm > 0.0) || !(n_eff > 0.0)) {
    throw std::invalid_argument("wavelength and n_eff must be > 0");
  }
}

double bending_pitch_um(ArrayShape shape, double spacing_um) {
  return shape == ArrayShape::kSquare ? spacing_um / std::numbers::sqrt2
                                      : spacing_um;
}

double curvature_to_force(const WaveguideArraySpec &spec, ForceMode mode,
                          const std::optional<ForceCalibration> &calibration) {
  spec.validate();
  if (std::isinf(spec.bend_radius_cm)) return 0.0;
  const double pitch = bending_pitch_um(spec.shape, spec.spacing_um);
  if (mode == ForceMode::kFirstPrinciples) {
    return 2.0 * std::numbers::pi * spec.n_eff * pitch * kUmToCm /
           (spec.wavelength_nm * kNmToCm * spec.bend_radius_cm);
  }
  if (!calibration) {
    throw std::invalid_argument("calibrated force mode needs a calibration point");
  }
  const ForceCalibration &cal = *calibration;
  if (!(cal.l_foc_cm > 0.0) || !(cal.radius_cm > 0.0) || !(cal.spacing_um > 0.0) ||
      std::isinf(cal.radius_cm)) {
    throw std::invalid_argument("invalid force calibration");
  }
  // The pair on the diagonal refocuses after 2 pi / (2 Fd) = l_foc.
  const double fd_cal = std::numbers::pi / cal.l_foc_cm;
  const double pitch_cal = bending_pitch_um(cal.shape, cal.spacing_um);
  return fd_cal * (cal.radius_cm / spec.bend_radius_cm) * (pitch / pitch_cal);
}

double project_single_particle_radius(double r_square) {
  if (!(r_square > 0.0) || std::isinf(r_square)) {
    throw std::invalid_argument("radius must be finite and > 0");
  }
  return r_square * std::numbers::sqrt2;
}

PhotonicMapping waveguide_to_model(const WaveguideArraySpec &spec,
                                   const CouplingCalibration &coupling,
                                   ForceMode mode,
                                   const std::optional<ForceCalibration> &force) {
  spec.validate();
  if (!(coupling.kappa_ref >= 0.0) || !(coupling.rho_ref >= 0.0) ||
      !(coupling.reference_spacing_um > 0.0)) {
    throw std::invalid_argument("invalid coupling calibration");
  }
  PhotonicMapping out;
  double kappa = coupling.kappa_ref;
  double rho = coupling.rho_ref;
  const double offset = spec.spacing_um - coupling.reference_spacing_um;
  if (std::abs(offset) > 1e-9 * coupling.reference_spacing_um) {
    if (!coupling.decay_gamma) {
      throw std::invalid_argument(
          "spacing " + std::to_string(spec.spacing_um) +
          " um outside calibrated range; set decay_gamma to extrapolate");
    }
    const double gamma = *coupling.decay_gamma;
    kappa *= std::exp(-gamma * offset);
    rho *= std::exp(-gamma * std::numbers::sqrt2 * offset);
    out.extrapolated = true;
  }
  out.params = ModelParams::photonic(spec.n_guides, kappa, rho, spec.detuning,
                                     curvature_to_force(spec, mode, force));
  return out;
}

}  // namespace fracbloch
