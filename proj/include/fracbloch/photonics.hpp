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


#ifndef FRACBLOCH_PHOTONICS_HPP
#define FRACBLOCH_PHOTONICS_HPP

#include <limits>
#include <optional>

#include "fracbloch/model.hpp"

namespace fracbloch {

enum class ArrayShape { kSquare, kLinear };

/// Fabricated waveguide array. Lengths in the units the lab uses: spacing in
/// um, radius and length in cm, wavelength in nm; detuning in cm^-1 and
/// applied to the main-diagonal guides (negative = attractive).
struct WaveguideArraySpec {
  ArrayShape shape = ArrayShape::kSquare;
  int n_guides = 15;  // per side for square arrays
  double spacing_um = 19.0;
  double bend_radius_cm = std::numeric_limits<double>::infinity();
  double length_cm = 1.0;
  double detuning = 0.0;
  double wavelength_nm = 633.0;
  double n_eff = 1.45;

  void validate() const;
};

/// Measured first- and second-neighbour couplings at one spacing, with an
/// optional exponential decay constant (um^-1) for other spacings.
struct CouplingCalibration {
  double reference_spacing_um = 19.0;
  double kappa_ref = 0.95;
  double rho_ref = 0.3;
  std::optional<double> decay_gamma;
};

/// Observed pair refocus length for one bent array; fixes the constant in
/// F ~ 1/R.
struct ForceCalibration {
  double l_foc_cm = 6.5;
  double radius_cm = 400.0;
  ArrayShape shape = ArrayShape::kSquare;
  double spacing_um = 19.0;
};

enum class ForceMode { kCalibrated, kFirstPrinciples };

/// Site pitch projected on the bending plane. Square arrays bend along the
/// main diagonal, so one lattice step moves d / sqrt(2) across it.
double bending_pitch_um(ArrayShape shape, double spacing_um);

/// Tilt per site Fd (cm^-1). Calibrated: (pi / l_foc) (R_cal / R)
/// (pitch / pitch_cal). First-principles: 2 pi n_eff pitch / (lambda R).
/// Zero for straight arrays.
double curvature_to_force(const WaveguideArraySpec &spec,
                          ForceMode mode = ForceMode::kCalibrated,
                          const std::optional<ForceCalibration> &calibration =
                              ForceCalibration{});

/// Radius the linear comparison array needs to feel the same per-site force
/// as the square array bent with `r_square`.
double project_single_particle_radius(double r_square);

struct PhotonicMapping {
  ModelParams params;
  bool extrapolated = false;  // couplings came from the decay model
};

/// Couplings from the calibration (extrapolated only when decay_gamma is
/// set), u0 from the detuning, kappa1 = kappa, fd from the bend.
PhotonicMapping waveguide_to_model(
    const WaveguideArraySpec &spec, const CouplingCalibration &coupling,
    ForceMode mode = ForceMode::kCalibrated,
    const std::optional<ForceCalibration> &force = ForceCalibration{});

}  // namespace fracbloch

#endif  // FRACBLOCH_PHOTONICS_HPP
