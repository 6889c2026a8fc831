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


#ifndef FRACBLOCH_CLI_PIXMAP_HPP
#define FRACBLOCH_CLI_PIXMAP_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "fracbloch/observables.hpp"
#include "fracbloch/trajectory.hpp"

namespace fracbloch::cli {

enum class Normalization { kPerColumn, kGlobal };

enum class HeatmapAxis {
  kFullSlice,    // N x N frame at one z: rows n, columns m
  kDiagonalVsZ,  // rows n of |c_{n,n}|^2, columns z
  kChainVsZ,     // rows site, columns z
};

const char *to_string(Normalization norm);
const char *to_string(HeatmapAxis axis);

/// 16-bit grayscale image, row-major.
struct Pixmap {
  int width = 0;
  int height = 0;
  std::vector<std::uint16_t> pixels;

  std::uint16_t at(int row, int col) const {
    return pixels[static_cast<std::size_t>(row) * width + col];
  }
};

/// Intensity = probability / max, scaled to 0..65535. Per-column divides by
/// each z-column's maximum; global by the maximum over the whole image.
/// `slice_z` picks the nearest sample for kFullSlice.
Pixmap render_heatmap(const PopulationTrajectory &traj, Geometry geometry,
                      HeatmapAxis axis, Normalization normalization,
                      double slice_z = 0.0);

/// Binary P5, maxval 65535, big-endian samples.
void write_pgm(std::ostream &out, const Pixmap &image);
void write_pgm(const std::string &path, const Pixmap &image);
Pixmap read_pgm(std::istream &in);

}  // namespace fracbloch::cli

#endif  // FRACBLOCH_CLI_PIXMAP_HPP
