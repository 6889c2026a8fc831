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


#include "fracbloch/cli/pixmap.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>

#include "fracbloch/errors.hpp"

namespace fracbloch::cli {

const char *to_string(Normalization norm) {
  return norm == Normalization::kGlobal ? "global" : "per-column";
}

const char *to_string(HeatmapAxis axis) {
  switch (axis) {
    case HeatmapAxis::kFullSlice: return "full-2d";
    case HeatmapAxis::kDiagonalVsZ: return "diagonal";
    case HeatmapAxis::kChainVsZ: return "1d";
  }
  return "?";
}

namespace {

std::uint16_t quantize(double value, double scale) {
  if (!(scale > 0.0)) return 0;
  const double v = std::clamp(value / scale, 0.0, 1.0);
  return static_cast<std::uint16_t>(std::lround(v * 65535.0));
}

Pixmap from_matrix(const Eigen::MatrixXd &m, Normalization normalization) {
  Pixmap image;
  image.height = static_cast<int>(m.rows());
  image.width = static_cast<int>(m.cols());
  image.pixels.resize(static_cast<std::size_t>(m.size()));
  const double global = m.size() > 0 ? m.maxCoeff() : 0.0;
  for (Eigen::Index c = 0; c < m.cols(); ++c) {
    const double scale =
        normalization == Normalization::kGlobal ? global : m.col(c).maxCoeff();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      image.pixels[static_cast<std::size_t>(r * m.cols() + c)] = quantize(m(r, c), scale);
    }
  }
  return image;
}

}  // namespace

Pixmap render_heatmap(const PopulationTrajectory &traj, Geometry geometry,
                      HeatmapAxis axis, Normalization normalization,
                      double slice_z) {
  if (traj.samples() == 0) throw std::invalid_argument("empty trajectory");
  const bool pair_axis = axis != HeatmapAxis::kChainVsZ;
  if (pair_axis != (geometry == Geometry::kTwoDDiagonal)) {
    throw std::invalid_argument(std::string("axis '") + to_string(axis) +
                                "' does not match the trajectory geometry");
  }
  if (axis == HeatmapAxis::kChainVsZ) return from_matrix(traj.probabilities, normalization);

  const int side = lattice_side(traj.dim());
  if (axis == HeatmapAxis::kDiagonalVsZ) {
    Eigen::MatrixXd diag(side, traj.samples());
    for (int n = 0; n < side; ++n) {
      diag.row(n) = traj.probabilities.row(SiteIndex2D{n, n}.flatten(side));
    }
    return from_matrix(diag, normalization);
  }

  std::size_t nearest = 0;
  for (std::size_t k = 1; k < traj.z.size(); ++k) {
    if (std::abs(traj.z[k] - slice_z) < std::abs(traj.z[nearest] - slice_z)) nearest = k;
  }
  Eigen::MatrixXd frame(side, side);
  for (int n = 0; n < side; ++n) {
    for (int m = 0; m < side; ++m) {
      frame(n, m) = traj.probabilities(SiteIndex2D{n, m}.flatten(side),
                                       static_cast<Eigen::Index>(nearest));
    }
  }
  // A single frame has one natural scale: its own maximum.
  return from_matrix(frame, Normalization::kGlobal);
}

void write_pgm(std::ostream &out, const Pixmap &image) {
  out << "P5\n" << image.width << " " << image.height << "\n65535\n";
  std::vector<char> bytes;
  bytes.reserve(image.pixels.size() * 2);
  for (std::uint16_t v : image.pixels) {
    bytes.push_back(static_cast<char>(v >> 8));
    bytes.push_back(static_cast<char>(v & 0xff));
  }
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

void write_pgm(const std::string &path, const Pixmap &image) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  write_pgm(out, image);
  if (!out) throw IoError("write failed for " + path);
}

Pixmap read_pgm(std::istream &in) {
  std::string magic;
  int maxval = 0;
  Pixmap image;
  in >> magic >> image.width >> image.height >> maxval;
  if (magic != "P5" || maxval != 65535 || image.width <= 0 || image.height <= 0) {
    throw IoError("not a 16-bit P5 pixmap");
  }
  in.get();
  image.pixels.resize(static_cast<std::size_t>(image.width) * image.height);
  for (auto &v : image.pixels) {
    const int hi = in.get();
    const int lo = in.get();
    if (!in) throw IoError("truncated pixmap");
    v = static_cast<std::uint16_t>((hi << 8) | lo);
  }
  return image;
}

}  // namespace fracbloch::cli
