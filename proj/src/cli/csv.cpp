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


#include "fracbloch/cli/csv.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "fracbloch/cli/numbers.hpp"
#include "fracbloch/errors.hpp"

namespace fracbloch::cli {

namespace {

std::string probability(double p) { return format_double(std::clamp(p, 0.0, 1.0)); }

std::vector<std::string> split_row(const std::string &line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

double cell_number(const std::string &cell, int line) {
  const auto v = parse_double(cell);
  if (!v) throw IoError("line " + std::to_string(line) + ": bad number '" + cell + "'");
  return *v;
}

std::ofstream open_for_write(const std::string &path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  return out;
}

}  // namespace

void write_trajectory_csv(std::ostream &out, const PopulationTrajectory &traj,
                          Geometry geometry) {
  if (geometry == Geometry::kTwoDDiagonal) {
    const int side = lattice_side(traj.dim());
    out << "z_cm,n,m,probability\n";
    for (Eigen::Index k = 0; k < traj.samples(); ++k) {
      const std::string z = format_double(traj.z[static_cast<std::size_t>(k)]);
      for (Eigen::Index i = 0; i < traj.dim(); ++i) {
        const SiteIndex2D s = SiteIndex2D::unflatten(i, side);
        out << z << ',' << s.n << ',' << s.m << ',' << probability(traj.probabilities(i, k))
            << '\n';
      }
    }
    return;
  }
  out << "z_cm";
  for (Eigen::Index i = 0; i < traj.dim(); ++i) out << ",p" << i;
  out << '\n';
  for (Eigen::Index k = 0; k < traj.samples(); ++k) {
    out << format_double(traj.z[static_cast<std::size_t>(k)]);
    for (Eigen::Index i = 0; i < traj.dim(); ++i) {
      out << ',' << probability(traj.probabilities(i, k));
    }
    out << '\n';
  }
}

void write_trajectory_csv(const std::string &path, const PopulationTrajectory &traj,
                          Geometry geometry) {
  auto out = open_for_write(path);
  write_trajectory_csv(out, traj, geometry);
  if (!out) throw IoError("write failed for " + path);
}

LoadedTrajectory read_trajectory_csv(std::istream &in) {
  std::string header;
  if (!std::getline(in, header)) throw IoError("empty trajectory file");
  const std::vector<std::string> columns = split_row(header);
  LoadedTrajectory loaded;
  int line_no = 1;
  std::string line;

  if (header == "z_cm,n,m,probability") {
    loaded.geometry = Geometry::kTwoDDiagonal;
    struct Row {
      double z;
      long long n, m;
      double p;
    };
    std::vector<Row> rows;
    long long side = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (line.empty()) continue;
      const auto cells = split_row(line);
      if (cells.size() != 4) throw IoError("line " + std::to_string(line_no) + ": expected 4 columns");
      const auto n = parse_integer(cells[1]);
      const auto m = parse_integer(cells[2]);
      if (!n || !m || *n < 0 || *m < 0) {
        throw IoError("line " + std::to_string(line_no) + ": bad site index");
      }
      rows.push_back({cell_number(cells[0], line_no), *n, *m, cell_number(cells[3], line_no)});
      side = std::max({side, *n + 1, *m + 1});
    }
    std::vector<double> z;
    for (const Row &r : rows) {
      if (z.empty() || r.z != z.back()) {
        if (!z.empty() && r.z < z.back()) throw IoError("z values must not decrease");
        z.push_back(r.z);
      }
    }
    const long long dim = side * side;
    if (rows.empty() || static_cast<long long>(rows.size()) != dim * static_cast<long long>(z.size())) {
      throw IoError("long-form trajectory is not a complete N x N grid per z");
    }
    loaded.traj.z = z;
    loaded.traj.probabilities = Eigen::MatrixXd::Constant(dim, static_cast<Eigen::Index>(z.size()), -1.0);
    std::size_t k = 0;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r > 0 && rows[r].z != rows[r - 1].z) ++k;
      loaded.traj.probabilities(rows[r].n * side + rows[r].m, static_cast<Eigen::Index>(k)) = rows[r].p;
    }
    if (loaded.traj.probabilities.minCoeff() < 0.0) {
      throw IoError("long-form trajectory has missing or negative entries");
    }
    return loaded;
  }

  if (columns.size() < 2 || columns[0] != "z_cm") throw IoError("unrecognized trajectory header");
  for (std::size_t i = 1; i < columns.size(); ++i) {
    if (columns[i] != "p" + std::to_string(i - 1)) throw IoError("unrecognized column " + columns[i]);
  }
  loaded.geometry = Geometry::kOneD;
  std::vector<std::vector<double>> samples;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto cells = split_row(line);
    if (cells.size() != columns.size()) {
      throw IoError("line " + std::to_string(line_no) + ": wrong column count");
    }
    std::vector<double> row;
    for (const auto &c : cells) row.push_back(cell_number(c, line_no));
    if (!loaded.traj.z.empty() && row[0] <= loaded.traj.z.back()) {
      throw IoError("line " + std::to_string(line_no) + ": z must increase");
    }
    loaded.traj.z.push_back(row[0]);
    samples.push_back(std::move(row));
  }
  if (samples.empty()) throw IoError("trajectory has no samples");
  const auto dim = static_cast<Eigen::Index>(columns.size() - 1);
  loaded.traj.probabilities.resize(dim, static_cast<Eigen::Index>(samples.size()));
  for (std::size_t k = 0; k < samples.size(); ++k) {
    for (Eigen::Index i = 0; i < dim; ++i) {
      loaded.traj.probabilities(i, static_cast<Eigen::Index>(k)) = samples[k][static_cast<std::size_t>(i) + 1];
    }
  }
  return loaded;
}

LoadedTrajectory read_trajectory_csv(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  return read_trajectory_csv(in);
}

void write_observables_csv(const std::string &path,
                           const std::vector<ObservableSeries> &series) {
  if (series.empty()) throw std::invalid_argument("no observables to write");
  auto out = open_for_write(path);
  out << "z_cm";
  for (const auto &s : series) out << ',' << s.label;
  out << '\n';
  for (std::size_t k = 0; k < series.front().z.size(); ++k) {
    out << format_double(series.front().z[k]);
    for (const auto &s : series) out << ',' << format_double(s.values.at(k));
    out << '\n';
  }
  if (!out) throw IoError("write failed for " + path);
}

}  // namespace fracbloch::cli
