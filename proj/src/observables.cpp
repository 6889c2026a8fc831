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


#include "fracbloch/observables.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "fracbloch/propagator.hpp"

namespace fracbloch {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

ObservableSeries empty_like(const PopulationTrajectory &traj, std::string label) {
  ObservableSeries s;
  s.z = traj.z;
  s.values.assign(static_cast<std::size_t>(traj.samples()), 0.0);
  s.flagged.assign(static_cast<std::size_t>(traj.samples()), false);
  s.label = std::move(label);
  return s;
}

// Populations along the coordinate breathing_width measures, per sample.
// For the 2D lattice these are |c_{n,n}|^2 renormalized by confinement.
Eigen::MatrixXd coordinate_populations(const PopulationTrajectory &traj,
                                       Geometry geometry,
                                       std::vector<bool> &undefined) {
  undefined.assign(static_cast<std::size_t>(traj.samples()), false);
  if (geometry == Geometry::kOneD) return traj.probabilities;

  const int side = lattice_side(traj.dim());
  Eigen::MatrixXd diag(side, traj.samples());
  for (int n = 0; n < side; ++n) {
    diag.row(n) = traj.probabilities.row(SiteIndex2D{n, n}.flatten(side));
  }
  for (Eigen::Index k = 0; k < diag.cols(); ++k) {
    const double total = diag.col(k).sum();
    if (total > 0.0) {
      diag.col(k) /= total;
    } else {
      undefined[static_cast<std::size_t>(k)] = true;
    }
  }
  return diag;
}

}  // namespace

int lattice_side(Eigen::Index dim) {
  const auto side = static_cast<Eigen::Index>(std::llround(std::sqrt(double(dim))));
  if (dim <= 0 || side * side != dim) {
    throw std::invalid_argument("dimension " + std::to_string(dim) +
                                " is not an N x N lattice");
  }
  return static_cast<int>(side);
}

ObservableSeries return_probability(const PopulationTrajectory &traj,
                                    Eigen::Index site) {
  if (site < 0 || site >= traj.dim()) {
    throw std::out_of_range("site " + std::to_string(site) +
                            " outside dimension " + std::to_string(traj.dim()));
  }
  ObservableSeries s = empty_like(traj, "return_probability");
  for (Eigen::Index k = 0; k < traj.samples(); ++k) {
    s.values[static_cast<std::size_t>(k)] =
        std::clamp(traj.probabilities(site, k), 0.0, 1.0);
  }
  return s;
}

ObservableSeries diagonal_confinement(const PopulationTrajectory &traj,
                                      int n_sites) {
  if (n_sites <= 0 || static_cast<Eigen::Index>(n_sites) * n_sites != traj.dim()) {
    throw std::invalid_argument("trajectory dimension " +
                                std::to_string(traj.dim()) + " is not " +
                                std::to_string(n_sites) + "^2");
  }
  ObservableSeries s = empty_like(traj, "diagonal_confinement");
  for (Eigen::Index k = 0; k < traj.samples(); ++k) {
    double total = 0.0;
    for (int n = 0; n < n_sites; ++n) {
      total += traj.probabilities(SiteIndex2D{n, n}.flatten(n_sites), k);
    }
    s.values[static_cast<std::size_t>(k)] = std::clamp(total, 0.0, 1.0);
  }
  return s;
}

ObservableSeries breathing_width(const PopulationTrajectory &traj,
                                 Geometry geometry, std::optional<int> origin) {
  std::vector<bool> undefined;
  const Eigen::MatrixXd p = coordinate_populations(traj, geometry, undefined);
  const int sites = static_cast<int>(p.rows());
  const int center = origin.value_or(center_site(sites));
  if (center < 0 || center >= sites) {
    throw std::out_of_range("width origin outside lattice");
  }
  Eigen::VectorXd offset2(sites);
  for (int n = 0; n < sites; ++n) offset2(n) = double(n - center) * double(n - center);

  ObservableSeries s = empty_like(traj, "breathing_width");
  for (Eigen::Index k = 0; k < p.cols(); ++k) {
    const auto i = static_cast<std::size_t>(k);
    if (undefined[i]) {
      s.values[i] = kNaN;
      s.flagged[i] = true;
      continue;
    }
    s.values[i] = std::sqrt(p.col(k).dot(offset2));
  }
  return s;
}

ObservableSeries participation_ratio(const PopulationTrajectory &traj,
                                     Geometry geometry) {
  std::vector<bool> undefined;
  const Eigen::MatrixXd p = coordinate_populations(traj, geometry, undefined);
  ObservableSeries s = empty_like(traj, "participation_ratio");
  for (Eigen::Index k = 0; k < p.cols(); ++k) {
    const auto i = static_cast<std::size_t>(k);
    const double ipr = p.col(k).squaredNorm();
    if (undefined[i] || ipr <= 0.0) {
      s.values[i] = kNaN;
      s.flagged[i] = true;
      continue;
    }
    s.values[i] = 1.0 / ipr;
  }
  return s;
}

ObservableSeries edge_population(const PopulationTrajectory &traj,
                                 Geometry geometry) {
  ObservableSeries s = empty_like(traj, "edge_population");
  if (geometry == Geometry::kOneD) {
    const Eigen::Index last = traj.dim() - 1;
    for (Eigen::Index k = 0; k < traj.samples(); ++k) {
      s.values[static_cast<std::size_t>(k)] =
          traj.probabilities(0, k) + (last > 0 ? traj.probabilities(last, k) : 0.0);
    }
    return s;
  }
  const int side = lattice_side(traj.dim());
  std::vector<Eigen::Index> rim;
  for (Eigen::Index i = 0; i < traj.dim(); ++i) {
    const SiteIndex2D site = SiteIndex2D::unflatten(i, side);
    if (site.n == 0 || site.m == 0 || site.n == side - 1 || site.m == side - 1) {
      rim.push_back(i);
    }
  }
  for (Eigen::Index k = 0; k < traj.samples(); ++k) {
    double total = 0.0;
    for (Eigen::Index i : rim) total += traj.probabilities(i, k);
    s.values[static_cast<std::size_t>(k)] = total;
  }
  return s;
}

bool apply_truncation_guard(ObservableSeries &series, const ObservableSeries &edge,
                            double tolerance) {
  const bool tripped = std::any_of(edge.values.begin(), edge.values.end(),
                                   [&](double v) { return v > tolerance; });
  series.truncated = series.truncated || tripped;
  return tripped;
}

std::pair<double, double> refine_peak(const std::vector<double> &z,
                                      const std::vector<double> &values,
                                      std::size_t k) {
  if (k == 0 || k + 1 >= values.size()) return {z[k], values[k]};
  const double x0 = z[k - 1], x1 = z[k], x2 = z[k + 1];
  const double y0 = values[k - 1], y1 = values[k], y2 = values[k + 1];
  const double d1 = (y1 - y0) / (x1 - x0);
  const double d2 = (y2 - y1) / (x2 - x1);
  const double curvature = (d2 - d1) / (x2 - x0);
  if (!(curvature < 0.0)) return {x1, y1};
  // y(x) = y0 + d1 (x - x0) + curvature (x - x0)(x - x1)
  const double vertex =
      std::clamp(0.5 * (x0 + x1) - d1 / (2.0 * curvature), x0, x2);
  const double peak = y0 + d1 * (vertex - x0) + curvature * (vertex - x0) * (vertex - x1);
  return {vertex, peak};
}

RefocusReport find_refocus(const ObservableSeries &series, double threshold) {
  if (series.values.empty()) throw std::invalid_argument("empty series");
  if (!(threshold > 0.0 && threshold < 1.0)) {
    throw std::invalid_argument("refocus threshold must lie in (0, 1)");
  }
  const auto &v = series.values;
  RefocusReport report;
  report.truncated = series.truncated;
  if (v.size() >= 2 && v[0] >= threshold && v[0] > v[1]) {
    report.origin_anchor = series.z[0];
  }
  // One refocus per excursion above threshold, and only after the series
  // has dropped below it; fast beats that never leave the focus do not count.
  bool armed = !(v[0] >= threshold);
  std::optional<std::pair<double, double>> best;
  const auto close_excursion = [&] {
    if (best) {
      report.refocus_positions.push_back(best->first);
      report.peak_values.push_back(std::clamp(best->second, 0.0, 1.0));
    }
    best.reset();
  };
  for (std::size_t k = 1; k + 1 < v.size(); ++k) {
    if (v[k] < threshold) {
      close_excursion();
      armed = true;
      continue;
    }
    if (!armed || !(v[k] > v[k - 1] && v[k] >= v[k + 1])) continue;
    const auto peak = refine_peak(series.z, v, k);
    if (peak.second >= threshold && (!best || peak.second > best->second)) best = peak;
  }
  close_excursion();

  std::vector<double> marks;
  if (report.origin_anchor) marks.push_back(*report.origin_anchor);
  marks.insert(marks.end(), report.refocus_positions.begin(),
               report.refocus_positions.end());
  if (marks.size() >= 2 && !report.truncated) {
    report.period_estimate = (marks.back() - marks.front()) / double(marks.size() - 1);
    report.frequency_estimate = 2.0 * std::numbers::pi / *report.period_estimate;
  }
  return report;
}

RefocusReport period_from_width_maximum(const ObservableSeries &width) {
  if (width.values.empty()) throw std::invalid_argument("empty series");
  std::size_t best = width.values.size();
  for (std::size_t k = 0; k < width.values.size(); ++k) {
    if (width.flagged.size() == width.values.size() && width.flagged[k]) continue;
    if (best == width.values.size() || width.values[k] > width.values[best]) best = k;
  }
  RefocusReport report;
  report.truncated = width.truncated;
  if (best == width.values.size() || best == 0 || report.truncated) return report;
  const double position = refine_peak(width.z, width.values, best).first;
  report.period_estimate = 2.0 * position;
  report.frequency_estimate = 2.0 * std::numbers::pi / *report.period_estimate;
  return report;
}

double frequency_ratio(const RefocusReport &pair_report,
                       const RefocusReport &single_report) {
  if (!pair_report.frequency_estimate || !single_report.frequency_estimate) {
    throw std::invalid_argument("frequency_ratio needs two frequency estimates");
  }
  return *pair_report.frequency_estimate / *single_report.frequency_estimate;
}

SpacingStats wannier_stark_spacing(const Operator &h, double interior_fraction) {
  if (h.rows() != h.cols()) throw std::invalid_argument("operator is not square");
  if (!(interior_fraction > 0.0 && interior_fraction <= 1.0)) {
    throw std::invalid_argument("interior_fraction must lie in (0, 1]");
  }
  const auto count = static_cast<Eigen::Index>(
      std::floor(interior_fraction * double(h.rows()) + 1e-9));
  if (count < 3) {
    throw std::invalid_argument("fewer than 3 interior eigenvalues");
  }
  Eigen::SelfAdjointEigenSolver<Operator> solver(h, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("eigenvalue computation failed");
  }
  const Eigen::VectorXd &e = solver.eigenvalues();
  const Eigen::Index start = (h.rows() - count) / 2;
  const Eigen::VectorXd gaps =
      e.segment(start + 1, count - 1) - e.segment(start, count - 1);
  SpacingStats stats;
  stats.mean = gaps.mean();
  stats.spread = std::sqrt((gaps.array() - stats.mean).square().mean());
  return stats;
}

}  // namespace fracbloch
