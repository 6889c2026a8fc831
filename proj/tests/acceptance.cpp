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

// Acceptance runs: one PASS/FAIL line per criterion at its stated tolerance.

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fracbloch/cli/scenario.hpp"
#include "fracbloch/model.hpp"
#include "fracbloch/observables.hpp"
#include "fracbloch/propagator.hpp"
#include "fracbloch/reference.hpp"

namespace fs = std::filesystem;
using namespace fracbloch;
using State = StateVector<double>;

namespace {

constexpr double kKappa = 0.95;
constexpr double kRho = 0.3;
constexpr double kU0 = -4.0;
constexpr double kFd = 0.4833;

struct Verdict {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char *pattern, auto... args) {
  char buffer[512];
  std::snprintf(buffer, sizeof buffer, pattern, args...);
  return buffer;
}

std::pair<double, double> series_max(const ObservableSeries &s) {
  std::size_t best = 0;
  for (std::size_t k = 1; k < s.size(); ++k) {
    if (std::isfinite(s.values[k]) && !(s.values[k] <= s.values[best])) best = k;
  }
  return {s.values[best], s.z[best]};
}

double max_finite(const ObservableSeries &s) { return series_max(s).first; }

Verdict frequency_doubling() {
  const cli::SimulationResult pair = cli::simulate(cli::preset("fig4a-fractional-bo"));
  const cli::SimulationResult single = cli::simulate(cli::preset("fig4b-single-bo"));

  // Strongest revival of the pair near the expected refocus.
  double peak = 0.0, at = 0.0;
  for (std::size_t i = 0; i < pair.refocus.refocus_positions.size(); ++i) {
    const double z = pair.refocus.refocus_positions[i];
    if (std::abs(z - 6.5) <= 0.15 && pair.refocus.peak_values[i] > peak) {
      peak = pair.refocus.peak_values[i];
      at = z;
    }
  }
  const bool pair_ok = peak >= 0.8;

  const double width_at = single.width_period.period_estimate
                              ? *single.width_period.period_estimate / 2.0
                              : std::nan("");
  const bool width_ok = std::abs(width_at - 6.5) <= 0.15;
  const bool no_single_refocus =
      find_refocus(single.return_probability, 0.8).refocus_positions.empty();

  const auto ratio = cli::companion_ratio(pair, single);
  const bool ratio_ok = ratio && std::abs(*ratio - 2.0) <= 0.04;

  return {pair_ok && width_ok && no_single_refocus && ratio_ok,
          fmt("pair refocus z=%.3f cm P=%.4f (need |z-6.5|<=0.15, P>=0.8); "
              "single width max z=%.3f cm (need |z-6.5|<=0.15), refocus before 8.5 cm: %s; "
              "frequency_ratio=%.4f (need 2.0+-0.04)",
              at, peak, width_at, no_single_refocus ? "none" : "found",
              ratio ? *ratio : std::nan(""))};
}

Verdict effective_equivalence() {
  const ModelParams p = ModelParams::photonic(15, kKappa, kRho, kU0, kFd);
  const int c = center_site(15);
  const PopulationTrajectory fock =
      propagate(build_fock_hamiltonian(p), State::localized(225, SiteIndex2D{c, c}.flatten(15)),
                8.5, 0.01)
          .populations();
  const PopulationTrajectory eff =
      propagate(build_effective_hamiltonian(p), State::localized(15, c), 8.5, 0.01).populations();
  double worst = 0.0, where = 0.0;
  for (Eigen::Index k = 0; k < fock.samples(); ++k) {
    for (int n = 0; n < 15; ++n) {
      const double d =
          std::abs(fock.probabilities(SiteIndex2D{n, n}.flatten(15), k) - eff.probabilities(n, k));
      if (d > worst) {
        worst = d;
        where = fock.z[static_cast<std::size_t>(k)];
      }
    }
  }
  return {worst <= 0.05,
          fmt("max |P_fock(n,n) - P_eff(n)| = %.4f at z=%.2f cm (kappa_eff=%.5f, tilt=%.4f; need <= 0.05)",
              worst, where, kappa_eff(kKappa, kRho, kU0), 2.0 * kFd)};
}

Verdict confinement() {
  const cli::SimulationResult r = cli::simulate(cli::preset("fig4a-fractional-bo"));
  const auto &v = r.confinement->values;
  const auto low = std::min_element(v.begin(), v.end());
  std::size_t at_lmax = 0;
  for (std::size_t k = 0; k < r.confinement->z.size(); ++k) {
    if (std::abs(r.confinement->z[k] - 3.25) < std::abs(r.confinement->z[at_lmax] - 3.25)) at_lmax = k;
  }
  return {*low >= 0.9,
          fmt("min diagonal_confinement = %.4f at z=%.2f cm, %.4f at z=3.25 cm (need >= 0.9 everywhere)",
              *low, r.confinement->z[static_cast<std::size_t>(low - v.begin())], v[at_lmax])};
}

Verdict ebh_vs_bh() {
  const cli::SimulationResult ebh = cli::simulate(cli::preset("fig3-delocalization"));
  const cli::SimulationResult bh = cli::simulate(cli::preset("fig3c-bh-only"));
  const double k_ebh = kappa_eff(ebh.params.kappa, ebh.params.rho, ebh.params.u0);
  const double k_bh = kappa_eff(bh.params.kappa, bh.params.rho, bh.params.u0);
  const double expected = k_ebh / k_bh;
  const double measured = max_finite(ebh.width) / max_finite(bh.width);
  const double rel = std::abs(measured / expected - 1.0);
  return {rel <= 0.10,
          fmt("kappa_eff %.4f -> %.4f; width ratio %.4f vs %.4f (rel. dev %.3f, need <= 0.10)",
              k_ebh, k_bh, measured, expected, rel)};
}

Verdict bessel_oracle() {
  const int size = 41;
  const int c = center_site(size);
  const Trajectory<double> traj = propagate(build_single_particle_hamiltonian(size, kKappa, kFd),
                                            State::localized(size, c), 13.0, 0.01);
  double worst = 0.0, edge = 0.0;
  for (Eigen::Index k = 0; k < traj.samples(); ++k) {
    const double z = traj.z[static_cast<std::size_t>(k)];
    edge = std::max(edge, std::norm(traj.states(0, k)) + std::norm(traj.states(size - 1, k)));
    for (int n = 0; n < size; ++n) {
      const double oracle = reference::analytic_ws_amplitude({kKappa, kFd, z, n - c});
      worst = std::max(worst, std::abs(std::abs(traj.states(n, k)) - oracle));
    }
  }
  return {worst <= 1e-6 && edge < 1e-6,
          fmt("max ||psi_n| - |J_n(zeta)|| = %.3e (need <= 1e-6), boundary population %.3e (need < 1e-6)",
              worst, edge)};
}

Verdict wannier_stark() {
  const SpacingStats single =
      wannier_stark_spacing(build_single_particle_hamiltonian(41, kKappa, kFd), 1.0 / 3.0);
  const SpacingStats pair = wannier_stark_spacing(
      build_effective_hamiltonian(ModelParams::photonic(41, kKappa, kRho, kU0, kFd)), 1.0 / 3.0);
  const double e1 = std::abs(single.mean / kFd - 1.0);
  const double e2 = std::abs(pair.mean / (2.0 * kFd) - 1.0);
  return {e1 <= 0.01 && e2 <= 0.01,
          fmt("single spacing %.6f (rel. err %.2e), effective spacing %.6f vs 2Fd (rel. err %.2e); need <= 1%%",
              single.mean, e1, pair.mean, e2)};
}

Verdict invariants() {
  const int size = 15;
  const int c = center_site(size);
  const ModelParams p = ModelParams::photonic(size, kKappa, kRho, kU0, kFd);
  const Operator h = build_fock_hamiltonian(p);

  std::mt19937_64 rng(20260401);
  std::normal_distribution<double> g;
  State::Amplitudes raw(h.rows());
  for (auto &a : raw) a = {g(rng), g(rng)};
  const Trajectory<double> random = propagate(h, State::normalized(raw), 8.5, 0.05);
  double unitarity = 0.0;
  for (Eigen::Index k = 0; k < random.samples(); ++k) {
    unitarity = std::max(unitarity, std::abs(random.states.col(k).squaredNorm() - 1.0));
  }

  const Trajectory<double> pair =
      propagate(h, State::localized(h.rows(), SiteIndex2D{c, c}.flatten(size)), 8.5, 0.05);
  const Eigen::PermutationMatrix<Eigen::Dynamic> swap = swap_permutation(size);
  double swap_err = 0.0;
  for (Eigen::Index k = 0; k < pair.samples(); ++k) {
    const Eigen::VectorXcd col = pair.states.col(k);
    swap_err = std::max(swap_err, (swap * col - col).cwiseAbs().maxCoeff());
  }

  const ModelParams free = ModelParams::photonic(size, kKappa, 0.0, 0.0, kFd);
  const Trajectory<double> both =
      propagate(build_fock_hamiltonian(free), State::localized(h.rows(), SiteIndex2D{c, c}.flatten(size)),
                8.5, 0.05);
  const Trajectory<double> one =
      propagate(build_single_particle_hamiltonian(size, kKappa, kFd), State::localized(size, c), 8.5, 0.05);
  double factor_err = 0.0;
  for (Eigen::Index k = 0; k < both.samples(); ++k) {
    for (int n = 0; n < size; ++n) {
      for (int m = 0; m < size; ++m) {
        factor_err = std::max(factor_err, std::abs(both.states(SiteIndex2D{n, m}.flatten(size), k) -
                                                   one.states(n, k) * one.states(m, k)));
      }
    }
  }

  ModelParams variant = p;
  variant.kappa1 = 0.7;
  variant.near_diagonal_defect = 0.4;
  ModelParams three = variant;
  three.kappa1_bonds = Kappa1Bonds::kThreeDiagonal;
  int mismatches = 0;
  for (const ModelParams &q : {p, variant, three, free}) {
    const Operator built = build_fock_hamiltonian(q);
    const Operator listed = reference::assemble(reference::enumerate_fock_bonds(q));
    mismatches += static_cast<int>((built.array() != listed.array()).count());
  }

  return {unitarity <= 1e-12 && swap_err <= 1e-10 && factor_err <= 1e-8 && mismatches == 0,
          fmt("unitarity %.2e (<= 1e-12), swap %.2e (<= 1e-10), factorization %.2e (<= 1e-8), "
              "builder vs enumerator mismatched entries %d (exact)",
              unitarity, swap_err, factor_err, mismatches)};
}

std::string slurp(const fs::path &path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Verdict determinism() {
  const fs::path root = fs::current_path() / "acceptance_determinism";
  fs::remove_all(root);
  int files = 0;
  std::vector<std::string> differing;
  for (const std::string &name : cli::preset_names()) {
    const cli::ScenarioConfig cfg = cli::preset(name);
    const auto a = cli::run_scenario(cfg, (root / name / "a").string());
    const auto b = cli::run_scenario(cfg, (root / name / "b").string());
    if (a.files != b.files) differing.push_back(name + " (file list)");
    for (const std::string &file : a.files) {
      ++files;
      if (slurp(root / name / "a" / file) != slurp(root / name / "b" / file)) {
        differing.push_back(name + "/" + file);
      }
    }
  }
  fs::remove_all(root);
  std::string detail = fmt("%d files over %zu presets compared, %zu differ", files,
                           cli::preset_names().size(), differing.size());
  for (const auto &d : differing) detail += " " + d;
  return {differing.empty() && files > 0, detail};
}

struct Criterion {
  const char *title;
  std::function<Verdict()> run;
};

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"fracbloch acceptance runs"};
  int only = 0;
  app.add_option("--criterion", only, "run a single criterion (1-8)")->check(CLI::Range(1, 8));
  CLI11_PARSE(app, argc, argv);

  const std::vector<Criterion> criteria = {
      {"frequency doubling", frequency_doubling},
      {"effective-model equivalence", effective_equivalence},
      {"bound-state confinement", confinement},
      {"direct pair tunneling changes the breathing", ebh_vs_bh},
      {"single-particle Bessel oracle", bessel_oracle},
      {"Wannier-Stark ladder", wannier_stark},
      {"invariant suite", invariants},
      {"determinism", determinism},
  };

  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    if (only != 0 && static_cast<int>(i + 1) != only) continue;
    Verdict v;
    try {
      v = criteria[i].run();
    } catch (const std::exception &e) {
      v = {false, std::string("error: ") + e.what()};
    }
    all = all && v.pass;
    std::printf("[%s] AC%zu %s: %s\n", v.pass ? "PASS" : "FAIL", i + 1, criteria[i].title,
                v.detail.c_str());
    std::fflush(stdout);
  }
  return all ? 0 : 1;
}
