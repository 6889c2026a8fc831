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


#include "fracbloch/cli/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numbers>

#include "fracbloch/cli/numbers.hpp"
#include "fracbloch/cli/pixmap.hpp"
#include "fracbloch/errors.hpp"

namespace fracbloch::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

bool is_pair_model(ModelKind kind) { return kind != ModelKind::kSingle; }

json optional_number(const std::optional<double> &v) {
  return v ? json(*v) : json(nullptr);
}

json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json report_json(const RefocusReport &r) {
  return json{{"positions_cm", r.refocus_positions},
              {"peak_values", r.peak_values},
              {"period_cm", optional_number(r.period_estimate)},
              {"frequency_per_cm", optional_number(r.frequency_estimate)},
              {"origin_anchor_cm", optional_number(r.origin_anchor)},
              {"truncated", r.truncated}};
}

std::pair<double, double> series_max(const ObservableSeries &s) {
  double best = -std::numeric_limits<double>::infinity();
  double where = 0.0;
  for (std::size_t k = 0; k < s.values.size(); ++k) {
    if (std::isfinite(s.values[k]) && s.values[k] > best) {
      best = s.values[k];
      where = s.z[k];
    }
  }
  return {best, where};
}

ScenarioConfig waveguide_preset(std::string name, std::string description,
                                ModelKind model, ArrayShape shape, int guides,
                                double radius, double length) {
  ScenarioConfig cfg;
  cfg.name = std::move(name);
  cfg.description = std::move(description);
  cfg.model = model;
  WaveguideSource src;
  src.spec.shape = shape;
  src.spec.n_guides = guides;
  src.spec.spacing_um = 19.0;
  src.spec.bend_radius_cm = radius;
  src.spec.length_cm = length;
  src.spec.detuning = shape == ArrayShape::kSquare ? -4.0 : 0.0;
  src.coupling = CouplingCalibration{19.0, 0.95, 0.3, std::nullopt};
  src.force_calibration = ForceCalibration{6.5, 400.0, ArrayShape::kSquare, 19.0};
  cfg.source = src;
  cfg.dz = 0.01;
  return cfg;
}

}  // namespace

Operator build_operator(ModelKind kind, const ModelParams &params) {
  switch (kind) {
    case ModelKind::kFock: return build_fock_hamiltonian(params);
    case ModelKind::kEffective: return build_effective_hamiltonian(params);
    case ModelKind::kSingle:
      return build_single_particle_hamiltonian(params.n_sites, params.kappa, params.fd);
  }
  throw std::logic_error("unhandled model kind");
}

std::string generator_id(ModelKind kind, const ModelParams &p) {
  std::string id = std::string(to_string(kind)) + ":N=" + std::to_string(p.n_sites) +
                   ",kappa=" + format_double(p.kappa) + ",fd=" + format_double(p.fd);
  if (kind != ModelKind::kSingle) {
    id += ",rho=" + format_double(p.rho) + ",u0=" + format_double(p.u0);
  }
  if (kind == ModelKind::kFock) {
    id += ",kappa1=" + format_double(p.kappa1) +
          ",near_diag=" + format_double(p.near_diagonal_defect);
  }
  return id;
}

SimulationResult simulate(const ScenarioConfig &config) {
  SimulationResult r;
  r.config = config;
  const PhotonicMapping mapping = resolve_params(config);
  r.params = mapping.params;
  r.extrapolated = mapping.extrapolated;
  r.geometry = geometry_of(config.model);

  const int side = r.params.n_sites;
  const int center = center_site(side);
  if (r.geometry == Geometry::kTwoDDiagonal) {
    r.excitation = config.excitation.empty() ? std::vector<int>{center, center}
                                             : config.excitation;
    r.excitation_index = SiteIndex2D{r.excitation[0], r.excitation[1]}.flatten(side);
  } else {
    r.excitation = config.excitation.empty() ? std::vector<int>{center} : config.excitation;
    r.excitation_index = r.excitation[0];
  }

  const Operator h = build_operator(config.model, r.params);
  const PropagationPlan<double> plan(h, generator_id(config.model, r.params));
  const auto psi0 = StateVector<double>::localized(h.rows(), r.excitation_index);
  r.trajectory = plan.propagate(psi0, resolved_z_max(config), config.dz);
  r.populations = r.trajectory.populations();

  const PopulationTrajectory &pop = r.populations;
  r.edge = edge_population(pop, r.geometry);
  r.return_probability = return_probability(pop, r.excitation_index);
  r.width = breathing_width(pop, r.geometry, r.excitation[0]);
  r.participation = participation_ratio(pop, r.geometry);
  if (r.geometry == Geometry::kTwoDDiagonal) r.confinement = diagonal_confinement(pop, side);

  for (ObservableSeries *s : {&r.return_probability, &r.width, &r.participation}) {
    apply_truncation_guard(*s, r.edge, config.truncation_tolerance);
  }
  if (r.confinement) apply_truncation_guard(*r.confinement, r.edge, config.truncation_tolerance);
  r.max_edge_population = *std::max_element(r.edge.values.begin(), r.edge.values.end());
  r.truncated = r.max_edge_population > config.truncation_tolerance;

  r.refocus = find_refocus(r.return_probability, config.refocus_threshold);
  r.width_period = period_from_width_maximum(r.width);
  r.frequency_estimate = r.refocus.frequency_estimate;
  if (!is_pair_model(config.model) && !r.frequency_estimate) {
    r.frequency_estimate = r.width_period.frequency_estimate;
  }
  return r;
}

std::optional<double> companion_ratio(const SimulationResult &a, const SimulationResult &b) {
  const SimulationResult *pair = &a;
  const SimulationResult *single = &b;
  if (!is_pair_model(a.config.model) && is_pair_model(b.config.model)) std::swap(pair, single);
  if (!pair->frequency_estimate || !single->frequency_estimate) return std::nullopt;
  return *pair->frequency_estimate / *single->frequency_estimate;
}

json summarize(const SimulationResult &r, const SimulationResult *companion) {
  const ModelParams &p = r.params;
  json params{{"n_sites", p.n_sites}, {"kappa", p.kappa},   {"kappa1", p.kappa1},
              {"rho", p.rho},         {"u0", p.u0},         {"fd", p.fd},
              {"near_diagonal_defect", p.near_diagonal_defect},
              {"eps", optional_number(p.eps)}, {"j_hop", optional_number(p.j_hop)},
              {"kappa_eff", p.u0 != 0.0 ? json(kappa_eff(p.kappa, p.rho, p.u0)) : json(nullptr)},
              {"extrapolated_couplings", r.extrapolated}};

  const auto [width_max, width_at] = series_max(r.width);
  json summary{
      {"name", r.config.name},
      {"description", r.config.description},
      {"model", to_string(r.config.model)},
      {"generator_id", r.trajectory.generator_id},
      {"params", params},
      {"sampling", {{"z_max_cm", r.trajectory.z.back()}, {"dz_cm", r.config.dz},
                    {"samples", r.trajectory.samples()}}},
      {"excitation", r.excitation},
      {"refocus", report_json(r.refocus)},
      {"refocus_threshold", r.config.refocus_threshold},
      {"width", {{"max_sites", finite_or_null(width_max)},
                 {"max_position_cm", width_at},
                 {"period_from_width_cm", optional_number(r.width_period.period_estimate)}}},
      {"frequency_estimate_per_cm", optional_number(r.frequency_estimate)},
      {"truncation", {{"tolerance", r.config.truncation_tolerance},
                      {"max_edge_population", r.max_edge_population},
                      {"truncated", r.truncated}}},
  };
  if (r.confinement) {
    const auto &v = r.confinement->values;
    summary["confinement"] = {{"min", *std::min_element(v.begin(), v.end())},
                              {"max", *std::max_element(v.begin(), v.end())}};
  }
  if (companion) {
    summary["comparison"] = {{"preset", companion->config.name},
                             {"frequency_ratio", optional_number(companion_ratio(r, *companion))}};
  }
  return summary;
}

RunSummary run_scenario(const ScenarioConfig &config, const std::string &output_override) {
  const SimulationResult r = simulate(config);
  std::optional<SimulationResult> companion;
  if (!config.compare_preset.empty()) {
    ScenarioConfig other = preset(config.compare_preset);
    other.compare_preset.clear();
    companion = simulate(other);
  }

  RunSummary run;
  run.output_dir = !output_override.empty()        ? output_override
                   : !config.output_dir.empty() ? config.output_dir
                                                : "out/" + config.name;
  std::error_code ec;
  fs::create_directories(run.output_dir, ec);
  if (ec) throw IoError("cannot create " + run.output_dir + ": " + ec.message());
  const auto path = [&](const std::string &file) {
    run.files.push_back(file);
    return (fs::path(run.output_dir) / file).string();
  };

  write_trajectory_csv(path("trajectory.csv"), r.populations, r.geometry);

  std::vector<ObservableSeries> series;
  const auto wanted = [&](const std::string &name) {
    return config.observables.empty() ||
           std::find(config.observables.begin(), config.observables.end(), name) !=
               config.observables.end();
  };
  if (wanted("return_probability")) series.push_back(r.return_probability);
  if (wanted("diagonal_confinement") && r.confinement) series.push_back(*r.confinement);
  if (wanted("breathing_width")) series.push_back(r.width);
  if (wanted("participation_ratio")) series.push_back(r.participation);
  if (wanted("edge_population")) series.push_back(r.edge);
  if (!series.empty()) write_observables_csv(path("observables.csv"), series);

  const HeatmapAxis axis = r.geometry == Geometry::kTwoDDiagonal ? HeatmapAxis::kDiagonalVsZ
                                                                 : HeatmapAxis::kChainVsZ;
  write_pgm(path("heatmap.pgm"),
            render_heatmap(r.populations, r.geometry, axis, config.normalization));
  for (double z : config.snapshots) {
    write_pgm(path("snapshot_z" + format_double(z) + ".pgm"),
              render_heatmap(r.populations, r.geometry, HeatmapAxis::kFullSlice,
                             config.normalization, z));
  }

  run.json = summarize(r, companion ? &*companion : nullptr);
  run.files.push_back("summary.json");
  run.json["files"] = run.files;
  std::ofstream out(fs::path(run.output_dir) / "summary.json", std::ios::binary);
  if (!out) throw IoError("cannot write summary.json in " + run.output_dir);
  out << run.json.dump(2) << '\n';
  if (!out) throw IoError("write failed for summary.json");
  return run;
}

json analyze(const LoadedTrajectory &loaded, const AnalyzeOptions &options) {
  const PopulationTrajectory &pop = loaded.traj;
  const bool pair = loaded.geometry == Geometry::kTwoDDiagonal;
  const int side = pair ? lattice_side(pop.dim()) : static_cast<int>(pop.dim());
  std::vector<int> site = options.site;
  if (site.empty()) {
    site = pair ? std::vector<int>{center_site(side), center_site(side)}
                : std::vector<int>{center_site(side)};
  }
  if (site.size() != (pair ? 2u : 1u)) {
    throw std::invalid_argument("site must have " + std::string(pair ? "2" : "1") +
                                " coordinate(s)");
  }
  for (int s : site) {
    if (s < 0 || s >= side) throw std::out_of_range("site outside lattice");
  }
  const Eigen::Index index = pair ? SiteIndex2D{site[0], site[1]}.flatten(side) : site[0];

  const ObservableSeries edge = edge_population(pop, loaded.geometry);
  ObservableSeries ret = return_probability(pop, index);
  ObservableSeries width = breathing_width(pop, loaded.geometry, site[0]);
  apply_truncation_guard(ret, edge, options.truncation_tolerance);
  apply_truncation_guard(width, edge, options.truncation_tolerance);
  const RefocusReport refocus = find_refocus(ret, options.threshold);
  const RefocusReport width_period = period_from_width_maximum(width);
  const auto [width_max, width_at] = series_max(width);
  const double max_edge = *std::max_element(edge.values.begin(), edge.values.end());

  json out{{"geometry", pair ? "pair-lattice" : "chain"},
           {"n_sites", side},
           {"samples", pop.samples()},
           {"site", site},
           {"refocus", report_json(refocus)},
           {"refocus_threshold", options.threshold},
           {"width", {{"max_sites", finite_or_null(width_max)},
                      {"max_position_cm", width_at},
                      {"period_from_width_cm", optional_number(width_period.period_estimate)}}},
           {"truncation", {{"tolerance", options.truncation_tolerance},
                           {"max_edge_population", max_edge},
                           {"truncated", max_edge > options.truncation_tolerance}}}};
  if (pair) {
    const auto conf = diagonal_confinement(pop, side).values;
    out["confinement"] = {{"min", *std::min_element(conf.begin(), conf.end())},
                          {"max", *std::max_element(conf.begin(), conf.end())}};
  }
  return out;
}

std::vector<std::string> preset_names() {
  return {"fig3-delocalization", "fig3c-bh-only", "fig4a-fractional-bo",
          "fig4b-single-bo", "effective-pair"};
}

ScenarioConfig preset(const std::string &name) {
  const double inf = std::numeric_limits<double>::infinity();
  if (name == "fig3-delocalization") {
    ScenarioConfig cfg = waveguide_preset(
        name,
        "straight 15x15 square array, d=19 um (kappa=0.95, rho=0.3 cm^-1), "
        "diagonal detuning -4 cm^-1 (attractive), L=2.5 cm: bound pair spreading "
        "along the diagonal with direct and second-order pair tunneling",
        ModelKind::kFock, ArrayShape::kSquare, 15, inf, 2.5);
    cfg.truncation_tolerance = 0.05;
    return cfg;
  }
  if (name == "fig3c-bh-only") {
    ScenarioConfig cfg = waveguide_preset(
        name,
        "fig3-delocalization with the second-neighbour coupling removed (rho=0): "
        "standard Bose-Hubbard counterfactual, second-order pair tunneling only",
        ModelKind::kFock, ArrayShape::kSquare, 15, inf, 2.5);
    std::get<WaveguideSource>(cfg.source).coupling.rho_ref = 0.0;
    cfg.truncation_tolerance = 0.05;
    return cfg;
  }
  if (name == "fig4a-fractional-bo") {
    ScenarioConfig cfg = waveguide_preset(
        name,
        "15x15 square array bent along the diagonal with R=400 cm, d=19 um, "
        "detuning -4 cm^-1, L=8.5 cm: fractional Bloch oscillation of the bound "
        "pair, refocusing near 6.5 cm",
        ModelKind::kFock, ArrayShape::kSquare, 15, 400.0, 8.5);
    cfg.snapshots = {3.25, 6.5};
    // The pair revival peaks near 0.7 at this interaction strength, and the
    // unbound fraction reaches the rim of the 15x15 device.
    cfg.refocus_threshold = 0.5;
    cfg.truncation_tolerance = 0.05;
    cfg.compare_preset = "fig4b-single-bo";
    return cfg;
  }
  if (name == "fig4b-single-bo") {
    ScenarioConfig cfg = waveguide_preset(
        name,
        "planar array of 23 guides, d=19 um, bent with R'=400*sqrt(2) cm, "
        "L=8.5 cm: single-particle Bloch oscillation under the same per-site force",
        ModelKind::kSingle, ArrayShape::kLinear, 23, 400.0, 8.5);
    std::get<WaveguideSource>(cfg.source).project_radius = true;
    cfg.compare_preset = "fig4a-fractional-bo";
    return cfg;
  }
  if (name == "effective-pair") {
    return waveguide_preset(
        name,
        "bound-pair chain of 15 sites with kappa_eff = -2 kappa^2/u0 + rho and "
        "doubled tilt, parameters of fig4a-fractional-bo",
        ModelKind::kEffective, ArrayShape::kSquare, 15, 400.0, 8.5);
  }
  throw ConfigError("unknown preset '" + name + "'");
}

std::vector<PresetInfo> list_presets() {
  std::vector<PresetInfo> out;
  for (const std::string &name : preset_names()) {
    const ScenarioConfig cfg = preset(name);
    const auto &src = std::get<WaveguideSource>(cfg.source);
    double radius = src.spec.bend_radius_cm;
    if (src.project_radius && std::isfinite(radius)) {
      radius = project_single_particle_radius(radius);
    }
    const ModelParams p = resolve_params(cfg).params;
    out.push_back(
        {name, cfg.description,
         json{{"model", to_string(cfg.model)},
              {"shape", src.spec.shape == ArrayShape::kSquare ? "square" : "linear"},
              {"n_guides", src.spec.n_guides},
              {"spacing_um", src.spec.spacing_um},
              {"kappa_bar", src.coupling.kappa_ref},
              {"rho_bar", src.coupling.rho_ref},
              {"detuning", src.spec.detuning},
              {"bend_radius_cm", std::isfinite(radius) ? json(radius) : json("inf")},
              {"length_cm", src.spec.length_cm},
              {"fd", p.fd}}});
  }
  return out;
}

}  // namespace fracbloch::cli
