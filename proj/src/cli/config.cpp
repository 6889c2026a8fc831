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


#include "fracbloch/cli/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "fracbloch/cli/numbers.hpp"
#include "fracbloch/errors.hpp"

namespace fracbloch::cli {

namespace {

struct Entry {
  std::string value;
  int line = 0;
};

struct Section {
  int line = 0;
  std::map<std::string, Entry> entries;
};

using Document = std::map<std::string, Section>;

const std::map<std::string, std::set<std::string>> &schema() {
  static const std::map<std::string, std::set<std::string>> keys = {
      {"scenario",
       {"name", "description", "model", "z_max", "dz", "excitation",
        "observables", "refocus_threshold", "truncation_tolerance",
        "normalization", "snapshots", "compare_preset", "output"}},
      {"params",
       {"n_sites", "kappa", "kappa1", "rho", "u0", "fd", "eps", "j_hop",
        "near_diagonal_defect", "kappa1_bonds"}},
      {"waveguide",
       {"shape", "n_guides", "spacing_um", "bend_radius_cm", "project_radius",
        "length_cm", "detuning", "wavelength_nm", "n_eff", "force_mode"}},
      {"calibration",
       {"reference_spacing_um", "kappa_ref", "rho_ref", "decay_gamma",
        "l_foc_cm", "radius_cm", "force_shape", "force_spacing_um"}},
  };
  return keys;
}

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::string strip_comment(const std::string &line) {
  const std::string t = trim(line);
  if (t.empty() || t[0] == '#' || t[0] == ';') return {};
  for (std::size_t i = 1; i < t.size(); ++i) {
    if ((t[i] == '#' || t[i] == ';') && (t[i - 1] == ' ' || t[i - 1] == '\t')) {
      return trim(std::string_view(t).substr(0, i));
    }
  }
  return t;
}

Document tokenize(const std::string &text) {
  Document doc;
  std::istringstream in(text);
  std::string raw;
  std::string current;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = strip_comment(raw);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError("malformed section header", line_no);
      current = trim(std::string_view(line).substr(1, line.size() - 2));
      if (!schema().contains(current)) {
        throw ConfigError("unknown section [" + current + "]", line_no);
      }
      if (doc.contains(current)) {
        throw ConfigError("duplicate section [" + current + "]", line_no);
      }
      doc[current].line = line_no;
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("expected key = value", line_no);
    if (current.empty()) throw ConfigError("key outside any section", line_no);
    const std::string key = trim(std::string_view(line).substr(0, eq));
    const std::string value = trim(std::string_view(line).substr(eq + 1));
    if (!schema().at(current).contains(key)) {
      throw ConfigError("unknown key '" + key + "' in [" + current + "]", line_no);
    }
    Section &section = doc[current];
    if (section.entries.contains(key)) {
      throw ConfigError("duplicate key '" + key + "'", line_no);
    }
    if (value.empty()) throw ConfigError("empty value for '" + key + "'", line_no);
    section.entries[key] = {value, line_no};
  }
  return doc;
}

std::vector<std::string> split_list(const std::string &value) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(value);
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

class Reader {
 public:
  Reader(const Document &doc, const std::string &name) {
    const auto it = doc.find(name);
    if (it != doc.end()) section_ = &it->second;
  }

  bool present() const { return section_ != nullptr; }
  int line() const { return section_ ? section_->line : 0; }
  bool has(const std::string &key) const {
    return section_ && section_->entries.contains(key);
  }
  int line_of(const std::string &key) const {
    return has(key) ? section_->entries.at(key).line : line();
  }

  std::optional<std::string> text(const std::string &key) const {
    if (!has(key)) return std::nullopt;
    return section_->entries.at(key).value;
  }

  std::optional<double> number(const std::string &key) const {
    if (!has(key)) return std::nullopt;
    const Entry &e = section_->entries.at(key);
    const auto v = parse_double(e.value);
    if (!v || std::isnan(*v)) {
      throw ConfigError("'" + key + "' expects a number, got '" + e.value + "'", e.line);
    }
    return v;
  }

  std::optional<long long> integer(const std::string &key) const {
    if (!has(key)) return std::nullopt;
    const Entry &e = section_->entries.at(key);
    const auto v = parse_integer(e.value);
    if (!v) {
      throw ConfigError("'" + key + "' expects an integer, got '" + e.value + "'",
                        e.line);
    }
    return v;
  }

  std::optional<bool> boolean(const std::string &key) const {
    const auto t = text(key);
    if (!t) return std::nullopt;
    if (*t == "true" || *t == "yes" || *t == "1") return true;
    if (*t == "false" || *t == "no" || *t == "0") return false;
    throw ConfigError("'" + key + "' expects true or false", line_of(key));
  }

  template <typename Enum>
  std::optional<Enum> choice(const std::string &key,
                             const std::map<std::string, Enum> &options) const {
    const auto t = text(key);
    if (!t) return std::nullopt;
    const auto it = options.find(*t);
    if (it == options.end()) {
      std::string allowed;
      for (const auto &[name, unused] : options) {
        allowed += (allowed.empty() ? "" : ", ") + name;
      }
      throw ConfigError("'" + key + "' must be one of: " + allowed, line_of(key));
    }
    return it->second;
  }

 private:
  const Section *section_ = nullptr;
};

const std::map<std::string, ModelKind> kModelNames = {
    {"fock", ModelKind::kFock},
    {"single", ModelKind::kSingle},
    {"effective", ModelKind::kEffective}};
const std::map<std::string, Normalization> kNormNames = {
    {"per-column", Normalization::kPerColumn}, {"global", Normalization::kGlobal}};
const std::map<std::string, ArrayShape> kShapeNames = {
    {"square", ArrayShape::kSquare}, {"linear", ArrayShape::kLinear}};
const std::map<std::string, ForceMode> kForceNames = {
    {"calibrated", ForceMode::kCalibrated},
    {"first-principles", ForceMode::kFirstPrinciples}};
const std::map<std::string, Kappa1Bonds> kBondNames = {
    {"main-diagonal", Kappa1Bonds::kMainDiagonalIncident},
    {"three-diagonal", Kappa1Bonds::kThreeDiagonal}};

template <typename Enum>
std::string name_of(const std::map<std::string, Enum> &names, Enum value) {
  for (const auto &[name, v] : names) {
    if (v == value) return name;
  }
  return {};
}

ModelParams read_params(const Reader &r) {
  ModelParams p;
  const auto n_sites = r.integer("n_sites");
  if (!n_sites) throw ConfigError("[params] requires n_sites", r.line());
  p.n_sites = static_cast<int>(*n_sites);
  p.eps = r.number("eps");
  p.j_hop = r.number("j_hop");
  p.u0 = r.number("u0").value_or(0.0);
  p.fd = r.number("fd").value_or(0.0);
  p.kappa1_bonds =
      r.choice("kappa1_bonds", kBondNames).value_or(Kappa1Bonds::kMainDiagonalIncident);

  const bool ebh = p.eps && p.j_hop;
  if (ebh) {
    const double e = *p.eps;
    p.kappa = e * *p.j_hop / 2.0;
    p.kappa1 = p.kappa - p.u0 * std::pow(e, 1.5);
    p.rho = -2.0 * p.u0 * e * e;
  } else {
    const auto kappa = r.number("kappa");
    if (!kappa) {
      throw ConfigError("[params] requires kappa (or both eps and j_hop)", r.line());
    }
    p.kappa = *kappa;
    p.kappa1 = p.kappa;
    p.rho = 0.0;
  }
  if (p.eps) p.near_diagonal_defect = 2.0 * *p.eps * *p.eps * p.u0;
  // Explicit values override the derived ones; validate() rejects overrides
  // that contradict an eps/J parameterization.
  if (const auto v = r.number("kappa")) p.kappa = *v;
  if (const auto v = r.number("kappa1")) p.kappa1 = *v;
  if (const auto v = r.number("rho")) p.rho = *v;
  if (const auto v = r.number("near_diagonal_defect")) p.near_diagonal_defect = *v;
  try {
    p.validate();
  } catch (const std::invalid_argument &e) {
    throw ConfigError(std::string("[params] ") + e.what(), r.line());
  }
  return p;
}

WaveguideSource read_waveguide(const Reader &w, const Reader &c) {
  WaveguideSource src;
  WaveguideArraySpec &spec = src.spec;
  spec.shape = w.choice("shape", kShapeNames).value_or(ArrayShape::kSquare);
  if (const auto v = w.integer("n_guides")) spec.n_guides = static_cast<int>(*v);
  if (const auto v = w.number("spacing_um")) spec.spacing_um = *v;
  if (const auto v = w.number("bend_radius_cm")) spec.bend_radius_cm = *v;
  const auto length = w.number("length_cm");
  if (!length) throw ConfigError("[waveguide] requires length_cm", w.line());
  spec.length_cm = *length;
  if (const auto v = w.number("detuning")) spec.detuning = *v;
  if (const auto v = w.number("wavelength_nm")) spec.wavelength_nm = *v;
  if (const auto v = w.number("n_eff")) spec.n_eff = *v;
  src.force_mode = w.choice("force_mode", kForceNames).value_or(ForceMode::kCalibrated);
  src.project_radius = w.boolean("project_radius").value_or(false);

  if (const auto v = c.number("reference_spacing_um")) src.coupling.reference_spacing_um = *v;
  if (const auto v = c.number("kappa_ref")) src.coupling.kappa_ref = *v;
  if (const auto v = c.number("rho_ref")) src.coupling.rho_ref = *v;
  src.coupling.decay_gamma = c.number("decay_gamma");
  if (const auto v = c.number("l_foc_cm")) src.force_calibration.l_foc_cm = *v;
  if (const auto v = c.number("radius_cm")) src.force_calibration.radius_cm = *v;
  if (const auto v = c.choice("force_shape", kShapeNames)) src.force_calibration.shape = *v;
  if (const auto v = c.number("force_spacing_um")) src.force_calibration.spacing_um = *v;
  return src;
}

void validate_scenario(const ScenarioConfig &cfg, const Reader &s, int source_line) {
  PhotonicMapping mapping;
  try {
    mapping = resolve_params(cfg);
  } catch (const std::invalid_argument &e) {
    throw ConfigError(e.what(), source_line);
  }
  const ModelParams &p = mapping.params;
  if (cfg.model == ModelKind::kEffective && p.u0 == 0.0) {
    throw ConfigError("effective model needs u0 != 0", source_line);
  }

  double z_max = 0.0;
  try {
    z_max = resolved_z_max(cfg);
  } catch (const ConfigError &e) {
    throw ConfigError(e.what(), s.line_of("z_max"));
  }
  if (!(z_max > 0.0) || std::isinf(z_max)) {
    throw ConfigError("z_max must be finite and > 0", s.line_of("z_max"));
  }
  if (!(cfg.dz > 0.0) || cfg.dz > z_max) {
    throw ConfigError("dz must satisfy 0 < dz <= z_max", s.line_of("dz"));
  }

  const bool pair_lattice = cfg.model == ModelKind::kFock;
  const int side = p.n_sites;
  if (!cfg.excitation.empty()) {
    const std::size_t expected = pair_lattice ? 2 : 1;
    if (cfg.excitation.size() != expected) {
      throw ConfigError(pair_lattice ? "excitation on the pair lattice is 'n,m'"
                                     : "excitation on a chain is a single site",
                        s.line_of("excitation"));
    }
    for (int site : cfg.excitation) {
      if (site < 0 || site >= side) {
        throw ConfigError("excitation site " + std::to_string(site) +
                              " outside lattice of " + std::to_string(side),
                          s.line_of("excitation"));
      }
    }
  }
  for (const std::string &obs : cfg.observables) {
    const auto &known = known_observables();
    if (std::find(known.begin(), known.end(), obs) == known.end()) {
      throw ConfigError("unknown observable '" + obs + "'", s.line_of("observables"));
    }
    if (obs == "diagonal_confinement" && !pair_lattice) {
      throw ConfigError("diagonal_confinement needs model = fock",
                        s.line_of("observables"));
    }
  }
  if (!(cfg.refocus_threshold > 0.0 && cfg.refocus_threshold < 1.0)) {
    throw ConfigError("refocus_threshold must lie in (0, 1)",
                      s.line_of("refocus_threshold"));
  }
  if (!(cfg.truncation_tolerance > 0.0)) {
    throw ConfigError("truncation_tolerance must be > 0",
                      s.line_of("truncation_tolerance"));
  }
  for (double z : cfg.snapshots) {
    if (!pair_lattice) {
      throw ConfigError("snapshots need model = fock", s.line_of("snapshots"));
    }
    if (!(z >= 0.0 && z <= z_max)) {
      throw ConfigError("snapshot z outside [0, z_max]", s.line_of("snapshots"));
    }
  }
}

}  // namespace

const std::vector<std::string> &known_observables() {
  static const std::vector<std::string> names = {
      "return_probability", "diagonal_confinement", "breathing_width",
      "participation_ratio", "edge_population"};
  return names;
}

const char *to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::kFock: return "fock";
    case ModelKind::kSingle: return "single";
    case ModelKind::kEffective: return "effective";
  }
  return "?";
}

Geometry geometry_of(ModelKind kind) {
  return kind == ModelKind::kFock ? Geometry::kTwoDDiagonal : Geometry::kOneD;
}

PhotonicMapping resolve_params(const ScenarioConfig &config) {
  if (const auto *direct = std::get_if<ModelParams>(&config.source)) {
    direct->validate();
    return {*direct, false};
  }
  WaveguideSource src = std::get<WaveguideSource>(config.source);
  if (src.project_radius && !std::isinf(src.spec.bend_radius_cm)) {
    src.spec.bend_radius_cm = project_single_particle_radius(src.spec.bend_radius_cm);
  }
  return waveguide_to_model(src.spec, src.coupling, src.force_mode,
                            src.force_calibration);
}

double resolved_z_max(const ScenarioConfig &config) {
  if (config.z_max) return *config.z_max;
  if (const auto *src = std::get_if<WaveguideSource>(&config.source)) {
    return src->spec.length_cm;
  }
  throw ConfigError("z_max is required when parameters are given directly");
}

ScenarioConfig parse_config(const std::string &text) {
  const Document doc = tokenize(text);
  const Reader s(doc, "scenario");
  const Reader params(doc, "params");
  const Reader waveguide(doc, "waveguide");
  const Reader calibration(doc, "calibration");

  if (params.present() == waveguide.present()) {
    throw ConfigError("exactly one of [params] or [waveguide] is required",
                      std::max(params.line(), waveguide.line()));
  }
  if (calibration.present() && !waveguide.present()) {
    throw ConfigError("[calibration] only applies to [waveguide]", calibration.line());
  }

  ScenarioConfig cfg;
  if (const auto v = s.text("name")) cfg.name = *v;
  if (const auto v = s.text("description")) cfg.description = *v;
  cfg.model = s.choice("model", kModelNames).value_or(ModelKind::kFock);
  cfg.z_max = s.number("z_max");
  if (const auto v = s.number("dz")) cfg.dz = *v;
  if (const auto v = s.text("excitation"); v && *v != "center") {
    for (const std::string &item : split_list(*v)) {
      const auto site = parse_integer(item);
      if (!site) throw ConfigError("excitation expects integers", s.line_of("excitation"));
      cfg.excitation.push_back(static_cast<int>(*site));
    }
  }
  if (const auto v = s.text("observables")) cfg.observables = split_list(*v);
  if (const auto v = s.number("refocus_threshold")) cfg.refocus_threshold = *v;
  if (const auto v = s.number("truncation_tolerance")) cfg.truncation_tolerance = *v;
  cfg.normalization = s.choice("normalization", kNormNames).value_or(Normalization::kPerColumn);
  if (const auto v = s.text("snapshots")) {
    for (const std::string &item : split_list(*v)) {
      const auto z = parse_double(item);
      if (!z) throw ConfigError("snapshots expects numbers", s.line_of("snapshots"));
      cfg.snapshots.push_back(*z);
    }
  }
  if (const auto v = s.text("compare_preset")) cfg.compare_preset = *v;
  if (const auto v = s.text("output")) cfg.output_dir = *v;

  int source_line = 0;
  if (params.present()) {
    cfg.source = read_params(params);
    source_line = params.line();
  } else {
    cfg.source = read_waveguide(waveguide, calibration);
    source_line = waveguide.line();
  }
  validate_scenario(cfg, s, source_line);
  return cfg;
}

ScenarioConfig load_config(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open config " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

std::string to_config_text(const ScenarioConfig &config) {
  std::ostringstream out;
  const auto list = [](const auto &items, auto fmt) {
    std::string s;
    for (const auto &item : items) s += (s.empty() ? "" : ", ") + fmt(item);
    return s;
  };

  out << "[scenario]\n";
  out << "name = " << config.name << "\n";
  if (!config.description.empty()) out << "description = " << config.description << "\n";
  out << "model = " << to_string(config.model) << "\n";
  if (config.z_max) out << "z_max = " << format_double(*config.z_max) << "\n";
  out << "dz = " << format_double(config.dz) << "\n";
  out << "excitation = "
      << (config.excitation.empty()
              ? std::string("center")
              : list(config.excitation, [](int v) { return std::to_string(v); }))
      << "\n";
  if (!config.observables.empty()) {
    out << "observables = " << list(config.observables, [](const std::string &v) { return v; })
        << "\n";
  }
  out << "refocus_threshold = " << format_double(config.refocus_threshold) << "\n";
  out << "truncation_tolerance = " << format_double(config.truncation_tolerance) << "\n";
  out << "normalization = " << to_string(config.normalization) << "\n";
  if (!config.snapshots.empty()) {
    out << "snapshots = " << list(config.snapshots, format_double) << "\n";
  }
  if (!config.compare_preset.empty()) out << "compare_preset = " << config.compare_preset << "\n";
  if (!config.output_dir.empty()) out << "output = " << config.output_dir << "\n";

  if (const auto *p = std::get_if<ModelParams>(&config.source)) {
    out << "\n[params]\n";
    out << "n_sites = " << p->n_sites << "\n";
    out << "kappa = " << format_double(p->kappa) << "\n";
    out << "kappa1 = " << format_double(p->kappa1) << "\n";
    out << "rho = " << format_double(p->rho) << "\n";
    out << "u0 = " << format_double(p->u0) << "\n";
    out << "fd = " << format_double(p->fd) << "\n";
    out << "near_diagonal_defect = " << format_double(p->near_diagonal_defect) << "\n";
    if (p->eps) out << "eps = " << format_double(*p->eps) << "\n";
    if (p->j_hop) out << "j_hop = " << format_double(*p->j_hop) << "\n";
    out << "kappa1_bonds = " << name_of(kBondNames, p->kappa1_bonds) << "\n";
  } else {
    const auto &src = std::get<WaveguideSource>(config.source);
    out << "\n[waveguide]\n";
    out << "shape = " << name_of(kShapeNames, src.spec.shape) << "\n";
    out << "n_guides = " << src.spec.n_guides << "\n";
    out << "spacing_um = " << format_double(src.spec.spacing_um) << "\n";
    out << "bend_radius_cm = " << format_double(src.spec.bend_radius_cm) << "\n";
    out << "project_radius = " << (src.project_radius ? "true" : "false") << "\n";
    out << "length_cm = " << format_double(src.spec.length_cm) << "\n";
    out << "detuning = " << format_double(src.spec.detuning) << "\n";
    out << "wavelength_nm = " << format_double(src.spec.wavelength_nm) << "\n";
    out << "n_eff = " << format_double(src.spec.n_eff) << "\n";
    out << "force_mode = " << name_of(kForceNames, src.force_mode) << "\n";
    out << "\n[calibration]\n";
    out << "reference_spacing_um = " << format_double(src.coupling.reference_spacing_um) << "\n";
    out << "kappa_ref = " << format_double(src.coupling.kappa_ref) << "\n";
    out << "rho_ref = " << format_double(src.coupling.rho_ref) << "\n";
    if (src.coupling.decay_gamma) {
      out << "decay_gamma = " << format_double(*src.coupling.decay_gamma) << "\n";
    }
    out << "l_foc_cm = " << format_double(src.force_calibration.l_foc_cm) << "\n";
    out << "radius_cm = " << format_double(src.force_calibration.radius_cm) << "\n";
    out << "force_shape = " << name_of(kShapeNames, src.force_calibration.shape) << "\n";
    out << "force_spacing_um = " << format_double(src.force_calibration.spacing_um) << "\n";
  }
  return out.str();
}

}  // namespace fracbloch::cli
