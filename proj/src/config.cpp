// Copyright 2026 The magnonsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "magnon/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace magnon {

using nlohmann::json;

namespace {

json grid(double start, double stop, double step) { return json{{"start", start}, {"stop", stop}, {"step", step}}; }

const json& at_path(const json& doc, const std::string& path) {
  const json* cur = &doc;
  std::stringstream ss(path);
  std::string part;
  while (std::getline(ss, part, '.')) {
    if (!cur->is_object() || !cur->contains(part)) throw ConfigError(path, "missing key");
    cur = &(*cur)[part];
  }
  return *cur;
}

template <class T>
T get(const json& doc, const std::string& path) {
  const json& v = at_path(doc, path);
  try {
    return v.get<T>();
  } catch (const json::exception&) {
    throw ConfigError(path, "wrong value type");
  }
}

double num(const json& doc, const std::string& path) {
  const json& v = at_path(doc, path);
  if (!v.is_number()) throw ConfigError(path, "expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw ConfigError(path, "expected a finite number");
  return x;
}

bool flag(const json& doc, const std::string& path) {
  const json& v = at_path(doc, path);
  if (!v.is_boolean()) throw ConfigError(path, "expected true or false");
  return v.get<bool>();
}

}  // namespace

json default_config() {
  json species = json::object();
  for (const auto& s : default_species()) {
    species[s.name] = {{"spin", s.spin},
                       {"larmor_mhz", s.larmor_mhz},
                       {"hyperfine_total_mhz", s.hyperfine_total_mhz},
                       {"hyperfine_single_mhz", s.hyperfine_single_mhz},
                       {"abundance", s.abundance},
                       {"effective_count", s.effective_count},
                       {"levels", s.name == "75As" ? 5 : 3}};
  }
  return json{
      {"seed", 1},
      {"samples", 100},
      {"workers", 0},
      {"species", species},
      {"model",
       {{"include", {"69Ga", "71Ga", "75As"}},
        {"preparation", "thermal"},
        {"polarization", 0.6},
        {"lambda", 2.0}}},
      {"coupling",
       {{"tilt_angle", 0.15},
        {"electron_zeeman_mhz", 2500.0},
        {"eta_mhz", 11e-6},
        {"double_flip_species", "75As"},
        {"noncollinear", true},
        {"flipflop", true},
        {"flipflop_self", true},
        {"double_flip", true},
        {"collinear", false},
        {"absolute_zeeman", false}}},
      {"hyperfine", {{"from_knight_shift", true}, {"knight_shift_mhz", 0.5}, {"reference_species", "71Ga"}}},
      {"noise",
       {{"relaxation", true}, {"Q", 46.0}, {"detuning_noise", true}, {"t2_star_us", 0.29}, {"f_init", 0.9907}}},
      {"pulses", {{"rabi_mhz", 90.0}, {"instant", false}}},
      {"integrator", {{"steps_per_period", 40.0}, {"min_steps", 10}, {"exact_unitary", true}}},
      {"novel", {{"omega_y_mhz", grid(-70.0, 70.0, 2.0)}, {"t_ns", grid(0.0, 200.0, 10.0)}}},
      {"esr", {{"detuning_mhz", grid(-70.0, 70.0, 1.0)}, {"t_ns", grid(0.0, 400.0, 20.0)}, {"rabi_mhz", 2.2}}},
      {"ramsey",
       {{"omega_swap_mhz", 56.0},
        {"t_swap_ns", 130.0},
        {"t_store_ns", grid(280.0, 320.0, 0.5)},
        {"invert", false},
        {"storage_f_init", nullptr}}},
      {"tomography",
       {{"scenario", "realistic"},
        {"samples", nullptr},
        {"omega_swap_mhz", nullptr},
        {"t_swap_ns", nullptr},
        {"t_store_ns", nullptr},
        {"optimize", nullptr},
        {"calibrate_omega", nullptr}}},
  };
}

void merge_config(json& base, const json& user, const std::string& prefix) {
  if (!user.is_object()) throw ConfigError(prefix, "expected an object");
  for (auto it = user.begin(); it != user.end(); ++it) {
    const std::string key = prefix.empty() ? it.key() : prefix + "." + it.key();
    if (!base.contains(it.key())) throw ConfigError(key, "unknown key");
    json& slot = base[it.key()];
    if (slot.is_object() && it.value().is_object() && !slot.contains("start"))
      merge_config(slot, it.value(), key);
    else
      slot = it.value();
  }
}

void apply_override(json& doc, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) throw ConfigError(assignment, "override must look like key.path=value");
  const std::string path = assignment.substr(0, eq);
  const std::string text = assignment.substr(eq + 1);
  json* cur = &doc;
  std::stringstream ss(path);
  std::string part;
  std::vector<std::string> parts;
  while (std::getline(ss, part, '.')) parts.push_back(part);
  for (size_t i = 0; i < parts.size(); ++i) {
    if (!cur->is_object() || !cur->contains(parts[i])) throw ConfigError(path, "unknown key");
    cur = &(*cur)[parts[i]];
  }
  json value = json::parse(text, nullptr, false);
  if (value.is_discarded()) value = text;
  *cur = value;
}

json load_config(const std::string& path, const std::vector<std::string>& overrides) {
  json doc = default_config();
  if (!path.empty()) {
    std::ifstream in(path);
    if (!in) throw ConfigError("", "cannot open config file '" + path + "'");
    json user = json::parse(in, nullptr, false, true);
    if (user.is_discarded()) throw ConfigError("", "config file '" + path + "' is not valid JSON");
    merge_config(doc, user);
  }
  for (const auto& o : overrides) apply_override(doc, o);
  return doc;
}

std::vector<double> grid_from_json(const json& j, const std::string& key) {
  std::vector<double> out;
  if (j.is_array()) {
    for (const auto& v : j) {
      if (!v.is_number()) throw ConfigError(key, "grid entries must be numbers");
      out.push_back(v.get<double>());
    }
  } else if (j.is_number()) {
    out.push_back(j.get<double>());
  } else if (j.is_object() && j.contains("start") && j.contains("stop") && j.contains("step")) {
    const double a = j["start"].get<double>(), b = j["stop"].get<double>(), s = j["step"].get<double>();
    if (!(s > 0.0) || b < a) throw ConfigError(key, "grid needs step > 0 and stop >= start");
    const long n = std::lround(std::floor((b - a) / s + 1e-9));
    if (n > 1000000) throw ConfigError(key, "grid too large");
    for (long k = 0; k <= n; ++k) out.push_back(a + k * s);
  } else {
    throw ConfigError(key, "expected a list of numbers or {start, stop, step}");
  }
  if (out.empty()) throw ConfigError(key, "grid must not be empty");
  return out;
}

ModelConfig model_from_config(const json& doc) {
  ModelConfig m;
  const json& include = at_path(doc, "model.include");
  if (!include.is_array() || include.empty()) throw ConfigError("model.include", "expected a non-empty list");
  for (const auto& nm : include) {
    if (!nm.is_string()) throw ConfigError("model.include", "expected species names");
    const std::string name = nm.get<std::string>();
    const std::string p = "species." + name;
    if (!at_path(doc, "species").contains(name)) throw ConfigError("model.include", "unknown species '" + name + "'");
    SpeciesSetup s;
    s.params.name = name;
    s.params.spin = num(doc, p + ".spin");
    s.params.larmor_mhz = num(doc, p + ".larmor_mhz");
    s.params.hyperfine_total_mhz = num(doc, p + ".hyperfine_total_mhz");
    s.params.hyperfine_single_mhz = num(doc, p + ".hyperfine_single_mhz");
    s.params.abundance = num(doc, p + ".abundance");
    s.params.effective_count = num(doc, p + ".effective_count");
    s.levels = get<int>(doc, p + ".levels");
    try {
      magnon::validate(s.params);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(p, e.what());
    }
    m.species.push_back(s);
  }
  try {
    m.set_preparation(get<std::string>(doc, "model.preparation"), num(doc, "model.polarization"),
                      num(doc, "model.lambda"));
  } catch (const ConfigError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw ConfigError("model.preparation", e.what());
  }

  auto& c = m.coupling;
  c.tilt_angle = num(doc, "coupling.tilt_angle");
  c.electron_zeeman_mhz = num(doc, "coupling.electron_zeeman_mhz");
  c.eta_mhz = num(doc, "coupling.eta_mhz");
  c.double_flip_species = get<std::string>(doc, "coupling.double_flip_species");
  c.noncollinear = flag(doc, "coupling.noncollinear");
  c.flipflop = flag(doc, "coupling.flipflop");
  c.flipflop_self = flag(doc, "coupling.flipflop_self");
  c.double_flip = flag(doc, "coupling.double_flip");
  c.collinear = flag(doc, "coupling.collinear");
  c.absolute_zeeman = flag(doc, "coupling.absolute_zeeman");

  m.hyperfine_from_knight_shift = flag(doc, "hyperfine.from_knight_shift");
  m.knight_shift_mhz = num(doc, "hyperfine.knight_shift_mhz");
  m.reference_species = get<std::string>(doc, "hyperfine.reference_species");

  m.noise.enabled = flag(doc, "noise.relaxation");
  m.noise.q = num(doc, "noise.Q");
  m.detuning_noise = flag(doc, "noise.detuning_noise");
  m.t2_star_us = num(doc, "noise.t2_star_us");
  m.f_init = num(doc, "noise.f_init");

  m.pulses.rabi_mhz = num(doc, "pulses.rabi_mhz");
  m.pulses.instant = flag(doc, "pulses.instant");

  m.integrator.steps_per_period = num(doc, "integrator.steps_per_period");
  m.integrator.min_steps = get<int>(doc, "integrator.min_steps");
  m.integrator.exact_unitary = flag(doc, "integrator.exact_unitary");

  // Map validation failures onto the section that holds the field.
  try {
    m.validate();
  } catch (const std::invalid_argument& e) {
    const std::string what = e.what();
    std::string key;
    if (what.find("coupling") != std::string::npos) key = "coupling";
    else if (what.find("noise") != std::string::npos || what.find("f_init") != std::string::npos) key = "noise";
    else if (what.find("pulses") != std::string::npos) key = "pulses";
    else if (what.find("integrator") != std::string::npos) key = "integrator";
    else if (what.find("hyperfine") != std::string::npos) key = "hyperfine";
    else key = "model";
    throw ConfigError(key, what);
  }
  if (m.hyperfine_from_knight_shift && m.species_index(m.reference_species) < 0) {
    try {
      (void)default_species(m.reference_species);
    } catch (const std::invalid_argument&) {
      throw ConfigError("hyperfine.reference_species", "unknown species");
    }
  }
  return m;
}

NovelConfig novel_from_config(const json& doc) {
  return NovelConfig{grid_from_json(at_path(doc, "novel.omega_y_mhz"), "novel.omega_y_mhz"),
                     grid_from_json(at_path(doc, "novel.t_ns"), "novel.t_ns")};
}

EsrConfig esr_from_config(const json& doc) {
  EsrConfig e;
  e.detuning_mhz = grid_from_json(at_path(doc, "esr.detuning_mhz"), "esr.detuning_mhz");
  e.t_ns = grid_from_json(at_path(doc, "esr.t_ns"), "esr.t_ns");
  e.rabi_mhz = num(doc, "esr.rabi_mhz");
  return e;
}

RamseyConfig ramsey_from_config(const json& doc) {
  RamseyConfig r;
  r.swap = SwapParams{num(doc, "ramsey.omega_swap_mhz"), num(doc, "ramsey.t_swap_ns")};
  r.t_store_ns = grid_from_json(at_path(doc, "ramsey.t_store_ns"), "ramsey.t_store_ns");
  r.invert = flag(doc, "ramsey.invert");
  const json& f = at_path(doc, "ramsey.storage_f_init");
  if (!f.is_null()) r.storage_f_init = num(doc, "ramsey.storage_f_init");
  if (!(r.swap.t_ns > 0.0)) throw ConfigError("ramsey.t_swap_ns", "must be positive");
  return r;
}

RunOptions run_from_config(const json& doc) {
  RunOptions r;
  const int samples = get<int>(doc, "samples");
  if (samples < 1) throw ConfigError("samples", "must be >= 1");
  r.samples = samples;
  const json& seed = at_path(doc, "seed");
  if (!seed.is_number_integer()) throw ConfigError("seed", "expected an integer");
  r.seed = seed.is_number_unsigned() ? seed.get<uint64_t>() : static_cast<uint64_t>(seed.get<int64_t>());
  r.workers = resolve_workers(get<int>(doc, "workers"));
  return r;
}

Scenario tomography_from_config(const json& doc) {
  const std::string name = get<std::string>(doc, "tomography.scenario");
  const ModelConfig base = model_from_config(doc);
  Scenario sc;
  try {
    sc = tomography_scenario(name, base);
  } catch (const std::invalid_argument& e) {
    throw ConfigError("tomography.scenario", e.what());
  }
  const RunOptions run = run_from_config(doc);
  sc.run.seed = run.seed;
  sc.run.workers = run.workers;
  const json& t = at_path(doc, "tomography");
  if (!t["samples"].is_null()) {
    const int n = get<int>(doc, "tomography.samples");
    if (n < 1) throw ConfigError("tomography.samples", "must be >= 1");
    sc.run.samples = n;
  }
  if (!t["omega_swap_mhz"].is_null()) {
    sc.tomo.swap.omega_mhz = num(doc, "tomography.omega_swap_mhz");
    sc.tomo.calibrate_omega = false;
  }
  if (!t["t_swap_ns"].is_null()) {
    sc.tomo.swap.t_ns = num(doc, "tomography.t_swap_ns");
    if (!(sc.tomo.swap.t_ns > 0.0)) throw ConfigError("tomography.t_swap_ns", "must be positive");
  }
  if (!t["t_store_ns"].is_null()) {
    sc.tomo.t_store_ns = num(doc, "tomography.t_store_ns");
    sc.tomo.align_t_store = false;
  }
  if (!t["optimize"].is_null()) sc.tomo.optimize = flag(doc, "tomography.optimize");
  if (!t["calibrate_omega"].is_null()) sc.tomo.calibrate_omega = flag(doc, "tomography.calibrate_omega");
  return sc;
}

}  // namespace magnon
