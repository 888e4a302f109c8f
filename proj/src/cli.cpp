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


#include "magnon/cli.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "magnon/analysis.hpp"
#include "magnon/config.hpp"
#include "magnon/fitting.hpp"
#include "magnon/hamiltonian.hpp"
#include "magnon/table_io.hpp"

namespace magnon {

using nlohmann::json;

namespace {

struct CommonFlags {
  std::string config_path;
  std::vector<std::string> sets;
  std::optional<int64_t> seed;
  std::optional<int> samples;
  std::optional<int> workers;
  std::string out;
};

void add_common(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--config", f.config_path, "JSON configuration file");
  cmd->add_option("--set", f.sets, "Override a configuration value: dotted.key=value (repeatable)");
  cmd->add_option("--seed", f.seed, "Base random seed");
  cmd->add_option("--samples", f.samples, "Monte Carlo samples");
  cmd->add_option("--workers", f.workers, "Worker threads (default: SIM_DEFAULT_WORKERS or 1)");
  cmd->add_option("--out", f.out, "Output prefix for <prefix>.csv and <prefix>.summary.json");
}

// "a:b:step" or "x,y,z" to the JSON grid forms accepted by the config.
json grid_arg(const std::string& text, const std::string& flag) {
  if (text.find(':') != std::string::npos) {
    std::stringstream ss(text);
    std::string part;
    std::vector<double> v;
    while (std::getline(ss, part, ':')) {
      try {
        v.push_back(std::stod(part));
      } catch (const std::exception&) {
        throw ConfigError(flag, "expected start:stop:step");
      }
    }
    if (v.size() != 3) throw ConfigError(flag, "expected start:stop:step");
    return json{{"start", v[0]}, {"stop", v[1]}, {"step", v[2]}};
  }
  json arr = json::array();
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    try {
      arr.push_back(std::stod(part));
    } catch (const std::exception&) {
      throw ConfigError(flag, "expected a comma separated list of numbers");
    }
  }
  return arr;
}

std::vector<double> number_list(const std::string& text, const std::string& flag) {
  const json j = grid_arg(text, flag);
  return grid_from_json(j, flag);
}

std::ofstream open_out(const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError("--out", "cannot write '" + path + "'");
  return f;
}

void write_summary(const std::string& path, const std::string& experiment, const json& config, const json& results) {
  json s;
  s["version"] = kVersion;
  s["experiment"] = experiment;
  s["seed"] = config.contains("seed") ? config["seed"] : json(nullptr);
  s["config"] = config;
  s["results"] = results;
  auto f = open_out(path);
  f << s.dump(2) << '\n';
}

json warnings_json(const std::vector<std::string>& w) { return json(w); }

void write_grid_csv(const std::string& path, const ExperimentResult& r) {
  auto f = open_out(path);
  std::vector<std::string> header = r.axes;
  for (const char* h : {"p_down_mean", "p_down_stderr", "n_samples"}) header.emplace_back(h);
  CsvWriter w(f, header);
  for (size_t i = 0; i < r.mean.size(); ++i) {
    std::vector<double> row = r.coords[i];
    row.push_back(r.mean[i]);
    row.push_back(r.stderr_[i]);
    row.push_back(static_cast<double>(r.count[i]));
    w.row(row);
  }
}

json grid_summary(const ExperimentResult& r) {
  return json{{"points", r.mean.size()},
              {"samples_requested", r.samples_requested},
              {"samples_aborted", r.samples_aborted},
              {"warnings", warnings_json(r.warnings)}};
}

std::string prefix_or(const CommonFlags& f, const std::string& fallback) { return f.out.empty() ? fallback : f.out; }

json resolve(const CommonFlags& f, const std::vector<std::string>& extra) {
  std::vector<std::string> overrides = f.sets;
  overrides.insert(overrides.end(), extra.begin(), extra.end());
  json doc = load_config(f.config_path, overrides);
  if (f.seed) doc["seed"] = *f.seed;
  if (f.samples) {
    doc["samples"] = *f.samples;
    doc["tomography"]["samples"] = *f.samples;
  }
  if (f.workers) doc["workers"] = *f.workers;
  return doc;
}

}  // namespace

int execute(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Monte Carlo simulator for electron-nuclear magnon registers", "magnonsim"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));

  CommonFlags common;
  std::string novel_omega, novel_t, esr_detuning, esr_t, ramsey_t;
  std::string scenario;
  bool ideal = false;

  auto* novel = app.add_subcommand("novel", "NOVEL spin-locking spectrum");
  add_common(novel, common);
  novel->add_option("--omega", novel_omega, "Rabi grid in MHz (start:stop:step or list)");
  novel->add_option("--t", novel_t, "Lock time grid in ns");

  auto* esr = app.add_subcommand("esr", "Detuned electron drive spectrum");
  add_common(esr, common);
  esr->add_option("--detuning", esr_detuning, "Detuning grid in MHz");
  esr->add_option("--t", esr_t, "Drive time grid in ns");

  auto* ramsey = app.add_subcommand("ramsey", "Magnon Ramsey contrast versus storage time");
  add_common(ramsey, common);
  ramsey->add_option("--t-store", ramsey_t, "Storage time grid in ns");

  auto* tomo = app.add_subcommand("tomography", "Register process tomography");
  add_common(tomo, common);
  tomo->add_option("--scenario", scenario, "ideal_single, relaxation_only, overlap_only, realistic, ideal_two_species");
  tomo->add_flag("--ideal", ideal, "Shorthand for --scenario ideal_single");

  auto* sample = app.add_subcommand("sample", "Dump sampled nuclear states and detunings");
  add_common(sample, common);

  // estimate: one nested command per quantity.
  auto* estimate = app.add_subcommand("estimate", "Closed-form estimators");
  estimate->require_subcommand(1);
  std::string est_out;
  std::map<std::string, double> ev{{"delta-nu", 0.5},      {"hyperfine-total", 11100.0}, {"abundance", 0.396},
                                   {"sigma", 1.0},         {"a", 0.342},                 {"bq", 0.089},
                                   {"larmor", 58.41},      {"fwhm-khz", 7.0},            {"ratio", 1.0},
                                   {"i0", 4146.0},         {"iend", 38.7},               {"g110", 0.0},
                                   {"gm110", 0.0},         {"t1-us", 0.0},               {"rabi", 0.0},
                                   {"a-perp-khz", 51.0},   {"chi", 58.41},               {"j", 0.0},
                                   {"m", 0.0}};
  bool spin_locked = false;
  std::map<std::string, CLI::App*> est;
  auto add_est = [&](const std::string& name, const std::string& help, std::vector<std::string> keys) {
    auto* c = estimate->add_subcommand(name, help);
    for (const auto& k : keys) c->add_option("--" + k, ev[k]);
    c->add_option("--out", est_out, "Output prefix");
    est[name] = c;
    return c;
  };
  add_est("nuclei", "Nuclei count from the Knight shift", {"delta-nu", "hyperfine-total", "abundance"});
  add_est("knight", "Knight-shift envelope factor", {});
  add_est("neff", "Effective nuclei for an envelope width", {"sigma"});
  add_est("strain", "Strain non-collinear coupling (kHz)", {"a", "bq", "larmor"});
  add_est("t2", "Quadrupolar T2* from a line width", {"fwhm-khz", "ratio"});
  add_est("init", "Initialisation fidelity bound", {"i0", "iend"});
  add_est("tilt", "Axis tilt from in-plane g-factors", {"g110", "gm110"})->get_option("--g110")->required();
  est["tilt"]->get_option("--gm110")->required();
  auto* qc = add_est("q", "Quality factor from a relaxation time", {"t1-us", "rabi"});
  qc->get_option("--t1-us")->required();
  qc->get_option("--rabi")->required();
  qc->add_flag("--spin-locked", spin_locked, "T1 was measured under spin locking");
  auto* mr = add_est("magnon-rate", "Magnon Rabi frequency (MHz)", {"a-perp-khz", "rabi", "chi", "j", "m"});
  mr->get_option("--rabi")->required();
  mr->get_option("--j")->required();
  mr->get_option("--m")->required();

  auto* fit = app.add_subcommand("fit", "Least-squares fit of a CSV data set");
  std::string fit_model, fit_data, fit_init, fit_fix, fit_out;
  fit->add_option("--model", fit_model, "Model id")->required();
  fit->add_option("--data", fit_data, "CSV with columns t,y[,sigma]")->required();
  fit->add_option("--init", fit_init, "Comma separated initial parameters")->required();
  fit->add_option("--fix", fit_fix, "Comma separated parameter names to hold fixed");
  fit->add_option("--out", fit_out, "Output prefix");

  std::vector<std::string> argv_rev(args.rbegin(), args.rend());
  if (!argv_rev.empty()) argv_rev.pop_back();
  try {
    app.parse(argv_rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << '\n';
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  }

  try {
    if (novel->parsed()) {
      std::vector<std::string> extra;
      json doc = resolve(common, extra);
      if (!novel_omega.empty()) doc["novel"]["omega_y_mhz"] = grid_arg(novel_omega, "--omega");
      if (!novel_t.empty()) doc["novel"]["t_ns"] = grid_arg(novel_t, "--t");
      const auto model = model_from_config(doc);
      const auto cfg = novel_from_config(doc);
      const auto run = run_from_config(doc);
      const auto r = novel_spectrum(model, cfg, run);
      const std::string p = prefix_or(common, "novel");
      write_grid_csv(p + ".csv", r);
      write_summary(p + ".summary.json", "novel", doc, grid_summary(r));
      out << "wrote " << p << ".csv (" << r.mean.size() << " points)\n";
    } else if (esr->parsed()) {
      json doc = resolve(common, {});
      if (!esr_detuning.empty()) doc["esr"]["detuning_mhz"] = grid_arg(esr_detuning, "--detuning");
      if (!esr_t.empty()) doc["esr"]["t_ns"] = grid_arg(esr_t, "--t");
      const auto r = esr_spectrum(model_from_config(doc), esr_from_config(doc), run_from_config(doc));
      const std::string p = prefix_or(common, "esr");
      write_grid_csv(p + ".csv", r);
      write_summary(p + ".summary.json", "esr", doc, grid_summary(r));
      out << "wrote " << p << ".csv (" << r.mean.size() << " points)\n";
    } else if (ramsey->parsed()) {
      json doc = resolve(common, {});
      if (!ramsey_t.empty()) doc["ramsey"]["t_store_ns"] = grid_arg(ramsey_t, "--t-store");
      const auto r = magnon_ramsey(model_from_config(doc), ramsey_from_config(doc), run_from_config(doc));
      const std::string p = prefix_or(common, "ramsey");
      auto f = open_out(p + ".csv");
      CsvWriter w(f, {"t_store_ns", "contrast_mean", "contrast_stderr", "n_samples"});
      for (size_t i = 0; i < r.mean.size(); ++i)
        w.row({r.coords[i][0], r.mean[i], r.stderr_[i], static_cast<double>(r.count[i])});
      write_summary(p + ".summary.json", "ramsey", doc, grid_summary(r));
      out << "wrote " << p << ".csv (" << r.mean.size() << " points)\n";
    } else if (tomo->parsed()) {
      if (ideal && !scenario.empty() && scenario != "ideal_single")
        throw ConfigError("--scenario", "conflicts with --ideal");
      std::vector<std::string> extra;
      json doc = resolve(common, extra);
      if (ideal) doc["tomography"]["scenario"] = "ideal_single";
      else if (!scenario.empty()) doc["tomography"]["scenario"] = scenario;
      const Scenario sc = tomography_from_config(doc);
      const auto r = tomography(sc.model, sc.tomo, sc.run);
      const std::string p = prefix_or(common, "tomography");
      auto f = open_out(p + ".csv");
      CsvWriter w(f, {"input", "readout", "probability_mean", "probability_stderr", "normalized_probability",
                      "n_samples"});
      const auto& table = tomography_table();
      for (int a = 0; a < 6; ++a)
        for (int b = 0; b < 6; ++b)
          w.row({state_name(table[a].state), state_name(table[b].state)},
                {r.p_down(a, b), r.p_down_stderr(a, b), r.normalized(a, b), static_cast<double>(r.samples_used)});
      json res{{"scenario", sc.name},
               {"fidelity", r.fidelity()},
               {"fidelity_stderr", r.contrasts.fidelity_err},
               {"infidelity", r.infidelity()},
               {"contrasts", {r.contrasts.contrast[0], r.contrasts.contrast[1], r.contrasts.contrast[2]}},
               {"contrast_stderr", {r.contrasts.contrast_err[0], r.contrasts.contrast_err[1], r.contrasts.contrast_err[2]}},
               {"omega_swap_mhz", r.swap.omega_mhz},
               {"t_swap_ns", r.swap.t_ns},
               {"t_store_ns", r.t_store_ns},
               {"samples_used", r.samples_used},
               {"samples_aborted", r.samples_aborted},
               {"warnings", warnings_json(r.warnings)}};
      write_summary(p + ".summary.json", "tomography", doc, res);
      out << "scenario " << sc.name << ": fidelity " << format_double(r.fidelity()) << " +- "
          << format_double(r.contrasts.fidelity_err) << '\n';
    } else if (sample->parsed()) {
      json doc = resolve(common, {});
      const ModelConfig model = model_from_config(doc);
      const RunOptions run = run_from_config(doc);
      SampleFactory factory(model);
      const std::string p = prefix_or(common, "sample");
      auto f = open_out(p + ".csv");
      CsvWriter w(f, {"sample", "species", "j", "m", "window_center", "detuning_mhz"});
      for (int i = 0; i < run.samples; ++i) {
        const auto s = factory.draw(run.seed, i);
        for (size_t k = 0; k < s.modes.size(); ++k)
          w.row({std::to_string(i), s.modes[k].species.name},
                {s.modes[k].mode.j(), s.m_values[k], s.modes[k].mode.m_center(), s.detuning_mhz});
      }
      write_summary(p + ".summary.json", "sample", doc, json{{"samples", run.samples}});
      out << "wrote " << p << ".csv (" << run.samples << " samples)\n";
    } else if (estimate->parsed()) {
      std::vector<std::pair<std::string, double>> rows;
      std::string which;
      for (const auto& [name, cmd] : est)
        if (cmd->parsed()) which = name;
      if (which == "nuclei") {
        const auto n = estimate_nuclei(ev["delta-nu"], ev["hyperfine-total"], ev["abundance"]);
        rows = {{"n_species", n.n_species}, {"n_total", n.n_total}};
      } else if (which == "knight") {
        rows = {{"knight_factor", knight_factor()}};
      } else if (which == "neff") {
        rows = {{"effective_n", effective_N(ev["sigma"])}};
      } else if (which == "strain") {
        rows = {{"noncollinear_khz", strain_noncollinear(ev["a"], ev["bq"], ev["larmor"])}};
      } else if (which == "t2") {
        rows = {{"t2_star_us", quadrupolar_T2(ev["fwhm-khz"], ev["ratio"])}};
      } else if (which == "init") {
        rows = {{"init_fidelity", estimate_init_fidelity(ev["i0"], ev["iend"])}};
      } else if (which == "tilt") {
        rows = {{"tilt_rad", tilt_from_g(ev["g110"], ev["gm110"])}};
      } else if (which == "q") {
        rows = {{"Q", estimate_Q(ev["t1-us"], ev["rabi"], spin_locked)}};
      } else if (which == "magnon-rate") {
        rows = {{"magnon_rabi_mhz", magnon_rabi(ev["a-perp-khz"] * 1e-3, ev["rabi"], ev["chi"], ev["j"], ev["m"])}};
      }
      for (const auto& [k, v] : rows) out << k << " = " << format_double(v) << '\n';
      if (!est_out.empty()) {
        auto f = open_out(est_out + ".csv");
        CsvWriter w(f, {"quantity", "value"});
        json res = json::object();
        for (const auto& [k, v] : rows) {
          w.row({k}, {v});
          res[k] = v;
        }
        json inputs = json::object();
        for (const auto& opt : est[which]->get_options())
          if (opt->count() > 0 && opt->get_name() != "--out" && opt->get_name() != "--help")
            inputs[opt->get_name().substr(2)] = opt->as<std::string>();
        write_summary(est_out + ".summary.json", "estimate " + which, json{{"inputs", inputs}}, res);
      }
    } else if (fit->parsed()) {
      FitModel model = make_model(fit_model);
      const FitData data = read_fit_csv(fit_data);
      const auto init = number_list(fit_init, "--init");
      if (init.size() != model.size())
        throw ConfigError("--init", "model '" + fit_model + "' needs " + std::to_string(model.size()) + " values");
      if (!fit_fix.empty()) {
        std::stringstream ss(fit_fix);
        std::string name;
        while (std::getline(ss, name, ',')) {
          auto it = std::find(model.names.begin(), model.names.end(), name);
          if (it == model.names.end()) throw ConfigError("--fix", "unknown parameter '" + name + "'");
          model.fixed[it - model.names.begin()] = true;
        }
      }
      const RVec p0 = Eigen::Map<const RVec>(init.data(), init.size());
      const FitResult r = fit_least_squares(model, data, p0);
      for (size_t k = 0; k < model.size(); ++k)
        out << model.names[k] << " = " << format_double(r.params(k)) << " +- " << format_double(r.stderr_(k)) << '\n';
      out << "reduced_chi2 = " << format_double(r.reduced_chi2) << (r.converged ? "" : " (not converged)") << '\n';
      if (!fit_out.empty()) {
        auto f = open_out(fit_out + ".csv");
        CsvWriter w(f, {"parameter", "value", "stderr"});
        json params = json::object();
        for (size_t k = 0; k < model.size(); ++k) {
          w.row({model.names[k]}, {r.params(k), r.stderr_(k)});
          params[model.names[k]] = {{"value", r.params(k)}, {"stderr", r.stderr_(k)}};
        }
        json res{{"parameters", params},
                 {"reduced_chi2", r.reduced_chi2},
                 {"iterations", r.iterations},
                 {"converged", r.converged},
                 {"singular", r.singular},
                 {"message", r.message}};
        write_summary(fit_out + ".summary.json", "fit",
                      json{{"model", fit_model}, {"data", fit_data}, {"init", init}, {"fix", fit_fix}}, res);
      }
    }
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const json::exception& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::invalid_argument& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::domain_error& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitOk;
}

}  // namespace magnon
