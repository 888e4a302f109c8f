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


#include "magnon/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <numeric>
#include <thread>

#include "magnon/analysis.hpp"
#include "magnon/optimize.hpp"

namespace magnon {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Mean and standard error of the finite entries.
std::pair<double, double> mean_stderr(const std::vector<double>& v, long* n_out = nullptr) {
  double s = 0.0;
  long n = 0;
  for (double x : v)
    if (std::isfinite(x)) {
      s += x;
      ++n;
    }
  if (n_out) *n_out = n;
  if (n == 0) return {kNaN, kNaN};
  const double m = s / n;
  if (n < 2) return {m, 0.0};
  double ss = 0.0;
  for (double x : v)
    if (std::isfinite(x)) ss += (x - m) * (x - m);
  return {m, std::sqrt(ss / (n - 1)) / std::sqrt(static_cast<double>(n))};
}

void check_abort_budget(int aborted, int total, double max_fraction) {
  if (total > 0 && static_cast<double>(aborted) > max_fraction * total)
    throw NumericalError("too many Monte Carlo samples aborted (" + std::to_string(aborted) + " of " +
                         std::to_string(total) + ")");
}

void require_ascending(const std::vector<double>& t, const char* what) {
  if (t.empty()) throw std::invalid_argument(std::string(what) + " grid must not be empty");
  for (size_t i = 0; i < t.size(); ++i) {
    if (!(t[i] >= 0.0) || !std::isfinite(t[i])) throw std::invalid_argument(std::string(what) + " must be >= 0");
    if (i > 0 && t[i] < t[i - 1]) throw std::invalid_argument(std::string(what) + " grid must be ascending");
  }
}

Sequence concat(Sequence a, const Sequence& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

// Prepare-write-store-read protocol shared by magnon Ramsey and tomography.
struct RegisterSpec {
  std::vector<int> inputs;    // rows of the tomography table
  std::vector<int> readouts;  // rows of the tomography table
  SwapParams swap;
  double storage_f = 1.0;     // reset before storage
  double readout_f = 1.0;     // reset after storage
  bool invert = false;
  int reinit_mode = -1;       // index into the model species, or -1
};

// p_down for every (input, readout) at every storage time, for one sample.
std::vector<RMat> register_probabilities(const SampleFactory& fac, const SampleRealization& s,
                                         const RegisterSpec& spec, const std::vector<double>& t_store_ns) {
  Propagator prop = fac.propagator(s);
  const Mat rho0 = fac.initial_state(s);
  const PulseOptions& po = prop.pulses();
  const auto& table = tomography_table();
  const int d = prop.dim();

  Sequence tail = swap_sequence(spec.swap, po);
  tail.push_back(PulseSegment::reset(spec.storage_f));
  if (spec.reinit_mode >= 0) {
    const auto& mode = s.modes[spec.reinit_mode].mode;
    tail.push_back(PulseSegment::reinit(spec.reinit_mode + 1, mode.index_of(s.m_values[spec.reinit_mode])));
  }
  std::vector<Mat> rho(spec.inputs.size());
  for (size_t a = 0; a < spec.inputs.size(); ++a) {
    rho[a] = rho0;
    prop.run(rho[a], concat(rotation_sequence(table[spec.inputs[a]].prepare, po), tail));
  }

  Sequence head = {PulseSegment::reset(spec.readout_f)};
  head = concat(head, swap_sequence(spec.swap, po));
  std::vector<Mat> obs(spec.readouts.size());
  for (size_t b = 0; b < spec.readouts.size(); ++b) {
    obs[b] = down_projector(d);
    prop.run_adjoint(obs[b], concat(head, rotation_sequence(table[spec.readouts[b]].readout, po)));
  }

  std::vector<RMat> out(t_store_ns.size(), RMat(spec.inputs.size(), spec.readouts.size()));
  const auto& es = prop.eigensystem(DriveParams{});

  if (!spec.invert) {
    // In the eigenbasis of the free Hamiltonian each storage time only costs
    // elementwise phase factors.
    std::vector<Mat> rt(rho.size()), ot(obs.size());
    for (size_t a = 0; a < rho.size(); ++a) rt[a] = es.vectors.adjoint() * rho[a] * es.vectors;
    for (size_t b = 0; b < obs.size(); ++b) ot[b] = (es.vectors.adjoint() * obs[b] * es.vectors).transpose();
    Mat phase(d, d), x(d, d);
    for (size_t ti = 0; ti < t_store_ns.size(); ++ti) {
      const double t = t_store_ns[ti] * 1e-3;
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l) phase(k, l) = std::polar(1.0, -(es.values(k) - es.values(l)) * t);
      for (size_t a = 0; a < rho.size(); ++a) {
        x = rt[a].cwiseProduct(phase);
        for (size_t b = 0; b < obs.size(); ++b) out[ti](a, b) = ot[b].cwiseProduct(x).sum().real();
      }
    }
  } else {
    for (size_t ti = 0; ti < t_store_ns.size(); ++ti) {
      const double half = 0.5 * t_store_ns[ti];
      for (size_t a = 0; a < rho.size(); ++a) {
        Mat r = rho[a];
        prop.run(r, {PulseSegment::free(half), PulseSegment::invert(), PulseSegment::free(half)});
        for (size_t b = 0; b < obs.size(); ++b) out[ti](a, b) = expectation(obs[b], r);
      }
    }
  }
  return out;
}

// Per-sample register tables for a whole run; aborted samples are empty.
std::vector<std::vector<RMat>> run_register(const SampleFactory& fac, const RegisterSpec& spec,
                                            const std::vector<double>& t_store_ns, const RunOptions& run,
                                            int* aborted) {
  std::vector<std::vector<RMat>> per(run.samples);
  std::vector<char> bad(run.samples, 0);
  parallel_for(run.samples, resolve_workers(run.workers), [&](int i) {
    try {
      per[i] = register_probabilities(fac, fac.draw(run.seed, i), spec, t_store_ns);
    } catch (const NumericalError&) {
      bad[i] = 1;
    }
  });
  *aborted = static_cast<int>(std::count(bad.begin(), bad.end(), 1));
  check_abort_budget(*aborted, run.samples, run.max_abort_fraction);
  return per;
}

RMat mean_table(const std::vector<std::vector<RMat>>& per, size_t ti, RMat* err = nullptr, int* used = nullptr) {
  RMat sum, sq;
  int n = 0;
  for (const auto& s : per) {
    if (s.empty()) continue;
    if (n == 0) {
      sum = RMat::Zero(s[ti].rows(), s[ti].cols());
      sq = sum;
    }
    sum += s[ti];
    sq += s[ti].cwiseProduct(s[ti]);
    ++n;
  }
  if (used) *used = n;
  if (n == 0) throw NumericalError("no valid Monte Carlo samples");
  const RMat mean = sum / n;
  if (err) {
    if (n > 1) {
      RMat var = ((sq - n * mean.cwiseProduct(mean)) / (n - 1)).cwiseMax(0.0);
      *err = (var / n).cwiseSqrt();
    } else {
      *err = RMat::Zero(mean.rows(), mean.cols());
    }
  }
  return mean;
}

std::vector<double> storage_grid(const TomographyConfig& cfg) {
  if (!cfg.align_t_store) return {cfg.t_store_ns};
  if (!(cfg.t_store_step_ns > 0.0) || cfg.t_store_max_ns < cfg.t_store_min_ns)
    throw std::invalid_argument("invalid storage-time alignment window");
  std::vector<double> g;
  const long n = std::lround((cfg.t_store_max_ns - cfg.t_store_min_ns) / cfg.t_store_step_ns);
  for (long k = 0; k <= n; ++k) g.push_back(cfg.t_store_min_ns + k * cfg.t_store_step_ns);
  return g;
}

RegisterSpec tomography_spec(const ModelConfig& model, const TomographyConfig& cfg) {
  RegisterSpec spec;
  spec.inputs = spec.readouts = {0, 1, 2, 3, 4, 5};
  spec.swap = cfg.swap;
  spec.storage_f = spec.readout_f = model.f_init;
  if (!cfg.reinit_species.empty()) {
    spec.reinit_mode = model.species_index(cfg.reinit_species);
    if (spec.reinit_mode < 0) throw std::invalid_argument("reinit species '" + cfg.reinit_species + "' not in model");
  }
  return spec;
}

}  // namespace

// ---------------------------------------------------------------------------

ModelConfig ModelConfig::defaults() {
  ModelConfig m;
  for (const auto& sp : default_species()) {
    SpeciesSetup s;
    s.params = sp;
    s.levels = sp.name == "75As" ? 5 : 3;
    m.species.push_back(s);
  }
  return m;
}

void ModelConfig::set_preparation(const std::string& name, double p, double lambda) {
  for (auto& s : species) {
    if (name == "thermal") {
      s.state = NuclearStateSpec::thermal();
    } else if (name == "polarized") {
      if (s.params.name == "71Ga")
        s.state = NuclearStateSpec::dark(-1, p);
      else if (s.params.name == "69Ga")
        s.state = NuclearStateSpec::deviated_dark(+1, lambda, p);
      else
        s.state = NuclearStateSpec::thermal();
    } else {
      throw std::invalid_argument("unknown preparation '" + name + "'");
    }
  }
}

int ModelConfig::species_index(const std::string& name) const {
  for (size_t i = 0; i < species.size(); ++i)
    if (species[i].params.name == name) return static_cast<int>(i);
  return -1;
}

double ModelConfig::total_nuclei() const {
  const int idx = species_index(reference_species);
  const SpeciesParams ref = idx >= 0 ? species[idx].params : default_species(reference_species);
  return estimate_nuclei(knight_shift_mhz, ref.hyperfine_total_mhz, ref.abundance).n_total;
}

std::vector<SpeciesParams> ModelConfig::effective_species() const {
  std::vector<SpeciesParams> out;
  const double ntot = hyperfine_from_knight_shift ? total_nuclei() : 0.0;
  for (const auto& s : species) {
    SpeciesParams p = s.params;
    if (hyperfine_from_knight_shift) p.hyperfine_single_mhz = hyperfine_from_total(p, ntot);
    out.push_back(p);
  }
  return out;
}

SpaceLayout ModelConfig::layout() const {
  std::vector<std::string> names{"electron"};
  std::vector<int> dims{2};
  for (const auto& s : species) {
    names.push_back(s.params.name);
    dims.push_back(s.levels);
  }
  return SpaceLayout(names, dims);
}

void ModelConfig::validate() const {
  if (species.empty()) throw std::invalid_argument("model needs at least one nuclear species");
  for (const auto& s : species) {
    magnon::validate(s.params);
    if (s.levels < 1 || s.levels % 2 == 0)
      throw std::invalid_argument("levels for '" + s.params.name + "' must be a positive odd integer");
  }
  coupling.validate();
  if (!(noise.q > 0.0)) throw std::invalid_argument("noise.Q must be positive");
  if (!(t2_star_us > 0.0)) throw std::invalid_argument("noise.t2_star_us must be positive");
  if (!(f_init >= 0.0 && f_init <= 1.0)) throw std::invalid_argument("f_init must lie in [0, 1]");
  if (!(pulses.rabi_mhz > 0.0)) throw std::invalid_argument("pulses.rabi_mhz must be positive");
  if (!(integrator.steps_per_period > 0.0)) throw std::invalid_argument("integrator.steps_per_period must be positive");
  if (hyperfine_from_knight_shift && !(knight_shift_mhz > 0.0))
    throw std::invalid_argument("hyperfine.knight_shift_mhz must be positive");
}

int resolve_workers(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("SIM_DEFAULT_WORKERS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && v > 0) return static_cast<int>(v);
  }
  return 1;
}

void parallel_for(int n, int workers, const std::function<void(int)>& f) {
  if (n <= 0) return;
  workers = std::max(1, std::min(workers, n));
  std::vector<std::exception_ptr> errors(n);
  if (workers == 1) {
    for (int i = 0; i < n; ++i) {
      try {
        f(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  } else {
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (int i = next++; i < n; i = next++) {
          try {
            f(i);
          } catch (...) {
            errors[i] = std::current_exception();
          }
        }
      });
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

SampleFactory::SampleFactory(ModelConfig model) : model_(std::move(model)) {
  model_.validate();
  layout_ = model_.layout();
  effective_ = model_.effective_species();
  for (const auto& s : model_.species)
    if (s.state.variant == NuclearStateSpec::Variant::Thermal) {
      const long nh = equivalent_half_count(s.params.effective_count, s.params.spin);
      if (!thermal_.count(nh)) thermal_.emplace(nh, thermal_j_pmf(nh));
    }
}

SampleRealization SampleFactory::draw(uint64_t seed, int index) const {
  const uint64_t sample_seed = seed + static_cast<uint64_t>(index);
  SampleRealization r;
  for (size_t i = 0; i < model_.species.size(); ++i) {
    const auto& s = model_.species[i];
    auto rng = make_rng(sample_seed, i + 1);
    SpinState st;
    if (s.state.variant == NuclearStateSpec::Variant::Thermal) {
      st = sample_thermal(thermal_.at(equivalent_half_count(s.params.effective_count, s.params.spin)), rng);
    } else {
      const PolarizedDraw pd = polarized_state(s.state, s.params.max_spin_length(), rng);
      st = pd.state;
      r.clipped_deviations += pd.clipped ? 1 : 0;
    }
    r.modes.push_back(make_mode(effective_[i], st, s.levels));
    r.m_values.push_back(st.m);
    r.clipped_levels += r.modes.back().mode.clipped_levels();
  }
  if (model_.detuning_noise) {
    auto rng = make_rng(sample_seed, 0);
    r.detuning_mhz = sample_detuning(model_.t2_star_us, rng);
  }
  return r;
}

Propagator SampleFactory::propagator(const SampleRealization& s) const {
  const Mat h = build_hamiltonian(layout_, s.modes, model_.coupling, DriveParams{}).matrix;
  return Propagator(layout_, h, model_.noise, model_.integrator, model_.pulses, s.detuning_mhz);
}

Mat SampleFactory::initial_state(const SampleRealization& s) const {
  return initial_density_matrix(model_.f_init, s.modes, s.m_values, layout_).matrix;
}

// ---------------------------------------------------------------------------

namespace {

// Shared driver for NOVEL and ESR: one task per sample, every sweep value
// evaluated with probe times along a single continuous drive.
ExperimentResult drive_map(const std::string& name, const std::string& axis, const ModelConfig& model,
                           const std::vector<double>& sweep, const std::vector<double>& t_ns,
                           const RunOptions& run, bool novel, double esr_rabi) {
  if (sweep.empty()) throw std::invalid_argument(axis + " grid must not be empty");
  require_ascending(t_ns, "probe time");
  if (run.samples < 1) throw std::invalid_argument("samples must be >= 1");
  SampleFactory fac(model);
  const size_t np = sweep.size() * t_ns.size();
  std::vector<std::vector<double>> per(np, std::vector<double>(run.samples, kNaN));

  parallel_for(run.samples, resolve_workers(run.workers), [&](int i) {
    try {
      const SampleRealization s = fac.draw(run.seed, i);
      Propagator prop = fac.propagator(s);
      Mat rho0 = fac.initial_state(s);
      Mat obs = down_projector(prop.dim());
      if (novel) {
        const PulseSegment half_pi = rotation_segment(Axis::PlusX, M_PI / 2, prop.pulses());
        prop.apply(rho0, half_pi);
        prop.apply_adjoint(obs, half_pi);
      }
      std::vector<double> local(np);
      for (size_t k = 0; k < sweep.size(); ++k) {
        Mat rho = rho0;
        const DriveParams d = novel ? DriveParams{0.0, 0.0, sweep[k]} : DriveParams{sweep[k], esr_rabi, 0.0};
        prop.drive_with_probes(rho, d, t_ns, [&](size_t ti, const Mat& r) {
          local[k * t_ns.size() + ti] = std::clamp(expectation(obs, r), 0.0, 1.0);
        });
      }
      for (size_t p = 0; p < np; ++p) per[p][i] = local[p];
    } catch (const NumericalError&) {
      // Left as NaN and counted below.
    }
  });

  ExperimentResult res;
  res.experiment = name;
  res.axes = {axis, "t_ns"};
  res.seed = run.seed;
  res.samples_requested = run.samples;
  for (int i = 0; i < run.samples; ++i)
    if (!std::isfinite(per[0][i])) ++res.samples_aborted;
  check_abort_budget(res.samples_aborted, run.samples, run.max_abort_fraction);
  for (size_t k = 0; k < sweep.size(); ++k)
    for (size_t ti = 0; ti < t_ns.size(); ++ti) {
      const size_t p = k * t_ns.size() + ti;
      long n = 0;
      auto [m, e] = mean_stderr(per[p], &n);
      res.coords.push_back({sweep[k], t_ns[ti]});
      res.mean.push_back(m);
      res.stderr_.push_back(e);
      res.count.push_back(n);
    }
  res.per_sample = std::move(per);
  return res;
}

}  // namespace

ExperimentResult novel_spectrum(const ModelConfig& model, const NovelConfig& cfg, const RunOptions& run) {
  return drive_map("novel", "omega_y_mhz", model, cfg.omega_y_mhz, cfg.t_ns, run, true, 0.0);
}

ExperimentResult esr_spectrum(const ModelConfig& model, const EsrConfig& cfg, const RunOptions& run) {
  if (!std::isfinite(cfg.rabi_mhz)) throw std::invalid_argument("esr.rabi_mhz must be finite");
  return drive_map("esr", "detuning_mhz", model, cfg.detuning_mhz, cfg.t_ns, run, false, cfg.rabi_mhz);
}

ExperimentResult magnon_ramsey(const ModelConfig& model, const RamseyConfig& cfg, const RunOptions& run) {
  require_ascending(cfg.t_store_ns, "storage time");
  if (run.samples < 1) throw std::invalid_argument("samples must be >= 1");
  SampleFactory fac(model);
  RegisterSpec spec;
  spec.inputs = spec.readouts = {0, 1};
  spec.swap = cfg.swap;
  spec.storage_f = cfg.storage_f_init.value_or(model.f_init);
  spec.readout_f = model.f_init;
  spec.invert = cfg.invert;
  if (!(spec.storage_f >= 0.0 && spec.storage_f <= 1.0)) throw std::invalid_argument("storage_f_init outside [0, 1]");

  int aborted = 0;
  const auto per = run_register(fac, spec, cfg.t_store_ns, run, &aborted);

  ExperimentResult res;
  res.experiment = "ramsey";
  res.axes = {"t_store_ns"};
  res.seed = run.seed;
  res.samples_requested = run.samples;
  res.samples_aborted = aborted;
  for (size_t ti = 0; ti < cfg.t_store_ns.size(); ++ti) {
    std::vector<double> c(run.samples, kNaN);
    for (int i = 0; i < run.samples; ++i) {
      if (per[i].empty()) continue;
      const RMat& p = per[i][ti];
      const double s1 = p(0, 0) + p(0, 1), s2 = p(1, 1) + p(1, 0);
      if (s1 > 0.0 && s2 > 0.0) c[i] = 0.5 * ((p(0, 0) - p(0, 1)) / s1 + (p(1, 1) - p(1, 0)) / s2);
    }
    long n = 0;
    auto [m, e] = mean_stderr(c, &n);
    res.coords.push_back({cfg.t_store_ns[ti]});
    res.mean.push_back(m);
    res.stderr_.push_back(e);
    res.count.push_back(n);
    res.per_sample.push_back(std::move(c));
  }
  if (cfg.t_store_ns.front() < 280.0)
    res.warnings.push_back("storage times below the 280 ns experimental floor were simulated");
  return res;
}

double calibrate_novel_omega(const ModelConfig& model, const std::vector<double>& grid, double t_ns,
                             const RunOptions& run) {
  if (grid.size() < 1) throw std::invalid_argument("calibration grid must not be empty");
  const ExperimentResult r = novel_spectrum(model, NovelConfig{grid, {t_ns}}, run);
  std::vector<double> resp(grid.size());
  for (size_t k = 0; k < grid.size(); ++k) resp[k] = 1.0 - r.mean[k];
  return parabolic_peak(grid, resp, argmax(resp));
}

TomographyResult tomography(const ModelConfig& model, const TomographyConfig& cfg_in, const RunOptions& run) {
  if (run.samples < 1) throw std::invalid_argument("samples must be >= 1");
  TomographyConfig cfg = cfg_in;
  if (!(cfg.swap.t_ns > 0.0) || !std::isfinite(cfg.swap.omega_mhz)) throw std::invalid_argument("invalid SWAP parameters");

  if (cfg.calibrate_omega) {
    RunOptions cr = run;
    cr.samples = cfg.calibration_samples;
    cfg.swap.omega_mhz =
        calibrate_novel_omega(cfg.calibration_model.value_or(model), cfg.calibration_grid_mhz, cfg.swap.t_ns, cr);
  }

  SampleFactory fac(model);
  RegisterSpec spec = tomography_spec(model, cfg);
  std::vector<double> grid = storage_grid(cfg);

  auto fidelity_of = [](const RMat& p) { return contrast_and_fidelity(p).fidelity; };

  if (cfg.optimize) {
    // Deterministic draws are reused for every objective evaluation.
    std::vector<SampleRealization> draws;
    for (int i = 0; i < run.samples; ++i) draws.push_back(fac.draw(run.seed, i));
    auto mean_over = [&](const RegisterSpec& sp, const std::vector<double>& ts) {
      std::vector<RMat> acc;
      for (const auto& s : draws) {
        auto r = register_probabilities(fac, s, sp, ts);
        if (acc.empty())
          acc = r;
        else
          for (size_t k = 0; k < r.size(); ++k) acc[k] += r[k];
      }
      for (auto& a : acc) a /= static_cast<double>(draws.size());
      return acc;
    };
    auto best_storage = [&](const RegisterSpec& sp) {
      const auto tables = mean_over(sp, grid);
      std::vector<double> f(tables.size());
      for (size_t k = 0; k < tables.size(); ++k) f[k] = fidelity_of(tables[k]);
      return grid[argmax(f)];
    };
    const double t0 = best_storage(spec);
    auto objective = [&](const std::vector<double>& x) {
      RegisterSpec sp = spec;
      sp.swap = SwapParams{x[0], x[1]};
      if (!(x[1] > 0.0) || !(x[2] > 0.0)) return 1e3;
      try {
        return 1.0 - fidelity_of(mean_over(sp, {x[2]})[0]);
      } catch (const NumericalError&) {
        return 1e3;
      }
    };
    NelderMeadOptions nm;
    nm.x_tol = 1e-5;
    nm.f_tol = 1e-9;
    nm.max_iter = 400;
    const auto r = nelder_mead(objective, {spec.swap.omega_mhz, spec.swap.t_ns, t0}, {0.3, 2.0, 0.3}, nm);
    cfg.swap = SwapParams{r.x[0], r.x[1]};
    spec.swap = cfg.swap;
    grid = {r.x[2]};
  }

  int aborted = 0;
  const auto per = run_register(fac, spec, grid, run, &aborted);

  size_t best = 0;
  if (grid.size() > 1) {
    std::vector<double> f(grid.size());
    for (size_t k = 0; k < grid.size(); ++k) f[k] = fidelity_of(mean_table(per, k));
    best = argmax(f);
  }

  TomographyResult res;
  res.p_down = mean_table(per, best, &res.p_down_stderr, &res.samples_used);
  res.normalized = normalize_pairs(res.p_down);
  res.contrasts = contrast_and_fidelity(res.p_down);
  // The Poisson errors above assume photon counts. For simulated
  // probabilities the spread across Monte Carlo samples is the relevant
  // uncertainty, estimated here with a leave-one-out jackknife.
  res.contrasts.contrast_err = {0.0, 0.0, 0.0};
  res.contrasts.fidelity_err = 0.0;
  if (res.samples_used > 1) {
    const double n = res.samples_used;
    std::vector<ContrastResult> loo;
    for (const auto& s : per) {
      if (s.empty()) continue;
      const RMat rest = (res.p_down * n - s[best]) / (n - 1.0);
      try {
        loo.push_back(contrast_and_fidelity(rest));
      } catch (const std::invalid_argument&) {
      }
    }
    if (loo.size() > 1) {
      const double m = static_cast<double>(loo.size());
      auto jk = [&](auto get) {
        double mean = 0.0, ss = 0.0;
        for (const auto& c : loo) mean += get(c) / m;
        for (const auto& c : loo) ss += (get(c) - mean) * (get(c) - mean);
        return std::sqrt((m - 1.0) / m * ss);
      };
      for (int a = 0; a < 3; ++a) res.contrasts.contrast_err[a] = jk([a](const ContrastResult& c) { return c.contrast[a]; });
      res.contrasts.fidelity_err = jk([](const ContrastResult& c) { return c.fidelity; });
    }
  }
  res.t_store_ns = grid[best];
  res.swap = cfg.swap;
  res.samples_aborted = aborted;
  if (res.t_store_ns < 280.0) res.warnings.push_back("storage time below the 280 ns experimental floor");
  return res;
}

std::vector<std::string> scenario_names() {
  return {"ideal_single", "relaxation_only", "overlap_only", "realistic", "ideal_two_species"};
}

Scenario tomography_scenario(const std::string& name) { return tomography_scenario(name, ModelConfig::defaults()); }

Scenario tomography_scenario(const std::string& name, const ModelConfig& user_base) {
  Scenario sc;
  sc.name = name;
  // Scenarios choose their own species subsets, so any species the caller
  // left out is restored from the built-in table.
  ModelConfig base = user_base;
  for (const auto& sp : default_species()) {
    if (base.species_index(sp.name) >= 0) continue;
    SpeciesSetup s;
    s.params = sp;
    s.levels = sp.name == "75As" ? 5 : 3;
    base.species.push_back(s);
  }

  auto no_errors = [](ModelConfig& m) {
    m.noise.enabled = false;
    m.detuning_noise = false;
    m.f_init = 1.0;
  };
  auto single = [&](ModelConfig& m) {
    SpeciesSetup ga = m.species[m.species_index("71Ga")];
    ga.state = NuclearStateSpec::dark(-1, 0.6);
    m.species = {ga};
  };
  auto initial_swap = [](const ModelConfig& m, const std::string& storage) {
    const auto eff = m.effective_species();
    const int idx = m.species_index(storage);
    const auto& sp = eff[idx];
    const double j = m.species[idx].state.polarization * sp.max_spin_length();
    const double omag = m.coupling.a_perp(sp.hyperfine_single_mhz) * std::sqrt(j / 2.0);
    return SwapParams{sp.larmor_mhz, 1e3 / (2.0 * omag)};
  };

  ModelConfig realistic = base;
  realistic.set_preparation("polarized");
  std::vector<double> cal_grid;
  for (double w = 54.0; w <= 60.0 + 1e-9; w += 0.5) cal_grid.push_back(w);

  if (name == "ideal_single" || name == "relaxation_only") {
    sc.model = base;
    single(sc.model);
    no_errors(sc.model);
    if (name == "relaxation_only") sc.model.noise.enabled = true;
    sc.tomo.swap = initial_swap(sc.model, "71Ga");
    sc.tomo.optimize = true;
    sc.run.samples = 1;
  } else if (name == "overlap_only" || name == "realistic") {
    sc.model = realistic;
    if (name == "overlap_only") no_errors(sc.model);
    sc.tomo.swap = SwapParams{56.0, 130.0};
    sc.tomo.calibrate_omega = true;
    sc.tomo.calibration_grid_mhz = cal_grid;
    sc.tomo.calibration_model = realistic;
    sc.run.samples = 100;
  } else if (name == "ideal_two_species") {
    sc.model = base;
    SpeciesSetup ga = sc.model.species[sc.model.species_index("71Ga")];
    SpeciesSetup as = sc.model.species[sc.model.species_index("75As")];
    ga.params.effective_count = as.params.effective_count;
    ga.state = NuclearStateSpec::dark(-1, 0.6);
    as.state = NuclearStateSpec::dark(+1, 0.6);
    sc.model.species = {ga, as};
    no_errors(sc.model);
    sc.tomo.swap = initial_swap(sc.model, "71Ga");
    sc.tomo.optimize = true;
    sc.tomo.reinit_species = "75As";
    sc.run.samples = 1;
  } else {
    throw std::invalid_argument("unknown tomography scenario '" + name + "'");
  }
  return sc;
}

}  // namespace magnon
