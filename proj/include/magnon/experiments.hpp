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


#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "magnon/dynamics.hpp"
#include "magnon/hamiltonian.hpp"
#include "magnon/sampling.hpp"
#include "magnon/sequences.hpp"

namespace magnon {

/// One nuclear subsystem of the simulation: constants, window size and how
/// its initial state is drawn.
struct SpeciesSetup {
  SpeciesParams params;
  int levels = 3;
  NuclearStateSpec state;
};

/// Everything that defines the physical model of one Monte Carlo sample.
struct ModelConfig {
  std::vector<SpeciesSetup> species;  ///< layout order after the electron
  CouplingConfig coupling;

  /// Derive single-nucleus couplings as a = A / (N_tot / 2), with N_tot from
  /// the Knight shift of the reference species. When false the tabulated
  /// hyperfine_single_mhz values are used.
  bool hyperfine_from_knight_shift = true;
  double knight_shift_mhz = 0.5;
  std::string reference_species = "71Ga";

  NoiseModel noise;
  bool detuning_noise = true;
  double t2_star_us = 0.29;
  double f_init = 0.9907;
  PulseOptions pulses;
  IntegratorOptions integrator;

  /// Three species, thermal states, all error channels on.
  static ModelConfig defaults();

  /// "thermal": every species thermal. "polarized": 71Ga dark (m = -j),
  /// 69Ga deviated dark near m = +j, 75As thermal.
  void set_preparation(const std::string& name, double polarization = 0.6, double lambda = 2.0);

  double total_nuclei() const;
  std::vector<SpeciesParams> effective_species() const;
  SpaceLayout layout() const;
  int species_index(const std::string& name) const;  ///< -1 when absent
  void validate() const;
};

struct RunOptions {
  int samples = 100;
  uint64_t seed = 1;
  int workers = 1;
  double max_abort_fraction = 0.01;
};

/// Resolves SIM_DEFAULT_WORKERS (or 1) when workers <= 0.
int resolve_workers(int requested);

/// Runs f(i) for i in [0, n) on up to `workers` threads. Exceptions are
/// rethrown after all threads finish (lowest index first).
void parallel_for(int n, int workers, const std::function<void(int)>& f);

struct SampleRealization {
  std::vector<NuclearMode> modes;
  std::vector<double> m_values;
  double detuning_mhz = 0.0;
  int clipped_levels = 0;
  int clipped_deviations = 0;
};

/// Draws per-sample nuclear states and builds the matching propagator.
class SampleFactory {
 public:
  explicit SampleFactory(ModelConfig model);

  const ModelConfig& model() const { return model_; }
  const SpaceLayout& layout() const { return layout_; }

  /// Sample `index` of a run seeded with `seed` (seed + index per sample).
  SampleRealization draw(uint64_t seed, int index) const;
  Propagator propagator(const SampleRealization& s) const;
  Mat initial_state(const SampleRealization& s) const;

 private:
  ModelConfig model_;
  SpaceLayout layout_;
  std::vector<SpeciesParams> effective_;
  std::map<long, ThermalDistribution> thermal_;
};

/// Seeded Monte Carlo aggregate over a parameter grid.
struct ExperimentResult {
  std::string experiment;
  std::vector<std::string> axes;
  std::vector<std::vector<double>> coords;      ///< per grid point
  std::vector<double> mean;
  std::vector<double> stderr_;
  std::vector<long> count;
  std::vector<std::vector<double>> per_sample;  ///< [point][sample], NaN when aborted
  uint64_t seed = 0;
  int samples_requested = 0;
  int samples_aborted = 0;
  std::vector<std::string> warnings;
};

struct NovelConfig {
  std::vector<double> omega_y_mhz;
  std::vector<double> t_ns;
};

/// (pi/2)_x, spin locking (0, 0, Omega_y) for T, mapping (pi/2)_x, then p_down.
ExperimentResult novel_spectrum(const ModelConfig& model, const NovelConfig& cfg, const RunOptions& run);

struct EsrConfig {
  std::vector<double> detuning_mhz;
  std::vector<double> t_ns;
  double rabi_mhz = 2.2;
};

/// Detuned drive (delta, Omega, 0) for T from the initial state, then p_down.
ExperimentResult esr_spectrum(const ModelConfig& model, const EsrConfig& cfg, const RunOptions& run);

struct RamseyConfig {
  SwapParams swap;
  std::vector<double> t_store_ns;
  bool invert = false;                    ///< pi_x at the middle of storage
  std::optional<double> storage_f_init;   ///< electron reset during storage (default: model F_init)
};

/// Contrast C_x versus storage time.
ExperimentResult magnon_ramsey(const ModelConfig& model, const RamseyConfig& cfg, const RunOptions& run);

struct TomographyConfig {
  SwapParams swap;
  double t_store_ns = 290.0;
  bool align_t_store = true;  ///< pick the storage time in [min, max] maximising F
  double t_store_min_ns = 280.0;
  double t_store_max_ns = 300.0;
  double t_store_step_ns = 0.1;

  bool optimize = false;  ///< Nelder-Mead over (Omega, T_swap, T_store)
  std::string storage_species = "71Ga";

  bool calibrate_omega = false;  ///< Omega from the peak NOVEL response at swap.t_ns
  std::vector<double> calibration_grid_mhz;
  int calibration_samples = 25;
  std::optional<ModelConfig> calibration_model;

  std::string reinit_species;  ///< re-prepare this species after the first SWAP
};

struct TomographyResult {
  RMat p_down;         ///< mean readout probabilities [input][readout]
  RMat p_down_stderr;
  RMat normalized;     ///< normalised to orthogonal readout pairs
  ContrastResult contrasts;  ///< errors: jackknife over Monte Carlo samples (0 for one sample)
  double t_store_ns = 0.0;
  SwapParams swap;
  int samples_used = 0;
  int samples_aborted = 0;
  std::vector<std::string> warnings;

  double fidelity() const { return contrasts.fidelity; }
  double infidelity() const { return 1.0 - contrasts.fidelity; }
};

TomographyResult tomography(const ModelConfig& model, const TomographyConfig& cfg, const RunOptions& run);

/// Rabi frequency (MHz) maximising the NOVEL response 1 - p_down at t_ns.
double calibrate_novel_omega(const ModelConfig& model, const std::vector<double>& grid, double t_ns,
                             const RunOptions& run);

struct Scenario {
  std::string name;
  ModelConfig model;
  TomographyConfig tomo;
  RunOptions run;
};

/// ideal_single, relaxation_only, overlap_only, realistic, ideal_two_species.
Scenario tomography_scenario(const std::string& name);
/// Same presets, built on top of `base` (couplings, constants, noise values).
Scenario tomography_scenario(const std::string& name, const ModelConfig& base);
std::vector<std::string> scenario_names();

}  // namespace magnon
