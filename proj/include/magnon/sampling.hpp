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
#include <random>
#include <vector>

#include "magnon/hamiltonian.hpp"
#include "magnon/hilbert.hpp"

namespace magnon {

/// SplitMix64 finaliser, used to decorrelate per-sample seeds.
uint64_t splitmix64(uint64_t x);

/// Independent generator for (seed, stream). Distinct streams are used for
/// each species and for the detuning draw of one Monte Carlo sample.
std::mt19937_64 make_rng(uint64_t seed, uint64_t stream);

/// Infinite-temperature marginal distribution of the total spin j of N_half
/// spin-1/2 particles.
struct ThermalDistribution {
  long n_half = 0;
  double j0 = 0.0;
  std::vector<double> j_values;  ///< ascending: j0 mod 1, ..., j0
  std::vector<double> log_p;     ///< normalised natural-log probabilities
  std::vector<double> prob;
  std::vector<double> cdf;

  /// Inverse-CDF lookup for u in [0, 1).
  double quantile(double u) const;
};

ThermalDistribution thermal_j_pmf(long n_half);

/// Number of spin-1/2 particles reproducing the m statistics of N spins I.
long equivalent_half_count(double n_nuclei, double spin);

struct SpinState {
  double j = 0.0;
  double m = 0.0;
};

/// j from the thermal marginal, then m uniform over -j..j.
SpinState sample_thermal(const ThermalDistribution& dist, std::mt19937_64& rng);
SpinState sample_thermal(double n_nuclei, double spin, uint64_t seed);

struct NuclearStateSpec {
  enum class Variant { Thermal, Dark, DeviatedDark };
  Variant variant = Variant::Thermal;
  double polarization = 0.6;  ///< j / j0 for dark variants
  int sign = -1;              ///< -1: m near -j, +1: m near +j
  double lambda = 2.0;        ///< mean-like scale of the deviation distribution

  static NuclearStateSpec thermal();
  static NuclearStateSpec dark(int sign, double polarization = 0.6);
  static NuclearStateSpec deviated_dark(int sign, double lambda, double polarization = 0.6);
};

struct PolarizedDraw {
  SpinState state;
  long delta_m = 0;
  bool clipped = false;  ///< deviation exceeded 2j and was clipped
};

/// Dark or deviated-dark state of spin length p * j0. The deviation is
/// geometric with ratio exp(-1/lambda).
PolarizedDraw polarized_state(const NuclearStateSpec& spec, double j0, uint64_t seed);
PolarizedDraw polarized_state(const NuclearStateSpec& spec, double j0, std::mt19937_64& rng);

/// Standard deviation (MHz) of the quasi-static detuning for a given T2*.
double detuning_sigma(double t2_star_us);
double sample_detuning(double t2_star_us, uint64_t seed);
double sample_detuning(double t2_star_us, std::mt19937_64& rng);

/// Window of n levels around a sampled state (see place_window).
NuclearMode make_mode(const SpeciesParams& species, const SpinState& s, int n_levels);

/// (F |up><up| + (1-F) |down><down|) x |psi_nuc><psi_nuc|, where the nuclear
/// factor is the product of the window levels holding each m value.
OperatorMatrix initial_density_matrix(double f_init, const std::vector<NuclearMode>& modes,
                                      const std::vector<double>& m_values, const SpaceLayout& layout);

}  // namespace magnon
