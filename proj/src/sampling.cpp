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


#include "magnon/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace magnon {

uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::mt19937_64 make_rng(uint64_t seed, uint64_t stream) {
  std::seed_seq seq{static_cast<uint32_t>(splitmix64(seed)), static_cast<uint32_t>(splitmix64(seed) >> 32),
                    static_cast<uint32_t>(splitmix64(stream ^ 0x5bd1e995ULL)),
                    static_cast<uint32_t>(stream)};
  return std::mt19937_64(seq);
}

double ThermalDistribution::quantile(double u) const {
  auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
  size_t k = static_cast<size_t>(it - cdf.begin());
  if (k >= j_values.size()) k = j_values.size() - 1;
  return j_values[k];
}

ThermalDistribution thermal_j_pmf(long n_half) {
  if (n_half < 1) throw std::invalid_argument("thermal_j_pmf: N_half must be >= 1");
  ThermalDistribution d;
  d.n_half = n_half;
  d.j0 = 0.5 * static_cast<double>(n_half);
  const double j0 = d.j0;
  const double start = (n_half % 2 == 0) ? 0.0 : 0.5;
  const long count = static_cast<long>(std::floor(j0 - start)) + 1;
  d.j_values.resize(count);
  d.log_p.resize(count);

  // log[(2j+1)^2 / (j0+j+1) * C(2 j0, j0 + j)]; the common 2^(-2 j0) factor
  // cancels in the normalisation below.
  const double lg_n = std::lgamma(2.0 * j0 + 1.0);
  double mx = -INFINITY;
  for (long k = 0; k < count; ++k) {
    const double j = start + static_cast<double>(k);
    d.j_values[k] = j;
    const double lc = lg_n - std::lgamma(j0 + j + 1.0) - std::lgamma(j0 - j + 1.0);
    d.log_p[k] = 2.0 * std::log(2.0 * j + 1.0) - std::log(j0 + j + 1.0) + lc;
    mx = std::max(mx, d.log_p[k]);
  }
  double sum = 0.0;
  for (double lp : d.log_p) sum += std::exp(lp - mx);
  const double log_norm = mx + std::log(sum);
  d.prob.resize(count);
  d.cdf.resize(count);
  double acc = 0.0;
  for (long k = 0; k < count; ++k) {
    d.log_p[k] -= log_norm;
    d.prob[k] = std::exp(d.log_p[k]);
    acc += d.prob[k];
    d.cdf[k] = acc;
  }
  for (double& c : d.cdf) c /= acc;
  return d;
}

long equivalent_half_count(double n_nuclei, double spin) {
  if (!(n_nuclei >= 1.0) || !(spin > 0.0)) throw std::invalid_argument("equivalent_half_count: bad inputs");
  return std::lround(n_nuclei * 4.0 * spin * (spin + 1.0) / 3.0);
}

SpinState sample_thermal(const ThermalDistribution& dist, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  SpinState s;
  s.j = dist.quantile(uni(rng));
  const long levels = std::lround(2.0 * s.j) + 1;
  std::uniform_int_distribution<long> pick(0, levels - 1);
  s.m = -s.j + static_cast<double>(pick(rng));
  return s;
}

SpinState sample_thermal(double n_nuclei, double spin, uint64_t seed) {
  const ThermalDistribution d = thermal_j_pmf(equivalent_half_count(n_nuclei, spin));
  auto rng = make_rng(seed, 0);
  return sample_thermal(d, rng);
}

NuclearStateSpec NuclearStateSpec::thermal() { return {}; }

NuclearStateSpec NuclearStateSpec::dark(int sign, double polarization) {
  NuclearStateSpec s;
  s.variant = Variant::Dark;
  s.sign = sign < 0 ? -1 : 1;
  s.polarization = polarization;
  return s;
}

NuclearStateSpec NuclearStateSpec::deviated_dark(int sign, double lambda, double polarization) {
  NuclearStateSpec s = dark(sign, polarization);
  s.variant = Variant::DeviatedDark;
  s.lambda = lambda;
  return s;
}

PolarizedDraw polarized_state(const NuclearStateSpec& spec, double j0, std::mt19937_64& rng) {
  if (!(spec.polarization > 0.0 && spec.polarization <= 1.0))
    throw std::invalid_argument("polarized_state: polarization must lie in (0, 1]");
  if (spec.variant == NuclearStateSpec::Variant::Thermal)
    throw std::invalid_argument("polarized_state: thermal variant has no polarization");
  PolarizedDraw out;
  const double j = spec.polarization * j0;
  out.state.j = j;
  long dm = 0;
  if (spec.variant == NuclearStateSpec::Variant::DeviatedDark && spec.lambda > 0.0) {
    // P(dm) proportional to r^dm, r = exp(-1/lambda): a geometric law with
    // success probability 1 - r.
    const double r = std::exp(-1.0 / spec.lambda);
    if (r > 0.0) {
      std::geometric_distribution<long> geo(1.0 - r);
      dm = geo(rng);
    }
  }
  const long max_dm = static_cast<long>(std::floor(2.0 * j + 1e-9));
  if (dm > max_dm) {
    dm = max_dm;
    out.clipped = true;
  }
  out.delta_m = dm;
  out.state.m = spec.sign * (j - static_cast<double>(dm));
  return out;
}

PolarizedDraw polarized_state(const NuclearStateSpec& spec, double j0, uint64_t seed) {
  auto rng = make_rng(seed, 0);
  return polarized_state(spec, j0, rng);
}

double detuning_sigma(double t2_star_us) {
  if (!(t2_star_us > 0.0)) throw std::invalid_argument("T2* must be positive");
  return std::sqrt(2.0) / (kTwoPi * t2_star_us);
}

double sample_detuning(double t2_star_us, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, detuning_sigma(t2_star_us));
  return g(rng);
}

double sample_detuning(double t2_star_us, uint64_t seed) {
  auto rng = make_rng(seed, 0);
  return sample_detuning(t2_star_us, rng);
}

NuclearMode make_mode(const SpeciesParams& species, const SpinState& s, int n_levels) {
  return NuclearMode{species, place_window(s.j, s.m, n_levels)};
}

OperatorMatrix initial_density_matrix(double f_init, const std::vector<NuclearMode>& modes,
                                      const std::vector<double>& m_values, const SpaceLayout& layout) {
  if (!(f_init >= 0.0 && f_init <= 1.0)) throw std::invalid_argument("F_init must lie in [0, 1]");
  check_layout(layout, modes);
  if (m_values.size() != modes.size()) throw std::invalid_argument("one m value per nuclear mode required");
  std::vector<int> local(layout.size(), 0);
  for (size_t i = 0; i < modes.size(); ++i) {
    const int k = modes[i].mode.index_of(m_values[i]);
    if (std::abs(modes[i].mode.level(k) - m_values[i]) > 1e-6)
      throw std::invalid_argument("inconsistent window placement for '" + modes[i].species.name + "'");
    local[i + 1] = k;
  }
  const int dim = layout.total_dim();
  Mat rho = Mat::Zero(dim, dim);
  local[0] = 0;
  const int iu = layout.index(local);
  local[0] = 1;
  const int id = layout.index(local);
  rho(iu, iu) = f_init;
  rho(id, id) = 1.0 - f_init;
  return OperatorMatrix(std::move(rho), layout.dims);
}

}  // namespace magnon
