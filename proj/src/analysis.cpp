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


#include "magnon/analysis.hpp"

#include <cmath>
#include <stdexcept>

#include "magnon/species.hpp"

namespace magnon {

namespace {
void require(bool ok, const char* msg) {
  if (!ok) throw std::domain_error(msg);
}
}  // namespace

double effective_N(double sigma) {
  require(sigma > 0.0, "effective_N: sigma must be positive");
  return sigma * sigma * sigma * std::sqrt(8.0) * std::pow(M_PI, 1.5);
}

EnvelopeMoments envelope_moments(double sigma, double a) {
  require(sigma > 0.0, "envelope_moments: sigma must be positive");
  const double s3 = sigma * sigma * sigma;
  EnvelopeMoments m;
  m.sigma = sigma;
  m.a_total = a;
  m.m1 = a;
  m.m2 = a * a / (s3 * std::sqrt(8.0) * std::pow(M_PI, 1.5));
  m.m3 = a * a * a / (s3 * s3 * std::sqrt(27.0) * M_PI * M_PI * M_PI);
  return m;
}

double knight_factor() { return 8.0 / std::sqrt(27.0); }

NucleiEstimate estimate_nuclei(double delta_nu, double a_total, double c) {
  require(delta_nu > 0.0, "estimate_nuclei: delta_nu must be positive");
  require(c > 0.0 && c <= 1.0, "estimate_nuclei: abundance must lie in (0, 1]");
  NucleiEstimate e;
  e.n_species = knight_factor() * c * a_total / delta_nu;
  e.n_total = 2.0 * e.n_species / c;
  return e;
}

double strain_noncollinear(double a, double b_q, double f_n) {
  require(f_n > 0.0, "strain_noncollinear: Larmor frequency must be positive");
  return a * b_q / f_n * 1e3;
}

double quadrupolar_T2(double fwhm_khz, double ratio) {
  require(fwhm_khz > 0.0, "quadrupolar_T2: line width must be positive");
  require(ratio > 0.0, "quadrupolar_T2: ratio must be positive");
  // FWHM -> sigma (MHz), then T2* = sqrt(2) / (2 pi sigma).
  const double sigma_mhz = fwhm_khz * 1e-3 / std::sqrt(8.0 * std::log(2.0));
  return std::sqrt(2.0) / (kTwoPi * sigma_mhz) / ratio;
}

double tilt_from_g(double g1, double g2) {
  require(g1 + g2 != 0.0, "tilt_from_g: g-factors sum to zero");
  return std::atan((g1 - g2) / (g1 + g2));
}

double estimate_Q(double t1, double f, bool spin_locked) {
  require(t1 > 0.0 && f > 0.0, "estimate_Q: inputs must be positive");
  const double q = t1 * f;
  return spin_locked ? 0.5 * q : q;
}

double t1_from_Q(double q, double f, bool spin_locked) {
  require(q > 0.0 && f > 0.0, "t1_from_Q: inputs must be positive");
  const double t1 = q / f;
  return spin_locked ? 2.0 * t1 : t1;
}

double estimate_init_fidelity(double i0, double i_end) {
  require(i0 > 0.0, "estimate_init_fidelity: I0 must be positive");
  require(i_end >= 0.0 && i_end <= i0, "estimate_init_fidelity: I_end must lie in [0, I0]");
  return 1.0 - i_end / i0;
}

}  // namespace magnon
