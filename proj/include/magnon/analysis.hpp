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

namespace magnon {

/// Moments of the hyperfine couplings for a Gaussian electron envelope
/// |psi|^2 = exp(-r^2 / sigma^2) / (pi^{3/2} sigma^3).
struct EnvelopeMoments {
  double sigma;
  double a_total;
  double m1;  ///< sum a_i
  double m2;  ///< sum a_i^2
  double m3;  ///< sum a_i^3
};

EnvelopeMoments envelope_moments(double sigma, double a_total_mhz);

/// Number of uniformly coupled nuclei with the same second moment.
double effective_N(double sigma);

/// Ratio of the Knight-shift weighted coupling to A/N_eff: 8 / sqrt(27).
double knight_factor();

struct NucleiEstimate {
  double n_species;
  double n_total;
};

/// N = knight_factor * c * A / delta_nu and N_tot = 2 N / c.
NucleiEstimate estimate_nuclei(double delta_nu_mhz, double a_total_mhz, double abundance);

/// Strain-induced non-collinear coupling a B_Q / f_n, returned in kHz.
double strain_noncollinear(double a_mhz, double b_q_mhz, double larmor_mhz);

/// Quadrupolar T2* (us) from a FWHM line width in kHz, divided by a
/// species conversion ratio.
double quadrupolar_T2(double fwhm_khz, double moment_ratio);

/// Quantisation axis tilt from two in-plane g-factors.
double tilt_from_g(double g_110, double g_m110);

/// Q = T1 f (undriven convention), halved for a spin-locked T1.
double estimate_Q(double t1_us, double f_rabi_mhz, bool spin_locked);

/// Inverse of estimate_Q.
double t1_from_Q(double q, double f_rabi_mhz, bool spin_locked);

/// Lower bound on the initialisation fidelity, 1 - I_end / I_0.
double estimate_init_fidelity(double i0, double i_end);

}  // namespace magnon
