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

#include <string>
#include <vector>

#include "magnon/hilbert.hpp"
#include "magnon/species.hpp"

namespace magnon {

/// Hyperfine geometry and term toggles. All frequencies are ordinary MHz.
struct CouplingConfig {
  double tilt_angle = 0.15;           ///< quantisation-axis tilt phi (rad)
  double electron_zeeman_mhz = 2500;  ///< electron splitting f_e
  double eta_mhz = 11e-6;             ///< empirical double-flip strength (11 Hz)
  std::string double_flip_species = "75As";

  bool noncollinear = true;   ///< S_z (a_perp/2)(I+ + I-)
  bool flipflop = true;       ///< electron-mediated nuclear flip-flops
  bool flipflop_self = true;  ///< include same-species I+I- + I-I+ terms
  bool double_flip = true;    ///< eta S_z (I+^2 + I-^2) on the double-flip species
  bool collinear = false;     ///< explicit a_par S_z (I_z - m_center); normally replaced by detuning noise
  bool absolute_zeeman = false;  ///< use absolute m in the Zeeman term instead of m - m_center

  double a_par(double a) const;
  double a_perp(double a) const;
  void validate() const;
};

/// Electron drive in the rotating frame.
struct DriveParams {
  double detuning_mhz = 0.0;
  double rabi_x_mhz = 0.0;
  double rabi_y_mhz = 0.0;
};

/// One nuclear subsystem: its constants and its truncated window.
struct NuclearMode {
  SpeciesParams species;
  TruncatedMode mode;
};

/// Individual contributions, each already multiplied by 2*pi (rad/us).
struct HamiltonianTerms {
  Mat zeeman;
  Mat noncollinear;
  Mat flipflop;
  Mat double_flip;
  Mat collinear;
  Mat drive;
};

/// Checks that layout subsystem 0 is a two-level electron and that subsystem
/// i+1 matches modes[i].
void check_layout(const SpaceLayout& layout, const std::vector<NuclearMode>& modes);

/// Every term regardless of toggles, for term-wise inspection.
HamiltonianTerms build_terms(const SpaceLayout& layout, const std::vector<NuclearMode>& modes,
                             const CouplingConfig& coupling, const DriveParams& drive);

/// Full rotating-frame Hamiltonian in rad/us with disabled terms omitted.
OperatorMatrix build_hamiltonian(const SpaceLayout& layout, const std::vector<NuclearMode>& modes,
                                 const CouplingConfig& coupling, const DriveParams& drive);

/// Electron drive part only: 2*pi (delta S_z + Omega_x S_x + Omega_y S_y).
Mat drive_matrix(const SpaceLayout& layout, const DriveParams& drive);

/// chi = sqrt(delta^2 + Omega^2).
double generalized_rabi(double detuning_mhz, double rabi_mhz);

/// Dressed-state magnon exchange rate (a_perp Omega / 2 chi) * ladder(j, m).
double magnon_rabi(double a_perp_mhz, double rabi_mhz, double chi_mhz, double j, double m);

/// Hartmann-Hahn condition chi = f_n + a_par S0.
double hh_resonance(double larmor_mhz, double a_par_mhz, double s0);

/// Detuning magnitude that brings chi onto f_n for a given Rabi frequency.
double hh_detuning(double larmor_mhz, double rabi_mhz);

}  // namespace magnon
