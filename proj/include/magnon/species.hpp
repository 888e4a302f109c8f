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

namespace magnon {

constexpr double kTwoPi = 6.283185307179586476925286766559;

/// Per-isotope constants. Frequencies are ordinary frequencies in MHz.
struct SpeciesParams {
  std::string name;
  double spin = 1.5;                  ///< nuclear spin magnitude I
  double larmor_mhz = 0.0;            ///< f_n at the operating field
  double hyperfine_total_mhz = 0.0;   ///< material constant A/2pi
  double hyperfine_single_mhz = 0.0;  ///< single-nucleus a/2pi
  double abundance = 1.0;             ///< unit-cell concentration c
  double effective_count = 1.0;       ///< effective number of nuclei N

  /// Maximal collective spin length N*I.
  double max_spin_length() const { return effective_count * spin; }
};

/// Throws std::invalid_argument when a field violates its range.
void validate(const SpeciesParams& s);

/// The three species of a GaAs dot at 4.5 T, ordered 69Ga, 71Ga, 75As.
std::vector<SpeciesParams> default_species();

/// Looks up a species by name in the default table.
SpeciesParams default_species(const std::string& name);

/// Effective total nucleus count used to derive simulation couplings.
constexpr double kDefaultTotalNuclei = 68000.0;

/// Uniform-coupling estimate a = A / (N_tot / 2) (two atoms per unit cell).
double hyperfine_from_total(const SpeciesParams& s, double total_nuclei);

}  // namespace magnon
