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


#include "magnon/species.hpp"

#include <cmath>
#include <stdexcept>

namespace magnon {

void validate(const SpeciesParams& s) {
  auto fail = [&](const std::string& what) {
    throw std::invalid_argument("species '" + s.name + "': " + what);
  };
  if (!(s.spin > 0.0)) fail("spin must be positive");
  if (!(s.larmor_mhz > 0.0)) fail("larmor frequency must be positive");
  if (!(s.abundance > 0.0 && s.abundance <= 1.0)) fail("abundance must lie in (0, 1]");
  if (!(s.effective_count >= 1.0)) fail("effective count must be >= 1");
  if (!std::isfinite(s.hyperfine_total_mhz) || !std::isfinite(s.hyperfine_single_mhz))
    fail("hyperfine constants must be finite");
}

std::vector<SpeciesParams> default_species() {
  // Table values: A/2pi in MHz, Zeeman splitting at 4.5 T, effective counts and
  // single-nucleus couplings as estimated from the Knight shift.
  return {
      {"69Ga", 1.5, 45.99, 8700.0, 0.269, 0.604, 20536.0},
      {"71Ga", 1.5, 58.41, 11100.0, 0.342, 0.396, 13464.0},
      {"75As", 1.5, 32.49, 10400.0, 0.320, 1.0, 34000.0},
  };
}

SpeciesParams default_species(const std::string& name) {
  for (auto& s : default_species())
    if (s.name == name) return s;
  throw std::invalid_argument("unknown species '" + name + "'");
}

double hyperfine_from_total(const SpeciesParams& s, double total_nuclei) {
  if (!(total_nuclei > 0.0)) throw std::invalid_argument("total nuclei must be positive");
  return s.hyperfine_total_mhz / (total_nuclei / 2.0);
}

}  // namespace magnon
