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


#include <cmath>

#include "doctest.h"
#include "magnon/hamiltonian.hpp"

using namespace magnon;

namespace {

std::vector<NuclearMode> three_modes() {
  std::vector<NuclearMode> modes;
  for (const auto& s : default_species()) {
    const int n = s.name == "75As" ? 5 : 3;
    modes.push_back({s, TruncatedMode(20.0, 3.0, n)});
  }
  return modes;
}

CouplingConfig everything_off() {
  CouplingConfig c;
  c.noncollinear = c.flipflop = c.double_flip = c.collinear = false;
  return c;
}

}  // namespace

TEST_CASE("bare Zeeman spectrum") {
  const auto layout = SpaceLayout::default_layout();
  const auto modes = three_modes();
  CouplingConfig c = everything_off();
  c.absolute_zeeman = true;
  const Mat h = build_hamiltonian(layout, modes, c, {}).matrix;
  CHECK((h - Mat(h.diagonal().asDiagonal())).norm() == 0.0);
  for (int flat : {0, 13, 52, 89}) {
    const auto loc = layout.unindex(flat);
    double e = 0.0;
    for (size_t s = 0; s < modes.size(); ++s)
      e += kTwoPi * modes[s].species.larmor_mhz * modes[s].mode.level(loc[s + 1]);
    CHECK(h(flat, flat).real() == doctest::Approx(e).epsilon(1e-12));
  }
}

TEST_CASE("relative Zeeman reference") {
  const auto layout = SpaceLayout::default_layout();
  const Mat h = build_hamiltonian(layout, three_modes(), everything_off(), {}).matrix;
  // Centre levels of every window sit at zero energy.
  CHECK(std::abs(h(layout.index({0, 1, 1, 2}), layout.index({0, 1, 1, 2}))) < 1e-12);
}

TEST_CASE("full Hamiltonian is Hermitian and terms have the expected structure") {
  const auto layout = SpaceLayout::default_layout();
  const auto modes = three_modes();
  CouplingConfig c;
  c.collinear = true;
  const DriveParams d{1.0, 2.0, -3.0};
  const Mat h = build_hamiltonian(layout, modes, c, d).matrix;
  CHECK((h - h.adjoint()).norm() < 1e-10);
  const auto t = build_terms(layout, modes, c, d);
  CHECK((t.zeeman + t.noncollinear + t.flipflop + t.double_flip + t.collinear + t.drive - h).norm() < 1e-9);
  // The non-collinear term is proportional to S_z and flips one nucleus.
  const int a = layout.index({0, 1, 1, 2}), b = layout.index({0, 0, 1, 2});
  CHECK(std::abs(t.noncollinear(a, b)) > 0.0);
  CHECK(std::abs(t.noncollinear(a, layout.index({1, 0, 1, 2}))) == 0.0);
  // Double flips only touch the arsenic window, in steps of two.
  CHECK(std::abs(t.double_flip(layout.index({0, 1, 1, 0}), layout.index({0, 1, 1, 2}))) > 0.0);
  CHECK(std::abs(t.double_flip(layout.index({0, 1, 1, 0}), layout.index({0, 1, 1, 1}))) == 0.0);
  // Flip-flops conserve the total nuclear m.
  for (int i = 0; i < 90; ++i)
    for (int k = 0; k < 90; ++k) {
      if (std::abs(t.flipflop(i, k)) == 0.0) continue;
      const auto li = layout.unindex(i), lk = layout.unindex(k);
      double mi = 0.0, mk = 0.0;
      for (int s = 0; s < 3; ++s) {
        mi += modes[s].mode.level(li[s + 1]);
        mk += modes[s].mode.level(lk[s + 1]);
      }
      CHECK(mi == doctest::Approx(mk));
      CHECK(li[0] == lk[0]);
    }
}

TEST_CASE("coupling toggles remove terms") {
  const auto layout = SpaceLayout::default_layout();
  const auto modes = three_modes();
  CouplingConfig on;
  CouplingConfig off = on;
  off.double_flip = false;
  const Mat diff = build_hamiltonian(layout, modes, on, {}).matrix - build_hamiltonian(layout, modes, off, {}).matrix;
  CHECK((diff - build_terms(layout, modes, on, {}).double_flip).norm() < 1e-12);
  CouplingConfig bad;
  bad.electron_zeeman_mhz = 0.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("closed-form rates") {
  CHECK(generalized_rabi(0.0, 7.0) == 7.0);
  CHECK(generalized_rabi(3.0, 4.0) == doctest::Approx(5.0));
  CHECK(hh_detuning(58.41, 2.2) == doctest::Approx(58.369).epsilon(1e-4));
  CHECK(hh_resonance(58.41, 0.338, 0.0) == 58.41);
  CHECK(hh_resonance(58.41, 0.338, 0.5) == doctest::Approx(58.579));
  const double j = 0.6 * 1.5 * 13464;
  const double rate = magnon_rabi(0.051, 58.41, 58.41, j, -j);
  CHECK(rate == doctest::Approx(3.97).epsilon(0.005));
  CHECK(magnon_rabi(0.051, 58.41, 58.41, j, j) == 0.0);
  CHECK_THROWS(hh_detuning(10.0, 20.0));
}
