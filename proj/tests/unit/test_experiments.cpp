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
#include "magnon/experiments.hpp"

using namespace magnon;

namespace {

ModelConfig quiet_single() {
  ModelConfig m = ModelConfig::defaults();
  m.species = {m.species[m.species_index("71Ga")]};
  m.noise.enabled = false;
  m.detuning_noise = false;
  m.f_init = 1.0;
  return m;
}

}  // namespace

TEST_CASE("model defaults") {
  const auto m = ModelConfig::defaults();
  CHECK(m.layout().total_dim() == 90);
  CHECK(m.total_nuclei() == doctest::Approx(68358.27).epsilon(1e-6));
  const auto eff = m.effective_species();
  CHECK(eff[1].hyperfine_single_mhz == doctest::Approx(11100.0 / (68358.27 / 2.0)).epsilon(1e-6));
  CHECK(m.species_index("75As") == 2);
  CHECK(m.species_index("Xe") == -1);
  ModelConfig p = m;
  p.set_preparation("polarized");
  CHECK(p.species[1].state.variant == NuclearStateSpec::Variant::Dark);
  CHECK(p.species[0].state.variant == NuclearStateSpec::Variant::DeviatedDark);
  CHECK(p.species[0].state.sign == 1);
  CHECK_THROWS(p.set_preparation("hot"));
}

TEST_CASE("sample factory is seed deterministic") {
  SampleFactory f(ModelConfig::defaults());
  const auto a = f.draw(9, 3), b = f.draw(9, 3), c = f.draw(9, 4);
  CHECK(a.m_values == b.m_values);
  CHECK(a.detuning_mhz == b.detuning_mhz);
  CHECK(a.m_values != c.m_values);
  const Mat rho = f.initial_state(a);
  CHECK(std::abs(rho.trace() - 1.0) < 1e-12);
}

TEST_CASE("NOVEL with no lock time is a pi pulse") {
  ModelConfig m = quiet_single();
  m.pulses.instant = true;
  RunOptions run;
  run.samples = 2;
  const auto r = novel_spectrum(m, NovelConfig{{0.0}, {0.0}}, run);
  CHECK(r.mean[0] == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(r.count[0] == 2);
}

TEST_CASE("resonant ESR drive oscillates at the Rabi frequency") {
  ModelConfig m = quiet_single();
  m.coupling.noncollinear = m.coupling.flipflop = false;
  RunOptions run;
  run.samples = 1;
  EsrConfig cfg{{0.0}, {0.0, 1e3 / (2.0 * 2.2), 1e3 / 2.2}, 2.2};
  const auto r = esr_spectrum(m, cfg, run);
  CHECK(r.mean[0] == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(r.mean[1] == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(r.mean[2] == doctest::Approx(0.0).epsilon(1e-6));
}

TEST_CASE("worker count does not change results") {
  ModelConfig m = ModelConfig::defaults();
  m.species = {m.species[m.species_index("71Ga")], m.species[m.species_index("75As")]};
  NovelConfig cfg{{-58.0, 46.0}, {0.0, 20.0, 40.0}};
  RunOptions one;
  one.samples = 4;
  one.seed = 5;
  RunOptions many = one;
  many.workers = 3;
  const auto a = novel_spectrum(m, cfg, one);
  const auto b = novel_spectrum(m, cfg, many);
  CHECK(a.mean == b.mean);
  CHECK(a.stderr_ == b.stderr_);
}

TEST_CASE("parallel_for propagates the first failure") {
  std::vector<int> hit(10, 0);
  parallel_for(10, 3, [&](int i) { hit[i] = 1; });
  for (int h : hit) CHECK(h == 1);
  CHECK_THROWS_WITH(parallel_for(6, 2,
                                 [](int i) {
                                   if (i == 2 || i == 4) throw std::runtime_error("boom " + std::to_string(i));
                                 }),
                    "boom 2");
}

TEST_CASE("ideal single-species tomography") {
  const Scenario sc = tomography_scenario("ideal_single");
  const auto r = tomography(sc.model, sc.tomo, sc.run);
  CHECK(r.infidelity() < 0.01);
  CHECK(r.infidelity() > 0.0);
  CHECK(r.t_store_ns >= 280.0);
  CHECK(r.p_down.rows() == 6);
  CHECK(scenario_names().size() == 5);
  CHECK_THROWS(tomography_scenario("nonsense"));
}

TEST_CASE("resolve workers") {
  CHECK(resolve_workers(3) == 3);
  CHECK(resolve_workers(0) >= 1);
}
