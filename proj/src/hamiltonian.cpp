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


#include "magnon/hamiltonian.hpp"

#include <cmath>
#include <stdexcept>

namespace magnon {

double CouplingConfig::a_par(double a) const { return a * std::cos(tilt_angle); }
double CouplingConfig::a_perp(double a) const { return a * std::sin(tilt_angle); }

void CouplingConfig::validate() const {
  if (!(tilt_angle >= 0.0 && tilt_angle < M_PI / 2))
    throw std::invalid_argument("coupling.tilt_angle must lie in [0, pi/2)");
  if (!(electron_zeeman_mhz > 0.0) || !std::isfinite(electron_zeeman_mhz))
    throw std::invalid_argument("coupling.electron_zeeman_mhz must be positive");
  if (!std::isfinite(eta_mhz)) throw std::invalid_argument("coupling.eta_mhz must be finite");
}

void check_layout(const SpaceLayout& layout, const std::vector<NuclearMode>& modes) {
  if (layout.size() != static_cast<int>(modes.size()) + 1)
    throw std::invalid_argument("layout must hold the electron plus one subsystem per nuclear mode");
  if (layout.dims[0] != 2) throw std::invalid_argument("layout subsystem 0 must be the electron");
  for (size_t i = 0; i < modes.size(); ++i)
    if (layout.dims[i + 1] != modes[i].mode.n_levels())
      throw std::invalid_argument("layout dimension mismatch for '" + modes[i].species.name + "'");
}

Mat drive_matrix(const SpaceLayout& layout, const DriveParams& d) {
  if (!std::isfinite(d.detuning_mhz) || !std::isfinite(d.rabi_x_mhz) || !std::isfinite(d.rabi_y_mhz))
    throw std::invalid_argument("drive parameters must be finite");
  const Mat e = kTwoPi * (d.detuning_mhz * electron_sz().matrix + d.rabi_x_mhz * electron_sx().matrix +
                          d.rabi_y_mhz * electron_sy().matrix);
  return embed(OperatorMatrix(e, {2}), 0, layout).matrix;
}

HamiltonianTerms build_terms(const SpaceLayout& layout, const std::vector<NuclearMode>& modes,
                             const CouplingConfig& c, const DriveParams& drive) {
  c.validate();
  check_layout(layout, modes);
  const int dim = layout.total_dim();
  HamiltonianTerms t;
  t.zeeman = t.noncollinear = t.flipflop = t.double_flip = t.collinear = Mat::Zero(dim, dim);

  const Mat sz = embed(electron_sz(), 0, layout).matrix;
  std::vector<Mat> up(modes.size()), down(modes.size());

  for (size_t i = 0; i < modes.size(); ++i) {
    const auto& sp = modes[i].species;
    const auto& mode = modes[i].mode;
    const int sub = static_cast<int>(i) + 1;
    if (!std::isfinite(sp.hyperfine_single_mhz) || !std::isfinite(sp.larmor_mhz))
      throw std::invalid_argument("non-finite coupling for '" + sp.name + "'");

    OperatorMatrix z = z_matrix(mode);
    if (!c.absolute_zeeman) z.matrix -= mode.m_center() * Mat::Identity(mode.n_levels(), mode.n_levels());
    const Mat zf = embed(z, sub, layout).matrix;
    t.zeeman += kTwoPi * sp.larmor_mhz * zf;
    t.collinear += kTwoPi * c.a_par(sp.hyperfine_single_mhz) * sz * zf;

    up[i] = embed(raising_matrix(mode), sub, layout).matrix;
    down[i] = up[i].adjoint();
    t.noncollinear += kTwoPi * 0.5 * c.a_perp(sp.hyperfine_single_mhz) * sz * (up[i] + down[i]);

    if (sp.name == c.double_flip_species) {
      const Mat up2 = up[i] * up[i];
      t.double_flip += kTwoPi * c.eta_mhz * sz * (up2 + up2.adjoint());
    }
  }

  // The sum runs over ordered pairs, so every cross-species pair enters twice.
  for (size_t i = 0; i < modes.size(); ++i) {
    for (size_t k = 0; k < modes.size(); ++k) {
      if (i == k && !c.flipflop_self) continue;
      const double pref = c.a_par(modes[i].species.hyperfine_single_mhz) *
                          c.a_par(modes[k].species.hyperfine_single_mhz) / (4.0 * c.electron_zeeman_mhz);
      t.flipflop += kTwoPi * pref * sz * (up[i] * down[k] + down[i] * up[k]);
    }
  }

  t.drive = drive_matrix(layout, drive);
  return t;
}

OperatorMatrix build_hamiltonian(const SpaceLayout& layout, const std::vector<NuclearMode>& modes,
                                 const CouplingConfig& c, const DriveParams& drive) {
  HamiltonianTerms t = build_terms(layout, modes, c, drive);
  Mat h = t.zeeman + t.drive;
  if (c.noncollinear) h += t.noncollinear;
  if (c.flipflop) h += t.flipflop;
  if (c.double_flip) h += t.double_flip;
  if (c.collinear) h += t.collinear;
  // Symmetrise away rounding asymmetry from the operator products.
  Mat hs = 0.5 * (h + h.adjoint());
  return OperatorMatrix(std::move(hs), layout.dims);
}

double generalized_rabi(double detuning_mhz, double rabi_mhz) { return std::hypot(detuning_mhz, rabi_mhz); }

double magnon_rabi(double a_perp_mhz, double rabi_mhz, double chi_mhz, double j, double m) {
  if (!(chi_mhz > 0.0)) throw std::domain_error("magnon_rabi: chi must be positive");
  return a_perp_mhz * rabi_mhz / (2.0 * chi_mhz) * ladder_element(j, m);
}

double hh_resonance(double larmor_mhz, double a_par_mhz, double s0) { return larmor_mhz + a_par_mhz * s0; }

double hh_detuning(double larmor_mhz, double rabi_mhz) {
  const double r = larmor_mhz * larmor_mhz - rabi_mhz * rabi_mhz;
  if (r < 0.0) throw std::domain_error("hh_detuning: Rabi frequency exceeds the Larmor frequency");
  return std::sqrt(r);
}

}  // namespace magnon
