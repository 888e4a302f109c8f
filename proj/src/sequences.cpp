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


#include "magnon/sequences.hpp"

#include <cmath>
#include <stdexcept>

namespace magnon {

std::string state_name(CardinalState s) {
  static const char* names[] = {"+x", "-x", "+y", "-y", "+z", "-z"};
  return names[static_cast<int>(s)];
}

const std::array<TomographyRow, 6>& tomography_table() {
  constexpr double h = M_PI / 2;
  constexpr double p = M_PI;
  static const std::array<TomographyRow, 6> table = {{
      {CardinalState::PlusX, Rotation{Axis::MinusY, h}, Rotation{Axis::MinusY, h}},
      {CardinalState::MinusX, Rotation{Axis::PlusY, h}, Rotation{Axis::PlusY, h}},
      {CardinalState::PlusY, Rotation{Axis::PlusX, h}, std::nullopt},
      {CardinalState::MinusY, Rotation{Axis::MinusX, h}, Rotation{Axis::PlusX, p}},
      {CardinalState::PlusZ, Rotation{Axis::PlusX, p}, Rotation{Axis::MinusX, h}},
      {CardinalState::MinusZ, std::nullopt, Rotation{Axis::PlusX, h}},
  }};
  return table;
}

Sequence rotation_sequence(const std::optional<Rotation>& r, const PulseOptions& opt) {
  if (!r) return {};
  return {rotation_segment(r->axis, r->angle, opt)};
}

Sequence swap_sequence(const SwapParams& swap, const PulseOptions& opt) {
  if (!(swap.t_ns >= 0.0)) throw std::invalid_argument("SWAP duration must be >= 0");
  return {rotation_segment(Axis::PlusX, M_PI / 2, opt), PulseSegment::drive(0.0, 0.0, -swap.omega_mhz, swap.t_ns)};
}

RMat normalize_pairs(const RMat& n) {
  if (n.rows() != 6 || n.cols() != 6) throw std::invalid_argument("tomography table must be 6x6");
  RMat p(6, 6);
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b) {
      const int partner = b ^ 1;
      const double s = n(a, b) + n(a, partner);
      p(a, b) = s > 0.0 ? n(a, b) / s : 0.5;
    }
  return p;
}

double fidelity_from_contrasts(const std::array<double, 3>& c) { return 0.5 * (1.0 + (c[0] + c[1] + c[2]) / 3.0); }

ContrastResult contrast_and_fidelity(const RMat& n) {
  if (n.rows() != 6 || n.cols() != 6) throw std::invalid_argument("tomography table must be 6x6");
  if ((n.array() < 0.0).any()) throw std::invalid_argument("counts must be non-negative");
  static const char* axis[] = {"x", "y", "z"};
  ContrastResult out;
  double var_f = 0.0;
  for (int k = 0; k < 3; ++k) {
    const int p = 2 * k, m = 2 * k + 1;
    const double s1 = n(p, p) + n(p, m);
    const double s2 = n(m, m) + n(m, p);
    if (!(s1 > 0.0) || !(s2 > 0.0))
      throw std::invalid_argument(std::string("zero denominator in the ") + axis[k] + " readout pair");
    const double r1 = (n(p, p) - n(p, m)) / s1;
    const double r2 = (n(m, m) - n(m, p)) / s2;
    out.contrast[k] = 0.5 * (r1 + r2);
    const double v1 = 4.0 * n(p, p) * n(p, m) / (s1 * s1 * s1);
    const double v2 = 4.0 * n(m, m) * n(m, p) / (s2 * s2 * s2);
    const double v = 0.25 * (v1 + v2);
    out.contrast_err[k] = std::sqrt(v);
    var_f += v / 36.0;
  }
  out.fidelity = fidelity_from_contrasts(out.contrast);
  out.fidelity_err = std::sqrt(var_f);
  return out;
}

}  // namespace magnon
