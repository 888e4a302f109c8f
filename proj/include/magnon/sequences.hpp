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

#include <array>
#include <optional>
#include <string>

#include "magnon/dynamics.hpp"

namespace magnon {

/// The six cardinal electron states in table order +x, -x, +y, -y, +z, -z.
enum class CardinalState { PlusX, MinusX, PlusY, MinusY, PlusZ, MinusZ };

std::string state_name(CardinalState s);

struct Rotation {
  Axis axis;
  double angle;
};

/// Local electron rotations preparing an input state (prepare) and mapping a
/// readout basis onto the |down> measurement (readout). The readout rotation
/// also absorbs the back-mapping of the second SWAP.
struct TomographyRow {
  CardinalState state;
  std::optional<Rotation> prepare;
  std::optional<Rotation> readout;
};

const std::array<TomographyRow, 6>& tomography_table();

/// Empty when the rotation is absent.
Sequence rotation_sequence(const std::optional<Rotation>& r, const PulseOptions& opt);

/// Electro-nuclear SWAP: (pi/2)_x, then spin locking about -y.
struct SwapParams {
  double omega_mhz = 56.0;
  double t_ns = 130.0;
};
Sequence swap_sequence(const SwapParams& swap, const PulseOptions& opt);

struct ContrastResult {
  std::array<double, 3> contrast{};
  std::array<double, 3> contrast_err{};
  double fidelity = 0.0;
  double fidelity_err = 0.0;
};

/// Contrasts of the x, y and z pairs from a 6x6 table of counts (rows: input
/// state, columns: readout, both in table order) and F = (1 + mean C) / 2.
/// Errors assume Poisson counts.
ContrastResult contrast_and_fidelity(const RMat& counts);

/// Table of probabilities normalised to pairs of orthogonal readouts.
RMat normalize_pairs(const RMat& counts);

double fidelity_from_contrasts(const std::array<double, 3>& c);

}  // namespace magnon
