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
#include "magnon/hilbert.hpp"

using namespace magnon;

TEST_CASE("ladder elements") {
  CHECK(ladder_element(0.5, -0.5) == doctest::Approx(1.0));
  CHECK(ladder_element(5.0, 5.0) == 0.0);
  CHECK(ladder_element(1.0, 0.0) == doctest::Approx(std::sqrt(2.0)));
  CHECK_THROWS_AS(ladder_element(1.0, 1.5), std::domain_error);
}

TEST_CASE("spin-1 window operators") {
  TruncatedMode mode(1.0, 0.0, 3);
  const Mat up = raising_matrix(mode).matrix;
  CHECK(up.rows() == 3);
  // Levels run highest m first, so raising sits above the diagonal.
  CHECK(std::abs(up(0, 1) - std::sqrt(2.0)) < 1e-12);
  CHECK(std::abs(up(1, 2) - std::sqrt(2.0)) < 1e-12);
  CHECK((up - lowering_matrix(mode).matrix.adjoint()).norm() < 1e-14);
  const Mat z = z_matrix(mode).matrix;
  CHECK(z(0, 0).real() == 1.0);
  CHECK(z(1, 1).real() == 0.0);
  CHECK(z(2, 2).real() == -1.0);
  // [I+, I-] = 2 Iz holds inside a full spin-1 window.
  const Mat comm = up * up.adjoint() - up.adjoint() * up;
  CHECK((comm - 2.0 * z).norm() < 1e-12);
}

TEST_CASE("dark state edge coupling") {
  const double j = 12117.6;
  TruncatedMode mode(j, -j + 1.0, 3);
  CHECK(mode.level(2) == doctest::Approx(-j));
  const Mat up = raising_matrix(mode).matrix;
  CHECK(up(1, 2).real() == doctest::Approx(std::sqrt(2.0 * j)).epsilon(1e-12));
  CHECK(up(1, 2).real() == doctest::Approx(155.68).epsilon(1e-4));
  // Applying the raising operator twice from the bottom level leaves the window.
  const Mat twice = up * up;
  CHECK(std::abs(twice(0, 2)) > 0.0);
  const Mat thrice = twice * up;
  CHECK(thrice.norm() == 0.0);
}

TEST_CASE("window placement") {
  SUBCASE("interior states are centred") {
    const auto w = place_window(10.0, 2.0, 3);
    CHECK(w.m_center() == 2.0);
    CHECK(w.clipped_levels() == 0);
  }
  SUBCASE("dark state sits at the lowest level") {
    const auto w = place_window(10.0, -10.0, 3);
    CHECK(w.m_center() == -9.0);
    CHECK(w.index_of(-10.0) == 2);
  }
  SUBCASE("upper edge") {
    const auto w = place_window(10.0, 10.0, 5);
    CHECK(w.m_center() == 8.0);
    CHECK(w.index_of(10.0) == 0);
  }
  SUBCASE("window wider than the multiplet") {
    const auto w = place_window(0.5, 0.5, 3);
    CHECK(w.clipped_levels() == 1);
    const Mat up = raising_matrix(w).matrix;
    CHECK(up.norm() == doctest::Approx(1.0));
  }
}

TEST_CASE("layout indexing and embedding") {
  const auto layout = SpaceLayout::default_layout();
  CHECK(layout.total_dim() == 90);
  for (int flat : {0, 1, 17, 44, 89}) CHECK(layout.index(layout.unindex(flat)) == flat);
  CHECK(layout.index({1, 0, 0, 0}) == 45);
  const auto id = embed(identity_matrix(3), 1, layout);
  CHECK((id.matrix - Mat::Identity(90, 90)).norm() == 0.0);
  CHECK_THROWS(embed(identity_matrix(2), 1, layout));
}

TEST_CASE("electron operators") {
  const Mat sx = electron_sx().matrix, sy = electron_sy().matrix, sz = electron_sz().matrix;
  const cplx i(0.0, 1.0);
  CHECK((sx * sy - sy * sx - i * sz).norm() < 1e-15);
  CHECK(sz(0, 0).real() == -0.5);  // |up> has S_z = -1/2 in this convention
  const auto v = basis_vector(SpaceLayout({"electron", "n"}, {2, 3}), {1, 2});
  CHECK(std::abs(v(5) - 1.0) < 1e-15);
  CHECK(kron(Mat::Identity(2, 2), Mat::Identity(3, 3)).rows() == 6);
}
