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

#include <functional>
#include <vector>

namespace magnon {

struct NelderMeadOptions {
  double x_tol = 1e-7;
  double f_tol = 1e-9;
  int max_iter = 600;
};

struct NelderMeadResult {
  std::vector<double> x;
  double f = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// Derivative-free simplex minimisation. initial_step sets the simplex edge
/// along each coordinate.
NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                             std::vector<double> x0, const std::vector<double>& initial_step,
                             const NelderMeadOptions& opt = {});

/// Index of the largest value; ties resolve to the first.
size_t argmax(const std::vector<double>& v);

/// Vertex of the parabola through (x[i-1], x[i], x[i+1]); falls back to x[i]
/// at the ends or when the points are collinear.
double parabolic_peak(const std::vector<double>& x, const std::vector<double>& y, size_t i);

}  // namespace magnon
