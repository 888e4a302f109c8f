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
#include <string>
#include <vector>

#include "magnon/hilbert.hpp"

namespace magnon {

/// A curve model with named, bounded parameters. The evaluator receives the
/// full abscissa and data vectors so that models with data-dependent
/// constraints (equal-area onset) can be expressed.
struct FitModel {
  std::string id;
  std::vector<std::string> names;
  std::vector<double> lower;
  std::vector<double> upper;
  std::vector<bool> fixed;  ///< parameters held at their initial value
  std::function<RVec(const RVec& p, const RVec& t, const RVec& y)> eval;
  /// Optional: improves a rough initial guess before the main fit. Used by
  /// models whose constrained cost surface is too narrow for a cold start.
  std::function<RVec(const RVec& p, const RVec& t, const RVec& y, const RVec& sigma)> refine_initial;

  size_t size() const { return names.size(); }
};

/// Known ids: spin_pumping, ramsey_stretched, magnon_ramsey, undamped_sine,
/// t1_saturation, two_exponential, single_stretched.
FitModel make_model(const std::string& id);
std::vector<std::string> model_ids();

/// Onset time of the spin-pumping model that equalises the model and data
/// areas. The model is treated as a histogram: each point is the bin average
/// over [t_i, t_i + dt_i).
double spin_pumping_onset(double i0, double i_end, double gamma, const RVec& t, const RVec& y);

/// Bin-averaged spin-pumping curve for a given onset.
RVec spin_pumping_curve(double i0, double i_end, double gamma, double t0, const RVec& t);

struct FitData {
  RVec t;
  RVec y;
  RVec sigma;  ///< empty for unit weights
};

struct FitOptions {
  double step_tol = 1e-10;
  int max_iter = 500;
};

struct FitResult {
  RVec params;
  RMat covariance;
  RVec stderr_;
  double residual_norm = 0.0;  ///< sqrt of the weighted sum of squares
  double reduced_chi2 = 0.0;
  int iterations = 0;
  bool converged = false;
  bool singular = false;
  std::string message;
};

/// Levenberg-Marquardt with bound projection and a central-difference
/// Jacobian. Covariance is (J^T W J)^-1, scaled by the reduced chi^2 when no
/// uncertainties are given.
FitResult fit_least_squares(const FitModel& model, const FitData& data, const RVec& initial,
                            const FitOptions& opt = {});

}  // namespace magnon
