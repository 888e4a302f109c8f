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

#include <Eigen/Dense>
#include <complex>
#include <string>
#include <vector>

namespace magnon {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using RMat = Eigen::MatrixXd;
using RVec = Eigen::VectorXd;

/// Tolerance used when checking that a level lies inside [-j, j].
constexpr double kLevelTolerance = 1e-9;

/// Amplitude <j, m+1| I+ |j, m> = sqrt(j(j+1) - m(m+1)), zero when the radicand
/// is not positive. Throws std::domain_error when m lies outside [-j, j].
double ladder_element(double j, double m);

/// A window of consecutive |j, m> levels of one collective nuclear ensemble.
/// Levels are stored highest m first: level k has m = m_center + (n-1)/2 - k.
class TruncatedMode {
 public:
  TruncatedMode() = default;
  TruncatedMode(double j, double m_center, int n_levels);

  double j() const { return j_; }
  double m_center() const { return m_center_; }
  int n_levels() const { return n_; }

  /// Magnetic quantum number of window level k (0 = highest).
  double level(int k) const;
  std::vector<double> levels() const;
  /// True when level k satisfies |m| <= j within tolerance.
  bool level_physical(int k) const;
  /// Number of window levels outside the physical range.
  int clipped_levels() const;
  /// Window index of the level closest to m.
  int index_of(double m) const;

 private:
  double j_ = 0.0;
  double m_center_ = 0.0;
  int n_ = 1;
};

/// Places an n-level window so that the sampled m sits at the centre when
/// possible. Near the ends of the ladder the centre is clamped so the window
/// stays inside [-j, j]; a dark state m = -j then occupies the lowest level.
TruncatedMode place_window(double j, double m, int n_levels);

/// Ordered list of subsystems. Index ordering is row-major with subsystem 0
/// varying slowest, i.e. index = ((i0 * d1 + i1) * d2 + i2) * ...
struct SpaceLayout {
  std::vector<std::string> names;
  std::vector<int> dims;

  SpaceLayout() = default;
  SpaceLayout(std::vector<std::string> names_, std::vector<int> dims_);

  /// Electron plus 69Ga, 71Ga (three levels each) and 75As (five levels).
  static SpaceLayout default_layout();

  int size() const { return static_cast<int>(dims.size()); }
  int total_dim() const;
  int index(const std::vector<int>& local) const;
  std::vector<int> unindex(int flat) const;
};

/// Dense complex square matrix tagged with the subsystem dimensions it acts on.
struct OperatorMatrix {
  Mat matrix;
  std::vector<int> dims;

  OperatorMatrix() = default;
  OperatorMatrix(Mat m, std::vector<int> d);

  int dim() const { return static_cast<int>(matrix.rows()); }
};

OperatorMatrix raising_matrix(const TruncatedMode& mode);
OperatorMatrix lowering_matrix(const TruncatedMode& mode);
/// Diagonal matrix of the window's absolute m values.
OperatorMatrix z_matrix(const TruncatedMode& mode);
OperatorMatrix identity_matrix(int dim);

/// Kronecker product of op with identities on every other subsystem.
OperatorMatrix embed(const OperatorMatrix& op, int subsystem_index, const SpaceLayout& layout);

// Electron basis: index 0 is |up> (S_z = -1/2), index 1 is |down> (S_z = +1/2).
OperatorMatrix electron_sx();
OperatorMatrix electron_sy();
OperatorMatrix electron_sz();

/// Kronecker product of a list of matrices (first factor slowest).
Mat kron(const Mat& a, const Mat& b);

/// Basis vector of a product state given per-subsystem local indices.
Eigen::VectorXcd basis_vector(const SpaceLayout& layout, const std::vector<int>& local);

}  // namespace magnon
