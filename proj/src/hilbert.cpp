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


#include "magnon/hilbert.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace magnon {

double ladder_element(double j, double m) {
  if (!(j >= 0.0) || !std::isfinite(m))
    throw std::domain_error("ladder_element: invalid spin length");
  if (m > j + kLevelTolerance || m < -j - kLevelTolerance)
    throw std::domain_error("ladder_element: m outside [-j, j]");
  // Factored form: exact zero at both ends of the ladder and no cancellation for large j.
  const double radicand = (j - m) * (j + m + 1.0);
  return radicand > 0.0 ? std::sqrt(radicand) : 0.0;
}

TruncatedMode::TruncatedMode(double j, double m_center, int n_levels)
    : j_(j), m_center_(m_center), n_(n_levels) {
  if (!(j >= 0.0) || !std::isfinite(j)) throw std::invalid_argument("TruncatedMode: j must be >= 0");
  if (!std::isfinite(m_center)) throw std::invalid_argument("TruncatedMode: non-finite centre");
  if (n_levels < 1 || n_levels % 2 == 0)
    throw std::invalid_argument("TruncatedMode: n_levels must be a positive odd integer");
}

double TruncatedMode::level(int k) const {
  return m_center_ + 0.5 * (n_ - 1) - static_cast<double>(k);
}

std::vector<double> TruncatedMode::levels() const {
  std::vector<double> out(n_);
  for (int k = 0; k < n_; ++k) out[k] = level(k);
  return out;
}

bool TruncatedMode::level_physical(int k) const {
  const double m = level(k);
  return m <= j_ + kLevelTolerance && m >= -j_ - kLevelTolerance;
}

int TruncatedMode::clipped_levels() const {
  int c = 0;
  for (int k = 0; k < n_; ++k) c += level_physical(k) ? 0 : 1;
  return c;
}

int TruncatedMode::index_of(double m) const {
  int best = 0;
  for (int k = 1; k < n_; ++k)
    if (std::abs(level(k) - m) < std::abs(level(best) - m)) best = k;
  return best;
}

TruncatedMode place_window(double j, double m, int n_levels) {
  const double h = 0.5 * (n_levels - 1);
  double c = m;
  // An empty clamp interval means the window cannot fit; keep it on m and let
  // the out-of-range levels carry zero amplitude.
  if (j - h >= -j + h) c = std::clamp(m, -j + h, j - h);
  return TruncatedMode(j, c, n_levels);
}

SpaceLayout::SpaceLayout(std::vector<std::string> names_, std::vector<int> dims_)
    : names(std::move(names_)), dims(std::move(dims_)) {
  if (names.size() != dims.size()) throw std::invalid_argument("SpaceLayout: names/dims size mismatch");
  for (int d : dims)
    if (d < 1) throw std::invalid_argument("SpaceLayout: dimensions must be positive");
}

SpaceLayout SpaceLayout::default_layout() {
  return SpaceLayout({"electron", "69Ga", "71Ga", "75As"}, {2, 3, 3, 5});
}

int SpaceLayout::total_dim() const {
  int t = 1;
  for (int d : dims) t *= d;
  return t;
}

int SpaceLayout::index(const std::vector<int>& local) const {
  if (local.size() != dims.size()) throw std::invalid_argument("SpaceLayout::index: wrong arity");
  int idx = 0;
  for (size_t s = 0; s < dims.size(); ++s) {
    if (local[s] < 0 || local[s] >= dims[s]) throw std::out_of_range("SpaceLayout::index: local index");
    idx = idx * dims[s] + local[s];
  }
  return idx;
}

std::vector<int> SpaceLayout::unindex(int flat) const {
  if (flat < 0 || flat >= total_dim()) throw std::out_of_range("SpaceLayout::unindex");
  std::vector<int> local(dims.size());
  for (int s = size() - 1; s >= 0; --s) {
    local[s] = flat % dims[s];
    flat /= dims[s];
  }
  return local;
}

OperatorMatrix::OperatorMatrix(Mat m, std::vector<int> d) : matrix(std::move(m)), dims(std::move(d)) {
  if (matrix.rows() != matrix.cols()) throw std::invalid_argument("OperatorMatrix: not square");
  long prod = 1;
  for (int x : dims) prod *= x;
  if (prod != matrix.rows()) throw std::invalid_argument("OperatorMatrix: dimension metadata mismatch");
}

OperatorMatrix raising_matrix(const TruncatedMode& mode) {
  const int n = mode.n_levels();
  Mat m = Mat::Zero(n, n);
  for (int k = 0; k + 1 < n; ++k) {
    if (!mode.level_physical(k) || !mode.level_physical(k + 1)) continue;
    m(k, k + 1) = ladder_element(mode.j(), mode.level(k + 1));
  }
  return OperatorMatrix(std::move(m), {n});
}

OperatorMatrix lowering_matrix(const TruncatedMode& mode) {
  OperatorMatrix r = raising_matrix(mode);
  r.matrix = r.matrix.adjoint().eval();
  return r;
}

OperatorMatrix z_matrix(const TruncatedMode& mode) {
  const int n = mode.n_levels();
  Mat m = Mat::Zero(n, n);
  for (int k = 0; k < n; ++k) m(k, k) = mode.level(k);
  return OperatorMatrix(std::move(m), {n});
}

OperatorMatrix identity_matrix(int dim) { return OperatorMatrix(Mat::Identity(dim, dim), {dim}); }

Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index k = 0; k < a.cols(); ++k)
      out.block(i * b.rows(), k * b.cols(), b.rows(), b.cols()) = a(i, k) * b;
  return out;
}

OperatorMatrix embed(const OperatorMatrix& op, int subsystem_index, const SpaceLayout& layout) {
  if (subsystem_index < 0 || subsystem_index >= layout.size())
    throw std::out_of_range("embed: subsystem index out of range");
  if (op.dim() != layout.dims[subsystem_index])
    throw std::invalid_argument("embed: operator dimension does not match subsystem '" +
                                layout.names[subsystem_index] + "'");
  int before = 1, after = 1;
  for (int s = 0; s < subsystem_index; ++s) before *= layout.dims[s];
  for (int s = subsystem_index + 1; s < layout.size(); ++s) after *= layout.dims[s];
  Mat m = kron(kron(Mat::Identity(before, before), op.matrix), Mat::Identity(after, after));
  return OperatorMatrix(std::move(m), layout.dims);
}

OperatorMatrix electron_sx() {
  Mat m(2, 2);
  m << 0.0, 0.5, 0.5, 0.0;
  return OperatorMatrix(m, {2});
}

OperatorMatrix electron_sy() {
  Mat m(2, 2);
  m << cplx(0, 0), cplx(0, 0.5), cplx(0, -0.5), cplx(0, 0);
  return OperatorMatrix(m, {2});
}

OperatorMatrix electron_sz() {
  Mat m(2, 2);
  m << -0.5, 0.0, 0.0, 0.5;
  return OperatorMatrix(m, {2});
}

Eigen::VectorXcd basis_vector(const SpaceLayout& layout, const std::vector<int>& local) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(layout.total_dim());
  v(layout.index(local)) = 1.0;
  return v;
}

}  // namespace magnon
