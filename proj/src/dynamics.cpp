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


#include "magnon/dynamics.hpp"

#include <algorithm>
#include <cmath>

namespace magnon {

namespace {

constexpr cplx kI(0.0, 1.0);

struct Blocks {
  Mat p, c, r;  // upper-left, upper-right and lower-right electron blocks
};

void split(const Mat& m, int n, Blocks& b) {
  b.p = m.topLeftCorner(n, n);
  b.c = m.topRightCorner(n, n);
  b.r = m.bottomRightCorner(n, n);
}

void join(const Blocks& b, int n, Mat& m) {
  m.topLeftCorner(n, n) = b.p;
  m.topRightCorner(n, n) = b.c;
  m.bottomLeftCorner(n, n) = b.c.adjoint();
  m.bottomRightCorner(n, n) = b.r;
}

}  // namespace

Axis parse_axis(const std::string& s) {
  if (s == "x" || s == "+x") return Axis::PlusX;
  if (s == "-x") return Axis::MinusX;
  if (s == "y" || s == "+y") return Axis::PlusY;
  if (s == "-y") return Axis::MinusY;
  throw std::invalid_argument("unknown rotation axis '" + s + "'");
}

std::string axis_name(Axis a) {
  switch (a) {
    case Axis::PlusX: return "+x";
    case Axis::MinusX: return "-x";
    case Axis::PlusY: return "+y";
    case Axis::MinusY: return "-y";
  }
  return "?";
}

PulseSegment PulseSegment::drive(double detuning_mhz, double rabi_x_mhz, double rabi_y_mhz, double duration_ns) {
  PulseSegment s;
  s.kind = Kind::CoherentDrive;
  s.detuning_mhz = detuning_mhz;
  s.rabi_x_mhz = rabi_x_mhz;
  s.rabi_y_mhz = rabi_y_mhz;
  s.duration_ns = duration_ns;
  return s;
}

PulseSegment PulseSegment::free(double duration_ns) {
  PulseSegment s;
  s.kind = Kind::FreeEvolution;
  s.duration_ns = duration_ns;
  return s;
}

PulseSegment PulseSegment::rotation(Axis axis, double angle) {
  PulseSegment s;
  s.kind = Kind::InstantRotation;
  s.axis = axis;
  s.angle = angle;
  return s;
}

PulseSegment PulseSegment::reset(double f_init) {
  PulseSegment s;
  s.kind = Kind::ResetElectron;
  s.f_init = f_init;
  return s;
}

PulseSegment PulseSegment::invert() {
  PulseSegment s;
  s.kind = Kind::Invert;
  return s;
}

PulseSegment PulseSegment::reinit(int subsystem, int level) {
  PulseSegment s;
  s.kind = Kind::ReinitMode;
  s.subsystem = subsystem;
  s.level = level;
  return s;
}

void PulseSegment::validate() const {
  if (!(duration_ns >= 0.0) || !std::isfinite(duration_ns))
    throw std::invalid_argument("segment duration must be finite and >= 0");
  if (!std::isfinite(detuning_mhz) || !std::isfinite(rabi_x_mhz) || !std::isfinite(rabi_y_mhz))
    throw std::invalid_argument("segment drive parameters must be finite");
  if (kind == Kind::InstantRotation && !(angle > -2 * M_PI && angle <= 2 * M_PI))
    throw std::invalid_argument("rotation angle must lie in (-2pi, 2pi]");
  if (kind == Kind::ResetElectron && !(f_init >= 0.0 && f_init <= 1.0))
    throw std::invalid_argument("reset F_init must lie in [0, 1]");
}

double NoiseModel::kappa(double rx, double ry) const {
  if (!enabled) return 0.0;
  if (!(q > 0.0)) throw std::invalid_argument("noise.Q must be positive");
  return std::hypot(rx, ry) / (2.0 * q);
}

Eigen::Matrix2cd electron_rotation(Axis axis, double angle) {
  Eigen::Matrix2cd ns;
  const Mat sx = electron_sx().matrix, sy = electron_sy().matrix;
  switch (axis) {
    case Axis::PlusX: ns = sx; break;
    case Axis::MinusX: ns = -sx; break;
    case Axis::PlusY: ns = sy; break;
    case Axis::MinusY: ns = -sy; break;
  }
  // (n.S)^2 = 1/4, so the exponential has a closed form.
  return std::cos(angle / 2) * Eigen::Matrix2cd::Identity() - kI * std::sin(angle / 2) * 2.0 * ns;
}

Mat down_projector(int dim) {
  Mat p = Mat::Zero(dim, dim);
  for (int k = dim / 2; k < dim; ++k) p(k, k) = 1.0;
  return p;
}

double expectation(const Mat& o, const Mat& rho) { return o.transpose().cwiseProduct(rho).sum().real(); }

double measure_down(const Mat& rho) {
  const int n = static_cast<int>(rho.rows()) / 2;
  double p = rho.bottomRightCorner(n, n).trace().real();
  if (p < -1e-9 || p > 1.0 + 1e-9) throw NumericalError("measure_down: population outside [0, 1]");
  return std::clamp(p, 0.0, 1.0);
}

double measure_down(const OperatorMatrix& rho) { return measure_down(rho.matrix); }

OperatorMatrix apply_reset(const OperatorMatrix& rho, double f_init) {
  if (!(f_init >= 0.0 && f_init <= 1.0)) throw std::invalid_argument("apply_reset: F_init outside [0, 1]");
  const int n = rho.dim() / 2;
  const Mat nuc = rho.matrix.topLeftCorner(n, n) + rho.matrix.bottomRightCorner(n, n);
  Mat out = Mat::Zero(2 * n, 2 * n);
  out.topLeftCorner(n, n) = f_init * nuc;
  out.bottomRightCorner(n, n) = (1.0 - f_init) * nuc;
  return OperatorMatrix(std::move(out), rho.dims);
}

PulseSegment rotation_segment(Axis axis, double angle, const PulseOptions& opt) {
  if (opt.instant) return PulseSegment::rotation(axis, angle);
  if (!(opt.rabi_mhz > 0.0)) throw std::invalid_argument("pulse Rabi frequency must be positive");
  double sx = 0, sy = 0;
  switch (axis) {
    case Axis::PlusX: sx = 1; break;
    case Axis::MinusX: sx = -1; break;
    case Axis::PlusY: sy = 1; break;
    case Axis::MinusY: sy = -1; break;
  }
  if (angle < 0) {
    sx = -sx;
    sy = -sy;
  }
  const double t_ns = std::abs(angle) / (kTwoPi * opt.rabi_mhz) * 1e3;
  return PulseSegment::drive(0.0, sx * opt.rabi_mhz, sy * opt.rabi_mhz, t_ns);
}

Propagator::Propagator(SpaceLayout layout, Mat static_h, NoiseModel noise, IntegratorOptions integ,
                       PulseOptions pulses, double detuning_offset_mhz)
    : layout_(std::move(layout)),
      dim_(layout_.total_dim()),
      half_(dim_ / 2),
      h_(std::move(static_h)),
      noise_(noise),
      integ_(integ),
      pulses_(pulses),
      delta0_(detuning_offset_mhz) {
  if (layout_.dims.empty() || layout_.dims[0] != 2)
    throw std::invalid_argument("Propagator: subsystem 0 must be the electron");
  if (h_.rows() != dim_ || h_.cols() != dim_) throw std::invalid_argument("Propagator: Hamiltonian dimension");
  if (!h_.allFinite()) throw std::invalid_argument("Propagator: non-finite Hamiltonian");
  h00_ = h_.topLeftCorner(half_, half_);
  h11_ = h_.bottomRightCorner(half_, half_);
  h01_ = h_.topRightCorner(half_, half_);
  block_diagonal_ = h01_.norm() == 0.0;
}

Mat Propagator::hamiltonian(const DriveParams& d) const {
  DriveParams dd = d;
  dd.detuning_mhz += delta0_;
  return h_ + drive_matrix(layout_, dd);
}

const Propagator::Eigensystem& Propagator::eigensystem(const DriveParams& d) {
  const auto key = std::make_tuple(d.detuning_mhz, d.rabi_x_mhz, d.rabi_y_mhz);
  auto it = cache_.find(key);
  if (it != cache_.end()) return it->second;
  if (cache_.size() > 32) cache_.clear();
  Eigen::SelfAdjointEigenSolver<Mat> es(hamiltonian(d));
  if (es.info() != Eigen::Success) throw NumericalError("Hamiltonian diagonalisation failed");
  return cache_.emplace(key, Eigensystem{es.eigenvalues(), es.eigenvectors()}).first->second;
}

void Propagator::exact(Mat& m, const DriveParams& d, double t, bool adjoint) {
  const Eigensystem& es = eigensystem(d);
  Eigen::VectorXcd ph(dim_);
  for (int k = 0; k < dim_; ++k) ph(k) = std::exp(-kI * es.values(k) * t);
  const Mat u = es.vectors * ph.asDiagonal() * es.vectors.adjoint();
  if (adjoint)
    m = (u.adjoint() * m * u).eval();
  else
    m = (u * m * u.adjoint()).eval();
  ++diag_.exact_segments;
}

void Propagator::rk4(Mat& m, const DriveParams& d, double t, double kappa, bool adjoint) {
  const Eigensystem& es = eigensystem(d);
  const double spread = es.values.maxCoeff() - es.values.minCoeff();
  // Largest frequency (MHz) after shifting the spectrum to be centred on zero.
  const double f_max = std::max(spread / 2.0 / kTwoPi, 1e-12);
  double dt = std::min(1.0 / (integ_.steps_per_period * f_max), t / std::max(integ_.min_steps, 1));
  const long steps = std::max<long>(1, static_cast<long>(std::ceil(t / dt - 1e-9)));
  dt = t / static_cast<double>(steps);
  diag_.rk4_steps += steps;

  const cplx f = adjoint ? kI : -kI;

  if (block_diagonal_) {
    const int n = half_;
    const double dd = d.detuning_mhz + delta0_;
    const Mat h0 = h00_ - M_PI * dd * Mat::Identity(n, n);
    const Mat h1 = h11_ + M_PI * dd * Mat::Identity(n, n);
    const cplx g = M_PI * cplx(d.rabi_x_mhz, d.rabi_y_mhz);
    const cplx gc = std::conj(g);

    Blocks x, k, acc, tmp;
    split(m, n, x);
    Mat a(n, n), b(n, n), e(n, n);
    auto rhs = [&](const Blocks& s, Blocks& out) {
      a.noalias() = h0 * s.p;
      b.noalias() = h1 * s.r;
      e.noalias() = h0 * s.c;
      e.noalias() -= s.c * h1;
      const Mat cdag = s.c.adjoint();
      out.p = f * (a - a.adjoint() + g * cdag - gc * s.c) + kappa * (s.r - s.p);
      out.c = f * (e + g * (s.r - s.p)) - kappa * s.c;
      out.r = f * (b - b.adjoint() + gc * s.c - g * cdag) + kappa * (s.p - s.r);
    };
    for (long step = 0; step < steps; ++step) {
      rhs(x, k);
      acc.p = k.p; acc.c = k.c; acc.r = k.r;
      tmp.p = x.p + 0.5 * dt * k.p; tmp.c = x.c + 0.5 * dt * k.c; tmp.r = x.r + 0.5 * dt * k.r;
      rhs(tmp, k);
      acc.p += 2.0 * k.p; acc.c += 2.0 * k.c; acc.r += 2.0 * k.r;
      tmp.p = x.p + 0.5 * dt * k.p; tmp.c = x.c + 0.5 * dt * k.c; tmp.r = x.r + 0.5 * dt * k.r;
      rhs(tmp, k);
      acc.p += 2.0 * k.p; acc.c += 2.0 * k.c; acc.r += 2.0 * k.r;
      tmp.p = x.p + dt * k.p; tmp.c = x.c + dt * k.c; tmp.r = x.r + dt * k.r;
      rhs(tmp, k);
      acc.p += k.p; acc.c += k.c; acc.r += k.r;
      x.p += (dt / 6.0) * acc.p;
      x.c += (dt / 6.0) * acc.c;
      x.r += (dt / 6.0) * acc.r;
    }
    join(x, n, m);
    return;
  }

  // General Hamiltonians (off-diagonal electron blocks in the static part).
  const Mat h = hamiltonian(d);
  const int n = half_;
  auto rhs = [&](const Mat& s, Mat& out) {
    Mat hs = h * s;
    out = f * (hs - hs.adjoint());
    if (kappa != 0.0) {
      out.topLeftCorner(n, n) += kappa * (s.bottomRightCorner(n, n) - s.topLeftCorner(n, n));
      out.bottomRightCorner(n, n) += kappa * (s.topLeftCorner(n, n) - s.bottomRightCorner(n, n));
      out.topRightCorner(n, n) -= kappa * s.topRightCorner(n, n);
      out.bottomLeftCorner(n, n) -= kappa * s.bottomLeftCorner(n, n);
    }
  };
  Mat k1, k2, k3, k4;
  for (long step = 0; step < steps; ++step) {
    rhs(m, k1);
    rhs(m + 0.5 * dt * k1, k2);
    rhs(m + 0.5 * dt * k2, k3);
    rhs(m + dt * k3, k4);
    m += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
}

void Propagator::drive_segment(Mat& m, const DriveParams& d, double t_us, bool adjoint) {
  if (t_us <= 0.0) return;
  const double kappa = noise_.kappa(d.rabi_x_mhz, d.rabi_y_mhz);
  if (kappa == 0.0 && integ_.exact_unitary)
    exact(m, d, t_us, adjoint);
  else
    rk4(m, d, t_us, kappa, adjoint);
}

void Propagator::rotate(Mat& m, const Eigen::Matrix2cd& u) const {
  const int n = half_;
  Mat t(dim_, dim_);
  t.topRows(n) = u(0, 0) * m.topRows(n) + u(0, 1) * m.bottomRows(n);
  t.bottomRows(n) = u(1, 0) * m.topRows(n) + u(1, 1) * m.bottomRows(n);
  m.leftCols(n) = std::conj(u(0, 0)) * t.leftCols(n) + std::conj(u(0, 1)) * t.rightCols(n);
  m.rightCols(n) = std::conj(u(1, 0)) * t.leftCols(n) + std::conj(u(1, 1)) * t.rightCols(n);
}

void Propagator::reinit(Mat& m, int sub, int level, bool adjoint) const {
  if (sub <= 0 || sub >= layout_.size()) throw std::invalid_argument("reinit: invalid subsystem");
  const int ds = layout_.dims[sub];
  if (level < 0 || level >= ds) throw std::invalid_argument("reinit: invalid level");
  int stride = 1;
  for (int s = sub + 1; s < layout_.size(); ++s) stride *= layout_.dims[s];
  auto local = [&](int idx) { return (idx / stride) % ds; };
  Mat out = Mat::Zero(dim_, dim_);
  for (int i = 0; i < dim_; ++i) {
    const int ki = local(i);
    for (int j = 0; j < dim_; ++j) {
      const int kj = local(j);
      if (!adjoint) {
        if (ki != level || kj != level) continue;
        cplx s = 0.0;
        for (int k = 0; k < ds; ++k) s += m(i + (k - level) * stride, j + (k - level) * stride);
        out(i, j) = s;
      } else {
        if (ki != kj) continue;
        out(i, j) = m(i + (level - ki) * stride, j + (level - kj) * stride);
      }
    }
  }
  m = std::move(out);
}

void Propagator::check_state(Mat& rho) {
  rho = (0.5 * (rho + rho.adjoint())).eval();
  if (!rho.allFinite()) throw NumericalError("non-finite density matrix");
  const double drift = std::abs(rho.trace().real() - 1.0);
  diag_.max_trace_drift = std::max(diag_.max_trace_drift, drift);
  if (drift > integ_.trace_tolerance) throw NumericalError("trace drift exceeds tolerance");
  if (integ_.check_positivity) {
    Eigen::SelfAdjointEigenSolver<Mat> es(rho, Eigen::EigenvaluesOnly);
    const double mn = es.eigenvalues().minCoeff();
    diag_.min_eigenvalue = std::min(diag_.min_eigenvalue, mn);
    if (mn < -integ_.positivity_tolerance) throw NumericalError("density matrix lost positivity");
  }
}

void Propagator::apply(Mat& rho, const PulseSegment& seg) {
  seg.validate();
  switch (seg.kind) {
    case PulseSegment::Kind::CoherentDrive: {
      DriveParams d{seg.detuning_mhz, seg.rabi_x_mhz, seg.rabi_y_mhz};
      drive_segment(rho, d, seg.duration_ns * 1e-3, false);
      if (noise_.kappa(d.rabi_x_mhz, d.rabi_y_mhz) > 0.0 || !integ_.exact_unitary) check_state(rho);
      break;
    }
    case PulseSegment::Kind::FreeEvolution:
      drive_segment(rho, DriveParams{}, seg.duration_ns * 1e-3, false);
      break;
    case PulseSegment::Kind::InstantRotation:
      rotate(rho, electron_rotation(seg.axis, seg.angle));
      break;
    case PulseSegment::Kind::ResetElectron:
      rho = apply_reset(OperatorMatrix(rho, layout_.dims), seg.f_init).matrix;
      break;
    case PulseSegment::Kind::Invert:
      apply(rho, rotation_segment(Axis::PlusX, M_PI, pulses_));
      break;
    case PulseSegment::Kind::ReinitMode:
      reinit(rho, seg.subsystem, seg.level, false);
      break;
  }
}

void Propagator::apply_adjoint(Mat& o, const PulseSegment& seg) {
  seg.validate();
  switch (seg.kind) {
    case PulseSegment::Kind::CoherentDrive:
      drive_segment(o, DriveParams{seg.detuning_mhz, seg.rabi_x_mhz, seg.rabi_y_mhz}, seg.duration_ns * 1e-3, true);
      break;
    case PulseSegment::Kind::FreeEvolution:
      drive_segment(o, DriveParams{}, seg.duration_ns * 1e-3, true);
      break;
    case PulseSegment::Kind::InstantRotation:
      rotate(o, electron_rotation(seg.axis, seg.angle).adjoint());
      break;
    case PulseSegment::Kind::ResetElectron: {
      const int n = half_;
      const Mat red = seg.f_init * o.topLeftCorner(n, n) + (1.0 - seg.f_init) * o.bottomRightCorner(n, n);
      o.setZero();
      o.topLeftCorner(n, n) = red;
      o.bottomRightCorner(n, n) = red;
      break;
    }
    case PulseSegment::Kind::Invert:
      apply_adjoint(o, rotation_segment(Axis::PlusX, M_PI, pulses_));
      break;
    case PulseSegment::Kind::ReinitMode:
      reinit(o, seg.subsystem, seg.level, true);
      break;
  }
  o = (0.5 * (o + o.adjoint())).eval();
}

void Propagator::run(Mat& rho, const Sequence& seq) {
  for (const auto& s : seq) apply(rho, s);
}

void Propagator::run_adjoint(Mat& obs, const Sequence& seq) {
  for (auto it = seq.rbegin(); it != seq.rend(); ++it) apply_adjoint(obs, *it);
}

void Propagator::drive_with_probes(Mat& rho, const DriveParams& d, const std::vector<double>& probe_ns,
                                   const std::function<void(size_t, const Mat&)>& cb) {
  double now = 0.0;
  for (size_t i = 0; i < probe_ns.size(); ++i) {
    if (probe_ns[i] < now - 1e-12) throw std::invalid_argument("probe times must be ascending");
    const double step = probe_ns[i] - now;
    if (step > 0.0) apply(rho, PulseSegment::drive(d.detuning_mhz, d.rabi_x_mhz, d.rabi_y_mhz, step));
    now = probe_ns[i];
    cb(i, rho);
  }
}

OperatorMatrix propagate_segment(const OperatorMatrix& rho, const PulseSegment& seg, Propagator& prop) {
  if (rho.dim() != prop.dim()) throw std::invalid_argument("propagate_segment: dimension mismatch");
  const double tr = rho.matrix.trace().real();
  if (std::abs(tr - 1.0) > 1e-6) throw std::invalid_argument("propagate_segment: trace must be 1");
  if ((rho.matrix - rho.matrix.adjoint()).norm() > 1e-9 * std::max(1.0, rho.matrix.norm()))
    throw std::invalid_argument("propagate_segment: state must be Hermitian");
  Mat m = rho.matrix;
  prop.apply(m, seg);
  return OperatorMatrix(std::move(m), rho.dims);
}

}  // namespace magnon
