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
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "magnon/hamiltonian.hpp"
#include "magnon/hilbert.hpp"

namespace magnon {

/// Raised when a propagation result cannot be trusted (positivity or trace
/// violated beyond tolerance, non-finite entries).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Axis { PlusX, MinusX, PlusY, MinusY };

Axis parse_axis(const std::string& s);
std::string axis_name(Axis a);

/// One piece of a piecewise-constant control sequence. Durations are in ns.
struct PulseSegment {
  enum class Kind { CoherentDrive, FreeEvolution, InstantRotation, ResetElectron, Invert, ReinitMode };
  Kind kind = Kind::FreeEvolution;
  double detuning_mhz = 0.0;
  double rabi_x_mhz = 0.0;
  double rabi_y_mhz = 0.0;
  double duration_ns = 0.0;
  Axis axis = Axis::PlusX;
  double angle = 0.0;
  double f_init = 1.0;
  int subsystem = -1;  ///< ReinitMode: layout subsystem to overwrite
  int level = 0;       ///< ReinitMode: window level to prepare

  static PulseSegment drive(double detuning_mhz, double rabi_x_mhz, double rabi_y_mhz, double duration_ns);
  static PulseSegment free(double duration_ns);
  static PulseSegment rotation(Axis axis, double angle);
  static PulseSegment reset(double f_init);
  static PulseSegment invert();
  static PulseSegment reinit(int subsystem, int level);

  void validate() const;
};

using Sequence = std::vector<PulseSegment>;

/// Drive-proportional electron spin flips: kappa = |Omega| / (2Q) in 1/us
/// with |Omega| the ordinary Rabi frequency in MHz.
struct NoiseModel {
  double q = 46.0;
  bool enabled = true;
  double kappa(double rabi_x_mhz, double rabi_y_mhz) const;
};

struct IntegratorOptions {
  double steps_per_period = 40.0;  ///< dt = 1 / (steps_per_period * f_max)
  int min_steps = 10;              ///< dt <= duration / min_steps
  bool exact_unitary = true;       ///< use an eigendecomposition when kappa = 0
  bool check_positivity = true;
  double positivity_tolerance = 1e-6;
  double trace_tolerance = 1e-6;
};

/// How Invert segments and rotations built by sequence helpers are realised.
struct PulseOptions {
  double rabi_mhz = 90.0;
  bool instant = false;
};

struct Diagnostics {
  double min_eigenvalue = 0.0;
  double max_trace_drift = 0.0;
  long rk4_steps = 0;
  long exact_segments = 0;
};

/// Electron unitary exp(-i angle n.S) for rotations about +-x or +-y.
Eigen::Matrix2cd electron_rotation(Axis axis, double angle);

/// Electron reset: (F |up><up| + (1-F) |down><down|) x Tr_e(rho).
OperatorMatrix apply_reset(const OperatorMatrix& rho, double f_init);

/// Population of the electron |down> state, clamped to [0, 1].
double measure_down(const OperatorMatrix& rho);
double measure_down(const Mat& rho);

/// Tr(O rho) for Hermitian O (real part).
double expectation(const Mat& observable, const Mat& rho);

/// Electron |down><down| x identity.
Mat down_projector(int dim);

/// Propagates states (Schroedinger picture) and observables (Heisenberg
/// picture) through segments for one fixed static Hamiltonian.
class Propagator {
 public:
  /// static_h: drive-free Hamiltonian in rad/us on the layout; the electron
  /// is subsystem 0. detuning_offset_mhz is added to every drive segment and
  /// to free evolution (quasi-static detuning noise).
  Propagator(SpaceLayout layout, Mat static_h, NoiseModel noise = {}, IntegratorOptions integ = {},
             PulseOptions pulses = {}, double detuning_offset_mhz = 0.0);

  const SpaceLayout& layout() const { return layout_; }
  int dim() const { return dim_; }
  const NoiseModel& noise() const { return noise_; }
  const IntegratorOptions& integrator() const { return integ_; }
  IntegratorOptions& integrator() { return integ_; }
  const PulseOptions& pulses() const { return pulses_; }
  double detuning_offset() const { return delta0_; }
  const Diagnostics& diagnostics() const { return diag_; }

  /// Full Hamiltonian (rad/us) for a drive, including the detuning offset.
  Mat hamiltonian(const DriveParams& d) const;

  void apply(Mat& rho, const PulseSegment& seg);
  void apply_adjoint(Mat& obs, const PulseSegment& seg);
  void run(Mat& rho, const Sequence& seq);
  /// Transforms an observable backwards through a sequence (last segment first).
  void run_adjoint(Mat& obs, const Sequence& seq);

  /// Drives continuously and calls back at each probe time (ns, ascending).
  void drive_with_probes(Mat& rho, const DriveParams& d, const std::vector<double>& probe_ns,
                         const std::function<void(size_t, const Mat&)>& cb);

  /// Eigendecomposition of the Hamiltonian for a drive (cached).
  struct Eigensystem {
    RVec values;
    Mat vectors;
  };
  const Eigensystem& eigensystem(const DriveParams& d);

 private:
  void drive_segment(Mat& m, const DriveParams& d, double duration_us, bool adjoint);
  void rk4(Mat& m, const DriveParams& d, double duration_us, double kappa, bool adjoint);
  void exact(Mat& m, const DriveParams& d, double duration_us, bool adjoint);
  void rotate(Mat& m, const Eigen::Matrix2cd& u) const;
  void reinit(Mat& m, int subsystem, int level, bool adjoint) const;
  void check_state(Mat& rho);

  SpaceLayout layout_;
  int dim_;
  int half_;
  Mat h_;
  Mat h00_, h11_, h01_;
  bool block_diagonal_;
  NoiseModel noise_;
  IntegratorOptions integ_;
  PulseOptions pulses_;
  double delta0_;
  Diagnostics diag_;
  std::map<std::tuple<double, double, double>, Eigensystem> cache_;
};

/// Applies one segment to an OperatorMatrix state.
OperatorMatrix propagate_segment(const OperatorMatrix& rho, const PulseSegment& seg, Propagator& prop);

/// Finite-pulse or instantaneous realisation of a rotation.
PulseSegment rotation_segment(Axis axis, double angle, const PulseOptions& opt);

}  // namespace magnon
