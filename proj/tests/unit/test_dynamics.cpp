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
#include <unsupported/Eigen/MatrixFunctions>

#include "doctest.h"
#include "magnon/dynamics.hpp"
#include "magnon/hamiltonian.hpp"
#include "magnon/sampling.hpp"

using namespace magnon;

namespace {

const SpaceLayout kElectron({"electron"}, {2});

Mat electron_state(double p_down) {
  Mat rho = Mat::Zero(2, 2);
  rho(0, 0) = 1.0 - p_down;
  rho(1, 1) = p_down;
  return rho;
}

struct SmallModel {
  SpaceLayout layout{{"electron", "71Ga"}, {2, 3}};
  std::vector<NuclearMode> modes;
  Mat h;
  Mat rho;
  SmallModel() {
    const auto sp = default_species("71Ga");
    const auto m = make_mode(sp, SpinState{30.0, -30.0}, 3);
    modes = {m};
    CouplingConfig c;
    c.tilt_angle = 0.4;  // exaggerated so the nuclear coupling matters on short scales
    h = build_hamiltonian(layout, modes, c, {}).matrix;
    rho = initial_density_matrix(0.95, modes, {-30.0}, layout).matrix;
  }
};

Mat random_hermitian(int n, unsigned seed) {
  std::srand(seed);
  Mat a = Mat::Random(n, n);
  return 0.5 * (a + a.adjoint());
}

}  // namespace

TEST_CASE("identity evolution") {
  Propagator p(kElectron, Mat::Zero(2, 2), NoiseModel{46.0, false});
  Mat rho = electron_state(0.3);
  rho(0, 1) = 0.2;
  rho(1, 0) = 0.2;
  const Mat before = rho;
  p.apply(rho, PulseSegment::free(250.0));
  CHECK((rho - before).norm() < 1e-14);
}

TEST_CASE("resonant pi pulse") {
  for (bool exact : {true, false}) {
    IntegratorOptions io;
    io.exact_unitary = exact;
    io.steps_per_period = 400;
    Propagator p(kElectron, Mat::Zero(2, 2), NoiseModel{46.0, false}, io);
    Mat rho = electron_state(0.0);
    const double omega = 10.0;
    p.apply(rho, PulseSegment::drive(0.0, omega, 0.0, 1e3 / (2.0 * omega)));
    CHECK(measure_down(rho) == doctest::Approx(1.0).epsilon(1e-6));
  }
}

TEST_CASE("measurement and reset") {
  CHECK(measure_down(electron_state(0.0)) == 0.0);
  CHECK(measure_down(electron_state(1.0)) == 1.0);
  CHECK(measure_down(electron_state(0.5)) == 0.5);
  SmallModel m;
  const OperatorMatrix rho(m.rho, m.layout.dims);
  const auto r = apply_reset(rho, 0.98);
  CHECK(std::abs(r.matrix.trace() - 1.0) < 1e-14);
  CHECK(measure_down(r) == doctest::Approx(0.02));
  CHECK(std::abs(r.matrix(0, 3)) == 0.0);
  // Reset must be idempotent.
  CHECK((apply_reset(r, 0.98).matrix - r.matrix).norm() < 1e-14);
}

TEST_CASE("electron rotations") {
  const auto u = electron_rotation(Axis::PlusX, M_PI);
  CHECK(std::abs(std::abs(u(1, 0)) - 1.0) < 1e-14);
  const auto v = electron_rotation(Axis::MinusY, M_PI / 2);
  CHECK((v * v.adjoint() - Eigen::Matrix2cd::Identity()).norm() < 1e-14);
  CHECK(parse_axis("-y") == Axis::MinusY);
  CHECK(axis_name(Axis::PlusX) == "+x");
  CHECK_THROWS(parse_axis("z"));
  const auto seg = rotation_segment(Axis::PlusY, M_PI / 2, PulseOptions{90.0, false});
  CHECK(seg.kind == PulseSegment::Kind::CoherentDrive);
  CHECK(seg.duration_ns == doctest::Approx(1e3 / (4.0 * 90.0)));
  CHECK(seg.rabi_y_mhz == doctest::Approx(90.0));
}

TEST_CASE("exact path agrees with the matrix exponential") {
  SmallModel m;
  Propagator p(m.layout, m.h, NoiseModel{46.0, false});
  const DriveParams d{0.3, 0.0, 55.0};
  const Mat h = p.hamiltonian(d);
  const double t_us = 0.1;
  const Mat u = (cplx(0.0, -t_us) * h).exp();
  Mat rho = m.rho;
  p.apply(rho, PulseSegment::drive(d.detuning_mhz, d.rabi_x_mhz, d.rabi_y_mhz, t_us * 1e3));
  CHECK((rho - u * m.rho * u.adjoint()).norm() < 1e-10);

  IntegratorOptions rk;
  rk.exact_unitary = false;
  rk.steps_per_period = 200;
  Propagator q(m.layout, m.h, NoiseModel{46.0, false}, rk);
  Mat rho2 = m.rho;
  q.apply(rho2, PulseSegment::drive(d.detuning_mhz, d.rabi_x_mhz, d.rabi_y_mhz, t_us * 1e3));
  CHECK((rho2 - u * m.rho * u.adjoint()).norm() < 1e-6);
}

TEST_CASE("dissipative evolution keeps a valid state") {
  SmallModel m;
  Propagator p(m.layout, m.h, NoiseModel{5.0, true});
  Mat rho = m.rho;
  p.apply(rho, PulseSegment::drive(0.0, 0.0, 50.0, 300.0));
  CHECK(std::abs(rho.trace() - 1.0) < 1e-8);
  CHECK((rho - rho.adjoint()).norm() < 1e-12);
  Eigen::SelfAdjointEigenSolver<Mat> es(rho);
  CHECK(es.eigenvalues().minCoeff() > -1e-8);
  CHECK(p.diagnostics().rk4_steps > 0);
}

TEST_CASE("adjoint maps are consistent with forward maps") {
  SmallModel m;
  Propagator p(m.layout, m.h, NoiseModel{10.0, true});
  const Mat obs = random_hermitian(6, 3);
  const Sequence seq{PulseSegment::drive(0.5, 40.0, -20.0, 25.0),
                     PulseSegment::free(40.0),
                     PulseSegment::rotation(Axis::MinusX, 1.1),
                     PulseSegment::reset(0.9),
                     PulseSegment::invert(),
                     PulseSegment::reinit(1, 2),
                     PulseSegment::drive(0.0, 0.0, 58.0, 30.0)};
  Mat rho = m.rho;
  p.run(rho, seq);
  Mat o = obs;
  p.run_adjoint(o, seq);
  CHECK(expectation(obs, rho) == doctest::Approx(expectation(o, m.rho)).epsilon(1e-9));
}

TEST_CASE("spin-locked relaxation time") {
  // Electron only: the locked state decays towards the mixed state with T1 = 2Q / f.
  const double q = 46.0, f = 56.0;
  Propagator p(kElectron, Mat::Zero(2, 2), NoiseModel{q, true});
  Mat rho = Mat::Constant(2, 2, 0.5);  // +x
  rho(0, 1) = cplx(0.0, 0.5);
  rho(1, 0) = cplx(0.0, -0.5);  // eigenstate of S_y, aligned with the lock
  const Mat sy = electron_sy().matrix;
  const double s0 = expectation(sy, rho);
  const double t_ns = 500.0;
  p.apply(rho, PulseSegment::drive(0.0, 0.0, f, t_ns));
  const double ratio = expectation(sy, rho) / s0;
  const double t1_us = -(t_ns * 1e-3) / std::log(ratio);
  CHECK(t1_us == doctest::Approx(2.0 * q / f).epsilon(0.01));
}

TEST_CASE("segment validation") {
  CHECK_THROWS(PulseSegment::free(-1.0).validate());
  CHECK_THROWS(PulseSegment::reset(1.2).validate());
  SmallModel m;
  Propagator p(m.layout, m.h, NoiseModel{46.0, false});
  Mat rho = m.rho;
  CHECK_THROWS(p.apply(rho, PulseSegment::reinit(3, 0)));
}
