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


// Acceptance checks. Each check prints exactly one PASS/FAIL line with the
// measured value and the pinned tolerance. The process exits non-zero only
// when a check could not be evaluated (exception), or when --strict is given
// and any check failed.

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <chrono>
#include <cstdarg>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <string>
#include <vector>

#include "magnon/analysis.hpp"
#include "magnon/experiments.hpp"
#include "magnon/fitting.hpp"
#include "magnon/hamiltonian.hpp"
#include "magnon/optimize.hpp"
#include "magnon/sampling.hpp"
#include "magnon/sequences.hpp"
#include <unsupported/Eigen/MatrixFunctions>

using namespace magnon;

namespace {

int g_pass = 0, g_fail = 0, g_error = 0;

void report(const std::string& id, bool ok, const std::string& detail) {
  std::printf("[%s] %-4s %s\n", ok ? "PASS" : "FAIL", id.c_str(), detail.c_str());
  std::fflush(stdout);
  (ok ? g_pass : g_fail)++;
}

std::string fmt(const char* f, ...) __attribute__((format(printf, 1, 2)));
std::string fmt(const char* f, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof(buf), f, ap);
  va_end(ap);
  return buf;
}

bool within(double x, double target, double tol) { return std::abs(x - target) <= tol; }

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

ModelConfig polarized_model() {
  ModelConfig m = ModelConfig::defaults();
  m.set_preparation("polarized");
  return m;
}

// ---------------------------------------------------------------------------

void criterion1() {
  const double j = 0.6 * 1.5 * 13464;
  const double rate = magnon_rabi(0.051, 58.41, 58.41, j, -j);
  report("1a", rate >= 3.8 && rate <= 4.0, fmt("magnon rate %.4f MHz, required [3.8, 4.0]", rate));

  const auto t0 = std::chrono::steady_clock::now();
  NovelConfig cfg;
  cfg.omega_y_mhz = {58.41};
  for (double t = 0.0; t <= 250.0 + 1e-9; t += 5.0) cfg.t_ns.push_back(t);
  RunOptions run;
  run.samples = 40;
  run.seed = 1;
  const auto r = novel_spectrum(polarized_model(), cfg, run);
  std::vector<double> resp(r.mean.size());
  for (size_t i = 0; i < resp.size(); ++i) resp[i] = 1.0 - r.mean[i];
  // Locate the maximum of a 3-point running mean, then fit a parabola by
  // least squares to the +-40 ns around it.
  std::vector<double> smooth(resp.size());
  for (size_t i = 0; i < resp.size(); ++i) {
    const size_t a = i ? i - 1 : 0, b = std::min(resp.size() - 1, i + 1);
    smooth[i] = (resp[a] + resp[i] + resp[b]) / 3.0;
  }
  const size_t k = argmax(smooth);
  std::vector<double> xs, ys;
  for (size_t i = 0; i < resp.size(); ++i)
    if (std::abs(cfg.t_ns[i] - cfg.t_ns[k]) <= 40.0 + 1e-9) {
      xs.push_back(cfg.t_ns[i]);
      ys.push_back(resp[i]);
    }
  Eigen::MatrixXd a(xs.size(), 3);
  Eigen::VectorXd y(xs.size());
  for (size_t i = 0; i < xs.size(); ++i) {
    const double u = xs[i] - cfg.t_ns[k];
    a(i, 0) = 1.0;
    a(i, 1) = u;
    a(i, 2) = u * u;
    y(i) = ys[i];
  }
  const Eigen::Vector3d c = a.colPivHouseholderQr().solve(y);
  const double peak = c(2) < 0.0 ? cfg.t_ns[k] - c(1) / (2.0 * c(2)) : cfg.t_ns[k];
  const double secs = seconds_since(t0);
  report("1b", within(peak, 130.0, 10.0) && secs < 60.0,
         fmt("NOVEL inversion peak at %.1f ns (max response %.3f), required 130 +- 10 ns; %.0f s (limit 60 s)", peak,
             resp[k], secs));
}

void criterion2() {
  const auto n = estimate_nuclei(0.500, 11100.0, 0.396);
  report("2a", std::abs(n.n_species / 1.35e4 - 1.0) <= 0.01,
         fmt("N_71 = %.1f, required 1.35e4 +- 1%%", n.n_species));
  report("2b", std::abs(n.n_total / 6.84e4 - 1.0) <= 0.01, fmt("N_tot = %.1f, required 6.84e4 +- 1%%", n.n_total));
}

void criterion3() {
  using boost::math::quadrature::gauss_kronrod;
  const double sigma = 1.3, amp = 1.0;
  auto integrand = [&](int power) {
    return [=](double r) {
      const double psi2 = std::exp(-r * r / (sigma * sigma)) / (std::pow(M_PI, 1.5) * std::pow(sigma, 3));
      return std::pow(amp * psi2, power) * 4.0 * M_PI * r * r;
    };
  };
  const double m2 = gauss_kronrod<double, 61>::integrate(integrand(2), 0.0, 15.0 * sigma, 20, 1e-15);
  const double m3 = gauss_kronrod<double, 61>::integrate(integrand(3), 0.0, 15.0 * sigma, 20, 1e-15);
  const double n_eff = amp * amp / m2;
  const double oracle = (m3 / m2) / (amp / n_eff);
  const double rel = std::abs(knight_factor() / oracle - 1.0);
  const double rel_n = std::abs(effective_N(sigma) / n_eff - 1.0);
  report("3", rel < 1e-8 && rel_n < 1e-8,
         fmt("knight factor %.12f vs quadrature %.12f (rel %.1e), N_eff rel %.1e; required < 1e-8",
             knight_factor(), oracle, rel, rel_n));
}

void criterion4() {
  const double v = strain_noncollinear(0.342, 0.089, 58.41);
  report("4", within(v, 0.52, 0.005), fmt("strain coupling %.4f kHz, required 0.52 (to rounding, +- 0.005)", v));
}

void criterion5() {
  const double a = quadrupolar_T2(7.0, 1.0), b = quadrupolar_T2(7.0, 0.63);
  report("5a", within(a, 76.0, 1.0), fmt("T2*(7 kHz) = %.2f us, required 76 +- 1", a));
  report("5b", within(b, 120.0, 2.0), fmt("T2*(7 kHz, ratio 0.63) = %.2f us, required 120 +- 2", b));
}

void criterion6() {
  const double f = estimate_init_fidelity(4146.0, 38.7);
  report("6", within(f, 0.9907, 1e-4), fmt("init fidelity %.5f, required 0.9907 +- 0.0001", f));
}

void criterion7() {
  RMat n = RMat::Constant(6, 6, 500.0);
  const double c[3] = {0.348, 0.344, 0.423};
  for (int k = 0; k < 3; ++k) {
    const int p = 2 * k, m = p + 1;
    n(p, p) = n(m, m) = 500.0 * (1.0 + c[k]);
    n(p, m) = n(m, p) = 500.0 * (1.0 - c[k]);
  }
  const auto r = contrast_and_fidelity(n);
  report("7", within(r.fidelity, 0.686, 0.001), fmt("F = %.5f, required 0.686 +- 0.001", r.fidelity));
}

TomographyResult run_scenario(const std::string& name, double* secs) {
  const auto t0 = std::chrono::steady_clock::now();
  const Scenario sc = tomography_scenario(name);
  RunOptions run = sc.run;
  run.seed = 1;
  const auto r = tomography(sc.model, sc.tomo, run);
  *secs = seconds_since(t0);
  return r;
}

void criterion8() {
  double secs = 0.0;
  const auto r = run_scenario("ideal_single", &secs);
  const double inf = 100.0 * r.infidelity();
  report("8", within(inf, 0.35, 0.2) && secs < 300.0,
         fmt("ideal single-species infidelity %.3f%%, required 0.35 +- 0.2 pp; %.1f s (limit 300 s)", inf, secs));
}

void criterion9() {
  double secs = 0.0;
  {
    const auto r = run_scenario("realistic", &secs);
    report("9a", within(r.fidelity(), 0.730, 0.02),
           fmt("realistic F = %.4f +- %.4f (%d samples, Omega %.2f MHz, T_store %.1f ns), required 0.730 +- 0.02; %.0f s",
               r.fidelity(), r.contrasts.fidelity_err, r.samples_used, r.swap.omega_mhz, r.t_store_ns, secs));
  }
  {
    const auto r = run_scenario("relaxation_only", &secs);
    const double inf = 100.0 * r.infidelity();
    report("9b", within(inf, 8.5, 1.0), fmt("relaxation-only infidelity %.2f%%, required 8.5 +- 1 pp; %.0f s", inf, secs));
  }
  {
    const auto r = run_scenario("overlap_only", &secs);
    const double inf = 100.0 * r.infidelity();
    report("9c", within(inf, 23.0, 2.0),
           fmt("overlap-only infidelity %.2f%% +- %.2f, required 23 +- 2 pp; %.0f s", inf,
               100.0 * r.contrasts.fidelity_err, secs));
  }
  {
    const auto r = run_scenario("ideal_two_species", &secs);
    report("9d", within(100.0 * r.fidelity(), 98.3, 0.3),
           fmt("two-species F = %.2f%%, required 98.3 +- 0.3 pp; %.0f s", 100.0 * r.fidelity(), secs));
    report("9e", within(r.swap.t_ns, 83.6, 2.0),
           fmt("two-species SWAP duration %.2f ns, required 83.6 +- 2 ns", r.swap.t_ns));
  }
}

void criterion10() {
  const auto t0 = std::chrono::steady_clock::now();
  double worst = 0.0;
  for (int n = 1; n <= 12; ++n) {
    std::vector<double> by_up(n + 1, 0.0);
    for (unsigned mask = 0; mask < (1u << n); ++mask) by_up[__builtin_popcount(mask)] += 1.0;
    const auto d = thermal_j_pmf(n);
    double tv = 0.0;
    size_t idx = 0;
    for (int up = (n + 1) / 2; up <= n; ++up, ++idx) {
      const double m = up - n / 2.0;
      const double next = up + 1 <= n ? by_up[up + 1] : 0.0;
      const double exact = (2.0 * m + 1.0) * (by_up[up] - next) / std::ldexp(1.0, n);
      tv += 0.5 * std::abs(exact - d.prob.at(idx));
    }
    worst = std::max(worst, tv);
  }
  report("10a", worst < 1e-10, fmt("max TV distance %.2e over N_half <= 12, required < 1e-10", worst));

  // Var(m) for N spin-3/2 nuclei through the 5N spin-1/2 mapping.
  const double n_nuclei = 2000.0, spin = 1.5;
  const auto dist = thermal_j_pmf(equivalent_half_count(n_nuclei, spin));
  auto rng = make_rng(2024, 0);
  const int draws = 200000;
  double s1 = 0.0, s2 = 0.0, s4 = 0.0;
  std::vector<double> ms(draws);
  for (int i = 0; i < draws; ++i) {
    ms[i] = sample_thermal(dist, rng).m;
    s1 += ms[i];
  }
  const double mean = s1 / draws;
  for (double m : ms) {
    const double d = m - mean;
    s2 += d * d;
    s4 += d * d * d * d;
  }
  const double var = s2 / (draws - 1);
  const double m4 = s4 / draws;
  const double se = std::sqrt(std::max(m4 - var * var, 0.0) / draws);
  const double expect = n_nuclei * spin * (spin + 1.0) / 3.0;
  const double secs = seconds_since(t0);
  report("10b", std::abs(var - expect) < 3.0 * se && secs < 60.0,
         fmt("Var(m) = %.1f vs N I(I+1)/3 = %.1f, |diff| = %.2f SE (limit 3); %.1f s", var, expect,
             std::abs(var - expect) / se, secs));
}

void criterion11() {
  const auto t0 = std::chrono::steady_clock::now();
  ModelConfig model = polarized_model();
  SampleFactory fac(model);
  const auto s = fac.draw(1, 0);

  // (a) Trace drift of a dissipative 300 ns drive segment.
  {
    Propagator p = fac.propagator(s);
    Mat rho = fac.initial_state(s);
    double worst = 0.0;
    for (double omega : {-58.41, 45.99, 32.49}) {
      Mat r = rho;
      p.apply(r, PulseSegment::drive(0.0, 0.0, omega, 300.0));
      worst = std::max(worst, std::abs(r.trace() - 1.0));
    }
    report("11a", worst < 1e-8, fmt("trace drift %.2e per 300 ns dissipative segment, required < 1e-8", worst));
  }
  // (b) kappa = 0 propagation against the matrix exponential.
  {
    ModelConfig quiet = model;
    quiet.noise.enabled = false;
    SampleFactory qf(quiet);
    const auto qs = qf.draw(1, 0);
    Propagator exact = qf.propagator(qs);
    IntegratorOptions rk = quiet.integrator;
    rk.exact_unitary = false;
    rk.steps_per_period = 400;
    Propagator stepped = qf.propagator(qs);
    stepped.integrator() = rk;
    const DriveParams d{0.0, 0.0, 56.0};
    const double t_us = 0.3;
    const Mat u = (cplx(0.0, -t_us) * exact.hamiltonian(d)).exp();
    const Mat rho0 = qf.initial_state(qs);
    const Mat ref = u * rho0 * u.adjoint();
    Mat a = rho0, b = rho0;
    exact.apply(a, PulseSegment::drive(d.detuning_mhz, d.rabi_x_mhz, d.rabi_y_mhz, t_us * 1e3));
    stepped.apply(b, PulseSegment::drive(d.detuning_mhz, d.rabi_x_mhz, d.rabi_y_mhz, t_us * 1e3));
    const double ea = (a - ref).cwiseAbs().maxCoeff(), eb = (b - ref).cwiseAbs().maxCoeff();
    report("11b", ea < 1e-6 && eb < 1e-6,
           fmt("max |rho - U rho U^dag|: eigen path %.1e, RK4 %.1e; required < 1e-6", ea, eb));
  }
  // (c) Spin-locked relaxation time from a fitted decay.
  {
    const double q = 46.0, f = 56.0;
    const SpaceLayout layout({"electron"}, {2});
    Propagator p(layout, Mat::Zero(2, 2), NoiseModel{q, true});
    Mat rho = Mat::Zero(2, 2);
    rho(0, 0) = 1.0;
    p.apply(rho, rotation_segment(Axis::PlusX, M_PI / 2, PulseOptions{90.0, true}));
    std::vector<double> probes;
    for (double t = 0.0; t <= 6000.0 + 1e-9; t += 100.0) probes.push_back(t);
    std::vector<double> pd(probes.size());
    p.drive_with_probes(rho, DriveParams{0.0, 0.0, -f}, probes, [&](size_t i, const Mat& r) {
      Mat m = r;
      Propagator back(layout, Mat::Zero(2, 2), NoiseModel{q, false});
      back.apply(m, rotation_segment(Axis::PlusX, M_PI / 2, PulseOptions{90.0, true}));
      pd[i] = measure_down(m);
    });
    FitData data;
    data.t = Eigen::Map<RVec>(probes.data(), probes.size()) * 1e-3;
    data.y = RVec::Zero(pd.size());
    for (size_t i = 0; i < pd.size(); ++i) data.y(i) = 1.0 - pd[i];  // decays from 0 towards 0.5
    RVec guess(2);
    guess << 0.0, 1.0;
    const auto fit = fit_least_squares(make_model("t1_saturation"), data, guess);
    const double t1 = fit.params(1), expect = 2.0 * q / f;
    const double secs = seconds_since(t0);
    report("11c", std::abs(t1 / expect - 1.0) <= 0.05 && secs < 120.0,
           fmt("fitted spin-locked T1 = %.4f us vs 2Q/f = %.4f us (%.2f%%), required within 5%%; %.1f s", t1, expect,
               100.0 * std::abs(t1 / expect - 1.0), secs));
  }
}

void criterion12() {
  const auto t0 = std::chrono::steady_clock::now();
  const double larmor[3] = {32.49, 45.99, 58.41};  // 75As, 69Ga, 71Ga
  const char* names[3] = {"75As", "69Ga", "71Ga"};
  NovelConfig cfg;
  for (int sign : {-1, 1})
    for (double f : larmor)
      for (double off : {-4.0, 0.0, 4.0}) cfg.omega_y_mhz.push_back(sign * (f + off));
  for (double t = 0.0; t <= 150.0 + 1e-9; t += 10.0) cfg.t_ns.push_back(t);
  RunOptions run;
  run.samples = 100;
  run.seed = 1;
  const auto r = novel_spectrum(ModelConfig::defaults(), cfg, run);
  const size_t nt = cfg.t_ns.size();
  auto avg_response = [&](size_t w) {
    double s = 0.0;
    for (size_t k = 0; k < nt; ++k) s += 1.0 - r.mean[w * nt + k];
    return s / static_cast<double>(nt);
  };
  int found = 0;
  std::string detail;
  for (int si = 0; si < 2; ++si)
    for (int f = 0; f < 3; ++f) {
      const size_t base = static_cast<size_t>(si * 9 + f * 3);
      const double lo = avg_response(base), mid = avg_response(base + 1), hi = avg_response(base + 2);
      const bool peak = mid > lo && mid > hi;
      found += peak;
      detail += fmt(" %s%s:%s(%.4f|%.4f|%.4f)", names[f], si ? "+" : "-", peak ? "peak" : "none", lo, mid, hi);
    }
  const double secs_a = seconds_since(t0);
  report("12a", found == 6, fmt("%d of 6 sidebands are local maxima of the T-averaged response;%s; %.0f s", found,
                                detail.c_str(), secs_a));

  const auto t1 = std::chrono::steady_clock::now();
  NovelConfig pc{{-58.41, 58.41}, {0.0, 130.0}};
  const auto p = novel_spectrum(polarized_model(), pc, run);
  const double minus = 1.0 - p.mean[1], plus = 1.0 - p.mean[3];
  const double ratio = minus / plus;
  // Informational: the same ratio after removing the T = 0 background.
  const double corrected = (p.mean[0] - p.mean[1]) / (p.mean[2] - p.mean[3]);
  report("12b", ratio < 0.2,
         fmt("polarized response 71Ga-/71Ga+ at 130 ns = %.4f / %.4f = %.3f, required < 0.2 "
             "(background-subtracted %.3f); %.0f s",
             minus, plus, ratio, corrected, seconds_since(t1)));
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> only;
  bool strict = false;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--strict")
      strict = true;
    else if (a == "--only" && i + 1 < argc)
      only.insert(std::stoi(argv[++i]));
    else {
      std::cerr << "usage: acceptance [--strict] [--only N]...\n";
      return 2;
    }
  }
  const std::vector<std::function<void()>> criteria = {criterion1, criterion2,  criterion3,  criterion4,
                                                       criterion5, criterion6,  criterion7,  criterion8,
                                                       criterion9, criterion10, criterion11, criterion12};
  for (size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i + 1);
    if (!only.empty() && !only.count(id)) continue;
    try {
      criteria[i]();
    } catch (const std::exception& e) {
      std::printf("[FAIL] %-4d could not be evaluated: %s\n", id, e.what());
      ++g_error;
    }
  }
  std::printf("acceptance summary: %d passed, %d failed, %d errors\n", g_pass, g_fail, g_error);
  if (g_error > 0) return 1;
  return strict && g_fail > 0 ? 1 : 0;
}
