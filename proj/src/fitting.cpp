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


#include "magnon/fitting.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "magnon/species.hpp"

namespace magnon {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

RVec bin_widths(const RVec& t) {
  const Eigen::Index n = t.size();
  RVec w(n);
  for (Eigen::Index i = 0; i + 1 < n; ++i) w(i) = t(i + 1) - t(i);
  w(n - 1) = n > 1 ? w(n - 2) : 1.0;
  return w;
}

// Integral of the onset-exponential over [a, b] for an onset at t0.
double pumping_integral(double i0, double i_end, double gamma, double t0, double a, double b) {
  a = std::max(a, t0);
  if (b <= a) return 0.0;
  const double amp = i0 - i_end;
  const double ea = std::exp(-(a - t0) * gamma), eb = std::exp(-(b - t0) * gamma);
  return amp * (ea - eb) / gamma + i_end * (b - a);
}

RVec stretched(const RVec& t, double amp, double tau, double alpha) {
  return amp * (-(t.array() / tau).abs().pow(alpha)).exp();
}

}  // namespace

RVec spin_pumping_curve(double i0, double i_end, double gamma, double t0, const RVec& t) {
  if (!(gamma > 0.0)) throw std::domain_error("spin pumping rate must be positive");
  const RVec w = bin_widths(t);
  RVec out(t.size());
  for (Eigen::Index i = 0; i < t.size(); ++i)
    out(i) = pumping_integral(i0, i_end, gamma, t0, t(i), t(i) + w(i)) / w(i);
  return out;
}

double spin_pumping_onset(double i0, double i_end, double gamma, const RVec& t, const RVec& y) {
  const RVec w = bin_widths(t);
  const double target = (y.array() * w.array()).sum();
  const double ta = t(0), tb = t(t.size() - 1) + w(t.size() - 1);
  auto area = [&](double t0) { return pumping_integral(i0, i_end, gamma, t0, ta, tb); };
  // The model area decreases monotonically with the onset for i0, i_end >= 0.
  double lo = ta, hi = tb;
  if (area(lo) <= target) return lo;
  if (area(hi) >= target) return hi;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (area(mid) > target)
      lo = mid;
    else
      hi = mid;
    if (hi - lo < 1e-15 * std::max(1.0, std::abs(tb))) break;
  }
  return 0.5 * (lo + hi);
}

std::vector<std::string> model_ids() {
  return {"spin_pumping", "ramsey_stretched", "magnon_ramsey", "undamped_sine",
          "t1_saturation", "two_exponential", "single_stretched"};
}

FitModel make_model(const std::string& id) {
  FitModel m;
  m.id = id;
  if (id == "spin_pumping") {
    m.names = {"I0", "I_end", "gamma"};
    m.lower = {0.0, 0.0, 1e-12};
    m.upper = {kInf, kInf, kInf};
    m.eval = [](const RVec& p, const RVec& t, const RVec& y) {
      const double t0 = spin_pumping_onset(p(0), p(1), p(2), t, y);
      return spin_pumping_curve(p(0), p(1), p(2), t0, t);
    };
    // The equal-area onset moves by thousands of time units per unit change
    // of the rate, so first fit with a free onset (smooth surface), seeded at
    // the brightest bin, and hand the result to the constrained fit.
    m.refine_initial = [](const RVec& p, const RVec& t, const RVec& y, const RVec& sigma) {
      FitModel free;
      free.id = "spin_pumping_free_onset";
      free.names = {"I0", "I_end", "gamma", "t0"};
      free.lower = {0.0, 0.0, 1e-12, -kInf};
      free.upper = {kInf, kInf, kInf, kInf};
      free.fixed.assign(4, false);
      free.eval = [](const RVec& q, const RVec& tt, const RVec&) {
        return spin_pumping_curve(q(0), q(1), q(2), q(3), tt);
      };
      Eigen::Index peak = 0;
      y.maxCoeff(&peak);
      RVec q(4);
      q << p(0), p(1), p(2), t(peak);
      const FitResult r = fit_least_squares(free, FitData{t, y, sigma}, q);
      return RVec(r.params.head(3));
    };
  } else if (id == "ramsey_stretched") {
    m.names = {"v0", "T2", "alpha"};
    m.lower = {-kInf, 1e-12, 0.1};
    m.upper = {kInf, kInf, 10.0};
    m.eval = [](const RVec& p, const RVec& t, const RVec&) { return stretched(t, p(0), p(1), p(2)); };
  } else if (id == "magnon_ramsey") {
    m.names = {"C0", "nu", "phi", "T2", "alpha", "B"};
    m.lower = {-kInf, 0.0, -kInf, 1e-12, 0.1, -kInf};
    m.upper = {kInf, kInf, kInf, kInf, 10.0, kInf};
    m.eval = [](const RVec& p, const RVec& t, const RVec&) {
      const RVec env = stretched(t, 1.0, p(3), p(4));
      return RVec(p(0) * (kTwoPi * p(1) * t.array() + p(2)).sin() * env.array() + p(5));
    };
  } else if (id == "undamped_sine") {
    m.names = {"C0", "nu", "phi", "B"};
    m.lower = {-kInf, 0.0, -kInf, -kInf};
    m.upper = {kInf, kInf, kInf, kInf};
    m.eval = [](const RVec& p, const RVec& t, const RVec&) {
      return RVec(p(0) * (kTwoPi * p(1) * t.array() + p(2)).sin() + p(3));
    };
  } else if (id == "t1_saturation") {
    m.names = {"p0", "T1"};
    m.lower = {-kInf, 1e-12};
    m.upper = {kInf, kInf};
    m.eval = [](const RVec& p, const RVec& t, const RVec&) {
      return RVec((0.5 - p(0)) * (1.0 - (-t.array() / p(1)).exp()) + p(0));
    };
  } else if (id == "two_exponential") {
    m.names = {"A", "Ta", "alpha", "B", "Tb", "beta"};
    m.lower = {-kInf, 1e-12, 0.1, -kInf, 1e-12, 0.1};
    m.upper = {kInf, kInf, 10.0, kInf, kInf, 10.0};
    m.eval = [](const RVec& p, const RVec& t, const RVec&) {
      return RVec(stretched(t, p(0), p(1), p(2)) + stretched(t, p(3), p(4), p(5)));
    };
  } else if (id == "single_stretched") {
    m.names = {"A", "T", "alpha"};
    m.lower = {-kInf, 1e-12, 0.1};
    m.upper = {kInf, kInf, 10.0};
    m.eval = [](const RVec& p, const RVec& t, const RVec&) { return stretched(t, p(0), p(1), p(2)); };
  } else {
    throw std::invalid_argument("unknown fit model '" + id + "'");
  }
  m.fixed.assign(m.names.size(), false);
  return m;
}

FitResult fit_least_squares(const FitModel& model, const FitData& data, const RVec& initial, const FitOptions& opt) {
  const Eigen::Index np = static_cast<Eigen::Index>(model.size());
  const Eigen::Index n = data.t.size();
  if (initial.size() != np) throw std::invalid_argument("initial guess has the wrong length");
  if (data.y.size() != n) throw std::invalid_argument("t and y lengths differ");
  if (data.sigma.size() != 0 && data.sigma.size() != n) throw std::invalid_argument("sigma length mismatch");
  if (!initial.allFinite()) throw std::invalid_argument("initial guess must be finite");

  std::vector<Eigen::Index> free_idx;
  for (Eigen::Index k = 0; k < np; ++k)
    if (model.fixed.empty() || !model.fixed[k]) free_idx.push_back(k);
  const Eigen::Index nf = static_cast<Eigen::Index>(free_idx.size());
  if (n < nf) throw std::invalid_argument("fewer data points than free parameters");

  const bool weighted = data.sigma.size() != 0;
  RVec w = weighted ? RVec(data.sigma.array().inverse()) : RVec::Ones(n);

  auto project = [&](RVec p) {
    for (Eigen::Index k = 0; k < np; ++k) p(k) = std::clamp(p(k), model.lower[k], model.upper[k]);
    return p;
  };
  auto residual = [&](const RVec& p) -> RVec {
    RVec f = model.eval(p, data.t, data.y);
    return ((data.y - f).array() * w.array()).matrix();
  };
  auto jacobian = [&](const RVec& p) {
    RMat j(n, nf);
    for (Eigen::Index c = 0; c < nf; ++c) {
      const Eigen::Index k = free_idx[c];
      const double h = 1e-6 * std::max(std::abs(p(k)), 1e-6);
      RVec pp = p, pm = p;
      // One-sided differences next to a bound keep every probe feasible.
      const double up = p(k) + h <= model.upper[k] ? h : 0.0;
      const double down = p(k) - h >= model.lower[k] ? h : 0.0;
      pp(k) += up;
      pm(k) -= down;
      // Residuals carry a minus sign relative to the model.
      j.col(c) = -(residual(pp) - residual(pm)) / (up + down);
    }
    return j;
  };

  FitResult res;
  RVec p = project(initial);
  if (model.refine_initial) {
    RVec refined = project(model.refine_initial(p, data.t, data.y, data.sigma));
    for (Eigen::Index k = 0; k < np; ++k)
      if (!model.fixed.empty() && model.fixed[k]) refined(k) = p(k);
    if (refined.allFinite()) p = refined;
  }
  RVec r = residual(p);
  double cost = r.squaredNorm();
  double lambda = 1e-3;
  for (int it = 0; it < opt.max_iter; ++it) {
    res.iterations = it + 1;
    if (cost == 0.0) {
      res.converged = true;
      break;
    }
    const RMat j = jacobian(p);
    const RMat jtj = j.transpose() * j;
    const RVec g = j.transpose() * r;
    bool accepted = false;
    double rel_step = 0.0;
    for (int tries = 0; tries < 40; ++tries) {
      RMat a = jtj;
      for (Eigen::Index c = 0; c < nf; ++c) a(c, c) += lambda * std::max(jtj(c, c), 1e-30);
      const RVec delta = a.ldlt().solve(g);
      if (!delta.allFinite()) {
        lambda *= 10.0;
        continue;
      }
      RVec trial = p;
      for (Eigen::Index c = 0; c < nf; ++c) trial(free_idx[c]) += delta(c);
      trial = project(trial);
      double ct = INFINITY;
      RVec rt;
      try {
        rt = residual(trial);
        if (rt.allFinite()) ct = rt.squaredNorm();
      } catch (const std::domain_error&) {
        // Outside the model's domain: treat as a rejected step.
      }
      if (ct <= cost) {
        rel_step = (trial - p).norm() / std::max(p.norm(), 1e-30);
        p = trial;
        r = rt;
        cost = ct;
        lambda = std::max(lambda / 10.0, 1e-15);
        accepted = true;
        break;
      }
      lambda *= 10.0;
    }
    if (!accepted || rel_step < opt.step_tol) {
      res.converged = true;
      break;
    }
  }
  if (!res.converged) res.message = "maximum iterations reached";

  res.params = p;
  res.residual_norm = std::sqrt(cost);
  const double dof = static_cast<double>(std::max<Eigen::Index>(n - nf, 1));
  res.reduced_chi2 = cost / dof;
  const RMat j = jacobian(p);
  const RMat jtj = j.transpose() * j;
  Eigen::FullPivLU<RMat> lu(jtj);
  res.covariance = RMat::Zero(np, np);
  res.stderr_ = RVec::Zero(np);
  if (!lu.isInvertible()) {
    res.singular = true;
    res.message = res.message.empty() ? "singular Jacobian" : res.message + "; singular Jacobian";
    return res;
  }
  RMat cov = lu.inverse();
  if (!weighted) cov *= res.reduced_chi2;
  for (Eigen::Index a = 0; a < nf; ++a)
    for (Eigen::Index b = 0; b < nf; ++b) res.covariance(free_idx[a], free_idx[b]) = cov(a, b);
  for (Eigen::Index k = 0; k < np; ++k) res.stderr_(k) = std::sqrt(std::max(res.covariance(k, k), 0.0));
  return res;
}

}  // namespace magnon
