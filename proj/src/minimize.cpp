// Copyright 2026 The saoovqe Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "saoovqe/minimize.hpp"

#include <cmath>

#include "saoovqe/error.hpp"

namespace saoovqe {
namespace {

struct Counted {
  const Objective& f;
  int count = 0;
  double operator()(const Eigen::VectorXd& x) {
    ++count;
    const double v = f(x);
    if (!std::isfinite(v)) throw NumericalError("minimize: objective returned a non-finite value");
    return v;
  }
};

}  // namespace

Eigen::VectorXd finite_difference_gradient(const Objective& f, const Eigen::VectorXd& x, double h,
                                           int* evaluations) {
  Eigen::VectorXd g(x.size());
  Eigen::VectorXd xp = x;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    xp(i) = x(i) + h;
    const double fp = f(xp);
    xp(i) = x(i) - h;
    const double fm = f(xp);
    xp(i) = x(i);
    g(i) = (fp - fm) / (2.0 * h);
  }
  if (evaluations) *evaluations += static_cast<int>(2 * x.size());
  return g;
}

MinimizeResult minimize(const Objective& objective, const Eigen::VectorXd& x0,
                        const MinimizeOptions& opt, const IterationCallback& callback) {
  Counted f{objective};
  const Eigen::Index n = x0.size();
  MinimizeResult r;
  r.x = x0;
  r.f = f(r.x);
  if (n == 0) {
    r.converged = true;
    r.n_evaluations = f.count;
    return r;
  }
  auto gradient = [&](const Eigen::VectorXd& x) {
    Objective wrapped = [&f](const Eigen::VectorXd& y) { return f(y); };
    return finite_difference_gradient(wrapped, x, opt.fd_step);
  };

  Eigen::VectorXd g = gradient(r.x);
  r.grad_norm = g.lpNorm<Eigen::Infinity>();
  Eigen::MatrixXd hinv = Eigen::MatrixXd::Identity(n, n);

  for (int it = 1; it <= opt.max_iterations; ++it) {
    if (r.grad_norm < 1e-12) {
      r.converged = true;
      break;
    }
    Eigen::VectorXd d = -hinv * g;
    if (g.dot(d) >= 0.0) {
      hinv.setIdentity();
      d = -g;
    }
    const double dmax = d.lpNorm<Eigen::Infinity>();
    if (dmax > opt.max_step) d *= opt.max_step / dmax;

    const double slope = g.dot(d);
    double step = 1.0, f_new = 0.0;
    Eigen::VectorXd x_new;
    bool accepted = false;
    for (int k = 0; k < 40; ++k) {
      x_new = r.x + step * d;
      f_new = f(x_new);
      if (f_new <= r.f + 1e-4 * step * slope) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) {
      if (!hinv.isIdentity()) {
        hinv.setIdentity();
        continue;
      }
      r.converged = r.grad_norm < opt.g_tolerance;
      r.iterations = it;
      break;
    }

    const Eigen::VectorXd g_new = gradient(x_new);
    const Eigen::VectorXd s = x_new - r.x;
    const Eigen::VectorXd y = g_new - g;
    const double sy = s.dot(y);
    if (sy > 1e-12 * s.norm() * y.norm()) {
      if (it == 1) hinv *= sy / y.squaredNorm();
      const double rho = 1.0 / sy;
      const Eigen::MatrixXd i_n = Eigen::MatrixXd::Identity(n, n);
      hinv = (i_n - rho * s * y.transpose()) * hinv * (i_n - rho * y * s.transpose()) +
             rho * s * s.transpose();
    }
    const double df = r.f - f_new;
    r.x = x_new;
    r.f = f_new;
    g = g_new;
    r.grad_norm = g.lpNorm<Eigen::Infinity>();
    r.iterations = it;
    if (callback) callback(it, r.x, r.f, r.grad_norm);
    if (std::abs(df) < opt.f_tolerance && r.grad_norm < opt.g_tolerance) {
      r.converged = true;
      break;
    }
  }
  r.n_evaluations = f.count;
  return r;
}

}  // namespace saoovqe
