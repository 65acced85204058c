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

#include "saoovqe/sa_oo.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include <unsupported/Eigen/MatrixFunctions>

#include "saoovqe/error.hpp"

namespace saoovqe {
namespace {

using RowMat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

void check_window_dims(const IntegralSet& mo, const SpinFreeRDMs& r) {
  if (mo.n_orb != r.n_orb() || static_cast<int>(r.d2.dim()) != mo.n_orb)
    throw std::invalid_argument("sa_oo: integral and RDM dimensions differ");
}

}  // namespace

ActiveSpaceSpec OrbitalWindow::local_spec(int n_active_elec) const {
  ActiveSpaceSpec s;
  for (int i = 0; i < n_frozen; ++i) s.frozen.push_back(i);
  for (int t = 0; t < n_active; ++t) s.active.push_back(n_frozen + t);
  s.n_active_elec = n_active_elec;
  return s;
}

OrbitalWindow make_window(const ActiveSpaceSpec& spec, int n_mo, int n_virtual) {
  OrbitalWindow w;
  std::vector<bool> used(static_cast<std::size_t>(n_mo), false);
  for (const auto* list : {&spec.frozen, &spec.active})
    for (int p : *list) {
      if (p < 0 || p >= n_mo) throw std::invalid_argument("make_window: orbital index out of range");
      if (used[p]) throw std::invalid_argument("make_window: orbital listed twice");
      used[p] = true;
      w.mo_indices.push_back(p);
    }
  w.n_frozen = static_cast<int>(spec.frozen.size());
  w.n_active = static_cast<int>(spec.active.size());
  for (int p = 0; p < n_mo; ++p) {
    if (used[p]) continue;
    if (n_virtual >= 0 && w.n_virtual >= n_virtual) break;
    w.mo_indices.push_back(p);
    ++w.n_virtual;
  }
  return w;
}

std::vector<std::pair<int, int>> rotation_pairs(const OrbitalWindow& w, bool include_aa) {
  enum { kFrozen, kActive, kVirtual };
  auto cls = [&w](int p) { return p < w.n_frozen ? kFrozen : p < w.n_frozen + w.n_active ? kActive : kVirtual; };
  std::vector<std::pair<int, int>> pairs;
  for (int p = 0; p < w.size(); ++p)
    for (int q = 0; q < p; ++q) {
      const int cp = cls(p), cq = cls(q);
      if (cp == cq && (cp != kActive || !include_aa)) continue;
      pairs.emplace_back(p, q);
    }
  return pairs;
}

Eigen::MatrixXd skew_matrix(const Eigen::VectorXd& kappa,
                            const std::vector<std::pair<int, int>>& pairs, int n) {
  if (kappa.size() != static_cast<Eigen::Index>(pairs.size()))
    throw std::invalid_argument("skew_matrix: kappa length differs from the pair count");
  Eigen::MatrixXd k = Eigen::MatrixXd::Zero(n, n);
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto [p, q] = pairs[i];
    k(p, q) = kappa(static_cast<Eigen::Index>(i));
    k(q, p) = -kappa(static_cast<Eigen::Index>(i));
  }
  return k;
}

Eigen::MatrixXd rotation_matrix(const Eigen::VectorXd& kappa,
                                const std::vector<std::pair<int, int>>& pairs, int n) {
  const Eigen::MatrixXd mk = -skew_matrix(kappa, pairs, n);
  return mk.exp();
}

MOCoefficients rotate_orbitals(const MOCoefficients& c, const OrbitalRotation& rot) {
  const int n = rot.window.size();
  for (int p : rot.window.mo_indices)
    if (p < 0 || p >= c.n_mo()) throw std::invalid_argument("rotate_orbitals: window index out of range");
  const Eigen::MatrixXd u = rotation_matrix(rot.kappa, rot.pairs, n);
  const Eigen::MatrixXd cw = c.columns(rot.window.mo_indices).c * u;
  MOCoefficients out = c;
  for (int i = 0; i < n; ++i) out.c.col(rot.window.mo_indices[i]) = cw.col(i);
  return out;
}

SpinFreeRDMs sa_rdms(const SpinFreeRDMs& a, const SpinFreeRDMs& b, double w_a, double w_b) {
  if (a.n_orb() != b.n_orb() || a.d2.dim() != b.d2.dim())
    throw std::invalid_argument("sa_rdms: dimension mismatch");
  return {w_a * a.d1 + w_b * b.d1, w_a * a.d2 + w_b * b.d2};
}

SpinFreeRDMs extend_rdms(const SpinFreeRDMs& act, int nf, int nv) {
  const int na = act.n_orb();
  const int n = nf + na + nv;
  SpinFreeRDMs r{Eigen::MatrixXd::Zero(n, n), Tensor4(static_cast<std::size_t>(n))};
  for (int i = 0; i < nf; ++i) r.d1(i, i) = 2.0;
  r.d1.block(nf, nf, na, na) = act.d1;
  for (int i = 0; i < nf; ++i)
    for (int j = 0; j < nf; ++j) {
      r.d2(i, i, j, j) += 4.0;
      r.d2(i, j, j, i) -= 2.0;
    }
  for (int i = 0; i < nf; ++i)
    for (int a = 0; a < na; ++a)
      for (int b = 0; b < na; ++b) {
        const int t = nf + a, u = nf + b;
        const double d = act.d1(a, b);
        r.d2(i, i, t, u) = 2.0 * d;
        r.d2(t, u, i, i) = 2.0 * d;
        r.d2(t, i, i, u) = -d;
        r.d2(i, u, t, i) = -d;
      }
  for (int a = 0; a < na; ++a)
    for (int b = 0; b < na; ++b)
      for (int c = 0; c < na; ++c)
        for (int d = 0; d < na; ++d) r.d2(nf + a, nf + b, nf + c, nf + d) = act.d2(a, b, c, d);
  return r;
}

double window_energy(const IntegralSet& mo, const SpinFreeRDMs& r) {
  check_window_dims(mo, r);
  double e = mo.e_scalar + (mo.h.array() * r.d1.array()).sum();
  double two = 0.0;
  for (std::size_t i = 0; i < r.d2.size(); ++i) two += mo.g.data()[i] * r.d2.data()[i];
  return e + 0.5 * two;
}

Eigen::MatrixXd generalized_fock(const IntegralSet& mo, const SpinFreeRDMs& r) {
  check_window_dims(mo, r);
  const Eigen::Index n = mo.n_orb;
  Eigen::Map<const RowMat> d(r.d2.data(), n, n * n * n);
  Eigen::Map<const RowMat> g(mo.g.data(), n, n * n * n);
  return r.d1 * mo.h.transpose() + d * g.transpose();
}

Eigen::VectorXd orbital_gradient(const IntegralSet& mo, const SpinFreeRDMs& r,
                                 const std::vector<std::pair<int, int>>& pairs) {
  const Eigen::MatrixXd f = generalized_fock(mo, r);
  Eigen::VectorXd grad(static_cast<Eigen::Index>(pairs.size()));
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const auto [p, q] = pairs[k];
    grad(static_cast<Eigen::Index>(k)) = 2.0 * (f(p, q) - f(q, p));
  }
  return grad;
}

Eigen::MatrixXd orbital_hessian(const IntegralSet& mo, const SpinFreeRDMs& r,
                                const std::vector<std::pair<int, int>>& pairs) {
  const Eigen::MatrixXd f = generalized_fock(mo, r);
  const int n = mo.n_orb;
  const Eigen::Index n2 = Eigen::Index{n} * n;

  // Y(pr, qs) = sum_mn (d_pmrn + d_pmnr) g_qmsn + d_prmn g_qsmn
  RowMat x(n2, n2), gx(n2, n2);
  for (int p = 0; p < n; ++p)
    for (int rr = 0; rr < n; ++rr)
      for (int m = 0; m < n; ++m)
        for (int nn = 0; nn < n; ++nn) {
          x(p * n + rr, m * n + nn) = r.d2(p, m, rr, nn) + r.d2(p, m, nn, rr);
          gx(p * n + rr, m * n + nn) = mo.g(p, m, rr, nn);
        }
  Eigen::Map<const RowMat> dm(r.d2.data(), n2, n2);
  Eigen::Map<const RowMat> gm(mo.g.data(), n2, n2);
  const RowMat y = x * gx.transpose() + dm * gm.transpose();

  auto term = [&](int p, int q, int rr, int s) {
    double v = 2.0 * r.d1(p, rr) * mo.h(q, s) + 2.0 * y(p * n + rr, q * n + s);
    if (q == s) v -= f(p, rr) + f(rr, p);
    return v;
  };
  auto e2 = [&](int p, int q, int rr, int s) {
    return term(p, q, rr, s) - term(q, p, rr, s) - term(p, q, s, rr) + term(q, p, s, rr);
  };
  const auto np = static_cast<Eigen::Index>(pairs.size());
  Eigen::MatrixXd h(np, np);
  for (Eigen::Index k = 0; k < np; ++k)
    for (Eigen::Index l = 0; l <= k; ++l) {
      const auto [p, q] = pairs[k];
      const auto [rr, s] = pairs[l];
      const double v = 0.5 * (e2(p, q, rr, s) + e2(rr, s, p, q));
      h(k, l) = v;
      h(l, k) = v;
    }
  return h;
}

std::pair<Eigen::VectorXd, OOStepReport> augment_and_step(const Eigen::VectorXd& g,
                                                          const Eigen::MatrixXd& h,
                                                          const OOOptions& opt) {
  if (h.rows() != g.size() || h.cols() != g.size())
    throw std::invalid_argument("augment_and_step: dimension mismatch");
  OOStepReport rep;
  if (g.size() == 0) return {Eigen::VectorXd(), rep};
  rep.gradient_norm = g.lpNorm<Eigen::Infinity>();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
  if (es.info() != Eigen::Success) throw NumericalError("augment_and_step: eigensolver failed");
  const Eigen::VectorXd lam = es.eigenvalues();
  rep.hessian_min_eig = lam(0);
  rep.nu = std::max(0.0, opt.tau_eig - lam(0));
  const Eigen::VectorXd mu = lam.array() + rep.nu;
  const double mu_min = mu.minCoeff();
  const double mu_max = mu.cwiseAbs().maxCoeff();
  if (!(mu_min > 0.0) || mu_max / mu_min > 1e14)
    throw NumericalError("augment_and_step: shifted Hessian is singular");
  Eigen::VectorXd step = -(es.eigenvectors() * (es.eigenvectors().transpose() * g).cwiseQuotient(mu));
  const double smax = step.lpNorm<Eigen::Infinity>();
  if (smax > opt.kappa_max) step *= opt.kappa_max / smax;
  rep.step_norm = step.lpNorm<Eigen::Infinity>();
  return {step, rep};
}

OOCycleResult sa_oo_cycle(const IntegralSet& ao, const MOCoefficients& c,
                          const ActiveSpaceSpec& spec, const SpinFreeRDMs& active_rdms,
                          const OOOptions& opt,
                          const std::function<void(int, const OOStepReport&)>& on_step) {
  if (active_rdms.n_orb() != static_cast<int>(spec.active.size()))
    throw std::invalid_argument("sa_oo_cycle: RDMs do not match the active space");
  const OrbitalWindow window = make_window(spec, c.n_mo(), opt.n_virtual);
  const auto pairs = rotation_pairs(window, opt.include_active_active);
  const SpinFreeRDMs rdms = extend_rdms(active_rdms, window.n_frozen, window.n_virtual);
  const int n = window.size();

  OOCycleResult out;
  MOCoefficients cw = c.columns(window.mo_indices);
  out.mo_window = transform_to_mo(ao, cw);
  out.e_sa = window_energy(out.mo_window, rdms);

  for (int it = 0;; ++it) {
    const Eigen::VectorXd grad = orbital_gradient(out.mo_window, rdms, pairs);
    out.gradient_norm = grad.size() ? grad.lpNorm<Eigen::Infinity>() : 0.0;
    if (out.gradient_norm < opt.g_tol) {
      out.converged = true;
      break;
    }
    if (it >= opt.max_iterations) break;

    const Eigen::MatrixXd hess = orbital_hessian(out.mo_window, rdms, pairs);
    auto [step, rep] = augment_and_step(grad, hess, opt);
    rep.e_sa_before = out.e_sa;
    bool accepted = false;
    for (int k = 0; k <= opt.max_halvings; ++k) {
      MOCoefficients trial{cw.c * rotation_matrix(step, pairs, n)};
      IntegralSet mo_trial = transform_to_mo(ao, trial);
      const double e_trial = window_energy(mo_trial, rdms);
      if (std::isfinite(e_trial) && e_trial <= out.e_sa + 1e-10) {
        rep.e_sa_after = e_trial;
        rep.halvings = k;
        rep.step_norm = step.lpNorm<Eigen::Infinity>();
        cw = std::move(trial);
        out.mo_window = std::move(mo_trial);
        out.e_sa = e_trial;
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) {
      std::ostringstream msg;
      msg << "sa_oo_cycle: no descent after " << opt.max_halvings << " step halvings (iteration "
          << it << ", e_sa " << out.e_sa << ", |G| " << out.gradient_norm << ", nu " << rep.nu << ")";
      throw NumericalError(msg.str());
    }
    out.steps.push_back(rep);
    if (on_step) on_step(it, rep);
  }

  out.c = c;
  for (int i = 0; i < n; ++i) out.c.c.col(window.mo_indices[i]) = cw.c.col(i);
  return out;
}

}  // namespace saoovqe
