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

#include "saoovqe/ci_model.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

#include "saoovqe/error.hpp"

namespace saoovqe {
namespace {

double lin(double v, const Eigen::VectorXd& grad, const Eigen::VectorXd& r, const Eigen::VectorXd& r0) {
  return grad.size() == 0 ? v : v + grad.dot(r - r0);
}

Eigen::VectorXd grad_or_zero(const Eigen::VectorXd& g, Eigen::Index n) {
  return g.size() == 0 ? Eigen::VectorXd::Zero(n) : g;
}

}  // namespace

void ConeModel::validate() const {
  if (rx.size() != r0.size() || rz.size() != r0.size())
    throw std::invalid_argument("ConeModel: vector dimensions differ");
  const double c = rx.dot(rz);
  if (rx.squaredNorm() * rz.squaredNorm() - c * c <= 1e-14 * rx.squaredNorm() * rz.squaredNorm())
    throw std::invalid_argument("ConeModel: R_X and R_Z are linearly dependent");
}

ScalarField quadratic_background(Eigen::VectorXd center, double c, double k) {
  return [center = std::move(center), c, k](const Eigen::VectorXd& r) {
    return c + 0.5 * k * (r - center).squaredNorm();
  };
}

Eigen::Matrix2d cone_hamiltonian(const ConeModel& m, const Eigen::VectorXd& r) {
  const Eigen::VectorXd d = r - m.r0;
  const double h0 = m.background(r), x = m.hx * d.dot(m.rx), z = m.hz * d.dot(m.rz);
  Eigen::Matrix2d h;
  h << h0 + z, x, x, h0 - z;
  return h;
}

std::pair<double, double> cone_energies(const ConeModel& m, const Eigen::VectorXd& r) {
  if (r.size() != m.r0.size()) throw std::invalid_argument("cone_energies: dimension mismatch");
  const Eigen::VectorXd d = r - m.r0;
  const double x = m.hx * d.dot(m.rx), z = m.hz * d.dot(m.rz);
  const double h0 = m.background(r), half_gap = std::hypot(x, z);
  return {h0 - half_gap, h0 + half_gap};
}

double LinearPerturbation::eval_v0(const Eigen::VectorXd& r, const Eigen::VectorXd& r0) const {
  return lin(v0, grad_v0, r, r0);
}
double LinearPerturbation::eval_vx(const Eigen::VectorXd& r, const Eigen::VectorXd& r0) const {
  return lin(vx, grad_vx, r, r0);
}
double LinearPerturbation::eval_vz(const Eigen::VectorXd& r, const Eigen::VectorXd& r0) const {
  return lin(vz, grad_vz, r, r0);
}

Eigen::Matrix2d perturbed_hamiltonian(const ConeModel& m, const LinearPerturbation& v,
                                      const Eigen::VectorXd& r) {
  Eigen::Matrix2d h = cone_hamiltonian(m, r);
  const double v0 = v.eval_v0(r, m.r0), vx = v.eval_vx(r, m.r0), vz = v.eval_vz(r, m.r0);
  h(0, 0) += v0 + vz;
  h(1, 1) += v0 - vz;
  h(0, 1) += vx;
  h(1, 0) += vx;
  return h;
}

ShiftedApex shifted_degeneracy(const ConeModel& m, const LinearPerturbation& v) {
  m.validate();
  const Eigen::Index n = m.r0.size();
  const Eigen::VectorXd a = m.hx * m.rx + grad_or_zero(v.grad_vx, n);
  const Eigen::VectorXd b = m.hz * m.rz + grad_or_zero(v.grad_vz, n);
  const double na = a.norm(), nb = b.norm();
  if (na == 0.0 || nb == 0.0) throw NumericalError("shifted_degeneracy: a coupling vector vanishes");
  const Eigen::VectorXd ua = a / na, ub = b / nb;
  const double cab = ua.dot(ub);
  if (1.0 - cab * cab < 1e-12)
    throw NumericalError("shifted_degeneracy: perturbed coupling vectors are parallel");

  ShiftedApex out;
  // (R - R0).a = -V_X, (R - R0).b = -V_Z, minimum-norm solution
  Eigen::Matrix<double, 2, Eigen::Dynamic> mat(2, n);
  mat.row(0) = a.transpose();
  mat.row(1) = b.transpose();
  const Eigen::Vector2d rhs(-v.vx, -v.vz);
  const Eigen::Matrix2d gram = mat * mat.transpose();
  out.r0 = m.r0 + mat.transpose() * gram.ldlt().solve(rhs);

  const double x = -v.vx / na, z = -v.vz / nb;
  const double c = (z - x * cab) / (1.0 - cab * cab);
  out.r0_closed_form = m.r0 + x * ua + c * (ub - cab * ua);
  out.discrepancy = (out.r0 - out.r0_closed_form).lpNorm<Eigen::Infinity>();

  out.model.r0 = out.r0;
  out.model.rx = ua;
  out.model.rz = ub;
  out.model.hx = na;
  out.model.hz = nb;
  out.model.h0 = [base = m, v](const Eigen::VectorXd& r) {
    return base.background(r) + v.eval_v0(r, base.r0);
  };
  return out;
}

ScalarField projection_gap_demo(const ThreeLevelSpec& spec, double a1, double a2) {
  if (!(spec.e2_offset > 0.0)) throw std::invalid_argument("projection_gap_demo: E2 must lie above E1");
  const double norm2 = a1 * a1 + a2 * a2;
  if (!(norm2 > 0.0)) throw std::invalid_argument("projection_gap_demo: zero mixing amplitudes");
  const double w1 = a1 * a1 / norm2, w2 = a2 * a2 / norm2;
  spec.cone.validate();
  return [spec, w1, w2](const Eigen::VectorXd& r) {
    const auto [e0, e1] = cone_energies(spec.cone, r);
    const double e2 = e1 + spec.e2_offset;
    return w1 * e1 + w2 * e2 - e0;
  };
}

void write_cone_grid(std::ostream& out, const ConeModel& m, double lo, double hi, int n) {
  if (m.r0.size() != 2) throw std::invalid_argument("write_cone_grid: model must be two-dimensional");
  if (n < 2) throw std::invalid_argument("write_cone_grid: need at least two points per axis");
  out << "x0,x1,e_minus,e_plus\n";
  char buf[160];
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Eigen::Vector2d r(lo + (hi - lo) * i / (n - 1), lo + (hi - lo) * j / (n - 1));
      const auto [em, ep] = cone_energies(m, r);
      std::snprintf(buf, sizeof(buf), "%.10g,%.10g,%.17g,%.17g\n", r(0), r(1), em, ep);
      out << buf;
    }
}

}  // namespace saoovqe
