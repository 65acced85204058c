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

#include "saoovqe/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "saoovqe/error.hpp"

namespace saoovqe {

double Rng::normal() {
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

namespace {

// Symmetric, strictly diagonally dominant => positive definite.
Eigen::MatrixXd random_overlap(int n, Rng& rng) {
  Eigen::MatrixXd s = Eigen::MatrixXd::Identity(n, n);
  const double off = n > 1 ? 0.6 / (n - 1) : 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < i; ++j) s(i, j) = s(j, i) = rng.uniform(-off, off);
  return s;
}

Tensor4 transform_all(const Tensor4& g, const Eigen::MatrixXd& x) {
  // g'(a,b,c,d) = sum x(a,p) x(b,q) x(c,r) x(d,s) g(p,q,r,s), loop form on purpose
  const int n = static_cast<int>(g.dim());
  Tensor4 t1(n), t2(n);
  for (int a = 0; a < n; ++a)
    for (int q = 0; q < n; ++q)
      for (int r = 0; r < n; ++r)
        for (int s = 0; s < n; ++s) {
          double v = 0.0;
          for (int p = 0; p < n; ++p) v += x(a, p) * g(p, q, r, s);
          t1(a, q, r, s) = v;
        }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int r = 0; r < n; ++r)
        for (int s = 0; s < n; ++s) {
          double v = 0.0;
          for (int q = 0; q < n; ++q) v += x(b, q) * t1(a, q, r, s);
          t2(a, b, r, s) = v;
        }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int s = 0; s < n; ++s) {
          double v = 0.0;
          for (int r = 0; r < n; ++r) v += x(c, r) * t2(a, b, r, s);
          t1(a, b, c, s) = v;
        }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d) {
          double v = 0.0;
          for (int s = 0; s < n; ++s) v += x(d, s) * t1(a, b, c, s);
          t2(a, b, c, d) = v;
        }
  return t2;
}

}  // namespace

Eigen::MatrixXd random_orthogonal(int n, Rng& rng) {
  Eigen::MatrixXd a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = rng.normal();
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
  Eigen::MatrixXd q = qr.householderQ();
  const Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j)
    if (r(j, j) < 0) q.col(j) *= -1.0;
  return q;
}

IntegralSet random_integrals(int n_orb, int n_elec, std::uint64_t seed, BasisTag basis) {
  Rng rng(seed);
  IntegralSet ints = IntegralSet::zeros(n_orb, n_elec, basis);
  for (int p = 0; p < n_orb; ++p)
    for (int q = 0; q <= p; ++q) ints.h(p, q) = ints.h(q, p) = rng.uniform(-1.0, 1.0);
  for (int p = 0; p < n_orb; ++p)
    for (int q = 0; q <= p; ++q)
      for (int r = 0; r < n_orb; ++r)
        for (int s = 0; s <= r; ++s) {
          if (p * (p + 1) / 2 + q < r * (r + 1) / 2 + s) continue;
          ints.g.set_symmetric(p, q, r, s, rng.uniform(-0.5, 0.5));
        }
  ints.e_scalar = rng.uniform(0.0, 2.0);
  if (basis == BasisTag::AO) ints.s = random_overlap(n_orb, rng);
  return ints;
}

IntegralSet molecular_like_integrals(int n_orb, int n_elec, std::uint64_t seed, double coupling) {
  if (n_orb <= 0 || n_elec < 0 || n_elec > 2 * n_orb)
    throw InvariantError("molecular_like_integrals: invalid orbital/electron counts");
  Rng rng(seed);
  IntegralSet ints = IntegralSet::zeros(n_orb, n_elec, BasisTag::MO);

  const int n_occ = (n_elec + 1) / 2;
  std::vector<double> eps(n_orb);
  for (int p = 0; p < n_orb; ++p) {
    const double base = p < n_occ ? -2.4 + 0.45 * p : -0.6 + 0.35 * (p - n_occ);
    eps[p] = base + rng.uniform(-0.08, 0.08);
  }
  std::sort(eps.begin(), eps.end());
  for (int p = 0; p < n_orb; ++p) {
    ints.h(p, p) = eps[p];
    for (int q = 0; q < p; ++q) ints.h(p, q) = ints.h(q, p) = rng.uniform(-coupling, coupling);
  }

  // (pq|rs) = sum_L B^L(p,q) B^L(r,s) with symmetric B^L.
  const int n_aux = n_orb + 2;
  std::vector<Eigen::MatrixXd> b(n_aux, Eigen::MatrixXd::Zero(n_orb, n_orb));
  for (int l = 0; l < n_aux; ++l)
    for (int p = 0; p < n_orb; ++p) {
      b[l](p, p) = rng.uniform(0.18, 0.36);
      for (int q = 0; q < p; ++q) b[l](p, q) = b[l](q, p) = rng.uniform(-0.09, 0.09);
    }
  for (int p = 0; p < n_orb; ++p)
    for (int q = 0; q < n_orb; ++q)
      for (int r = 0; r < n_orb; ++r)
        for (int s = 0; s < n_orb; ++s) {
          double v = 0.0;
          for (int l = 0; l < n_aux; ++l) v += b[l](p, q) * b[l](r, s);
          ints.g(p, q, r, s) = v;
        }
  ints.e_scalar = rng.uniform(1.0, 3.0);
  return ints;
}

std::pair<IntegralSet, MOCoefficients> synthetic_fixture(int n_orb, int n_elec, std::uint64_t seed,
                                                         double coupling) {
  const IntegralSet mo = molecular_like_integrals(n_orb, n_elec, seed, coupling);
  Rng rng(seed ^ 0x9e3779b97f4a7c15ULL);
  const Eigen::MatrixXd s = random_overlap(n_orb, rng);

  // C = L^{-T} Q satisfies C^T S C = I for S = L L^T and orthogonal Q.
  Eigen::MatrixXd q = Eigen::MatrixXd::Identity(n_orb, n_orb);
  for (int i = 0; i < n_orb; ++i)
    for (int j = 0; j < n_orb; ++j) q(i, j) += rng.uniform(-0.15, 0.15);
  // modified Gram-Schmidt keeps the construction loop-deterministic
  for (int j = 0; j < n_orb; ++j) {
    for (int k = 0; k < j; ++k) {
      double d = 0.0;
      for (int i = 0; i < n_orb; ++i) d += q(i, k) * q(i, j);
      for (int i = 0; i < n_orb; ++i) q(i, j) -= d * q(i, k);
    }
    double nrm = 0.0;
    for (int i = 0; i < n_orb; ++i) nrm += q(i, j) * q(i, j);
    nrm = std::sqrt(nrm);
    for (int i = 0; i < n_orb; ++i) q(i, j) /= nrm;
  }
  const Eigen::MatrixXd l = s.llt().matrixL();
  MOCoefficients c;
  c.c = l.transpose().triangularView<Eigen::Upper>().solve(q);

  // AO integrals: X = S C maps MO quantities back, since C^T S C = I.
  const Eigen::MatrixXd x = s * c.c;
  IntegralSet ao = IntegralSet::zeros(n_orb, n_elec, BasisTag::AO);
  ao.s = s;
  ao.e_scalar = mo.e_scalar;
  ao.h = x * mo.h * x.transpose();
  ao.h = 0.5 * (ao.h + ao.h.transpose()).eval();
  ao.g = transform_all(mo.g, x);
  for (int p = 0; p < n_orb; ++p)
    for (int qq = 0; qq <= p; ++qq)
      for (int r = 0; r < n_orb; ++r)
        for (int t = 0; t <= r; ++t) {
          if (p * (p + 1) / 2 + qq < r * (r + 1) / 2 + t) continue;
          ao.g.set_symmetric(p, qq, r, t, ao.g(p, qq, r, t));
        }
  return {std::move(ao), std::move(c)};
}

}  // namespace saoovqe
