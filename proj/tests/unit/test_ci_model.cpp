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

#include <gtest/gtest.h>

#include <sstream>

#include "saoovqe/ci_model.hpp"
#include "saoovqe/error.hpp"
#include "saoovqe/synthetic.hpp"

namespace saoovqe {
namespace {

Eigen::VectorXd random_vector(Rng& rng, int n, double scale = 1.0) {
  Eigen::VectorXd v(n);
  for (int k = 0; k < n; ++k) v(k) = rng.uniform(-scale, scale);
  return v;
}

ConeModel random_cone(Rng& rng, int dim) {
  ConeModel m{random_vector(rng, dim), random_vector(rng, dim), random_vector(rng, dim),
              rng.uniform(0.2, 2.0), rng.uniform(0.2, 2.0), {}};
  m.h0 = quadratic_background(random_vector(rng, dim), rng.uniform(-1, 1), rng.uniform(0, 1));
  return m;
}

// h0 I + x X + z Z with x, z the projected displacements
Eigen::Vector2d explicit_eigenvalues(const ConeModel& m, const Eigen::VectorXd& r) {
  const double x = m.hx * (r - m.r0).dot(m.rx), z = m.hz * (r - m.r0).dot(m.rz), h0 = m.h0(r);
  Eigen::Matrix2d h;
  h << h0 + z, x, x, h0 - z;
  return Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d>(h).eigenvalues();
}

double gap(const Eigen::Matrix2d& h) {
  const Eigen::Vector2d e = Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d>(h).eigenvalues();
  return e(1) - e(0);
}

TEST(Cone, ClosedFormMatchesMatrixEigenvaluesAtThousandPoints) {
  Rng rng(1);
  double worst = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const int dim = 2 + trial % 3;
    const ConeModel m = random_cone(rng, dim);
    const Eigen::VectorXd r = random_vector(rng, dim, 2.0);
    const auto [em, ep] = cone_energies(m, r);
    const Eigen::Vector2d ref = explicit_eigenvalues(m, r);
    worst = std::max({worst, std::abs(em - ref(0)), std::abs(ep - ref(1))});
    EXPECT_LE(em, ep);
  }
  EXPECT_LT(worst, 1e-12);
}

TEST(Cone, ApexIsDegenerateAndAxisGapIsLinear) {
  ConeModel m{Eigen::Vector2d(0.3, -0.2), Eigen::Vector2d(1, 0), Eigen::Vector2d(0, 1), 0.7, 1.3, {}};
  const auto [a, b] = cone_energies(m, m.r0);
  EXPECT_EQ(a, b);
  const auto [c, d] = cone_energies(m, m.r0 + Eigen::Vector2d(0.5, 0.0));
  EXPECT_NEAR(d - c, 2 * 0.7 * 0.5, 1e-15);
  EXPECT_THROW((ConeModel{Eigen::Vector2d::Zero(), Eigen::Vector2d(1, 1), Eigen::Vector2d(2, 2), 1, 1, {}}.validate()),
               std::invalid_argument);
}

TEST(Cone, PathThroughApexSwapsSheets) {
  Rng rng(2);
  for (int trial = 0; trial < 20; ++trial) {
    ConeModel m = random_cone(rng, 2);
    m.h0 = {};
    const Eigen::VectorXd d = random_vector(rng, 2);
    const double eps = 1e-3;
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> before(cone_hamiltonian(m, m.r0 - eps * d));
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> after(cone_hamiltonian(m, m.r0 + eps * d));
    // the lower state continues into the upper sheet
    EXPECT_NEAR(std::abs(before.eigenvectors().col(0).dot(after.eigenvectors().col(1))), 1.0, 1e-12);
  }
}

TEST(ShiftedApex, ZeroPerturbationLeavesApex) {
  ConeModel m{Eigen::Vector2d(0.1, 0.2), Eigen::Vector2d(1, 0.3), Eigen::Vector2d(-0.2, 1), 1.0, 2.0, {}};
  const ShiftedApex s = shifted_degeneracy(m, LinearPerturbation{});
  EXPECT_LT((s.r0 - m.r0).norm(), 1e-15);
}

TEST(ShiftedApex, DecoupledConstantShift) {
  ConeModel m{Eigen::Vector2d(0.0, 0.0), Eigen::Vector2d(1, 0), Eigen::Vector2d(0, 1), 2.0, 1.0, {}};
  LinearPerturbation v;
  v.vx = 0.3;
  const ShiftedApex s = shifted_degeneracy(m, v);
  EXPECT_LT((s.r0 - Eigen::Vector2d(-0.15, 0.0)).norm(), 1e-15);
  EXPECT_LT(s.discrepancy, 1e-15);
}

TEST(ShiftedApex, RandomPerturbationsCloseTheGapAtTheNewApex) {
  Rng rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    const int dim = 2 + trial % 3;
    const ConeModel m = random_cone(rng, dim);
    LinearPerturbation v{rng.uniform(-0.3, 0.3), rng.uniform(-0.3, 0.3), rng.uniform(-0.3, 0.3),
                         random_vector(rng, dim, 0.2), random_vector(rng, dim, 0.2), random_vector(rng, dim, 0.2)};
    const ShiftedApex s = shifted_degeneracy(m, v);
    EXPECT_LT(gap(perturbed_hamiltonian(m, v, s.r0)), 1e-8);
    EXPECT_LT(s.discrepancy, 1e-9);
    // the rewritten cone reproduces the perturbed model everywhere
    const Eigen::VectorXd r = random_vector(rng, dim);
    const Eigen::Vector2d e = Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d>(perturbed_hamiltonian(m, v, r)).eigenvalues();
    const auto [em, ep] = cone_energies(s.model, r);
    EXPECT_NEAR(em, e(0), 1e-12);
    EXPECT_NEAR(ep, e(1), 1e-12);
  }
}

TEST(ShiftedApex, ComposingPerturbationsEqualsTheirSum) {
  Rng rng(4);
  for (int trial = 0; trial < 20; ++trial) {
    const ConeModel m = random_cone(rng, 3);
    auto random_pert = [&] {
      return LinearPerturbation{0.0, rng.uniform(-0.2, 0.2), rng.uniform(-0.2, 0.2), {},
                                random_vector(rng, 3, 0.1), random_vector(rng, 3, 0.1)};
    };
    const LinearPerturbation v1 = random_pert(), v2 = random_pert();
    const ShiftedApex first = shifted_degeneracy(m, v1);
    LinearPerturbation v2_moved = v2;  // same linear function, expanded about the new apex
    v2_moved.vx = v2.eval_vx(first.r0, m.r0);
    v2_moved.vz = v2.eval_vz(first.r0, m.r0);
    const ShiftedApex twice = shifted_degeneracy(first.model, v2_moved);
    LinearPerturbation sum{0.0, v1.vx + v2.vx, v1.vz + v2.vz, {}, v1.grad_vx + v2.grad_vx, v1.grad_vz + v2.grad_vz};
    const ShiftedApex once = shifted_degeneracy(m, sum);
    // in three dimensions the apex is a line; compare the gap instead of the point
    EXPECT_LT(gap(perturbed_hamiltonian(m, sum, twice.r0)), 1e-10);
    EXPECT_LT(gap(perturbed_hamiltonian(m, sum, once.r0)), 1e-10);
  }
}

TEST(ShiftedApex, ParallelCouplingsAreAnError) {
  ConeModel m{Eigen::Vector2d(0, 0), Eigen::Vector2d(1, 0), Eigen::Vector2d(0, 1), 1.0, 1.0, {}};
  LinearPerturbation v;
  v.grad_vz = Eigen::Vector2d(1.0, -1.0);  // b = (1, 0), parallel to a
  EXPECT_THROW(shifted_degeneracy(m, v), NumericalError);
}

TEST(Projection, GapOpensForAnyAdmixture) {
  ThreeLevelSpec spec{ConeModel{Eigen::Vector2d(0, 0), Eigen::Vector2d(1, 0.2), Eigen::Vector2d(0.1, 1), 1.0, 0.8, {}}, 1.0};
  const auto closed = projection_gap_demo(spec, 1.0, 0.0);
  EXPECT_EQ(closed(spec.cone.r0), 0.0);
  const auto demo = projection_gap_demo(spec, std::sqrt(0.9), std::sqrt(0.1));
  EXPECT_NEAR(demo(spec.cone.r0), 0.1, 1e-15);
  for (double a2 : {0.0101, 0.05, 0.3, 1.0}) {
    const auto f = projection_gap_demo(spec, std::sqrt(1 - a2 * a2), a2);
    double lowest = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= 200; ++i)
      for (int j = 0; j <= 200; ++j) lowest = std::min(lowest, f(Eigen::Vector2d(-1 + 0.01 * i, -1 + 0.01 * j)));
    EXPECT_GT(lowest, 0.0) << a2;
  }
  EXPECT_THROW(projection_gap_demo(ThreeLevelSpec{spec.cone, 0.0}, 1, 1), std::invalid_argument);
}

TEST(ConeGrid, CsvLayout) {
  ConeModel m{Eigen::Vector2d(0, 0), Eigen::Vector2d(1, 0), Eigen::Vector2d(0, 1), 1.0, 1.0, {}};
  std::ostringstream out;
  write_cone_grid(out, m, -1.0, 1.0, 3);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "x0,x1,e_minus,e_plus");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  EXPECT_EQ(rows, 9);
  EXPECT_NE(out.str().find("0,0,0,0\n"), std::string::npos);
}

}  // namespace
}  // namespace saoovqe
