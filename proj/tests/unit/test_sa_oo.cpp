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

#include "oracles.hpp"
#include "saoovqe/sa_oo.hpp"
#include "saoovqe/statevector.hpp"
#include "saoovqe/synthetic.hpp"

namespace saoovqe {
namespace {

// Real random state in the (2, 2) sector of `n_orb` active orbitals.
Statevector random_active_state(int n_orb, int n_pair, std::uint64_t seed) {
  Rng rng(seed);
  Eigen::VectorXcd a = Eigen::VectorXcd::Zero(Eigen::Index{1} << (2 * n_orb));
  for (Eigen::Index k : oracle::interleaved_sector(n_orb, n_pair, n_pair)) a(k) = rng.normal();
  return Statevector(2 * n_orb, a.normalized());
}

struct WindowProblem {
  IntegralSet mo;  // window integrals, frozen | active | virtual
  SpinFreeRDMs rdms;
  std::vector<std::pair<int, int>> pairs;
  int n = 0;
};

WindowProblem make_window_problem(std::uint64_t seed, bool include_aa = true) {
  Rng rng(seed + 500);
  const int nf = static_cast<int>(rng.next() % 2), na = 2 + static_cast<int>(rng.next() % 2),
            nv = 1 + static_cast<int>(rng.next() % 2);
  WindowProblem p;
  p.n = nf + na + nv;
  p.mo = random_integrals(p.n, 2 * nf + 2, seed);
  const SpinFreeRDMs a = measure_rdms(random_active_state(na, 1, seed), na);
  const SpinFreeRDMs b = measure_rdms(random_active_state(na, 1, seed + 77), na);
  p.rdms = extend_rdms(sa_rdms(a, b, 0.5, 0.5), nf, nv);
  OrbitalWindow w;
  for (int k = 0; k < p.n; ++k) w.mo_indices.push_back(k);
  w.n_frozen = nf;
  w.n_active = na;
  w.n_virtual = nv;
  p.pairs = rotation_pairs(w, include_aa);
  return p;
}

double energy_at(const WindowProblem& p, const Eigen::VectorXd& kappa) {
  const MOCoefficients u{rotation_matrix(kappa, p.pairs, p.n)};
  return window_energy(transform_to_mo(p.mo, u), p.rdms);
}

Eigen::VectorXd gradient_at(const WindowProblem& p, const Eigen::VectorXd& kappa) {
  const MOCoefficients u{rotation_matrix(kappa, p.pairs, p.n)};
  return orbital_gradient(transform_to_mo(p.mo, u), p.rdms, p.pairs);
}

TEST(RotationPairs, ExcludesRedundantBlocks) {
  OrbitalWindow w{{0, 1, 2, 3, 4, 5}, 2, 2, 2};
  const auto all = rotation_pairs(w, true), no_aa = rotation_pairs(w, false);
  // FA 4 + FV 4 + AV 4 + AA 1
  EXPECT_EQ(all.size(), 13u);
  EXPECT_EQ(no_aa.size(), 12u);
  for (auto [p, q] : all) EXPECT_GT(p, q);
}

TEST(RotationMatrix, OrthogonalAndComposes) {
  const int n = 4;
  OrbitalWindow w{{0, 1, 2, 3}, 1, 2, 1};
  const auto pairs = rotation_pairs(w, true);
  Rng rng(2);
  Eigen::VectorXd k(static_cast<Eigen::Index>(pairs.size()));
  for (Eigen::Index i = 0; i < k.size(); ++i) k(i) = rng.uniform(-0.5, 0.5);
  const Eigen::MatrixXd u = rotation_matrix(k, pairs, n);
  EXPECT_LT((u.transpose() * u - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff(), 1e-14);
  EXPECT_NEAR(u.determinant(), 1.0, 1e-13);
  // exp(-K) exp(-K) = exp(-2K)
  EXPECT_LT((u * u - rotation_matrix(2.0 * k, pairs, n)).cwiseAbs().maxCoeff(), 1e-13);
  EXPECT_LT((rotation_matrix(-k, pairs, n) * u - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff(), 1e-14);
  const Eigen::MatrixXd kk = skew_matrix(k, pairs, n);
  EXPECT_EQ((kk + kk.transpose()).cwiseAbs().maxCoeff(), 0.0);
}

TEST(RotateOrbitals, KeepsSOrthonormalityAndTouchesOnlyTheWindow) {
  const auto [ao, c] = synthetic_fixture(6, 4, 3);
  const ActiveSpaceSpec spec = ActiveSpaceSpec::contiguous(4, 2, 2);
  OrbitalRotation rot{make_window(spec, 6, 1), {}, {}};
  rot.pairs = rotation_pairs(rot.window, true);
  rot.kappa = Eigen::VectorXd::Constant(static_cast<Eigen::Index>(rot.pairs.size()), 0.2);
  const MOCoefficients c2 = rotate_orbitals(c, rot);
  EXPECT_LT(c2.orthonormality_error(ao.s), 1e-12);
  EXPECT_EQ(rot.window.size(), 4);
  EXPECT_EQ(c2.c.col(4), c.c.col(4));
  EXPECT_EQ(c2.c.col(5), c.c.col(5));
}

TEST(ExtendRdms, WindowEnergyMatchesFrozenCoreEnergy) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const int nf = 1 + static_cast<int>(seed % 2), na = 3, nv = 1;
    const IntegralSet mo = random_integrals(nf + na + nv, 2 * nf + 4, seed);
    ActiveSpaceSpec spec;
    for (int i = 0; i < nf; ++i) spec.frozen.push_back(i);
    for (int t = 0; t < na; ++t) spec.active.push_back(nf + t);
    spec.n_active_elec = 4;
    const SpinFreeRDMs act = measure_rdms(random_active_state(na, 2, seed), na);
    const double e_fc = act.energy(build_frozen_core(mo, spec));
    EXPECT_NEAR(window_energy(mo, extend_rdms(act, nf, nv)), e_fc, 1e-11);
  }
}

TEST(OrbitalDerivatives, GradientMatchesCentralDifferencesOnTwentySeeds) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const WindowProblem p = make_window_problem(seed);
    const Eigen::VectorXd zero = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(p.pairs.size()));
    const Eigen::VectorXd g = orbital_gradient(p.mo, p.rdms, p.pairs);
    const Eigen::VectorXd fd = oracle::central_gradient([&](const Eigen::VectorXd& k) { return energy_at(p, k); }, zero, 1e-4);
    const double scale = g.lpNorm<Eigen::Infinity>();
    ASSERT_GT(scale, 1e-3);
    EXPECT_LT((g - fd).lpNorm<Eigen::Infinity>() / scale, 1e-6) << "seed " << seed;
  }
}

TEST(OrbitalDerivatives, HessianMatchesDifferencesOfTheGradientOnTwentySeeds) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const WindowProblem p = make_window_problem(seed);
    const Eigen::VectorXd zero = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(p.pairs.size()));
    const Eigen::MatrixXd h = orbital_hessian(p.mo, p.rdms, p.pairs);
    // the gradient in rotated orbitals differs from dE/dkappa by an
    // antisymmetric first-order term, so compare symmetric parts
    const Eigen::MatrixXd j =
        oracle::central_jacobian([&](const Eigen::VectorXd& k) { return gradient_at(p, k); }, zero, 1e-4);
    const Eigen::MatrixXd jsym = 0.5 * (j + j.transpose());
    const double scale = h.cwiseAbs().maxCoeff();
    EXPECT_LT((h - jsym).cwiseAbs().maxCoeff() / scale, 1e-5) << "seed " << seed;
    EXPECT_LT((h - h.transpose()).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(OrbitalDerivatives, HessianMatchesSecondDifferencesOfTheEnergy) {
  const WindowProblem p = make_window_problem(3);
  const auto m = static_cast<Eigen::Index>(p.pairs.size());
  const Eigen::MatrixXd h = orbital_hessian(p.mo, p.rdms, p.pairs);
  const double step = 1e-3;
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = 0; j <= i; ++j) {
      auto e = [&](double si, double sj) {
        Eigen::VectorXd k = Eigen::VectorXd::Zero(m);
        k(i) += si;
        k(j) += sj;
        return energy_at(p, k);
      };
      const double fd = (e(step, step) - e(step, -step) - e(-step, step) + e(-step, -step)) / (4 * step * step);
      EXPECT_NEAR(h(i, j), fd, 1e-5 * std::max(1.0, h.cwiseAbs().maxCoeff()));
    }
}

TEST(AugmentedStep, DescentDirectionAndLevelShift) {
  const WindowProblem p = make_window_problem(8);
  const Eigen::VectorXd g = orbital_gradient(p.mo, p.rdms, p.pairs);
  Eigen::MatrixXd h = orbital_hessian(p.mo, p.rdms, p.pairs);
  h -= 5.0 * Eigen::MatrixXd::Identity(h.rows(), h.cols());  // force an indefinite Hessian
  const auto [step, rep] = augment_and_step(g, h);
  EXPECT_LT(g.dot(step), 0.0);
  EXPECT_LT(rep.hessian_min_eig, 0.0);
  EXPECT_GT(rep.nu, 0.0);
  EXPECT_LE(step.lpNorm<Eigen::Infinity>(), OOOptions{}.kappa_max + 1e-15);
}

TEST(SAOOCycle, LowersTheEnsembleEnergyAndReachesAStationaryPoint) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto [ao, c] = synthetic_fixture(6, 4, seed);
    const ActiveSpaceSpec spec = ActiveSpaceSpec::contiguous(4, 2, 2);
    const SpinFreeRDMs a = measure_rdms(random_active_state(2, 1, seed), 2);
    const SpinFreeRDMs b = measure_rdms(random_active_state(2, 1, seed + 3), 2);
    const SpinFreeRDMs d = sa_rdms(a, b, 0.5, 0.5);
    const OrbitalWindow w = make_window(spec, 6);
    const double e0 = window_energy(transform_to_mo(ao, c.columns(w.mo_indices)), extend_rdms(d, w.n_frozen, w.n_virtual));
    std::vector<double> energies;
    const OOCycleResult r = sa_oo_cycle(ao, c, spec, d, OOOptions{}, [&](int, const OOStepReport& s) {
      energies.push_back(s.e_sa_after);
      EXPECT_LE(s.e_sa_after, s.e_sa_before + 1e-10);
    });
    EXPECT_LT(r.e_sa, e0);
    EXPECT_TRUE(r.converged);
    EXPECT_LT(r.gradient_norm, 1e-6);
    EXPECT_LT(r.c.orthonormality_error(ao.s), 1e-10);
    ASSERT_FALSE(energies.empty());
    EXPECT_DOUBLE_EQ(energies.back(), r.e_sa);
    // a second cycle from the optimized orbitals takes no step
    const OOCycleResult again = sa_oo_cycle(ao, r.c, spec, d);
    EXPECT_TRUE(again.steps.empty());
  }
}

}  // namespace
}  // namespace saoovqe
