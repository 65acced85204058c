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

#include <numbers>

#include "oracles.hpp"
#include "saoovqe/error.hpp"
#include "saoovqe/sa_vqe.hpp"
#include "saoovqe/synthetic.hpp"

namespace saoovqe {
namespace {

struct Problem {
  FrozenCoreHamiltonian fc;
  PauliSum h;
  Eigen::VectorXd all;       // Sz = 0 sector spectrum
  Eigen::VectorXd singlets;  // S = 0 spectrum
};

Problem make_problem(std::uint64_t seed) {
  Problem p;
  p.fc = build_frozen_core(molecular_like_integrals(5, 6, seed), ActiveSpaceSpec::contiguous(6, 4, 3));
  p.h = jordan_wigner(hamiltonian_to_fermion(p.fc), 6);
  const auto idx = oracle::interleaved_sector(3, 2, 2);
  p.all = oracle::eigenvalues(oracle::restrict(oracle::dense_hamiltonian(p.fc.h_eff, p.fc.g_act, p.fc.shift), idx).real());
  p.singlets = oracle::singlet_spectrum(p.fc.h_eff, p.fc.g_act, p.fc.shift, 4);
  return p;
}

// Eigenvectors of the dense Hamiltonian as statevectors.
std::vector<Statevector> eigenstates(const PauliSum& h, int count) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h.to_dense());
  std::vector<Statevector> out;
  for (int k = 0; k < count; ++k) out.emplace_back(h.n_qubits(), es.eigenvectors().col(k));
  return out;
}

TEST(Ensemble, ReferenceStatesAreOrthonormal) {
  const EnsembleSpec ens = make_ensemble(3, 4);
  EXPECT_NO_THROW(ens.validate());
  EXPECT_LT(std::abs(state_overlap(ens.phi_a, ens.phi_b)), 1e-15);
  EXPECT_EQ(ens.phi_a.amps()(15), cplx(1.0));  // orbitals 0 and 1 doubly occupied
}

TEST(Ensemble, RejectsInvalidWeights) {
  EXPECT_THROW(make_ensemble(3, 4, 0.6, 0.6), InvariantError);
  EXPECT_THROW(make_ensemble(3, 4, 0.3, 0.7), InvariantError);
  EXPECT_NO_THROW(make_ensemble(3, 4, 0.7, 0.3));
}

TEST(SAEnergy, RayleighRitzBoundOnRandomParameters) {
  const AnsatzSpec ansatz = enumerate_parameters(3);
  for (std::uint64_t seed = 0; seed < 2; ++seed) {
    const Problem p = make_problem(seed);
    for (auto [wa, wb] : {std::pair{0.5, 0.5}, std::pair{0.7, 0.3}}) {
      const EnsembleSpec ens = make_ensemble(3, 4, wa, wb);
      const double bound = wa * p.all(0) + wb * p.all(1);
      Rng rng(seed * 1000 + 1);
      for (int trial = 0; trial < 200; ++trial) {
        Eigen::VectorXd theta(12);
        for (int k = 0; k < 12; ++k) theta(k) = rng.uniform(-std::numbers::pi, std::numbers::pi);
        const SAEnergy e = sa_energy(theta, ens, ansatz, p.h);
        EXPECT_GE(e.e_sa, bound - 1e-12);
        EXPECT_NEAR(e.e_sa, wa * e.e_a + wb * e.e_b, 1e-12);
      }
    }
  }
}

TEST(SAEnergy, EquiEnsembleIsRotationInvariant) {
  const Problem p = make_problem(3);
  const AnsatzSpec ansatz = enumerate_parameters(3);
  const EnsembleSpec ens = make_ensemble(3, 4);
  Rng rng(9);
  Eigen::VectorXd theta(12);
  for (int k = 0; k < 12; ++k) theta(k) = rng.uniform(-1.0, 1.0);
  const Statevector a = apply_ansatz(ens.phi_a, ansatz, theta), b = apply_ansatz(ens.phi_b, ansatz, theta);
  const double e0 = sa_energy(a, b, 0.5, 0.5, p.h).e_sa;
  double moved = 0.0;
  for (int k = 0; k < 50; ++k) {
    const double phi = rng.uniform(-std::numbers::pi, std::numbers::pi);
    const Statevector ra(6, std::cos(phi) * a.amps() + std::sin(phi) * b.amps());
    const Statevector rb(6, -std::sin(phi) * a.amps() + std::cos(phi) * b.amps());
    EXPECT_NEAR(sa_energy(ra, rb, 0.5, 0.5, p.h).e_sa, e0, 1e-12);
    moved = std::max(moved, std::abs(sa_energy(ra, rb, 0.7, 0.3, p.h).e_sa - sa_energy(a, b, 0.7, 0.3, p.h).e_sa));
  }
  EXPECT_GT(moved, 1e-6);  // unequal weights are not invariant
}

TEST(Variance, VanishesOnEigenstates) {
  const Problem p = make_problem(1);
  const PauliSum h2 = pauli_multiply(p.h, p.h);
  const auto ev = eigenstates(p.h, 3);
  EXPECT_LT(sa_variance(ev[0], ev[1], 0.5, 0.5, p.h, h2), 1e-8);
  EXPECT_LT(sa_variance(ev[1], ev[2], 0.7, 0.3, p.h, h2), 1e-8);
}

TEST(Variance, TwoLevelSuperpositionGivesQuarterGapSquared) {
  const Problem p = make_problem(2);
  const PauliSum h2 = pauli_multiply(p.h, p.h);
  const auto ev = eigenstates(p.h, 2);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(p.h.to_dense(), Eigen::EigenvaluesOnly);
  const double g = es.eigenvalues()(1) - es.eigenvalues()(0);
  const double r = std::sqrt(0.5);
  const Statevector plus(6, r * (ev[0].amps() + ev[1].amps())), minus(6, r * (ev[0].amps() - ev[1].amps()));
  EXPECT_NEAR(sa_variance(plus, minus, 0.5, 0.5, p.h, h2), g * g / 4.0, 1e-9);
  EXPECT_NEAR(sa_variance(plus, minus, 0.8, 0.2, p.h, h2), g * g / 4.0, 1e-9);
}

TEST(DiagonalizePair, RecoversEigenstatesFromRotatedPair) {
  const Problem p = make_problem(4);
  const auto ev = eigenstates(p.h, 2);
  const double phi = 0.4;
  const Statevector a(6, std::cos(phi) * ev[0].amps() + std::sin(phi) * ev[1].amps());
  const Statevector b(6, -std::sin(phi) * ev[0].amps() + std::cos(phi) * ev[1].amps());
  const SubspaceStates s = diagonalize_pair(a, b, p.h, a, b);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(p.h.to_dense(), Eigen::EigenvaluesOnly);
  EXPECT_NEAR(s.e_a, es.eigenvalues()(0), 1e-12);
  EXPECT_NEAR(s.e_b, es.eigenvalues()(1), 1e-12);
  EXPECT_NEAR(std::abs(state_overlap(s.psi_a, ev[0])), 1.0, 1e-12);
  EXPECT_GE(state_overlap(s.psi_a, a).real(), 0.0);
  EXPECT_GE(state_overlap(s.psi_b, b).real(), 0.0);
}

TEST(Optimize, ReachesTheSingletEnsemble) {
  const AnsatzSpec ansatz = enumerate_parameters(3);
  for (std::uint64_t seed : {0u, 5u}) {
    const Problem p = make_problem(seed);
    const SAVQEResult r = optimize(make_ensemble(3, 4), p.h, ansatz);
    const double target = 0.5 * (p.singlets(0) + p.singlets(1));
    EXPECT_TRUE(r.converged);
    EXPECT_NEAR(r.e_sa, target, 1e-5);
    EXPECT_GE(r.e_sa, 0.5 * (p.all(0) + p.all(1)) - 1e-9);
    EXPECT_NEAR(sa_energy(r.theta_opt, make_ensemble(3, 4), ansatz, p.h).e_sa, r.e_sa, 1e-12);
  }
}

TEST(Optimize, VarianceCostIsReportedAndSmallAtConvergence) {
  const Problem p = make_problem(6);
  SAVQEOptions opt;
  opt.cost = CostMode::EnergyPlusVariance;
  const SAVQEResult r = optimize(make_ensemble(3, 4), p.h, enumerate_parameters(3), opt);
  ASSERT_TRUE(r.variance_sa.has_value());
  EXPECT_LT(*r.variance_sa, 1e-3);
  EXPECT_NEAR(r.e_sa, 0.5 * (p.singlets(0) + p.singlets(1)), 1e-3);
}

TEST(Optimize, TraceReportsEveryIteration) {
  const Problem p = make_problem(7);
  SAVQEOptions opt;
  int rows = 0;
  double last = 0.0;
  opt.trace = [&](const SAVQETraceRow& row) {
    ++rows;
    last = row.e_sa;
  };
  const SAVQEResult r = optimize(make_ensemble(3, 4), p.h, enumerate_parameters(3), opt);
  EXPECT_GT(rows, 0);
  EXPECT_NEAR(last, r.e_sa, 1e-6);
}

}  // namespace
}  // namespace saoovqe
