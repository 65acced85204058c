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

#include <cstring>
#include <sstream>

#include "oracles.hpp"
#include "saoovqe/error.hpp"
#include "saoovqe/qubit_ops.hpp"
#include "saoovqe/statevector.hpp"
#include "saoovqe/synthetic.hpp"

namespace saoovqe {
namespace {

Statevector random_state(int n, std::uint64_t seed) {
  Rng rng(seed);
  Eigen::VectorXcd a(Eigen::Index{1} << n);
  for (Eigen::Index k = 0; k < a.size(); ++k) a(k) = cplx(rng.normal(), rng.normal());
  Statevector psi(n, a);
  psi.normalize();
  return psi;
}

// Random real state inside the (n_alpha, n_beta) sector.
Statevector random_sector_state(int n_orb, int n_alpha, int n_beta, std::uint64_t seed) {
  Rng rng(seed);
  Eigen::VectorXcd a = Eigen::VectorXcd::Zero(Eigen::Index{1} << (2 * n_orb));
  for (Eigen::Index k : oracle::interleaved_sector(n_orb, n_alpha, n_beta)) a(k) = rng.normal();
  Statevector psi(2 * n_orb, a);
  psi.normalize();
  return psi;
}

TEST(Statevector, DeterminantSetsOneAmplitude) {
  const Statevector psi = prepare_determinant(4, {0, 3});
  EXPECT_EQ(psi.amps()(9), cplx(1.0));
  EXPECT_DOUBLE_EQ(psi.norm(), 1.0);
  EXPECT_THROW(prepare_determinant(4, {5}), std::invalid_argument);
}

TEST(Statevector, SingletExcitationIsOrthogonalSinglet) {
  const int n_orb = 3;
  const Statevector hf = prepare_determinant(6, {0, 1, 2, 3});
  const Statevector s = prepare_singlet_homo_lumo(6, {0, 1, 2, 3}, 1, 2);
  EXPECT_LT(std::abs(state_overlap(hf, s)), 1e-15);
  EXPECT_NEAR(s.norm(), 1.0, 1e-15);
  const cplx s2 = s.amps().dot(oracle::dense_s2(n_orb) * s.amps());
  EXPECT_LT(std::abs(s2), 1e-14);
  // (|..up-excited> + |..down-excited>)/sqrt 2 with the JW signs
  int nonzero = 0;
  for (Eigen::Index k = 0; k < s.dim(); ++k)
    if (std::abs(s.amps()(k)) > 0) {
      ++nonzero;
      EXPECT_NEAR(std::abs(s.amps()(k)), std::sqrt(0.5), 1e-15);
    }
  EXPECT_EQ(nonzero, 2);
}

TEST(Statevector, ExpPauliMatchesDenseExponential) {
  Rng rng(4);
  for (int trial = 0; trial < 40; ++trial) {
    std::string letters;
    for (int q = 0; q < 4; ++q) letters += "IXYZ"[rng.next() % 4];
    const PauliString p = PauliString::from_string(letters);
    const double angle = rng.uniform(-3.0, 3.0);
    PauliSum op(4);
    op.add(p, 1.0);
    const Eigen::MatrixXcd u = oracle::expm_antihermitian(cplx(0.0, angle) * op.to_dense());
    const Statevector psi = random_state(4, static_cast<std::uint64_t>(trial));
    const Statevector out = apply_exp_pauli(psi, p, angle);
    EXPECT_LT((out.amps() - u * psi.amps()).cwiseAbs().maxCoeff(), 1e-14) << letters;
  }
}

TEST(Statevector, PauliSumApplicationMatchesDense) {
  const IntegralSet mo = random_integrals(3, 2, 8);
  const auto fc = build_frozen_core(mo, ActiveSpaceSpec{{}, {0, 1, 2}, 2});
  const PauliSum h = jordan_wigner(hamiltonian_to_fermion(fc), 6);
  const Statevector psi = random_state(6, 2);
  EXPECT_LT((apply_pauli_sum(psi, h) - h.to_dense() * psi.amps()).cwiseAbs().maxCoeff(), 1e-12);
  const cplx e = psi.amps().dot(h.to_dense() * psi.amps());
  EXPECT_NEAR(expectation(psi, h), e.real(), 1e-12);
}

TEST(Statevector, ExpectationRejectsNonHermitianResult) {
  PauliSum op(1);
  op.add(PauliString::from_string("Z"), cplx(0.0, 1.0));
  EXPECT_THROW(expectation(Statevector(1), op), InvariantError);
}

TEST(Rdms, ThreePathsAgreeAndReproduceEnergy) {
  const int n = 3;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const Statevector psi = random_sector_state(n, 2, 2, seed);
    const SpinFreeRDMs direct = measure_rdms(psi, n);
    const SpinFreeRDMs pauli = measure_rdms_via_pauli(psi, n);
    EXPECT_LT((direct.d1 - pauli.d1).cwiseAbs().maxCoeff(), 1e-12);
    for (std::size_t k = 0; k < direct.d2.size(); ++k) EXPECT_NEAR(direct.d2.data()[k], pauli.d2.data()[k], 1e-12);

    // dense E_pq from Kronecker-built ladder operators
    std::vector<Eigen::MatrixXcd> a;
    for (int j = 0; j < 2 * n; ++j) a.push_back(oracle::annihilator(j, 2 * n));
    auto e_op = [&](int p, int q) {
      Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(64, 64);
      for (int s = 0; s < 2; ++s) m += a[static_cast<std::size_t>(2 * p + s)].adjoint() * a[static_cast<std::size_t>(2 * q + s)];
      return m;
    };
    for (int p = 0; p < n; ++p)
      for (int q = 0; q < n; ++q) {
        const Eigen::MatrixXcd epq = e_op(p, q);
        EXPECT_NEAR(direct.d1(p, q), psi.amps().dot(epq * psi.amps()).real(), 1e-12);
        for (int r = 0; r < n; ++r)
          for (int s = 0; s < n; ++s) {
            Eigen::MatrixXcd e2 = epq * e_op(r, s);
            if (q == r) e2 -= e_op(p, s);
            EXPECT_NEAR(direct.d2(p, q, r, s), psi.amps().dot(e2 * psi.amps()).real(), 1e-12);
          }
      }
    EXPECT_NEAR(direct.d1.trace(), 4.0, 1e-12);

    const IntegralSet mo = random_integrals(n, 4, seed + 30);
    const auto fc = build_frozen_core(mo, ActiveSpaceSpec{{}, {0, 1, 2}, 4});
    const PauliSum h = jordan_wigner(hamiltonian_to_fermion(fc), 6);
    EXPECT_NEAR(direct.energy(fc), expectation(psi, h), 1e-11);
  }
}

TEST(Statevector, AmplitudeDumpIsLittleEndianDoubles) {
  Statevector psi(1);
  std::ostringstream out;
  write_amplitudes(out, psi);
  const std::string bytes = out.str();
  ASSERT_EQ(bytes.size(), 4 * sizeof(double));
  double first = 0.0;
  std::memcpy(&first, bytes.data(), sizeof(double));
  EXPECT_EQ(first, 1.0);
}

}  // namespace
}  // namespace saoovqe
