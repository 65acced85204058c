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

#pragma once

#include <cstdint>
#include <random>
#include <utility>

#include "saoovqe/integrals.hpp"

namespace saoovqe {

/// Seeded generator whose output depends only on the seed. Uniform deviates
/// are built from raw 53-bit draws because the standard distributions are
/// implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Standard normal deviate (Box-Muller).
  double normal();
  std::uint64_t next() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

/// Unstructured random integrals with full 8-fold symmetry. With
/// `basis == AO` the overlap is a random symmetric positive-definite matrix.
IntegralSet random_integrals(int n_orb, int n_elec, std::uint64_t seed,
                             BasisTag basis = BasisTag::MO);

/// MO-basis integrals with a molecule-like structure: ordered orbital
/// energies, weak off-diagonal one-electron coupling, and a positive
/// semidefinite Coulomb-like (pq|rs) built from a low-rank factorization.
IntegralSet molecular_like_integrals(int n_orb, int n_elec, std::uint64_t seed,
                                     double coupling = 0.05);

/// AO-basis fixture (non-orthogonal overlap) plus an S-orthonormal C whose
/// MO integrals equal `molecular_like_integrals(n_orb, n_elec, seed, coupling)`.
std::pair<IntegralSet, MOCoefficients> synthetic_fixture(int n_orb, int n_elec, std::uint64_t seed,
                                                         double coupling = 0.05);

/// Random real orthogonal matrix (QR of a Gaussian matrix, sign-fixed).
Eigen::MatrixXd random_orthogonal(int n, Rng& rng);

}  // namespace saoovqe
