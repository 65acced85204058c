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

#include <array>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "saoovqe/integrals.hpp"
#include "saoovqe/sa_oo.hpp"
#include "saoovqe/statevector.hpp"

namespace saoovqe {

/// S_z = 0 determinants of an active space, ordered lexicographically by
/// (alpha mask, beta mask). Determinant (a, b) is
/// a+_{j1} a+_{j2} ... |vac> over its interleaved spin orbitals j1 < j2 < ...,
/// which is the Jordan-Wigner basis state with amplitude +1.
class DeterminantBasis {
 public:
  DeterminantBasis() = default;
  DeterminantBasis(int n_orb, int n_elec);

  int n_orb() const { return n_orb_; }
  int n_elec() const { return 2 * n_per_spin_; }
  std::size_t size() const { return dets_.size(); }
  const std::vector<std::pair<std::uint32_t, std::uint32_t>>& determinants() const { return dets_; }

  /// Interleaved spin-orbital bitstring of determinant k.
  std::uint64_t bits(std::size_t k) const;
  /// Index of a bitstring, or nothing if it lies outside the sector.
  std::optional<std::size_t> index_of(std::uint64_t bits) const;

  friend bool operator==(const DeterminantBasis&, const DeterminantBasis&) = default;

 private:
  int n_orb_ = 0;
  int n_per_spin_ = 0;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> dets_;
};

std::uint64_t interleave(std::uint32_t alpha, std::uint32_t beta, int n_orb);

/// Matrix of a number-conserving operator in the determinant basis.
Eigen::MatrixXd determinant_matrix(const FermionOp& op, const DeterminantBasis& basis);
/// Total-spin operator S^2 on 2 n_orb spin orbitals.
FermionOp total_spin_squared(int n_orb);

struct CIVector {
  Eigen::VectorXd coeffs;
  DeterminantBasis basis;
  /// AO expansion of the frozen orbitals followed by the active ones.
  Eigen::MatrixXd orbitals;
  int n_frozen = 0;
};

Statevector to_statevector(const CIVector& ci);
/// Reads the sector amplitudes; throws InvariantError on an imaginary part
/// above 1e-9 or weight outside the sector above 1e-9.
CIVector from_statevector(const Statevector& psi, const DeterminantBasis& basis,
                          const Eigen::MatrixXd& orbitals = {}, int n_frozen = 0);

enum class SpinTarget { Any, Singlet };

struct CASCIState {
  double energy = 0.0;
  double s2 = 0.0;
  CIVector vector;
};

/// Lowest `n_states` eigenpairs of the frozen-core Hamiltonian in the S_z = 0
/// sector (restricted to S = 0 when requested); energies include the shift.
std::vector<CASCIState> casci_solve(const FrozenCoreHamiltonian& fc, int n_states,
                                    SpinTarget target = SpinTarget::Any);

struct ReferenceOptions {
  double energy_tol = 1e-10;
  int max_cycles = 500;
  OOOptions oo;  // active-active rotations are redundant for an exact solver
  SpinTarget target = SpinTarget::Singlet;

  ReferenceOptions() { oo.include_active_active = false; }
};

struct ReferenceResult {
  std::array<double, 2> energies{};
  double e_sa = 0.0;
  std::array<CIVector, 2> states;
  MOCoefficients c;
  int n_cycles = 0;
  double gradient_norm = 0.0;
  bool converged = false;
};

/// State-averaged CASSCF: exact CASCI alternated with orbital optimization.
ReferenceResult sa_casscf_reference(const IntegralSet& ao, const MOCoefficients& c0,
                                    const ActiveSpaceSpec& spec, double w_a, double w_b,
                                    const ReferenceOptions& options = {});

/// C1^T S C2 over spatial orbitals.
Eigen::MatrixXd mo_overlap_matrix(const Eigen::MatrixXd& c1, const Eigen::MatrixXd& c2,
                                  const Eigen::MatrixXd& s_ao);
/// Spin-diagonal expansion of a spatial overlap to interleaved spin orbitals.
Eigen::MatrixXd spin_orbital_overlap(const Eigen::MatrixXd& spatial);

/// <det1|det2> for ascending occupied spin-orbital lists, by separate alpha
/// and beta determinants.
double determinant_overlap(const std::vector<int>& occ1, const std::vector<int>& occ2,
                           const Eigen::MatrixXd& spatial_overlap);
/// Same, as a single determinant over all occupied spin orbitals.
double determinant_overlap_full(const std::vector<int>& occ1, const std::vector<int>& occ2,
                                const Eigen::MatrixXd& spin_overlap);

/// Occupied spin orbitals (frozen first, then active shifted by 2 n_frozen).
std::vector<int> occupied_spin_orbitals(const CIVector& ci, std::size_t det);

/// <a|b> across orbital bases.
double cross_basis_overlap(const CIVector& a, const CIVector& b, const Eigen::MatrixXd& s_ao);
/// |<ref|psi>|^2
double fidelity(const CIVector& psi, const CIVector& ref, const Eigen::MatrixXd& s_ao);

/// |<det|psi>|^2 for a determinant bitstring in the same basis.
double dominant_config_weight(const Statevector& psi, std::uint64_t det_bits);
double dominant_config_weight(const CIVector& psi, std::size_t det);

}  // namespace saoovqe
