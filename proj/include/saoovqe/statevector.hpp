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

#include <iosfwd>
#include <vector>

#include <Eigen/Dense>

#include "saoovqe/qubit_ops.hpp"
#include "saoovqe/tensor.hpp"

namespace saoovqe {

/// Dense amplitude vector; basis index bit q is the occupation of qubit q.
class Statevector {
 public:
  Statevector() = default;
  /// |0...0>
  explicit Statevector(int n_qubits);
  Statevector(int n_qubits, Eigen::VectorXcd amps);

  int n_qubits() const { return n_qubits_; }
  Eigen::Index dim() const { return amps_.size(); }
  const Eigen::VectorXcd& amps() const { return amps_; }
  /// Mutable access; the caller is responsible for keeping the norm at 1.
  Eigen::VectorXcd& mutable_amps() { return amps_; }
  double norm() const { return amps_.norm(); }
  void normalize();

 private:
  int n_qubits_ = 0;
  Eigen::VectorXcd amps_;
};

Statevector prepare_determinant(int n_qubits, const std::vector<int>& occupied_spin_orbitals);

/// (1/sqrt2) sum_sigma a+_{lumo,sigma} a_{homo,sigma} |hf>, spatial indices.
Statevector prepare_singlet_homo_lumo(int n_qubits, const std::vector<int>& hf_occupation, int homo,
                                      int lumo);

/// In place: psi <- exp(i angle P) psi.
void apply_exp_pauli_inplace(Statevector& psi, const PauliString& p, double angle);
Statevector apply_exp_pauli(Statevector psi, const PauliString& p, double angle);

/// psi <- op psi (no normalization).
Eigen::VectorXcd apply_pauli_sum(const Statevector& psi, const PauliSum& op);

/// <psi|op|psi> without the Hermiticity check.
cplx expectation_complex(const Statevector& psi, const PauliSum& op);
/// Real part of <psi|op|psi>; throws InvariantError if |Im| > 1e-9.
double expectation(const Statevector& psi, const PauliSum& op);

cplx state_overlap(const Statevector& a, const Statevector& b);

/// <psi| chain |psi> for a single ladder chain.
cplx chain_expectation(const Statevector& psi, std::span<const LadderOp> chain);

struct SpinFreeRDMs {
  Eigen::MatrixXd d1;  // D_tu = <E_tu>
  Tensor4 d2;          // d_tuvw = <e_tuvw>

  int n_orb() const { return static_cast<int>(d1.rows()); }
  /// sum h D + 1/2 sum g d + shift
  double energy(const FrozenCoreHamiltonian& fc) const;
};

/// Direct amplitude contraction.
SpinFreeRDMs measure_rdms(const Statevector& psi, int n_active_orb);
/// Expectations of the Jordan-Wigner images of E_tu and e_tuvw.
SpinFreeRDMs measure_rdms_via_pauli(const Statevector& psi, int n_active_orb);

/// Little-endian (re, im) float64 pairs in index order.
void write_amplitudes(std::ostream& out, const Statevector& psi);

}  // namespace saoovqe
