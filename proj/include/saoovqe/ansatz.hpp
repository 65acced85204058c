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
#include <iosfwd>
#include <vector>

#include <Eigen/Dense>

#include "saoovqe/qubit_ops.hpp"
#include "saoovqe/statevector.hpp"

namespace saoovqe {

/// Spatial index quadruple (t, u, v, w) of theta_tuvw.
struct Quadruple {
  int t = 0, u = 0, v = 0, w = 0;
  friend bool operator==(const Quadruple&, const Quadruple&) = default;
};

/// One fermionic exponential exp(theta (a+_{p s} a+_{r q} a_{s' q} a_{q' s} - h.c.)),
/// stored with its commuting Jordan-Wigner factors exp(i theta a_k P_k).
struct ExcitationTerm {
  int parameter_id = 0;
  Spin sigma = Spin::Up;
  Spin tau = Spin::Up;
  bool swapped = false;
  /// Orbitals in chain order: a+_{o[0] sigma} a+_{o[1] tau} a_{o[2] tau} a_{o[3] sigma}.
  std::array<int, 4> orbitals{};
  std::vector<std::pair<PauliString, double>> rotations;

  FermionOp generator() const;  // A - A^dagger
};

struct AnsatzSpec {
  int n_active_orb = 0;
  std::vector<Quadruple> parameters;
  std::vector<ExcitationTerm> term_sequence;

  int n_parameters() const { return static_cast<int>(parameters.size()); }
  int n_qubits() const { return 2 * n_active_orb; }
};

/// Quadruples with t >= v >= w >= u, excluding t = u = v = w, in the loop
/// order u, t, w, v; the term sequence is filled as well.
AnsatzSpec enumerate_parameters(int n_active_orb);

/// Four spin blocks (up up), (down up), (up down), (down down) per quadruple,
/// then the same four with t <-> v and u <-> w.
std::vector<ExcitationTerm> build_term_sequence(int n_active_orb,
                                                const std::vector<Quadruple>& parameters);

void apply_ansatz_inplace(Statevector& psi, const AnsatzSpec& spec, const Eigen::VectorXd& theta);
Statevector apply_ansatz(Statevector psi, const AnsatzSpec& spec, const Eigen::VectorXd& theta);

/// Basis change (H or Rx(pi/2) and its inverse) around each X/Y, a CNOT
/// ladder of 2(k-1) gates for weight k, and one Rz per Pauli string.
struct GateCount {
  long total = 0;
  long single_qubit = 0;
  long two_qubit = 0;
  friend bool operator==(const GateCount&, const GateCount&) = default;
};
GateCount count_gates(const AnsatzSpec& spec);

/// One exponential per line: `id sigma tau swapped o0 o1 o2 o3 n_strings`.
void write_term_sequence(std::ostream& out, const AnsatzSpec& spec);

}  // namespace saoovqe
