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

#include <complex>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "saoovqe/integrals.hpp"

namespace saoovqe {

using cplx = std::complex<double>;

enum class Spin : int { Up = 0, Down = 1 };

/// Interleaved ordering: spatial orbital t -> qubits 2t (up) and 2t+1 (down).
constexpr int spin_orbital(int spatial, Spin s) { return 2 * spatial + static_cast<int>(s); }

struct LadderOp {
  int mode = 0;
  bool dagger = false;
  friend bool operator==(const LadderOp&, const LadderOp&) = default;
};

/// coeff * (product of ladder operators, leftmost applied last).
struct FermionTerm {
  double coeff = 0.0;
  std::vector<LadderOp> chain;
};

class FermionOp {
 public:
  FermionOp() = default;
  explicit FermionOp(std::vector<FermionTerm> terms) : terms_(std::move(terms)) {}

  static FermionOp identity(double coeff = 1.0);
  static FermionOp creation(int mode);
  static FermionOp annihilation(int mode);

  const std::vector<FermionTerm>& terms() const { return terms_; }
  void add_term(double coeff, std::vector<LadderOp> chain);

  /// Hermitian adjoint: reversed chains with daggers toggled.
  FermionOp adjoint() const;
  /// Largest mode index referenced, or -1 for a pure scalar.
  int max_mode() const;
  bool conserves_particle_number() const;

  FermionOp& operator+=(const FermionOp& other);
  FermionOp& operator*=(double factor);
  friend FermionOp operator+(FermionOp a, const FermionOp& b) { return a += b; }
  friend FermionOp operator-(FermionOp a, const FermionOp& b) { return a += (-1.0 * b); }
  friend FermionOp operator*(double f, FermionOp a) { return a *= f; }
  /// Operator product (chains concatenated).
  friend FermionOp operator*(const FermionOp& a, const FermionOp& b);

 private:
  std::vector<FermionTerm> terms_;
};

/// Result of acting with a ladder chain on an occupation bitstring:
/// the new bitstring and the fermionic sign, or nothing if annihilated.
struct ChainImage {
  std::uint64_t bits;
  int sign;
};
std::optional<ChainImage> apply_chain(std::uint64_t bits, std::span<const LadderOp> chain);

/// E_pq = sum_sigma a+_{p sigma} a_{q sigma}
FermionOp spin_free_one_body(int p, int q, int n_spatial);
/// e_pqrs = sum_{sigma,tau} a+_{p sigma} a+_{r tau} a_{s tau} a_{q sigma}
FermionOp spin_free_two_body(int p, int q, int r, int s, int n_spatial);
/// shift + sum h_eff E_tu + 1/2 sum g e_tuvw
FermionOp hamiltonian_to_fermion(const FrozenCoreHamiltonian& fc);

/// Pauli string as X/Z bit masks: P = i^{|x & z|} X^x Z^z, so (x,z) = (1,1) is Y.
struct PauliString {
  std::uint32_t x = 0;
  std::uint32_t z = 0;

  static PauliString from_string(const std::string& letters);  // qubit 0 leftmost
  std::string to_string(int n_qubits) const;
  int weight() const;
  bool commutes_with(const PauliString& other) const;

  friend auto operator<=>(const PauliString&, const PauliString&) = default;
};

/// a*b = phase * c; the phase is returned as a power of i (0..3).
std::pair<PauliString, int> multiply(const PauliString& a, const PauliString& b);

class PauliSum {
 public:
  static constexpr double kPruneTol = 1e-14;

  explicit PauliSum(int n_qubits = 0) : n_qubits_(n_qubits) {}

  int n_qubits() const { return n_qubits_; }
  const std::map<PauliString, cplx>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

  void add(const PauliString& p, cplx coeff);
  cplx coefficient(const PauliString& p) const;
  void simplify(double tol = kPruneTol);

  /// All coefficients real within `tol`.
  bool is_hermitian(double tol = 1e-12) const;
  /// Throws if not Hermitian; used at API boundaries.
  void require_hermitian(double tol = 1e-12) const;

  Eigen::MatrixXcd to_dense() const;
  /// One term per line: `<coeff> <string>`, qubit 0 leftmost.
  std::string dump() const;

  PauliSum& operator+=(const PauliSum& other);
  PauliSum& operator*=(cplx factor);
  friend PauliSum operator+(PauliSum a, const PauliSum& b) { return a += b; }
  friend PauliSum operator-(PauliSum a, const PauliSum& b) { return a += (b * cplx(-1.0)); }
  friend PauliSum operator*(PauliSum a, cplx f) { return a *= f; }

  friend bool approx_equal(const PauliSum& a, const PauliSum& b, double tol);

 private:
  int n_qubits_;
  std::map<PauliString, cplx> terms_;
};

/// Jordan-Wigner image; `n_qubits < 0` infers it from the largest mode.
PauliSum jordan_wigner(const FermionOp& f, int n_qubits = -1);

PauliSum pauli_multiply(const PauliSum& a, const PauliSum& b);

}  // namespace saoovqe
