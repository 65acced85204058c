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

#include "saoovqe/qubit_ops.hpp"

#include <algorithm>
#include <bit>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "saoovqe/error.hpp"

namespace saoovqe {
namespace {

constexpr cplx kPhase[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};

std::string format_coeff(cplx c) {
  char buf[96];
  if (c.imag() == 0.0)
    std::snprintf(buf, sizeof(buf), "%.17g", c.real());
  else
    std::snprintf(buf, sizeof(buf), "(%.17g,%.17g)", c.real(), c.imag());
  return buf;
}

void check_index(int p, int n, const char* what) {
  if (p < 0 || p >= n) throw std::out_of_range(std::string(what) + ": orbital index out of range");
}

}  // namespace

// ---------------------------------------------------------------- FermionOp

FermionOp FermionOp::identity(double coeff) { return FermionOp(std::vector<FermionTerm>{{coeff, {}}}); }
FermionOp FermionOp::creation(int mode) { return FermionOp(std::vector<FermionTerm>{{1.0, {{mode, true}}}}); }
FermionOp FermionOp::annihilation(int mode) { return FermionOp(std::vector<FermionTerm>{{1.0, {{mode, false}}}}); }

void FermionOp::add_term(double coeff, std::vector<LadderOp> chain) {
  terms_.push_back({coeff, std::move(chain)});
}

FermionOp FermionOp::adjoint() const {
  FermionOp out;
  for (const auto& t : terms_) {
    std::vector<LadderOp> chain(t.chain.rbegin(), t.chain.rend());
    for (auto& op : chain) op.dagger = !op.dagger;
    out.add_term(t.coeff, std::move(chain));
  }
  return out;
}

int FermionOp::max_mode() const {
  int m = -1;
  for (const auto& t : terms_)
    for (const auto& op : t.chain) m = std::max(m, op.mode);
  return m;
}

bool FermionOp::conserves_particle_number() const {
  for (const auto& t : terms_) {
    int balance = 0;
    for (const auto& op : t.chain) balance += op.dagger ? 1 : -1;
    if (balance != 0) return false;
  }
  return true;
}

FermionOp& FermionOp::operator+=(const FermionOp& other) {
  terms_.insert(terms_.end(), other.terms_.begin(), other.terms_.end());
  return *this;
}

FermionOp& FermionOp::operator*=(double factor) {
  for (auto& t : terms_) t.coeff *= factor;
  return *this;
}

FermionOp operator*(const FermionOp& a, const FermionOp& b) {
  FermionOp out;
  for (const auto& ta : a.terms())
    for (const auto& tb : b.terms()) {
      std::vector<LadderOp> chain = ta.chain;
      chain.insert(chain.end(), tb.chain.begin(), tb.chain.end());
      out.add_term(ta.coeff * tb.coeff, std::move(chain));
    }
  return out;
}

std::optional<ChainImage> apply_chain(std::uint64_t bits, std::span<const LadderOp> chain) {
  int sign = 1;
  for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
    const std::uint64_t bit = std::uint64_t{1} << it->mode;
    const bool occupied = (bits & bit) != 0;
    if (occupied == it->dagger) return std::nullopt;
    if (std::popcount(bits & (bit - 1)) & 1) sign = -sign;
    bits ^= bit;
  }
  return ChainImage{bits, sign};
}

FermionOp spin_free_one_body(int p, int q, int n_spatial) {
  check_index(p, n_spatial, "spin_free_one_body");
  check_index(q, n_spatial, "spin_free_one_body");
  FermionOp out;
  for (Spin s : {Spin::Up, Spin::Down})
    out.add_term(1.0, {{spin_orbital(p, s), true}, {spin_orbital(q, s), false}});
  return out;
}

FermionOp spin_free_two_body(int p, int q, int r, int s, int n_spatial) {
  for (int idx : {p, q, r, s}) check_index(idx, n_spatial, "spin_free_two_body");
  FermionOp out;
  for (Spin sigma : {Spin::Up, Spin::Down})
    for (Spin tau : {Spin::Up, Spin::Down})
      out.add_term(1.0, {{spin_orbital(p, sigma), true},
                         {spin_orbital(r, tau), true},
                         {spin_orbital(s, tau), false},
                         {spin_orbital(q, sigma), false}});
  return out;
}

FermionOp hamiltonian_to_fermion(const FrozenCoreHamiltonian& fc) {
  const int n = fc.n_active_orb;
  FermionOp out = FermionOp::identity(fc.shift);
  for (int t = 0; t < n; ++t)
    for (int u = 0; u < n; ++u) {
      const double h = fc.h_eff(t, u);
      if (h != 0.0) out += h * spin_free_one_body(t, u, n);
    }
  for (int t = 0; t < n; ++t)
    for (int u = 0; u < n; ++u)
      for (int v = 0; v < n; ++v)
        for (int w = 0; w < n; ++w) {
          const double g = fc.g_act(t, u, v, w);
          if (g != 0.0) out += (0.5 * g) * spin_free_two_body(t, u, v, w, n);
        }
  return out;
}

// ---------------------------------------------------------------- Pauli

PauliString PauliString::from_string(const std::string& letters) {
  if (letters.size() > 32) throw std::invalid_argument("PauliString: more than 32 qubits");
  PauliString p;
  for (std::size_t q = 0; q < letters.size(); ++q) {
    const std::uint32_t bit = std::uint32_t{1} << q;
    switch (letters[q]) {
      case 'I': break;
      case 'X': p.x |= bit; break;
      case 'Y': p.x |= bit; p.z |= bit; break;
      case 'Z': p.z |= bit; break;
      default: throw std::invalid_argument("PauliString: unknown letter");
    }
  }
  return p;
}

std::string PauliString::to_string(int n_qubits) const {
  std::string s(static_cast<std::size_t>(n_qubits), 'I');
  for (int q = 0; q < n_qubits; ++q) {
    const bool xb = (x >> q) & 1u, zb = (z >> q) & 1u;
    s[q] = xb ? (zb ? 'Y' : 'X') : (zb ? 'Z' : 'I');
  }
  return s;
}

int PauliString::weight() const { return std::popcount(x | z); }

bool PauliString::commutes_with(const PauliString& o) const {
  return ((std::popcount(x & o.z) + std::popcount(z & o.x)) & 1) == 0;
}

std::pair<PauliString, int> multiply(const PauliString& a, const PauliString& b) {
  const PauliString c{a.x ^ b.x, a.z ^ b.z};
  const int k = std::popcount(a.x & a.z) + std::popcount(b.x & b.z) +
                2 * std::popcount(a.z & b.x) - std::popcount(c.x & c.z);
  return {c, ((k % 4) + 4) % 4};
}

void PauliSum::add(const PauliString& p, cplx coeff) {
  if (coeff == cplx(0.0)) return;
  terms_[p] += coeff;
}

cplx PauliSum::coefficient(const PauliString& p) const {
  const auto it = terms_.find(p);
  return it == terms_.end() ? cplx(0.0) : it->second;
}

void PauliSum::simplify(double tol) {
  std::erase_if(terms_, [tol](const auto& kv) { return std::abs(kv.second) < tol; });
}

bool PauliSum::is_hermitian(double tol) const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [tol](const auto& kv) { return std::abs(kv.second.imag()) <= tol; });
}

void PauliSum::require_hermitian(double tol) const {
  if (!is_hermitian(tol)) throw InvariantError("PauliSum: operator is not Hermitian");
}

Eigen::MatrixXcd PauliSum::to_dense() const {
  const Eigen::Index dim = Eigen::Index{1} << n_qubits_;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& [p, c] : terms_) {
    const cplx base = c * kPhase[std::popcount(p.x & p.z) % 4];
    for (Eigen::Index b = 0; b < dim; ++b) {
      const bool odd = std::popcount(static_cast<std::uint64_t>(b) & p.z) & 1;
      m(b ^ p.x, b) += odd ? -base : base;
    }
  }
  return m;
}

std::string PauliSum::dump() const {
  std::ostringstream out;
  for (const auto& [p, c] : terms_) out << format_coeff(c) << ' ' << p.to_string(n_qubits_) << '\n';
  return out.str();
}

PauliSum& PauliSum::operator+=(const PauliSum& other) {
  if (other.n_qubits_ != n_qubits_) throw std::invalid_argument("PauliSum: qubit-count mismatch");
  for (const auto& [p, c] : other.terms_) terms_[p] += c;
  simplify();
  return *this;
}

PauliSum& PauliSum::operator*=(cplx factor) {
  for (auto& kv : terms_) kv.second *= factor;
  simplify();
  return *this;
}

bool approx_equal(const PauliSum& a, const PauliSum& b, double tol) {
  if (a.n_qubits_ != b.n_qubits_) return false;
  PauliSum d = a - b;
  return std::all_of(d.terms_.begin(), d.terms_.end(),
                     [tol](const auto& kv) { return std::abs(kv.second) <= tol; });
}

PauliSum jordan_wigner(const FermionOp& f, int n_qubits) {
  const int needed = f.max_mode() + 1;
  if (n_qubits < 0) n_qubits = needed;
  if (needed > n_qubits) throw std::invalid_argument("jordan_wigner: mode index >= n_qubits");
  if (n_qubits > 32) throw std::invalid_argument("jordan_wigner: more than 32 qubits");

  PauliSum out(n_qubits);
  std::vector<std::pair<PauliString, cplx>> running, next;
  for (const auto& term : f.terms()) {
    running.assign(1, {PauliString{}, cplx(term.coeff)});
    for (const auto& op : term.chain) {
      const std::uint32_t bit = std::uint32_t{1} << op.mode;
      const std::uint32_t below = bit - 1;
      const PauliString xs{bit, below};
      const PauliString ys{bit, below | bit};
      const cplx cx(0.5, 0.0);
      const cplx cy(0.0, op.dagger ? -0.5 : 0.5);
      next.clear();
      for (const auto& [p, c] : running) {
        const auto [px, kx] = multiply(p, xs);
        next.emplace_back(px, c * cx * kPhase[kx]);
        const auto [py, ky] = multiply(p, ys);
        next.emplace_back(py, c * cy * kPhase[ky]);
      }
      running.swap(next);
    }
    for (const auto& [p, c] : running) out.add(p, c);
  }
  out.simplify();
  return out;
}

PauliSum pauli_multiply(const PauliSum& a, const PauliSum& b) {
  if (a.n_qubits() != b.n_qubits())
    throw std::invalid_argument("pauli_multiply: qubit-count mismatch");
  PauliSum out(a.n_qubits());
  for (const auto& [pa, ca] : a.terms())
    for (const auto& [pb, cb] : b.terms()) {
      const auto [pc, k] = multiply(pa, pb);
      out.add(pc, ca * cb * kPhase[k]);
    }
  out.simplify();
  return out;
}

}  // namespace saoovqe
