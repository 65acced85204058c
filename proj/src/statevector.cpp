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

#include "saoovqe/statevector.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <ostream>
#include <stdexcept>

#include "saoovqe/error.hpp"

namespace saoovqe {
namespace {

constexpr cplx kPhase[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};

void check_qubits(int n) {
  if (n < 0 || n > 16) throw std::invalid_argument("Statevector: qubit count must be in [0, 16]");
}

void check_same_dim(const Statevector& a, const Statevector& b) {
  if (a.n_qubits() != b.n_qubits()) throw std::invalid_argument("Statevector: dimension mismatch");
}

inline double parity_sign(std::uint64_t bits) { return (std::popcount(bits) & 1) ? -1.0 : 1.0; }

}  // namespace

Statevector::Statevector(int n_qubits) : n_qubits_(n_qubits) {
  check_qubits(n_qubits);
  amps_ = Eigen::VectorXcd::Zero(Eigen::Index{1} << n_qubits);
  amps_(0) = 1.0;
}

Statevector::Statevector(int n_qubits, Eigen::VectorXcd amps)
    : n_qubits_(n_qubits), amps_(std::move(amps)) {
  check_qubits(n_qubits);
  if (amps_.size() != (Eigen::Index{1} << n_qubits))
    throw std::invalid_argument("Statevector: amplitude count is not 2^n_qubits");
}

void Statevector::normalize() {
  const double n = amps_.norm();
  if (!(n > 0.0)) throw NumericalError("Statevector: cannot normalize a zero vector");
  amps_ /= n;
}

Statevector prepare_determinant(int n_qubits, const std::vector<int>& occupied) {
  check_qubits(n_qubits);
  std::uint64_t bits = 0;
  for (int q : occupied) {
    if (q < 0 || q >= n_qubits) throw std::invalid_argument("prepare_determinant: index out of range");
    const std::uint64_t bit = std::uint64_t{1} << q;
    if (bits & bit) throw std::invalid_argument("prepare_determinant: duplicate index");
    bits |= bit;
  }
  Statevector psi(n_qubits);
  psi.mutable_amps().setZero();
  psi.mutable_amps()(static_cast<Eigen::Index>(bits)) = 1.0;
  return psi;
}

Statevector prepare_singlet_homo_lumo(int n_qubits, const std::vector<int>& hf_occupation, int homo,
                                      int lumo) {
  const Statevector hf = prepare_determinant(n_qubits, hf_occupation);
  std::uint64_t bits = 0;
  for (int q : hf_occupation) bits |= std::uint64_t{1} << q;

  Statevector out(n_qubits);
  out.mutable_amps().setZero();
  int hits = 0;
  for (Spin s : {Spin::Up, Spin::Down}) {
    const int h = spin_orbital(homo, s), l = spin_orbital(lumo, s);
    if (h >= n_qubits || l >= n_qubits || h < 0 || l < 0)
      throw std::invalid_argument("prepare_singlet_homo_lumo: orbital out of range");
    if (!((bits >> h) & 1u)) throw std::invalid_argument("prepare_singlet_homo_lumo: HOMO not occupied");
    if ((bits >> l) & 1u) throw std::invalid_argument("prepare_singlet_homo_lumo: LUMO occupied");
    const LadderOp chain[2] = {{l, true}, {h, false}};
    if (auto img = apply_chain(bits, chain)) {
      out.mutable_amps()(static_cast<Eigen::Index>(img->bits)) += static_cast<double>(img->sign);
      ++hits;
    }
  }
  if (hits == 0) throw std::invalid_argument("prepare_singlet_homo_lumo: excitation annihilates HF");
  out.normalize();
  return out;
}

void apply_exp_pauli_inplace(Statevector& psi, const PauliString& p, double angle) {
  if ((static_cast<std::uint64_t>(p.x | p.z) >> psi.n_qubits()) != 0)
    throw std::invalid_argument("apply_exp_pauli: string longer than the register");
  Eigen::VectorXcd& a = psi.mutable_amps();
  const double c = std::cos(angle), s = std::sin(angle);
  const std::uint64_t x = p.x, z = p.z;
  const cplx base = kPhase[std::popcount(p.x & p.z) % 4];
  const auto dim = static_cast<std::uint64_t>(a.size());
  if (x == 0) {
    const cplx plus(c, s), minus(c, -s);
    for (std::uint64_t b = 0; b < dim; ++b) a(b) *= (std::popcount(b & z) & 1) ? minus : plus;
    return;
  }
  const cplx is(0.0, s);
  for (std::uint64_t b = 0; b < dim; ++b) {
    const std::uint64_t b2 = b ^ x;
    if (b2 < b) continue;
    // (P a)_b = base * (-1)^{|b2 & z|} a_{b2}
    const cplx ab = a(b), ab2 = a(b2);
    a(b) = c * ab + is * base * parity_sign(b2 & z) * ab2;
    a(b2) = c * ab2 + is * base * parity_sign(b & z) * ab;
  }
}

Statevector apply_exp_pauli(Statevector psi, const PauliString& p, double angle) {
  apply_exp_pauli_inplace(psi, p, angle);
  return psi;
}

Eigen::VectorXcd apply_pauli_sum(const Statevector& psi, const PauliSum& op) {
  if (op.n_qubits() != psi.n_qubits()) throw std::invalid_argument("apply_pauli_sum: dimension mismatch");
  const Eigen::VectorXcd& a = psi.amps();
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(a.size());
  const auto dim = static_cast<std::uint64_t>(a.size());
  for (const auto& [p, coeff] : op.terms()) {
    const cplx base = coeff * kPhase[std::popcount(p.x & p.z) % 4];
    for (std::uint64_t b = 0; b < dim; ++b) out(b ^ p.x) += base * parity_sign(b & p.z) * a(b);
  }
  return out;
}

cplx expectation_complex(const Statevector& psi, const PauliSum& op) {
  return psi.amps().dot(apply_pauli_sum(psi, op));
}

double expectation(const Statevector& psi, const PauliSum& op) {
  const cplx v = expectation_complex(psi, op);
  if (std::abs(v.imag()) > 1e-9) throw InvariantError("expectation: imaginary part exceeds 1e-9");
  return v.real();
}

cplx state_overlap(const Statevector& a, const Statevector& b) {
  check_same_dim(a, b);
  return a.amps().dot(b.amps());
}

cplx chain_expectation(const Statevector& psi, std::span<const LadderOp> chain) {
  const Eigen::VectorXcd& a = psi.amps();
  cplx acc = 0.0;
  for (Eigen::Index b = 0; b < a.size(); ++b) {
    if (a(b) == cplx(0.0)) continue;
    if (auto img = apply_chain(static_cast<std::uint64_t>(b), chain))
      acc += std::conj(a(static_cast<Eigen::Index>(img->bits))) * static_cast<double>(img->sign) * a(b);
  }
  return acc;
}

double SpinFreeRDMs::energy(const FrozenCoreHamiltonian& fc) const {
  const int n = n_orb();
  if (fc.n_active_orb != n) throw std::invalid_argument("SpinFreeRDMs::energy: dimension mismatch");
  double e = fc.shift + (fc.h_eff.array() * d1.array()).sum();
  const double* g = fc.g_act.data();
  const double* d = d2.data();
  double two = 0.0;
  for (std::size_t i = 0; i < d2.size(); ++i) two += g[i] * d[i];
  return e + 0.5 * two;
}

SpinFreeRDMs measure_rdms(const Statevector& psi, int n) {
  if (psi.n_qubits() != 2 * n) throw std::invalid_argument("measure_rdms: n_qubits != 2 n_active_orb");
  SpinFreeRDMs r{Eigen::MatrixXd::Zero(n, n), Tensor4(static_cast<std::size_t>(n))};
  const Eigen::VectorXcd& a = psi.amps();
  for (Eigen::Index b = 0; b < a.size(); ++b) {
    const cplx ab = a(b);
    if (ab == cplx(0.0)) continue;
    const auto bits = static_cast<std::uint64_t>(b);
    auto contrib = [&](std::span<const LadderOp> chain) -> double {
      auto img = apply_chain(bits, chain);
      if (!img) return 0.0;
      return (std::conj(a(static_cast<Eigen::Index>(img->bits))) * ab).real() * img->sign;
    };
    for (int t = 0; t < n; ++t)
      for (int u = 0; u < n; ++u)
        for (Spin s : {Spin::Up, Spin::Down}) {
          const LadderOp ch[2] = {{spin_orbital(t, s), true}, {spin_orbital(u, s), false}};
          r.d1(t, u) += contrib(ch);
        }
    for (int t = 0; t < n; ++t)
      for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v)
          for (int w = 0; w < n; ++w) {
            double acc = 0.0;
            for (Spin s : {Spin::Up, Spin::Down})
              for (Spin q : {Spin::Up, Spin::Down}) {
                const LadderOp ch[4] = {{spin_orbital(t, s), true},
                                        {spin_orbital(v, q), true},
                                        {spin_orbital(w, q), false},
                                        {spin_orbital(u, s), false}};
                acc += contrib(ch);
              }
            r.d2(t, u, v, w) += acc;
          }
  }
  return r;
}

SpinFreeRDMs measure_rdms_via_pauli(const Statevector& psi, int n) {
  if (psi.n_qubits() != 2 * n) throw std::invalid_argument("measure_rdms: n_qubits != 2 n_active_orb");
  const int nq = 2 * n;
  SpinFreeRDMs r{Eigen::MatrixXd::Zero(n, n), Tensor4(static_cast<std::size_t>(n))};
  for (int t = 0; t < n; ++t)
    for (int u = 0; u < n; ++u)
      r.d1(t, u) = expectation_complex(psi, jordan_wigner(spin_free_one_body(t, u, n), nq)).real();
  for (int t = 0; t < n; ++t)
    for (int u = 0; u < n; ++u)
      for (int v = 0; v < n; ++v)
        for (int w = 0; w < n; ++w)
          r.d2(t, u, v, w) =
              expectation_complex(psi, jordan_wigner(spin_free_two_body(t, u, v, w, n), nq)).real();
  return r;
}

void write_amplitudes(std::ostream& out, const Statevector& psi) {
  auto put = [&out](double v) {
    unsigned char buf[8];
    std::memcpy(buf, &v, 8);
    if constexpr (std::endian::native == std::endian::big) std::reverse(buf, buf + 8);
    out.write(reinterpret_cast<const char*>(buf), 8);
  };
  for (Eigen::Index i = 0; i < psi.dim(); ++i) {
    put(psi.amps()(i).real());
    put(psi.amps()(i).imag());
  }
}

}  // namespace saoovqe
