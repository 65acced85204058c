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

#include "saoovqe/ansatz.hpp"

#include <bit>
#include <ostream>
#include <stdexcept>

#include "saoovqe/error.hpp"

namespace saoovqe {
namespace {

const char* spin_label(Spin s) { return s == Spin::Up ? "up" : "down"; }

FermionOp excitation_chain(const std::array<int, 4>& o, Spin sigma, Spin tau) {
  FermionOp a;
  a.add_term(1.0, {{spin_orbital(o[0], sigma), true},
                   {spin_orbital(o[1], tau), true},
                   {spin_orbital(o[2], tau), false},
                   {spin_orbital(o[3], sigma), false}});
  return a;
}

}  // namespace

FermionOp ExcitationTerm::generator() const {
  const FermionOp a = excitation_chain(orbitals, sigma, tau);
  return a - a.adjoint();
}

std::vector<ExcitationTerm> build_term_sequence(int n, const std::vector<Quadruple>& parameters) {
  constexpr std::array<std::pair<Spin, Spin>, 4> kSpinOrder = {{{Spin::Up, Spin::Up},
                                                                {Spin::Down, Spin::Up},
                                                                {Spin::Up, Spin::Down},
                                                                {Spin::Down, Spin::Down}}};
  std::vector<ExcitationTerm> seq;
  seq.reserve(parameters.size() * 8);
  for (std::size_t id = 0; id < parameters.size(); ++id) {
    const Quadruple& q = parameters[id];
    for (bool swapped : {false, true}) {
      // a+_t a+_v a_w a_u, or a+_v a+_t a_u a_w after the swap
      const std::array<int, 4> o = swapped ? std::array<int, 4>{q.v, q.t, q.u, q.w}
                                           : std::array<int, 4>{q.t, q.v, q.w, q.u};
      for (const auto& [sigma, tau] : kSpinOrder) {
        ExcitationTerm term;
        term.parameter_id = static_cast<int>(id);
        term.sigma = sigma;
        term.tau = tau;
        term.swapped = swapped;
        term.orbitals = o;
        const PauliSum image = jordan_wigner(term.generator(), 2 * n);
        for (const auto& [p, c] : image.terms()) {
          if (std::abs(c.real()) > 1e-12)
            throw InvariantError("ansatz: generator image is not anti-Hermitian");
          term.rotations.emplace_back(p, c.imag());
        }
        for (std::size_t i = 0; i < term.rotations.size(); ++i)
          for (std::size_t j = i + 1; j < term.rotations.size(); ++j)
            if (!term.rotations[i].first.commutes_with(term.rotations[j].first))
              throw InvariantError("ansatz: Pauli strings within one exponential do not commute");
        seq.push_back(std::move(term));
      }
    }
  }
  return seq;
}

AnsatzSpec enumerate_parameters(int n) {
  if (n < 1) throw std::invalid_argument("enumerate_parameters: need at least one orbital");
  if (n > 8) throw std::invalid_argument("enumerate_parameters: more than 16 qubits");
  AnsatzSpec spec;
  spec.n_active_orb = n;
  for (int u = 0; u < n; ++u)
    for (int t = 0; t < n; ++t)
      for (int w = 0; w < n; ++w)
        for (int v = 0; v < n; ++v) {
          if (t == u && u == v && v == w) continue;
          if (t >= v && v >= w && w >= u) spec.parameters.push_back({t, u, v, w});
        }
  spec.term_sequence = build_term_sequence(n, spec.parameters);
  return spec;
}

void apply_ansatz_inplace(Statevector& psi, const AnsatzSpec& spec, const Eigen::VectorXd& theta) {
  if (theta.size() != spec.n_parameters())
    throw std::invalid_argument("apply_ansatz: theta length does not match the parameter count");
  if (psi.n_qubits() != spec.n_qubits())
    throw std::invalid_argument("apply_ansatz: register size does not match the ansatz");
  for (const auto& term : spec.term_sequence) {
    const double th = theta(term.parameter_id);
    if (th == 0.0) continue;
    for (const auto& [p, a] : term.rotations) apply_exp_pauli_inplace(psi, p, th * a);
  }
}

Statevector apply_ansatz(Statevector psi, const AnsatzSpec& spec, const Eigen::VectorXd& theta) {
  apply_ansatz_inplace(psi, spec, theta);
  return psi;
}

GateCount count_gates(const AnsatzSpec& spec) {
  GateCount g;
  for (const auto& term : spec.term_sequence)
    for (const auto& [p, a] : term.rotations) {
      const int k = p.weight();
      if (k == 0) continue;
      g.single_qubit += 2 * std::popcount(p.x) + 1;
      g.two_qubit += 2 * (k - 1);
    }
  g.total = g.single_qubit + g.two_qubit;
  return g;
}

void write_term_sequence(std::ostream& out, const AnsatzSpec& spec) {
  for (const auto& t : spec.term_sequence) {
    out << t.parameter_id << ' ' << spin_label(t.sigma) << ' ' << spin_label(t.tau) << ' '
        << (t.swapped ? 1 : 0);
    for (int o : t.orbitals) out << ' ' << o;
    out << ' ' << t.rotations.size() << '\n';
  }
}

}  // namespace saoovqe
