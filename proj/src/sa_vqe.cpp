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

#include "saoovqe/sa_vqe.hpp"

#include <cmath>
#include <stdexcept>

#include "saoovqe/error.hpp"
#include "saoovqe/synthetic.hpp"

namespace saoovqe {

void EnsembleSpec::validate() const {
  if (std::abs(w_a + w_b - 1.0) > 1e-12) throw InvariantError("ensemble: weights must sum to 1");
  if (w_b < 0.0 || w_a < w_b) throw InvariantError("ensemble: weights must satisfy w_a >= w_b >= 0");
  if (phi_a.n_qubits() != phi_b.n_qubits())
    throw InvariantError("ensemble: initial states differ in size");
  if (std::abs(state_overlap(phi_a, phi_b)) > 1e-10)
    throw InvariantError("ensemble: initial states are not orthogonal");
}

EnsembleSpec make_ensemble(int n_orb, int n_elec, double w_a, double w_b) {
  if (n_elec < 2 || n_elec % 2 != 0 || n_elec >= 2 * n_orb)
    throw std::invalid_argument("make_ensemble: need an even electron count leaving a virtual orbital");
  const int n_occ = n_elec / 2;
  std::vector<int> occ;
  for (int i = 0; i < n_occ; ++i) {
    occ.push_back(spin_orbital(i, Spin::Up));
    occ.push_back(spin_orbital(i, Spin::Down));
  }
  EnsembleSpec e{w_a, w_b, prepare_determinant(2 * n_orb, occ),
                 prepare_singlet_homo_lumo(2 * n_orb, occ, n_occ - 1, n_occ)};
  e.validate();
  return e;
}

SAEnergy sa_energy(const Statevector& psi_a, const Statevector& psi_b, double w_a, double w_b,
                   const PauliSum& h) {
  SAEnergy e;
  e.e_a = expectation(psi_a, h);
  e.e_b = expectation(psi_b, h);
  e.e_sa = w_a * e.e_a + w_b * e.e_b;
  return e;
}

SAEnergy sa_energy(const Eigen::VectorXd& theta, const EnsembleSpec& ens, const AnsatzSpec& ansatz,
                   const PauliSum& h) {
  return sa_energy(apply_ansatz(ens.phi_a, ansatz, theta), apply_ansatz(ens.phi_b, ansatz, theta),
                   ens.w_a, ens.w_b, h);
}

double sa_variance(const Statevector& psi_a, const Statevector& psi_b, double w_a, double w_b,
                   const PauliSum& h, const PauliSum& h2) {
  auto var = [&](const Statevector& psi) {
    const double e = expectation(psi, h);
    return expectation(psi, h2) - e * e;
  };
  return w_a * var(psi_a) + w_b * var(psi_b);
}

double sa_variance(const Eigen::VectorXd& theta, const EnsembleSpec& ens, const AnsatzSpec& ansatz,
                   const PauliSum& h, const PauliSum& h2) {
  return sa_variance(apply_ansatz(ens.phi_a, ansatz, theta), apply_ansatz(ens.phi_b, ansatz, theta),
                     ens.w_a, ens.w_b, h, h2);
}

SubspaceStates diagonalize_pair(const Statevector& psi_a, const Statevector& psi_b, const PauliSum& h,
                                const Statevector& label_a, const Statevector& label_b) {
  const Eigen::VectorXcd ha = apply_pauli_sum(psi_a, h), hb = apply_pauli_sum(psi_b, h);
  Eigen::Matrix2d m;
  m(0, 0) = psi_a.amps().dot(ha).real();
  m(1, 1) = psi_b.amps().dot(hb).real();
  m(0, 1) = m(1, 0) = 0.5 * (psi_a.amps().dot(hb).real() + psi_b.amps().dot(ha).real());
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(m);
  Statevector v[2];
  for (int k = 0; k < 2; ++k)
    v[k] = Statevector(psi_a.n_qubits(), es.eigenvectors()(0, k) * psi_a.amps() +
                                             es.eigenvectors()(1, k) * psi_b.amps());
  const int ia = std::norm(state_overlap(label_a, v[0])) >= std::norm(state_overlap(label_a, v[1])) ? 0 : 1;
  SubspaceStates out{v[ia], v[1 - ia], es.eigenvalues()(ia), es.eigenvalues()(1 - ia)};
  if (state_overlap(label_a, out.psi_a).real() < 0.0) out.psi_a.mutable_amps() *= -1.0;
  if (state_overlap(label_b, out.psi_b).real() < 0.0) out.psi_b.mutable_amps() *= -1.0;
  return out;
}

SAVQEResult optimize(const EnsembleSpec& ens, const PauliSum& h, const AnsatzSpec& ansatz,
                     const SAVQEOptions& opt) {
  ens.validate();
  h.require_hermitian();
  const bool with_variance = opt.cost == CostMode::EnergyPlusVariance;
  const PauliSum h2 = with_variance ? pauli_multiply(h, h) : PauliSum(h.n_qubits());

  const Objective cost = [&](const Eigen::VectorXd& theta) {
    const Statevector a = apply_ansatz(ens.phi_a, ansatz, theta);
    const Statevector b = apply_ansatz(ens.phi_b, ansatz, theta);
    double c = sa_energy(a, b, ens.w_a, ens.w_b, h).e_sa;
    if (with_variance) c += opt.beta * sa_variance(a, b, ens.w_a, ens.w_b, h, h2);
    return c;
  };

  IterationCallback callback;
  if (opt.trace) {
    callback = [&](int it, const Eigen::VectorXd& theta, double, double gnorm) {
      const Statevector a = apply_ansatz(ens.phi_a, ansatz, theta);
      const Statevector b = apply_ansatz(ens.phi_b, ansatz, theta);
      const SAEnergy e = sa_energy(a, b, ens.w_a, ens.w_b, h);
      SAVQETraceRow row{it, e.e_sa, e.e_a, e.e_b, gnorm, std::nullopt};
      if (with_variance) row.variance = sa_variance(a, b, ens.w_a, ens.w_b, h, h2);
      opt.trace(row);
    };
  }

  Eigen::VectorXd theta0 = opt.theta0.size() == 0 ? Eigen::VectorXd::Zero(ansatz.n_parameters())
                                                  : opt.theta0;
  if (theta0.size() != ansatz.n_parameters())
    throw std::invalid_argument("optimize: initial theta has the wrong length");

  MinimizeResult best = minimize(cost, theta0, opt.minimizer, callback);
  int evaluations = best.n_evaluations;
  Rng rng(opt.seed);
  for (int k = 0; k < opt.n_restarts; ++k) {
    Eigen::VectorXd start = theta0;
    for (Eigen::Index i = 0; i < start.size(); ++i)
      start(i) += rng.uniform(-opt.restart_scale, opt.restart_scale);
    MinimizeResult r = minimize(cost, start, opt.minimizer, callback);
    evaluations += r.n_evaluations;
    if (r.f < best.f) best = std::move(r);
  }

  SAVQEResult out;
  out.theta_opt = best.x;
  out.psi_a = apply_ansatz(ens.phi_a, ansatz, best.x);
  out.psi_b = apply_ansatz(ens.phi_b, ansatz, best.x);
  const SAEnergy e = sa_energy(out.psi_a, out.psi_b, ens.w_a, ens.w_b, h);
  out.e_a = e.e_a;
  out.e_b = e.e_b;
  out.e_sa = e.e_sa;
  if (with_variance) out.variance_sa = sa_variance(out.psi_a, out.psi_b, ens.w_a, ens.w_b, h, h2);
  out.n_evaluations = evaluations;
  out.iterations = best.iterations;
  out.converged = best.converged;
  return out;
}

}  // namespace saoovqe
