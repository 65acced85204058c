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
#include <functional>
#include <optional>

#include <Eigen/Dense>

#include "saoovqe/ansatz.hpp"
#include "saoovqe/minimize.hpp"
#include "saoovqe/qubit_ops.hpp"
#include "saoovqe/statevector.hpp"

namespace saoovqe {

struct EnsembleSpec {
  double w_a = 0.5;
  double w_b = 0.5;
  Statevector phi_a;
  Statevector phi_b;

  /// Throws InvariantError unless w_a + w_b = 1, w_a >= w_b >= 0 and <phi_a|phi_b> = 0.
  void validate() const;
};

/// Closed-shell HF determinant and its singlet HOMO -> LUMO excitation.
EnsembleSpec make_ensemble(int n_active_orb, int n_active_elec, double w_a = 0.5, double w_b = 0.5);

struct SAEnergy {
  double e_sa = 0.0;
  double e_a = 0.0;
  double e_b = 0.0;
};

SAEnergy sa_energy(const Eigen::VectorXd& theta, const EnsembleSpec& ensemble,
                   const AnsatzSpec& ansatz, const PauliSum& h);
/// Ensemble energy of an explicit state pair.
SAEnergy sa_energy(const Statevector& psi_a, const Statevector& psi_b, double w_a, double w_b,
                   const PauliSum& h);

/// w_a (<H^2> - <H>^2)_A + w_b (<H^2> - <H>^2)_B; `h2` is pauli_multiply(h, h).
double sa_variance(const Eigen::VectorXd& theta, const EnsembleSpec& ensemble,
                   const AnsatzSpec& ansatz, const PauliSum& h, const PauliSum& h2);
double sa_variance(const Statevector& psi_a, const Statevector& psi_b, double w_a, double w_b,
                   const PauliSum& h, const PauliSum& h2);

enum class CostMode { Energy, EnergyPlusVariance };

struct SAVQETraceRow {
  int iteration = 0;
  double e_sa = 0.0;
  double e_a = 0.0;
  double e_b = 0.0;
  double grad_norm = 0.0;
  std::optional<double> variance;
};

struct SAVQEOptions {
  MinimizeOptions minimizer;
  Eigen::VectorXd theta0;  // empty means zeros
  CostMode cost = CostMode::Energy;
  double beta = 1.0;
  int n_restarts = 0;
  std::uint64_t seed = 0;
  double restart_scale = 0.3;
  std::function<void(const SAVQETraceRow&)> trace;
};

struct SAVQEResult {
  Eigen::VectorXd theta_opt;
  double e_a = 0.0;
  double e_b = 0.0;
  double e_sa = 0.0;
  std::optional<double> variance_sa;
  int n_evaluations = 0;
  int iterations = 0;
  bool converged = false;
  Statevector psi_a;
  Statevector psi_b;
};

/// Eigenstates of H within span{psi_a, psi_b}. The one overlapping `label_a`
/// more is returned first, with phases chosen so that <label|state> >= 0.
struct SubspaceStates {
  Statevector psi_a, psi_b;
  double e_a = 0.0, e_b = 0.0;
};
SubspaceStates diagonalize_pair(const Statevector& psi_a, const Statevector& psi_b, const PauliSum& h,
                                const Statevector& label_a, const Statevector& label_b);

SAVQEResult optimize(const EnsembleSpec& ensemble, const PauliSum& h, const AnsatzSpec& ansatz,
                     const SAVQEOptions& options = {});

}  // namespace saoovqe
