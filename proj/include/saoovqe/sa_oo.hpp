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

#include <functional>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "saoovqe/integrals.hpp"
#include "saoovqe/statevector.hpp"

namespace saoovqe {

/// MOs taking part in the orbital optimization, ordered frozen, active, virtual.
struct OrbitalWindow {
  std::vector<int> mo_indices;
  int n_frozen = 0;
  int n_active = 0;
  int n_virtual = 0;

  int size() const { return static_cast<int>(mo_indices.size()); }
  /// The active-space spec expressed in window-local indices.
  ActiveSpaceSpec local_spec(int n_active_elec) const;
};

/// All frozen and active orbitals plus the first `n_virtual` remaining MOs by
/// index (all of them when negative).
OrbitalWindow make_window(const ActiveSpaceSpec& spec, int n_mo, int n_virtual = -1);

/// Independent rotation pairs (p, q), p > q, in window-local indices.
/// Frozen-frozen and virtual-virtual pairs are redundant and never included.
std::vector<std::pair<int, int>> rotation_pairs(const OrbitalWindow& window,
                                                bool include_active_active = true);

/// Antisymmetric K with K(p,q) = kappa_k, K(q,p) = -kappa_k for pair k = (p,q).
Eigen::MatrixXd skew_matrix(const Eigen::VectorXd& kappa,
                            const std::vector<std::pair<int, int>>& pairs, int n);
/// exp(-K)
Eigen::MatrixXd rotation_matrix(const Eigen::VectorXd& kappa,
                                const std::vector<std::pair<int, int>>& pairs, int n);

struct OrbitalRotation {
  OrbitalWindow window;
  std::vector<std::pair<int, int>> pairs;
  Eigen::VectorXd kappa;
};

/// Columns of `c` listed in the window are right-multiplied by exp(-K).
MOCoefficients rotate_orbitals(const MOCoefficients& c, const OrbitalRotation& rotation);

/// Weighted average of two sets of RDMs.
SpinFreeRDMs sa_rdms(const SpinFreeRDMs& a, const SpinFreeRDMs& b, double w_a, double w_b);

/// Active-space RDMs embedded in the window: frozen orbitals doubly occupied,
/// virtuals empty.
SpinFreeRDMs extend_rdms(const SpinFreeRDMs& active, int n_frozen, int n_virtual);

/// e_scalar + sum h D + 1/2 sum g d over window-basis integrals.
double window_energy(const IntegralSet& mo_window, const SpinFreeRDMs& rdms_window);

/// Generalized Fock matrix F_pq = sum_m D_pm h_qm + sum_mnt d_pmnt g_qmnt.
Eigen::MatrixXd generalized_fock(const IntegralSet& mo_window, const SpinFreeRDMs& rdms_window);

/// dE/dkappa at kappa = 0 for C <- C exp(-K).
Eigen::VectorXd orbital_gradient(const IntegralSet& mo_window, const SpinFreeRDMs& rdms_window,
                                 const std::vector<std::pair<int, int>>& pairs);
/// d2E/dkappa2 at kappa = 0.
Eigen::MatrixXd orbital_hessian(const IntegralSet& mo_window, const SpinFreeRDMs& rdms_window,
                                const std::vector<std::pair<int, int>>& pairs);

struct OOOptions {
  double g_tol = 1e-6;
  int max_iterations = 25;
  double tau_eig = 1e-4;
  double kappa_max = 0.5;
  int max_halvings = 10;
  bool include_active_active = true;
  int n_virtual = -1;  // OO window virtuals; all when negative
};

struct OOStepReport {
  double gradient_norm = 0.0;  // max-norm
  double hessian_min_eig = 0.0;
  double nu = 0.0;
  double step_norm = 0.0;  // max-norm of the accepted step
  double e_sa_before = 0.0;
  double e_sa_after = 0.0;
  int halvings = 0;
};

/// Newton step with the Hessian shifted by nu = max(0, tau - lambda_min) and
/// the max-norm capped at kappa_max. Fills every report field except the energies.
std::pair<Eigen::VectorXd, OOStepReport> augment_and_step(const Eigen::VectorXd& gradient,
                                                          const Eigen::MatrixXd& hessian,
                                                          const OOOptions& options = {});

struct OOCycleResult {
  MOCoefficients c;
  IntegralSet mo_window;  // integrals over the window in the final orbitals
  std::vector<OOStepReport> steps;
  double e_sa = 0.0;
  double gradient_norm = 0.0;
  bool converged = false;
};

/// Newton-Raphson orbital optimization at fixed active-space RDMs.
/// Throws NumericalError when no step-halving lowers the energy.
OOCycleResult sa_oo_cycle(const IntegralSet& ao, const MOCoefficients& c,
                          const ActiveSpaceSpec& spec, const SpinFreeRDMs& active_rdms,
                          const OOOptions& options = {},
                          const std::function<void(int, const OOStepReport&)>& on_step = {});

}  // namespace saoovqe
