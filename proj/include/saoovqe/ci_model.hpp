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
#include <iosfwd>
#include <utility>

#include <Eigen/Dense>

namespace saoovqe {

using ScalarField = std::function<double(const Eigen::VectorXd&)>;

/// H(R) = h0(R) I + h_X (R - R0).R_X X + h_Z (R - R0).R_Z Z
struct ConeModel {
  Eigen::VectorXd r0;
  Eigen::VectorXd rx;
  Eigen::VectorXd rz;
  double hx = 1.0;
  double hz = 1.0;
  ScalarField h0;  // zero when empty

  /// Throws std::invalid_argument unless dimensions agree and R_X, R_Z are
  /// linearly independent.
  void validate() const;
  double background(const Eigen::VectorXd& r) const { return h0 ? h0(r) : 0.0; }
};

/// c + 1/2 k |R - center|^2
ScalarField quadratic_background(Eigen::VectorXd center, double c, double k);

Eigen::Matrix2d cone_hamiltonian(const ConeModel& model, const Eigen::VectorXd& r);
/// h0 -/+ sqrt((h_X d.R_X)^2 + (h_Z d.R_Z)^2), d = R - R0.
std::pair<double, double> cone_energies(const ConeModel& model, const Eigen::VectorXd& r);

/// V(R) = V_0 I + V_X X + V_Z Z, each linearized about the model's R0.
struct LinearPerturbation {
  double v0 = 0.0, vx = 0.0, vz = 0.0;
  Eigen::VectorXd grad_v0, grad_vx, grad_vz;  // zero when empty

  double eval_v0(const Eigen::VectorXd& r, const Eigen::VectorXd& r0) const;
  double eval_vx(const Eigen::VectorXd& r, const Eigen::VectorXd& r0) const;
  double eval_vz(const Eigen::VectorXd& r, const Eigen::VectorXd& r0) const;
};

Eigen::Matrix2d perturbed_hamiltonian(const ConeModel& model, const LinearPerturbation& v,
                                      const Eigen::VectorXd& r);

struct ShiftedApex {
  Eigen::VectorXd r0;              // minimum-norm solution of the two linear conditions
  Eigen::VectorXd r0_closed_form;  // explicit projection formula
  double discrepancy = 0.0;        // max-norm difference of the two
  ConeModel model;                 // the perturbed system written as a cone about r0
};

/// Throws NumericalError when h_X R_X + grad V_X and h_Z R_Z + grad V_Z are
/// (numerically) parallel.
ShiftedApex shifted_degeneracy(const ConeModel& model, const LinearPerturbation& v);

struct ThreeLevelSpec {
  ConeModel cone;             // E0 = E-, E1 = E+
  double e2_offset = 1.0;     // E2 = E1 + offset
};

/// R -> E_Phi(R) - E0(R) with E_Phi = |a1|^2 E1 + |a2|^2 E2 for normalized (a1, a2).
ScalarField projection_gap_demo(const ThreeLevelSpec& spec, double a1, double a2);

/// CSV `x0,x1,e_minus,e_plus` over an n x n grid of a two-dimensional model.
void write_cone_grid(std::ostream& out, const ConeModel& model, double lo, double hi, int n);

}  // namespace saoovqe
