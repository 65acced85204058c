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
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "saoovqe/tensor.hpp"

namespace saoovqe {

enum class BasisTag { AO, MO };

/// One- and two-electron integrals in chemist notation, g(p,q,r,s) = (pq|rs).
struct IntegralSet {
  int n_orb = 0;
  Eigen::MatrixXd h;
  Tensor4 g;
  Eigen::MatrixXd s;  // identity in an orthonormal MO basis
  double e_scalar = 0.0;
  int n_elec = 0;
  BasisTag basis = BasisTag::MO;

  /// Zero integrals with identity overlap.
  static IntegralSet zeros(int n_orb, int n_elec, BasisTag basis);

  /// Throws InvariantError when symmetry or overlap conditions fail.
  void validate(double tol = 1e-10) const;
};

/// Columns are MOs expanded in the AO basis.
struct MOCoefficients {
  Eigen::MatrixXd c;

  int n_ao() const { return static_cast<int>(c.rows()); }
  int n_mo() const { return static_cast<int>(c.cols()); }

  /// max |C^T S C - I|.
  double orthonormality_error(const Eigen::MatrixXd& s) const;

  /// Sub-matrix made of the listed columns, in order.
  MOCoefficients columns(const std::vector<int>& idx) const;
};

struct ActiveSpaceSpec {
  std::vector<int> frozen;
  std::vector<int> active;
  int n_active_elec = 0;

  /// Frozen orbitals are the lowest (n_elec - n_active_elec) / 2 orbitals and
  /// the active block follows them.
  static ActiveSpaceSpec contiguous(int n_elec_total, int n_active_elec, int n_active_orb);

  void validate(int n_orb, int n_elec_total) const;
};

/// Active-space effective Hamiltonian with the frozen core folded in:
/// H = shift + sum h_eff(t,u) E_tu + 1/2 sum g_act(t,u,v,w) e_tuvw.
struct FrozenCoreHamiltonian {
  Eigen::MatrixXd h_eff;
  Tensor4 g_act;
  double shift = 0.0;
  int n_active_orb = 0;
  int n_active_elec = 0;
};

IntegralSet parse_fcidump(std::istream& in);
IntegralSet read_fcidump(const std::string& path);
void write_fcidump(std::ostream& out, const IntegralSet& mo, int ms2 = 0);

std::pair<IntegralSet, MOCoefficients> parse_aoint(std::istream& in);
std::pair<IntegralSet, MOCoefficients> read_aoint(const std::string& path);
void write_aoint(std::ostream& out, const IntegralSet& ao, const MOCoefficients& c);

/// AO -> MO transform by four successive quarter transformations.
IntegralSet transform_to_mo(const IntegralSet& ao, const MOCoefficients& c);

FrozenCoreHamiltonian build_frozen_core(const IntegralSet& mo, const ActiveSpaceSpec& spec);

}  // namespace saoovqe
