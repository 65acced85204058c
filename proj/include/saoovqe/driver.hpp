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
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "saoovqe/ansatz.hpp"
#include "saoovqe/integrals.hpp"
#include "saoovqe/reference.hpp"
#include "saoovqe/sa_oo.hpp"
#include "saoovqe/sa_vqe.hpp"

namespace saoovqe {

/// One row of the run trace: `cycle,phase,iteration,e_sa,e_A,e_B,grad_norm,nu`.
struct TraceRow {
  int cycle = 0;
  std::string phase;  // "vqe" or "oo"
  int iteration = 0;
  double e_sa = 0.0;
  std::optional<double> e_a, e_b;
  double grad_norm = 0.0;
  std::optional<double> nu;
};

void write_trace_header(std::ostream& out);
void write_trace_row(std::ostream& out, const TraceRow& row);

struct RunConfig {
  ActiveSpaceSpec active;
  double w_a = 0.5;
  double w_b = 0.5;
  SAVQEOptions vqe;
  OOOptions oo;
  double global_tol = 1e-4;
  int max_cycles = 20;
  bool use_variance = false;
  bool warm_start = true;
  bool orbital_optimization = true;
  /// For equal weights, report the H eigenstates within span{psi_a, psi_b}.
  bool subspace_rotation = true;
  std::function<void(const TraceRow&)> trace;

  void validate() const;
};

struct CycleRecord {
  int cycle = 0;
  double e_sa_vqe = 0.0;  // at the orbitals entering the cycle
  double e_a = 0.0;
  double e_b = 0.0;
  double e_sa_oo = 0.0;   // after the orbital step at fixed RDMs
  int oo_steps = 0;
  double kappa_norm = 0.0;  // sum of accepted step max-norms
};

struct RunResult {
  double e_a = 0.0;
  double e_b = 0.0;
  double e_sa = 0.0;
  Eigen::VectorXd theta;
  /// Orbitals in which psi_a and psi_b are expressed.
  MOCoefficients c;
  /// Orbitals after the last orbital-optimization step.
  MOCoefficients c_optimized;
  Statevector psi_a, psi_b;
  EnsembleSpec ensemble;
  int n_cycles = 0;
  bool converged = false;
  std::vector<CycleRecord> cycles;
};

/// SA-VQE and SA-OO alternated until the state-averaged energy changes by
/// less than `global_tol` between cycles.
RunResult sa_oo_vqe_run(const IntegralSet& ao, const MOCoefficients& c0, const RunConfig& config);

/// AOINT v1, or FCIDUMP (orthonormal basis, C = identity).
struct Fixture {
  std::string path;
  std::string label;
  std::optional<double> alpha_deg;
  std::optional<double> phi_deg;
  IntegralSet ao;
  MOCoefficients c;
};

/// Metadata comes from a sidecar `<stem>.csv` with `alpha_deg,phi_deg` columns
/// when present, otherwise from an `a<number>` / `p<number>` token in the name.
Fixture load_fixture(const std::string& path);

struct ScanRow {
  std::string label;
  std::optional<double> alpha_deg, phi_deg;
  double e_a = 0.0, e_b = 0.0, e_sa = 0.0, gap = 0.0;
  int n_cycles = 0;
  bool converged = false;
  std::optional<double> fid_a, fid_b;
  double w_dom_a = 0.0, w_dom_b = 0.0;
  std::string error;  // non-empty when the point failed
};

struct ScanResult {
  std::vector<ScanRow> rows;
};

struct ScanOptions {
  bool oracle = false;
  ReferenceOptions reference;
};

/// One SA-OO-VQE run per fixture; labels A and B follow the initial states.
ScanResult pes_scan(const RunConfig& config, const std::vector<Fixture>& fixtures,
                    const ScanOptions& options = {});
ScanRow scan_point(const RunConfig& config, const Fixture& fixture, const ScanOptions& options = {});

/// Alphas at which the signed gap changes sign, by linear interpolation.
std::vector<double> locate_crossing(const ScanResult& scan);

/// `label,alpha_deg,phi_deg,e_A,e_B,e_sa,gap,n_cycles,converged,fid_A,fid_B,w_dom_A,w_dom_B`
void write_scan_csv(std::ostream& out, const ScanResult& scan);

/// Fidelities of (psi_a, psi_b) against the reference pair, assigned by the
/// permutation with the larger total.
std::pair<double, double> matched_fidelities(const RunResult& run, const ReferenceResult& ref,
                                             const ActiveSpaceSpec& spec, const Eigen::MatrixXd& s_ao);

}  // namespace saoovqe
