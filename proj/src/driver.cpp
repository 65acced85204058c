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

#include "saoovqe/driver.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <ostream>
#include <regex>
#include <sstream>
#include <stdexcept>

#include "saoovqe/error.hpp"

namespace saoovqe {
namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::string fmt(const std::optional<double>& v) { return v ? fmt(*v) : std::string(); }

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    while (!cell.empty() && (cell.back() == '\r' || cell.back() == ' ')) cell.pop_back();
    while (!cell.empty() && cell.front() == ' ') cell.erase(cell.begin());
    out.push_back(cell);
  }
  return out;
}

std::vector<int> kept_orbitals(const ActiveSpaceSpec& spec) {
  std::vector<int> kept = spec.frozen;
  kept.insert(kept.end(), spec.active.begin(), spec.active.end());
  return kept;
}

}  // namespace

void write_trace_header(std::ostream& out) { out << "cycle,phase,iteration,e_sa,e_A,e_B,grad_norm,nu\n"; }

void write_trace_row(std::ostream& out, const TraceRow& r) {
  out << r.cycle << ',' << r.phase << ',' << r.iteration << ',' << fmt(r.e_sa) << ',' << fmt(r.e_a)
      << ',' << fmt(r.e_b) << ',' << fmt(r.grad_norm) << ',' << fmt(r.nu) << '\n';
}

void RunConfig::validate() const {
  if (!(global_tol > 0.0)) throw std::invalid_argument("RunConfig: global_tol must be positive");
  if (max_cycles < 1) throw std::invalid_argument("RunConfig: max_cycles must be at least 1");
  if (!(vqe.minimizer.f_tolerance > 0.0) || !(oo.g_tol > 0.0))
    throw std::invalid_argument("RunConfig: tolerances must be positive");
}

RunResult sa_oo_vqe_run(const IntegralSet& ao, const MOCoefficients& c0, const RunConfig& cfg) {
  cfg.validate();
  const ActiveSpaceSpec& spec = cfg.active;
  const int na = static_cast<int>(spec.active.size());
  const AnsatzSpec ansatz = enumerate_parameters(na);

  RunResult res;
  res.ensemble = make_ensemble(na, spec.n_active_elec, cfg.w_a, cfg.w_b);
  res.theta = Eigen::VectorXd::Zero(ansatz.n_parameters());
  MOCoefficients c = c0;
  double e_prev = std::numeric_limits<double>::quiet_NaN();

  for (int cycle = 1; cycle <= cfg.max_cycles; ++cycle) {
    const IntegralSet mo = transform_to_mo(ao, c);
    const FrozenCoreHamiltonian fc = build_frozen_core(mo, spec);
    const PauliSum h = jordan_wigner(hamiltonian_to_fermion(fc), 2 * na);

    SAVQEOptions vopt = cfg.vqe;
    vopt.theta0 = cfg.warm_start ? res.theta : Eigen::VectorXd::Zero(ansatz.n_parameters());
    if (cfg.use_variance) vopt.cost = CostMode::EnergyPlusVariance;
    if (cfg.trace) {
      vopt.trace = [&](const SAVQETraceRow& row) {
        cfg.trace({cycle, "vqe", row.iteration, row.e_sa, row.e_a, row.e_b, row.grad_norm, std::nullopt});
      };
    }
    SAVQEResult vqe = optimize(res.ensemble, h, ansatz, vopt);
    if (cfg.subspace_rotation && cfg.w_a == cfg.w_b) {
      const SubspaceStates sub =
          diagonalize_pair(vqe.psi_a, vqe.psi_b, h, res.ensemble.phi_a, res.ensemble.phi_b);
      vqe.psi_a = sub.psi_a;
      vqe.psi_b = sub.psi_b;
      vqe.e_a = sub.e_a;
      vqe.e_b = sub.e_b;
    }

    res.theta = vqe.theta_opt;
    res.e_a = vqe.e_a;
    res.e_b = vqe.e_b;
    res.e_sa = vqe.e_sa;
    res.psi_a = vqe.psi_a;
    res.psi_b = vqe.psi_b;
    res.c = c;
    res.c_optimized = c;
    res.n_cycles = cycle;

    CycleRecord rec{cycle, vqe.e_sa, vqe.e_a, vqe.e_b, vqe.e_sa, 0, 0.0};
    if (!cfg.orbital_optimization) {
      res.cycles.push_back(rec);
      res.converged = vqe.converged;
      break;
    }

    const SpinFreeRDMs rdms =
        sa_rdms(measure_rdms(vqe.psi_a, na), measure_rdms(vqe.psi_b, na), cfg.w_a, cfg.w_b);
    std::function<void(int, const OOStepReport&)> on_step;
    if (cfg.trace) {
      on_step = [&](int it, const OOStepReport& r) {
        cfg.trace({cycle, "oo", it + 1, r.e_sa_after, std::nullopt, std::nullopt, r.gradient_norm, r.nu});
      };
    }
    const OOCycleResult oo = sa_oo_cycle(ao, c, spec, rdms, cfg.oo, on_step);
    rec.e_sa_oo = oo.e_sa;
    rec.oo_steps = static_cast<int>(oo.steps.size());
    for (const auto& s : oo.steps) rec.kappa_norm += s.step_norm;
    res.cycles.push_back(rec);
    res.c_optimized = oo.c;

    const double reference = cycle == 1 ? vqe.e_sa : e_prev;
    if (std::abs(oo.e_sa - reference) < cfg.global_tol) {
      res.converged = true;
      break;
    }
    e_prev = oo.e_sa;
    c = oo.c;
  }
  return res;
}

Fixture load_fixture(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open fixture " + path);
  std::string first;
  in >> first;
  in.close();

  Fixture fx;
  fx.path = path;
  const std::filesystem::path p(path);
  fx.label = p.stem().string();
  if (first == "AOINT") {
    std::tie(fx.ao, fx.c) = read_aoint(path);
  } else {
    fx.ao = read_fcidump(path);
    fx.c.c = Eigen::MatrixXd::Identity(fx.ao.n_orb, fx.ao.n_orb);
  }

  std::filesystem::path sidecar = p;
  sidecar.replace_extension(".csv");
  if (sidecar != p && std::filesystem::exists(sidecar)) {
    std::ifstream sc(sidecar);
    std::string header, row;
    if (std::getline(sc, header) && std::getline(sc, row)) {
      const auto names = split_csv(header), values = split_csv(row);
      for (std::size_t i = 0; i < names.size() && i < values.size(); ++i) {
        if (values[i].empty()) continue;
        if (names[i] == "alpha_deg") fx.alpha_deg = std::stod(values[i]);
        if (names[i] == "phi_deg") fx.phi_deg = std::stod(values[i]);
      }
    }
  }
  static const std::regex alpha_re("(?:^|[_-])a(-?[0-9]+(?:\\.[0-9]+)?)");
  static const std::regex phi_re("(?:^|[_-])p(-?[0-9]+(?:\\.[0-9]+)?)");
  std::smatch m;
  if (!fx.alpha_deg && std::regex_search(fx.label, m, alpha_re)) fx.alpha_deg = std::stod(m[1].str());
  if (!fx.phi_deg && std::regex_search(fx.label, m, phi_re)) fx.phi_deg = std::stod(m[1].str());
  return fx;
}

std::pair<double, double> matched_fidelities(const RunResult& run, const ReferenceResult& ref,
                                             const ActiveSpaceSpec& spec, const Eigen::MatrixXd& s_ao) {
  const int nf = static_cast<int>(spec.frozen.size());
  const DeterminantBasis basis(static_cast<int>(spec.active.size()), spec.n_active_elec);
  const Eigen::MatrixXd orbitals = run.c.columns(kept_orbitals(spec)).c;
  const CIVector a = from_statevector(run.psi_a, basis, orbitals, nf);
  const CIVector b = from_statevector(run.psi_b, basis, orbitals, nf);
  const double aa = fidelity(a, ref.states[0], s_ao), ab = fidelity(a, ref.states[1], s_ao);
  const double ba = fidelity(b, ref.states[0], s_ao), bb = fidelity(b, ref.states[1], s_ao);
  if (aa + bb >= ab + ba) return {aa, bb};
  return {ab, ba};
}

ScanRow scan_point(const RunConfig& cfg, const Fixture& fx, const ScanOptions& opt) {
  ScanRow row;
  row.label = fx.label;
  row.alpha_deg = fx.alpha_deg;
  row.phi_deg = fx.phi_deg;
  try {
    const RunResult run = sa_oo_vqe_run(fx.ao, fx.c, cfg);
    row.e_a = run.e_a;
    row.e_b = run.e_b;
    row.e_sa = run.e_sa;
    row.gap = run.e_b - run.e_a;
    row.n_cycles = run.n_cycles;
    row.converged = run.converged;
    row.w_dom_a = std::norm(state_overlap(run.ensemble.phi_a, run.psi_a));
    row.w_dom_b = std::norm(state_overlap(run.ensemble.phi_b, run.psi_b));
    if (opt.oracle) {
      const ReferenceResult ref =
          sa_casscf_reference(fx.ao, fx.c, cfg.active, cfg.w_a, cfg.w_b, opt.reference);
      std::tie(row.fid_a, row.fid_b) = matched_fidelities(run, ref, cfg.active, fx.ao.s);
    }
  } catch (const std::exception& e) {
    row.error = e.what();
  }
  return row;
}

ScanResult pes_scan(const RunConfig& cfg, const std::vector<Fixture>& fixtures, const ScanOptions& opt) {
  ScanResult scan;
  for (const auto& fx : fixtures) scan.rows.push_back(scan_point(cfg, fx, opt));
  return scan;
}

std::vector<double> locate_crossing(const ScanResult& scan) {
  std::vector<const ScanRow*> rows;
  for (const auto& r : scan.rows)
    if (r.error.empty() && r.alpha_deg) rows.push_back(&r);
  std::vector<double> out;
  for (std::size_t i = 0; i + 1 < rows.size(); ++i) {
    const double g0 = rows[i]->gap, g1 = rows[i + 1]->gap;
    const double a0 = *rows[i]->alpha_deg, a1 = *rows[i + 1]->alpha_deg;
    if (g0 == 0.0) {
      if (i == 0 || rows[i - 1]->gap != 0.0) out.push_back(a0);
      continue;
    }
    if (g1 == 0.0) continue;
    if ((g0 < 0.0) != (g1 < 0.0)) out.push_back(a0 + (a1 - a0) * g0 / (g0 - g1));
  }
  if (!rows.empty() && rows.back()->gap == 0.0 && rows.size() > 1 && rows[rows.size() - 2]->gap != 0.0)
    out.push_back(*rows.back()->alpha_deg);
  return out;
}

void write_scan_csv(std::ostream& out, const ScanResult& scan) {
  out << "label,alpha_deg,phi_deg,e_A,e_B,e_sa,gap,n_cycles,converged,fid_A,fid_B,w_dom_A,w_dom_B\n";
  for (const auto& r : scan.rows) {
    out << r.label << ',' << fmt(r.alpha_deg) << ',' << fmt(r.phi_deg) << ',';
    if (!r.error.empty()) {
      out << ",,,,,error,,,,\n";
      continue;
    }
    out << fmt(r.e_a) << ',' << fmt(r.e_b) << ',' << fmt(r.e_sa) << ',' << fmt(r.gap) << ','
        << r.n_cycles << ',' << (r.converged ? 1 : 0) << ',' << fmt(r.fid_a) << ',' << fmt(r.fid_b)
        << ',' << fmt(r.w_dom_a) << ',' << fmt(r.w_dom_b) << '\n';
  }
}

}  // namespace saoovqe
