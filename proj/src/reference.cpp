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

#include "saoovqe/reference.hpp"

#include <bit>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

#include "saoovqe/error.hpp"

namespace saoovqe {
namespace {

constexpr std::size_t kMaxDeterminants = 10000;

int blocking_sign(const std::vector<int>& occ) {
  // parity of moving every alpha (even) spin orbital ahead of every beta one
  int inversions = 0, betas_seen = 0;
  for (int j : occ) {
    if (j % 2) ++betas_seen;
    else inversions += betas_seen;
  }
  return (inversions % 2) ? -1 : 1;
}

std::vector<int> spatial_of_spin(const std::vector<int>& occ, int spin) {
  std::vector<int> out;
  for (int j : occ)
    if (j % 2 == spin) out.push_back(j / 2);
  return out;
}

double sub_determinant(const Eigen::MatrixXd& m, const std::vector<int>& rows,
                       const std::vector<int>& cols) {
  if (rows.size() != cols.size()) return 0.0;
  if (rows.empty()) return 1.0;
  const auto k = static_cast<Eigen::Index>(rows.size());
  Eigen::MatrixXd sub(k, k);
  for (Eigen::Index i = 0; i < k; ++i)
    for (Eigen::Index j = 0; j < k; ++j) sub(i, j) = m(rows[i], cols[j]);
  return sub.determinant();
}

void fix_sign(Eigen::VectorXd& v) {
  Eigen::Index imax = 0;
  v.cwiseAbs().maxCoeff(&imax);
  if (v(imax) < 0.0) v = -v;
}

}  // namespace

// ---------------------------------------------------------------- DeterminantBasis

std::uint64_t interleave(std::uint32_t alpha, std::uint32_t beta, int n_orb) {
  std::uint64_t bits = 0;
  for (int p = 0; p < n_orb; ++p) {
    if ((alpha >> p) & 1u) bits |= std::uint64_t{1} << spin_orbital(p, Spin::Up);
    if ((beta >> p) & 1u) bits |= std::uint64_t{1} << spin_orbital(p, Spin::Down);
  }
  return bits;
}

DeterminantBasis::DeterminantBasis(int n_orb, int n_elec) : n_orb_(n_orb), n_per_spin_(n_elec / 2) {
  if (n_orb < 0 || n_orb > 16) throw std::invalid_argument("DeterminantBasis: need 0 <= n_orb <= 16");
  if (n_elec < 0 || n_elec % 2 || n_per_spin_ > n_orb)
    throw std::invalid_argument("DeterminantBasis: electron count incompatible with S_z = 0");
  std::vector<std::uint32_t> strings;
  for (std::uint32_t m = 0; m < (std::uint32_t{1} << n_orb); ++m)
    if (std::popcount(m) == n_per_spin_) strings.push_back(m);
  for (auto a : strings)
    for (auto b : strings) dets_.emplace_back(a, b);
}

std::uint64_t DeterminantBasis::bits(std::size_t k) const {
  return interleave(dets_.at(k).first, dets_.at(k).second, n_orb_);
}

std::optional<std::size_t> DeterminantBasis::index_of(std::uint64_t bits) const {
  std::uint32_t a = 0, b = 0;
  for (int p = 0; p < n_orb_; ++p) {
    a |= static_cast<std::uint32_t>((bits >> spin_orbital(p, Spin::Up)) & 1u) << p;
    b |= static_cast<std::uint32_t>((bits >> spin_orbital(p, Spin::Down)) & 1u) << p;
  }
  if ((bits >> (2 * n_orb_)) != 0) return std::nullopt;
  const auto it = std::lower_bound(dets_.begin(), dets_.end(), std::make_pair(a, b));
  if (it == dets_.end() || *it != std::make_pair(a, b)) return std::nullopt;
  return static_cast<std::size_t>(it - dets_.begin());
}

Eigen::MatrixXd determinant_matrix(const FermionOp& op, const DeterminantBasis& basis) {
  const auto n = static_cast<Eigen::Index>(basis.size());
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const std::uint64_t bj = basis.bits(static_cast<std::size_t>(j));
    for (const auto& term : op.terms()) {
      auto img = apply_chain(bj, term.chain);
      if (!img) continue;
      const auto i = basis.index_of(img->bits);
      if (!i) throw InvariantError("determinant_matrix: operator leaves the determinant sector");
      m(static_cast<Eigen::Index>(*i), j) += term.coeff * img->sign;
    }
  }
  return m;
}

FermionOp total_spin_squared(int n_orb) {
  FermionOp s_plus, s_z;
  for (int p = 0; p < n_orb; ++p) {
    const int up = spin_orbital(p, Spin::Up), dn = spin_orbital(p, Spin::Down);
    s_plus.add_term(1.0, {{up, true}, {dn, false}});
    s_z.add_term(0.5, {{up, true}, {up, false}});
    s_z.add_term(-0.5, {{dn, true}, {dn, false}});
  }
  return s_plus.adjoint() * s_plus + s_z * s_z + s_z;
}

// ---------------------------------------------------------------- CI vectors

Statevector to_statevector(const CIVector& ci) {
  Statevector psi(2 * ci.basis.n_orb());
  psi.mutable_amps().setZero();
  for (std::size_t k = 0; k < ci.basis.size(); ++k)
    psi.mutable_amps()(static_cast<Eigen::Index>(ci.basis.bits(k))) = ci.coeffs(static_cast<Eigen::Index>(k));
  return psi;
}

CIVector from_statevector(const Statevector& psi, const DeterminantBasis& basis,
                          const Eigen::MatrixXd& orbitals, int n_frozen) {
  if (psi.n_qubits() != 2 * basis.n_orb())
    throw std::invalid_argument("from_statevector: register size does not match the basis");
  CIVector ci{Eigen::VectorXd(static_cast<Eigen::Index>(basis.size())), basis, orbitals, n_frozen};
  double inside = 0.0;
  for (std::size_t k = 0; k < basis.size(); ++k) {
    const cplx a = psi.amps()(static_cast<Eigen::Index>(basis.bits(k)));
    if (std::abs(a.imag()) > 1e-9) throw InvariantError("from_statevector: complex amplitude");
    ci.coeffs(static_cast<Eigen::Index>(k)) = a.real();
    inside += std::norm(a);
  }
  if (std::abs(psi.amps().squaredNorm() - inside) > 1e-9)
    throw InvariantError("from_statevector: state has weight outside the determinant sector");
  return ci;
}

// ---------------------------------------------------------------- CASCI

std::vector<CASCIState> casci_solve(const FrozenCoreHamiltonian& fc, int n_states, SpinTarget target) {
  const DeterminantBasis basis(fc.n_active_orb, fc.n_active_elec);
  if (basis.size() > kMaxDeterminants)
    throw InvariantError("casci_solve: sector dimension exceeds the dense limit of 10^4");
  const Eigen::MatrixXd h = determinant_matrix(hamiltonian_to_fermion(fc), basis);
  const Eigen::MatrixXd s2 = determinant_matrix(total_spin_squared(fc.n_active_orb), basis);

  Eigen::MatrixXd p;
  if (target == SpinTarget::Singlet) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ss(s2);
    Eigen::Index ns = 0;
    while (ns < ss.eigenvalues().size() && ss.eigenvalues()(ns) < 0.5) ++ns;
    p = ss.eigenvectors().leftCols(ns);
  } else {
    p = Eigen::MatrixXd::Identity(h.rows(), h.cols());
  }
  if (n_states < 1 || n_states > p.cols())
    throw std::invalid_argument("casci_solve: requested more states than the sector holds");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(p.transpose() * h * p);
  if (es.info() != Eigen::Success) throw NumericalError("casci_solve: eigensolver failed");

  std::vector<CASCIState> out;
  for (int k = 0; k < n_states; ++k) {
    Eigen::VectorXd v = p * es.eigenvectors().col(k);
    v.normalize();
    fix_sign(v);
    out.push_back({es.eigenvalues()(k), v.dot(s2 * v), CIVector{v, basis, {}, 0}});
  }
  return out;
}

ReferenceResult sa_casscf_reference(const IntegralSet& ao, const MOCoefficients& c0,
                                    const ActiveSpaceSpec& spec, double w_a, double w_b,
                                    const ReferenceOptions& opt) {
  ReferenceResult res;
  res.c = c0;
  std::vector<int> kept = spec.frozen;
  kept.insert(kept.end(), spec.active.begin(), spec.active.end());
  const int na = static_cast<int>(spec.active.size());
  double e_prev = std::numeric_limits<double>::quiet_NaN();

  for (int cycle = 1; cycle <= opt.max_cycles; ++cycle) {
    const IntegralSet mo = transform_to_mo(ao, res.c);
    const auto states = casci_solve(build_frozen_core(mo, spec), 2, opt.target);
    const Eigen::MatrixXd orbitals = res.c.columns(kept).c;
    for (int k = 0; k < 2; ++k) {
      res.energies[k] = states[k].energy;
      res.states[k] = states[k].vector;
      res.states[k].orbitals = orbitals;
      res.states[k].n_frozen = static_cast<int>(spec.frozen.size());
    }
    res.e_sa = w_a * res.energies[0] + w_b * res.energies[1];
    res.n_cycles = cycle;

    const SpinFreeRDMs rdms = sa_rdms(measure_rdms(to_statevector(states[0].vector), na),
                                      measure_rdms(to_statevector(states[1].vector), na), w_a, w_b);
    const OOCycleResult oo = sa_oo_cycle(ao, res.c, spec, rdms, opt.oo);
    res.gradient_norm = oo.steps.empty() ? oo.gradient_norm : oo.steps.front().gradient_norm;
    const bool stationary = oo.steps.empty();
    if (stationary && (cycle == 1 || std::abs(res.e_sa - e_prev) < opt.energy_tol)) {
      res.converged = true;
      break;
    }
    res.c = oo.c;
    e_prev = res.e_sa;
  }
  return res;
}

// ---------------------------------------------------------------- overlaps

Eigen::MatrixXd mo_overlap_matrix(const Eigen::MatrixXd& c1, const Eigen::MatrixXd& c2,
                                  const Eigen::MatrixXd& s_ao) {
  if (c1.rows() != s_ao.rows() || c2.rows() != s_ao.cols())
    throw std::invalid_argument("mo_overlap_matrix: AO dimension mismatch");
  return c1.transpose() * s_ao * c2;
}

Eigen::MatrixXd spin_orbital_overlap(const Eigen::MatrixXd& spatial) {
  Eigen::MatrixXd s = Eigen::MatrixXd::Zero(2 * spatial.rows(), 2 * spatial.cols());
  for (Eigen::Index p = 0; p < spatial.rows(); ++p)
    for (Eigen::Index q = 0; q < spatial.cols(); ++q) {
      s(2 * p, 2 * q) = spatial(p, q);
      s(2 * p + 1, 2 * q + 1) = spatial(p, q);
    }
  return s;
}

double determinant_overlap(const std::vector<int>& occ1, const std::vector<int>& occ2,
                           const Eigen::MatrixXd& spatial) {
  if (occ1.size() != occ2.size()) throw std::invalid_argument("determinant_overlap: electron counts differ");
  const auto a1 = spatial_of_spin(occ1, 0), a2 = spatial_of_spin(occ2, 0);
  if (a1.size() != a2.size()) return 0.0;
  const double da = sub_determinant(spatial, a1, a2);
  if (da == 0.0) return 0.0;
  const double db = sub_determinant(spatial, spatial_of_spin(occ1, 1), spatial_of_spin(occ2, 1));
  return blocking_sign(occ1) * blocking_sign(occ2) * da * db;
}

double determinant_overlap_full(const std::vector<int>& occ1, const std::vector<int>& occ2,
                                const Eigen::MatrixXd& spin_overlap) {
  if (occ1.size() != occ2.size()) throw std::invalid_argument("determinant_overlap: electron counts differ");
  return sub_determinant(spin_overlap, occ1, occ2);
}

std::vector<int> occupied_spin_orbitals(const CIVector& ci, std::size_t det) {
  std::vector<int> occ;
  for (int j = 0; j < 2 * ci.n_frozen; ++j) occ.push_back(j);
  const std::uint64_t bits = ci.basis.bits(det);
  for (int j = 0; j < 2 * ci.basis.n_orb(); ++j)
    if ((bits >> j) & 1u) occ.push_back(2 * ci.n_frozen + j);
  return occ;
}

double cross_basis_overlap(const CIVector& a, const CIVector& b, const Eigen::MatrixXd& s_ao) {
  if (!(a.basis == b.basis) || a.n_frozen != b.n_frozen)
    throw std::invalid_argument("cross_basis_overlap: states live in different sectors");
  if (a.orbitals.size() == 0 && b.orbitals.size() == 0) return a.coeffs.dot(b.coeffs);
  const Eigen::MatrixXd spatial = mo_overlap_matrix(a.orbitals, b.orbitals, s_ao);

  // alpha and beta string overlaps are shared by many determinant pairs
  std::map<std::pair<std::uint32_t, std::uint32_t>, double> cache;
  const int nf = a.n_frozen;
  auto string_overlap = [&](std::uint32_t m1, std::uint32_t m2) {
    const auto key = std::make_pair(m1, m2);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
    std::vector<int> r, c;
    for (int i = 0; i < nf; ++i) r.push_back(i), c.push_back(i);
    for (int p = 0; p < a.basis.n_orb(); ++p) {
      if ((m1 >> p) & 1u) r.push_back(nf + p);
      if ((m2 >> p) & 1u) c.push_back(nf + p);
    }
    return cache[key] = sub_determinant(spatial, r, c);
  };
  std::vector<int> sign(a.basis.size());
  for (std::size_t k = 0; k < a.basis.size(); ++k) sign[k] = blocking_sign(occupied_spin_orbitals(a, k));

  const auto& dets = a.basis.determinants();
  double s = 0.0;
  for (std::size_t i = 0; i < dets.size(); ++i) {
    const double ci = a.coeffs(static_cast<Eigen::Index>(i));
    if (ci == 0.0) continue;
    for (std::size_t j = 0; j < dets.size(); ++j) {
      const double cj = b.coeffs(static_cast<Eigen::Index>(j));
      if (cj == 0.0) continue;
      s += ci * cj * sign[i] * sign[j] * string_overlap(dets[i].first, dets[j].first) *
           string_overlap(dets[i].second, dets[j].second);
    }
  }
  return s;
}

double fidelity(const CIVector& psi, const CIVector& ref, const Eigen::MatrixXd& s_ao) {
  const double o = cross_basis_overlap(ref, psi, s_ao);
  return o * o;
}

double dominant_config_weight(const Statevector& psi, std::uint64_t det_bits) {
  if (det_bits >= static_cast<std::uint64_t>(psi.dim()))
    throw std::invalid_argument("dominant_config_weight: determinant outside the register");
  return std::norm(psi.amps()(static_cast<Eigen::Index>(det_bits)));
}

double dominant_config_weight(const CIVector& psi, std::size_t det) {
  const double c = psi.coeffs(static_cast<Eigen::Index>(det));
  return c * c;
}

}  // namespace saoovqe
