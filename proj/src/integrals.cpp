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

#include "saoovqe/integrals.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <regex>
#include <set>
#include <sstream>
#include <string>

#include "saoovqe/error.hpp"

namespace saoovqe {
namespace {

constexpr double kConflictTol = 1e-12;

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::string upper(std::string s) {
  for (auto& ch : s) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
  return s;
}

// Fortran-style exponents ("1.0D-03") are accepted.
std::optional<double> parse_value(std::string token) {
  for (auto& ch : token)
    if (ch == 'D' || ch == 'd') ch = 'E';
  try {
    std::size_t used = 0;
    const double v = std::stod(token, &used);
    if (used != token.size()) return std::nullopt;
    return v;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

std::optional<long> parse_index(const std::string& token) {
  try {
    std::size_t used = 0;
    const long v = std::stol(token, &used);
    if (used != token.size()) return std::nullopt;
    return v;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

std::vector<std::string> split_ws(const std::string& line) {
  std::istringstream ss(line);
  std::vector<std::string> out;
  std::string tok;
  while (ss >> tok) out.push_back(tok);
  return out;
}

using Key = std::array<int, 4>;

Key canonical_eri(int p, int q, int r, int s) {
  if (p < q) std::swap(p, q);
  if (r < s) std::swap(r, s);
  if (std::make_pair(p, q) < std::make_pair(r, s)) {
    std::swap(p, r);
    std::swap(q, s);
  }
  return {p, q, r, s};
}

// Records every assignment so that repeated records must agree.
class ConflictGuard {
 public:
  void record(const Key& key, double value, int line) {
    const auto [it, inserted] = seen_.emplace(key, value);
    if (!inserted && std::abs(it->second - value) > kConflictTol)
      throw ParseError("conflicting duplicate record (" + format_double(it->second) + " vs " +
                           format_double(value) + ")",
                       line);
  }

 private:
  std::map<Key, double> seen_;
};

void symmetrize(IntegralSet& ints) {
  const int n = ints.n_orb;
  ints.h = 0.5 * (ints.h + ints.h.transpose()).eval();
  Tensor4& g = ints.g;
  for (int p = 0; p < n; ++p)
    for (int q = 0; q <= p; ++q)
      for (int r = 0; r < n; ++r)
        for (int s = 0; s <= r; ++s) {
          if (p * (p + 1) / 2 + q < r * (r + 1) / 2 + s) continue;
          const double avg = (g(p, q, r, s) + g(q, p, r, s) + g(p, q, s, r) + g(q, p, s, r) +
                              g(r, s, p, q) + g(s, r, p, q) + g(r, s, q, p) + g(s, r, q, p)) /
                             8.0;
          g.set_symmetric(p, q, r, s, avg);
        }
}

}  // namespace

IntegralSet IntegralSet::zeros(int n_orb, int n_elec, BasisTag basis) {
  IntegralSet out;
  out.n_orb = n_orb;
  out.h = Eigen::MatrixXd::Zero(n_orb, n_orb);
  out.g = Tensor4(static_cast<std::size_t>(n_orb));
  out.s = Eigen::MatrixXd::Identity(n_orb, n_orb);
  out.n_elec = n_elec;
  out.basis = basis;
  return out;
}

void IntegralSet::validate(double tol) const {
  if (h.rows() != n_orb || h.cols() != n_orb || s.rows() != n_orb || s.cols() != n_orb ||
      static_cast<int>(g.dim()) != n_orb)
    throw InvariantError("IntegralSet: inconsistent dimensions");
  if ((h - h.transpose()).cwiseAbs().maxCoeff() > tol)
    throw InvariantError("IntegralSet: one-electron integrals are not symmetric");
  if (g.max_symmetry_violation() > tol)
    throw InvariantError("IntegralSet: two-electron integrals lack 8-fold symmetry");
  if ((s - s.transpose()).cwiseAbs().maxCoeff() > tol)
    throw InvariantError("IntegralSet: overlap is not symmetric");
  if (n_orb > 0) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(s, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() <= 0.0)
      throw InvariantError("IntegralSet: overlap is not positive definite");
  }
  if (basis == BasisTag::MO &&
      (s - Eigen::MatrixXd::Identity(n_orb, n_orb)).cwiseAbs().maxCoeff() > tol)
    throw InvariantError("IntegralSet: MO-basis overlap must be the identity");
}

double MOCoefficients::orthonormality_error(const Eigen::MatrixXd& s) const {
  if (c.size() == 0) return 0.0;
  const Eigen::MatrixXd m = c.transpose() * s * c;
  return (m - Eigen::MatrixXd::Identity(n_mo(), n_mo())).cwiseAbs().maxCoeff();
}

MOCoefficients MOCoefficients::columns(const std::vector<int>& idx) const {
  MOCoefficients out;
  out.c.resize(c.rows(), static_cast<Eigen::Index>(idx.size()));
  for (std::size_t k = 0; k < idx.size(); ++k) {
    if (idx[k] < 0 || idx[k] >= n_mo())
      throw InvariantError("MOCoefficients: column index out of range");
    out.c.col(static_cast<Eigen::Index>(k)) = c.col(idx[k]);
  }
  return out;
}

ActiveSpaceSpec ActiveSpaceSpec::contiguous(int n_elec_total, int n_active_elec,
                                            int n_active_orb) {
  if ((n_elec_total - n_active_elec) % 2 != 0 || n_active_elec > n_elec_total)
    throw InvariantError("active space: frozen electron count must be even and non-negative");
  ActiveSpaceSpec spec;
  const int n_frozen = (n_elec_total - n_active_elec) / 2;
  for (int i = 0; i < n_frozen; ++i) spec.frozen.push_back(i);
  for (int t = 0; t < n_active_orb; ++t) spec.active.push_back(n_frozen + t);
  spec.n_active_elec = n_active_elec;
  return spec;
}

void ActiveSpaceSpec::validate(int n_orb, int n_elec_total) const {
  std::set<int> seen;
  for (int i : frozen) {
    if (i < 0 || i >= n_orb) throw InvariantError("active space: frozen index out of range");
    if (!seen.insert(i).second) throw InvariantError("active space: duplicate orbital index");
  }
  for (int t : active) {
    if (t < 0 || t >= n_orb) throw InvariantError("active space: active index out of range");
    if (!seen.insert(t).second)
      throw InvariantError("active space: frozen and active sets overlap");
  }
  if (2 * static_cast<int>(frozen.size()) + n_active_elec != n_elec_total)
    throw InvariantError("active space: 2*|frozen| + n_active_elec != total electron count");
  if (n_active_elec < 0 || n_active_elec > 2 * static_cast<int>(active.size()))
    throw InvariantError("active space: too many active electrons for the active orbitals");
}

IntegralSet parse_fcidump(std::istream& in) {
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);) lines.push_back(line);

  std::size_t pos = 0;
  while (pos < lines.size() && trim(lines[pos]).empty()) ++pos;
  if (pos == lines.size() || upper(trim(lines[pos])).rfind("&FCI", 0) != 0)
    throw ParseError("expected '&FCI' header", static_cast<int>(pos + 1));

  std::string header;
  bool closed = false;
  const int header_line = static_cast<int>(pos + 1);
  for (; pos < lines.size(); ++pos) {
    const std::string u = upper(trim(lines[pos]));
    header += " " + u;
    if (u.find("&END") != std::string::npos || u == "/" || u.find("$END") != std::string::npos) {
      closed = true;
      ++pos;
      break;
    }
  }
  if (!closed) throw ParseError("unterminated &FCI header", header_line);

  auto field = [&](const char* name) -> std::optional<long> {
    const std::regex re(std::string("[^A-Z]") + name + "\\s*=\\s*(-?[0-9]+)");
    std::smatch m;
    if (std::regex_search(header, m, re)) return std::stol(m[1]);
    return std::nullopt;
  };
  const auto norb = field("NORB");
  const auto nelec = field("NELEC");
  if (!norb || *norb <= 0) throw ParseError("header lacks a positive NORB", header_line);
  if (!nelec || *nelec < 0) throw ParseError("header lacks NELEC", header_line);
  if (*nelec > 2 * *norb) throw ParseError("NELEC exceeds 2*NORB", header_line);

  const int n = static_cast<int>(*norb);
  IntegralSet ints = IntegralSet::zeros(n, static_cast<int>(*nelec), BasisTag::MO);
  ConflictGuard guard;

  for (; pos < lines.size(); ++pos) {
    const int lineno = static_cast<int>(pos + 1);
    const auto tok = split_ws(lines[pos]);
    if (tok.empty()) continue;
    if (tok.size() != 5) throw ParseError("expected 'value i j k l'", lineno);
    const auto value = parse_value(tok[0]);
    if (!value) throw ParseError("unreadable value '" + tok[0] + "'", lineno);
    std::array<long, 4> ix{};
    for (int k = 0; k < 4; ++k) {
      const auto v = parse_index(tok[k + 1]);
      if (!v) throw ParseError("unreadable index '" + tok[k + 1] + "'", lineno);
      if (*v < 0 || *v > n)
        throw ParseError("index " + std::to_string(*v) + " outside [1, NORB]", lineno);
      ix[k] = *v;
    }
    const auto [i, j, k, l] = ix;
    if (i > 0 && j > 0 && k > 0 && l > 0) {
      const Key key = canonical_eri(int(i) - 1, int(j) - 1, int(k) - 1, int(l) - 1);
      guard.record(key, *value, lineno);
      ints.g.set_symmetric(key[0], key[1], key[2], key[3], *value);
    } else if (i > 0 && j > 0 && k == 0 && l == 0) {
      const int p = int(std::max(i, j)) - 1, q = int(std::min(i, j)) - 1;
      guard.record({-1, -1, p, q}, *value, lineno);
      ints.h(p, q) = ints.h(q, p) = *value;
    } else if (i == 0 && j == 0 && k == 0 && l == 0) {
      guard.record({-2, -2, -2, -2}, *value, lineno);
      ints.e_scalar = *value;
    } else if (i > 0 && j == 0 && k == 0 && l == 0) {
      // orbital energy record; not part of the Hamiltonian
    } else {
      throw ParseError("index pattern does not match any integral rank", lineno);
    }
  }
  return ints;
}

IntegralSet read_fcidump(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open FCIDUMP file '" + path + "'", 0);
  return parse_fcidump(in);
}

void write_fcidump(std::ostream& out, const IntegralSet& mo, int ms2) {
  const int n = mo.n_orb;
  out << "&FCI NORB=" << n << ",NELEC=" << mo.n_elec << ",MS2=" << ms2 << ",\n ORBSYM=";
  for (int p = 0; p < n; ++p) out << "1,";
  out << "\n ISYM=1,\n&END\n";
  for (int p = 0; p < n; ++p)
    for (int q = 0; q <= p; ++q)
      for (int r = 0; r < n; ++r)
        for (int s = 0; s <= r; ++s) {
          if (p * (p + 1) / 2 + q < r * (r + 1) / 2 + s) continue;
          const double v = mo.g(p, q, r, s);
          if (v == 0.0) continue;
          out << format_double(v) << ' ' << p + 1 << ' ' << q + 1 << ' ' << r + 1 << ' ' << s + 1
              << '\n';
        }
  for (int p = 0; p < n; ++p)
    for (int q = 0; q <= p; ++q) {
      const double v = mo.h(p, q);
      if (v == 0.0) continue;
      out << format_double(v) << ' ' << p + 1 << ' ' << q + 1 << " 0 0\n";
    }
  out << format_double(mo.e_scalar) << " 0 0 0 0\n";
}

std::pair<IntegralSet, MOCoefficients> parse_aoint(std::istream& in) {
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);) lines.push_back(line);

  std::size_t pos = 0;
  while (pos < lines.size() && trim(lines[pos]).empty()) ++pos;
  if (pos == lines.size()) throw ParseError("empty AOINT file", 1);
  const auto head = split_ws(lines[pos]);
  const int head_line = static_cast<int>(pos + 1);
  if (head.size() != 6 || head[0] != "AOINT")
    throw ParseError("expected 'AOINT 1 <n_ao> <n_mo> <n_elec> <e_nuc>'", head_line);
  if (head[1] != "1") throw ParseError("unsupported AOINT version '" + head[1] + "'", head_line);
  const auto n_ao = parse_index(head[2]);
  const auto n_mo = parse_index(head[3]);
  const auto n_elec = parse_index(head[4]);
  const auto e_nuc = parse_value(head[5]);
  if (!n_ao || !n_mo || !n_elec || !e_nuc || *n_ao <= 0 || *n_mo <= 0 || *n_elec < 0)
    throw ParseError("malformed AOINT header", head_line);
  if (*n_mo > *n_ao) throw ParseError("n_mo exceeds n_ao", head_line);

  const int nao = static_cast<int>(*n_ao);
  const int nmo = static_cast<int>(*n_mo);
  IntegralSet ao = IntegralSet::zeros(nao, static_cast<int>(*n_elec), BasisTag::AO);
  ao.s.setZero();
  ao.e_scalar = *e_nuc;
  MOCoefficients c;
  c.c = Eigen::MatrixXd::Zero(nao, nmo);

  std::set<std::string> present;
  std::string section;
  ConflictGuard s_guard, h_guard, g_guard, c_guard;

  auto need_index = [&](const std::string& tok, int hi, int lineno) {
    const auto v = parse_index(tok);
    if (!v) throw ParseError("unreadable index '" + tok + "'", lineno);
    if (*v < 1 || *v > hi)
      throw ParseError("index " + std::to_string(*v) + " outside [1, " + std::to_string(hi) + "]",
                       lineno);
    return static_cast<int>(*v) - 1;
  };
  auto need_value = [&](const std::string& tok, int lineno) {
    const auto v = parse_value(tok);
    if (!v) throw ParseError("unreadable value '" + tok + "'", lineno);
    return *v;
  };

  for (++pos; pos < lines.size(); ++pos) {
    const int lineno = static_cast<int>(pos + 1);
    const std::string t = trim(lines[pos]);
    if (t.empty()) continue;
    if (t.front() == '[') {
      section = t;
      if (section != "[overlap]" && section != "[hcore]" && section != "[eri]" &&
          section != "[mo_coeff]")
        throw ParseError("unknown section " + section, lineno);
      if (!present.insert(section).second) throw ParseError("repeated section " + section, lineno);
      continue;
    }
    const auto tok = split_ws(t);
    if (section.empty()) throw ParseError("data before the first section", lineno);
    if (section == "[overlap]" || section == "[hcore]") {
      if (tok.size() != 3) throw ParseError("expected 'i j value'", lineno);
      const int i = need_index(tok[0], nao, lineno), j = need_index(tok[1], nao, lineno);
      const double v = need_value(tok[2], lineno);
      Eigen::MatrixXd& m = section == "[overlap]" ? ao.s : ao.h;
      (section == "[overlap]" ? s_guard : h_guard)
          .record({std::max(i, j), std::min(i, j), 0, 0}, v, lineno);
      m(i, j) = m(j, i) = v;
    } else if (section == "[eri]") {
      if (tok.size() != 5) throw ParseError("expected 'i j k l value'", lineno);
      const int i = need_index(tok[0], nao, lineno), j = need_index(tok[1], nao, lineno);
      const int k = need_index(tok[2], nao, lineno), l = need_index(tok[3], nao, lineno);
      const double v = need_value(tok[4], lineno);
      const Key key = canonical_eri(i, j, k, l);
      g_guard.record(key, v, lineno);
      ao.g.set_symmetric(key[0], key[1], key[2], key[3], v);
    } else {
      if (tok.size() != 3) throw ParseError("expected 'mu p value'", lineno);
      const int mu = need_index(tok[0], nao, lineno), p = need_index(tok[1], nmo, lineno);
      const double v = need_value(tok[2], lineno);
      c_guard.record({mu, p, 0, 0}, v, lineno);
      c.c(mu, p) = v;
    }
  }
  for (const char* name : {"[overlap]", "[hcore]", "[eri]", "[mo_coeff]"})
    if (!present.count(name)) throw ParseError(std::string("missing section ") + name, 0);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(ao.s, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() <= 0.0)
    throw InvariantError("AOINT: overlap matrix is not positive definite");
  const double err = c.orthonormality_error(ao.s);
  if (err > 1e-10)
    throw InvariantError("AOINT: MO coefficients violate C^T S C = I (error " +
                         format_double(err) + ")");
  return {std::move(ao), std::move(c)};
}

std::pair<IntegralSet, MOCoefficients> read_aoint(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open AOINT file '" + path + "'", 0);
  return parse_aoint(in);
}

void write_aoint(std::ostream& out, const IntegralSet& ao, const MOCoefficients& c) {
  const int n = ao.n_orb;
  out << "AOINT 1 " << n << ' ' << c.n_mo() << ' ' << ao.n_elec << ' ' << format_double(ao.e_scalar)
      << '\n';
  auto write_matrix = [&](const char* name, const Eigen::MatrixXd& m) {
    out << name << '\n';
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j)
        if (m(i, j) != 0.0) out << i + 1 << ' ' << j + 1 << ' ' << format_double(m(i, j)) << '\n';
  };
  write_matrix("[overlap]", ao.s);
  write_matrix("[hcore]", ao.h);
  out << "[eri]\n";
  for (int p = 0; p < n; ++p)
    for (int q = 0; q <= p; ++q)
      for (int r = 0; r < n; ++r)
        for (int s = 0; s <= r; ++s) {
          if (p * (p + 1) / 2 + q < r * (r + 1) / 2 + s) continue;
          const double v = ao.g(p, q, r, s);
          if (v == 0.0) continue;
          out << p + 1 << ' ' << q + 1 << ' ' << r + 1 << ' ' << s + 1 << ' ' << format_double(v)
              << '\n';
        }
  out << "[mo_coeff]\n";
  for (int mu = 0; mu < c.n_ao(); ++mu)
    for (int p = 0; p < c.n_mo(); ++p)
      if (c.c(mu, p) != 0.0)
        out << mu + 1 << ' ' << p + 1 << ' ' << format_double(c.c(mu, p)) << '\n';
}

IntegralSet transform_to_mo(const IntegralSet& ao, const MOCoefficients& c) {
  const int nao = ao.n_orb;
  const int nmo = c.n_mo();
  if (c.n_ao() != nao) throw InvariantError("transform_to_mo: C rows != number of AOs");
  if (nmo > nao) throw InvariantError("transform_to_mo: more MOs than AOs");
  const double err = c.orthonormality_error(ao.s);
  if (err > 1e-8)
    throw InvariantError("transform_to_mo: C^T S C deviates from identity by " +
                         format_double(err));

  IntegralSet mo = IntegralSet::zeros(nmo, ao.n_elec, BasisTag::MO);
  mo.e_scalar = ao.e_scalar;
  mo.h = c.c.transpose() * ao.h * c.c;

  using RowMat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  const Eigen::Index a = nao, m = nmo;
  const Eigen::MatrixXd ct = c.c.transpose();

  // (mu nu|la si) -> (p nu|la si)
  Eigen::Map<const RowMat> g0(ao.g.data(), a, a * a * a);
  RowMat t1 = ct * g0;  // m x a^3

  // (p nu|la si) -> (p q|la si)
  RowMat t2(m * m, a * a);
  for (Eigen::Index p = 0; p < m; ++p) {
    Eigen::Map<const RowMat> block(t1.data() + p * a * a * a, a, a * a);
    t2.middleRows(p * m, m) = ct * block;
  }
  t1.resize(0, 0);

  // (p q|la si) -> (p q|r s), one pair at a time
  for (Eigen::Index pq = 0; pq < m * m; ++pq) {
    Eigen::Map<const RowMat> block(t2.data() + pq * a * a, a, a);
    const Eigen::MatrixXd rs = ct * block * c.c;
    const Eigen::Index p = pq / m, q = pq % m;
    for (Eigen::Index r = 0; r < m; ++r)
      for (Eigen::Index s = 0; s < m; ++s) mo.g(p, q, r, s) = rs(r, s);
  }
  symmetrize(mo);
  return mo;
}

FrozenCoreHamiltonian build_frozen_core(const IntegralSet& mo, const ActiveSpaceSpec& spec) {
  if (mo.basis != BasisTag::MO)
    throw InvariantError("build_frozen_core: integrals must be in an MO basis");
  spec.validate(mo.n_orb, mo.n_elec);

  FrozenCoreHamiltonian fc;
  fc.n_active_orb = static_cast<int>(spec.active.size());
  fc.n_active_elec = spec.n_active_elec;

  double e_frozen = 0.0;
  for (int i : spec.frozen) {
    e_frozen += 2.0 * mo.h(i, i);
    for (int j : spec.frozen) e_frozen += 2.0 * mo.g(i, i, j, j) - mo.g(i, j, j, i);
  }
  fc.shift = mo.e_scalar + e_frozen;

  const int na = fc.n_active_orb;
  fc.h_eff.resize(na, na);
  for (int a = 0; a < na; ++a)
    for (int b = 0; b < na; ++b) {
      const int t = spec.active[a], u = spec.active[b];
      double v = mo.h(t, u);
      for (int i : spec.frozen) v += 2.0 * mo.g(t, u, i, i) - mo.g(t, i, i, u);
      fc.h_eff(a, b) = v;
    }
  fc.h_eff = 0.5 * (fc.h_eff + fc.h_eff.transpose()).eval();
  fc.g_act = mo.g.slice(spec.active);
  return fc;
}

}  // namespace saoovqe
