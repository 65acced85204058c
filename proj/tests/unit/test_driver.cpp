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

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "saoovqe/ci_model.hpp"
#include "saoovqe/driver.hpp"
#include "saoovqe/synthetic.hpp"

namespace saoovqe {
namespace {

namespace fs = std::filesystem;

fs::path scratch_dir() {
  const auto* info = testing::UnitTest::GetInstance()->current_test_info();
  fs::path dir = fs::temp_directory_path() / (std::string("saoovqe_") + info->test_suite_name() + "_" + info->name());
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

// AO = MO fixture with diagonal h and Coulomb-only (pp|qq): every determinant
// and the open-shell singlet are eigenstates and the orbital gradient vanishes.
std::pair<IntegralSet, MOCoefficients> stationary_fixture() {
  IntegralSet ao = IntegralSet::zeros(5, 6, BasisTag::AO);
  for (int p = 0; p < 5; ++p) ao.h(p, p) = -2.0 + 0.45 * p;
  for (int p = 0; p < 5; ++p)
    for (int q = 0; q <= p; ++q) ao.g.set_symmetric(p, p, q, q, 0.3 + 0.02 * (p + q));
  ao.e_scalar = 1.0;
  return {ao, MOCoefficients{Eigen::MatrixXd::Identity(5, 5)}};
}

RunConfig default_config(const ActiveSpaceSpec& spec) {
  RunConfig cfg;
  cfg.active = spec;
  return cfg;
}

TEST(RunConfig, RejectsInvalidSettings) {
  RunConfig cfg = default_config(ActiveSpaceSpec::contiguous(6, 4, 3));
  EXPECT_NO_THROW(cfg.validate());
  cfg.global_tol = 0.0;
  EXPECT_ANY_THROW(cfg.validate());
  cfg.global_tol = 1e-4;
  cfg.max_cycles = 0;
  EXPECT_ANY_THROW(cfg.validate());
}

TEST(Run, StationaryFixtureConvergesInOneCycle) {
  const auto [ao, c] = stationary_fixture();
  const RunResult r = sa_oo_vqe_run(ao, c, default_config(ActiveSpaceSpec::contiguous(6, 4, 3)));
  EXPECT_TRUE(r.converged);
  EXPECT_EQ(r.n_cycles, 1);
  ASSERT_EQ(r.cycles.size(), 1u);
  EXPECT_LT(r.cycles[0].kappa_norm, 1e-8);
  EXPECT_LT((r.c_optimized.c - c.c).cwiseAbs().maxCoeff(), 1e-8);
  EXPECT_LT(r.theta.lpNorm<Eigen::Infinity>(), 1e-8);
}

TEST(Run, AgreesWithSaCasscfOnFourOrbitalTwoActiveSystems) {
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    const auto [ao, c] = synthetic_fixture(4, 4, seed);
    const ActiveSpaceSpec spec = ActiveSpaceSpec::contiguous(4, 2, 2);
    const RunResult r = sa_oo_vqe_run(ao, c, default_config(spec));
    const ReferenceResult ref = sa_casscf_reference(ao, c, spec, 0.5, 0.5);
    ASSERT_TRUE(ref.converged);
    EXPECT_TRUE(r.converged);
    EXPECT_LE(r.n_cycles, 10);
    EXPECT_NEAR(r.e_sa, ref.e_sa, 1.6e-3) << "seed " << seed;
    EXPECT_NEAR(r.e_a, ref.energies[0], 1.6e-3);
    EXPECT_NEAR(r.e_b, ref.energies[1], 1.6e-3);
    EXPECT_LT(r.c.orthonormality_error(ao.s), 1e-10);
  }
}

TEST(Run, CyclesTrendDownAndRestartIsIdempotent) {
  const auto [ao, c] = synthetic_fixture(6, 6, 2);
  const ActiveSpaceSpec spec = ActiveSpaceSpec::contiguous(6, 4, 3);
  RunConfig cfg = default_config(spec);
  const RunResult r = sa_oo_vqe_run(ao, c, cfg);
  ASSERT_TRUE(r.converged);
  double best = std::numeric_limits<double>::infinity();
  for (const auto& cy : r.cycles) {
    EXPECT_LE(cy.e_sa_vqe, best + 2 * cfg.vqe.minimizer.f_tolerance);
    best = std::min(best, cy.e_sa_vqe);
    EXPECT_LE(cy.e_sa_oo, cy.e_sa_vqe + 1e-10);
  }
  // re-evaluating the converged theta in the returned orbitals
  const auto fc = build_frozen_core(transform_to_mo(ao, r.c), spec);
  const PauliSum h = jordan_wigner(hamiltonian_to_fermion(fc), 6);
  const SAEnergy e = sa_energy(r.theta, r.ensemble, enumerate_parameters(3), h);
  EXPECT_NEAR(e.e_sa, r.e_sa, 1e-10);
  EXPECT_NEAR(sa_energy(r.psi_a, r.psi_b, 0.5, 0.5, h).e_sa, r.e_sa, 1e-10);
}

TEST(Run, TraceRowsCoverBothPhases) {
  const auto [ao, c] = synthetic_fixture(4, 4, 1);
  RunConfig cfg = default_config(ActiveSpaceSpec::contiguous(4, 2, 2));
  std::ostringstream out;
  write_trace_header(out);
  cfg.trace = [&](const TraceRow& row) { write_trace_row(out, row); };
  sa_oo_vqe_run(ao, c, cfg);
  const std::string text = out.str();
  EXPECT_EQ(text.rfind("cycle,phase,iteration,e_sa,e_A,e_B,grad_norm,nu\n", 0), 0u);
  EXPECT_NE(text.find(",vqe,"), std::string::npos);
  EXPECT_NE(text.find(",oo,"), std::string::npos);
}

TEST(Run, WithoutOrbitalOptimizationMatchesCasci) {
  const auto [ao, c] = synthetic_fixture(5, 6, 4);
  const ActiveSpaceSpec spec = ActiveSpaceSpec::contiguous(6, 4, 3);
  RunConfig cfg = default_config(spec);
  cfg.orbital_optimization = false;
  const RunResult r = sa_oo_vqe_run(ao, c, cfg);
  const auto states = casci_solve(build_frozen_core(transform_to_mo(ao, c), spec), 2, SpinTarget::Singlet);
  EXPECT_EQ(r.n_cycles, 1);
  EXPECT_NEAR(r.e_a, states[0].energy, 1e-5);
  EXPECT_NEAR(r.e_b, states[1].energy, 1e-5);
  EXPECT_EQ(r.c.c, c.c);
}

ScanRow row(double alpha, double gap) {
  ScanRow r;
  r.alpha_deg = alpha;
  r.gap = gap;
  return r;
}

TEST(Crossing, LinearInterpolation) {
  EXPECT_EQ(locate_crossing(ScanResult{{row(118, 1e-2), row(119, -1e-2)}}), std::vector<double>{118.5});
  EXPECT_TRUE(locate_crossing(ScanResult{{row(100, 1), row(110, 2), row(120, 0.5)}}).empty());
  EXPECT_TRUE(locate_crossing(ScanResult{{row(100, 1)}}).empty());
  EXPECT_EQ(locate_crossing(ScanResult{{row(1, 1), row(2, 0), row(3, -1)}}), std::vector<double>{2});
  ScanRow failed = row(2, -5);
  failed.error = "boom";
  EXPECT_EQ(locate_crossing(ScanResult{{row(1, 1), failed, row(3, 1)}}).size(), 0u);
}

TEST(Crossing, RecoversTheApexOfALinearTwoLevelModel) {
  // diabatic energies along a straight path through the apex of a cone
  ConeModel m{Eigen::Vector2d(0.4, -0.1), Eigen::Vector2d(1, 0.2), Eigen::Vector2d(0.3, 1), 0.9, 1.7, {}};
  const double alpha0 = 118.37;
  const Eigen::Vector2d dir(0.6, 0.8);
  ScanResult scan;
  for (double alpha = 100; alpha <= 140; alpha += 1.0) {
    const Eigen::Matrix2d h = cone_hamiltonian(m, m.r0 + 0.01 * (alpha - alpha0) * dir);
    scan.rows.push_back(row(alpha, h(1, 1) - h(0, 0)));
  }
  const auto x = locate_crossing(scan);
  ASSERT_EQ(x.size(), 1u);
  EXPECT_NEAR(x[0], alpha0, 1e-10);
}

TEST(ScanCsv, HeaderAndEmptyOracleColumns) {
  ScanRow r = row(120, 0.25);
  r.label = "x";
  r.e_a = -1;
  r.e_b = -0.75;
  r.e_sa = -0.875;
  r.n_cycles = 3;
  r.converged = true;
  r.w_dom_a = 0.9;
  r.w_dom_b = 0.8;
  ScanRow bad;
  bad.label = "y";
  bad.error = "fail";
  std::ostringstream out;
  write_scan_csv(out, ScanResult{{r, bad}});
  EXPECT_EQ(out.str(),
            "label,alpha_deg,phi_deg,e_A,e_B,e_sa,gap,n_cycles,converged,fid_A,fid_B,w_dom_A,w_dom_B\n"
            "x,120,,-1,-0.75,-0.875,0.25,3,1,,,0.9,0.8\n"
            "y,,,,,,,,error,,,,\n");
}

TEST(Fixtures, MetadataFromSidecarOrFileName) {
  const fs::path dir = scratch_dir();
  const auto [ao, c] = synthetic_fixture(4, 4, 1);
  for (const char* name : {"geom_a118.5_p90.aoint", "plain.aoint"}) {
    std::ofstream f(dir / name);
    write_aoint(f, ao, c);
  }
  std::ofstream(dir / "plain.csv") << "alpha_deg,phi_deg,e_hf\n121.25,45,-1.0\n";
  const Fixture a = load_fixture((dir / "geom_a118.5_p90.aoint").string());
  EXPECT_EQ(a.label, "geom_a118.5_p90");
  EXPECT_EQ(a.alpha_deg, 118.5);
  EXPECT_EQ(a.phi_deg, 90.0);
  const Fixture b = load_fixture((dir / "plain.aoint").string());
  EXPECT_EQ(b.alpha_deg, 121.25);
  EXPECT_EQ(b.phi_deg, 45.0);
  EXPECT_EQ(b.c.c, c.c);

  std::ofstream(dir / "mo.dump") << "&FCI NORB=2,NELEC=2,MS2=0,\n&END\n-1.0 1 1 0 0\n-0.5 2 2 0 0\n0.6 1 1 1 1\n";
  const Fixture d = load_fixture((dir / "mo.dump").string());
  EXPECT_TRUE(d.c.c.isIdentity());
  EXPECT_EQ(d.ao.n_orb, 2);
  EXPECT_FALSE(d.alpha_deg.has_value());
}

TEST(Scan, OracleColumnsAndIdenticalRows) {
  const auto [ao, c] = synthetic_fixture(5, 6, 3);
  Fixture fx{"", "g", 120.0, 90.0, ao, c};
  ScanOptions opt;
  opt.oracle = true;
  const ScanResult scan = pes_scan(default_config(ActiveSpaceSpec::contiguous(6, 4, 3)), {fx, fx}, opt);
  ASSERT_EQ(scan.rows.size(), 2u);
  const ScanRow& r = scan.rows[0];
  EXPECT_TRUE(r.error.empty()) << r.error;
  ASSERT_TRUE(r.fid_a && r.fid_b);
  EXPECT_GT(*r.fid_a, 0.999);
  EXPECT_GT(*r.fid_b, 0.999);
  EXPECT_GT(r.w_dom_a, 0.5);
  EXPECT_NEAR(r.gap, r.e_b - r.e_a, 0.0);
  EXPECT_EQ(scan.rows[1].e_sa, r.e_sa);
  EXPECT_EQ(scan.rows[1].e_a, r.e_a);
  EXPECT_EQ(scan.rows[1].n_cycles, r.n_cycles);
}

TEST(Scan, FailuresAreRecordedPerRow) {
  const auto [ao, c] = synthetic_fixture(5, 6, 3);
  Fixture good{"", "good", 1.0, {}, ao, c};
  Fixture bad = good;
  bad.label = "bad";
  bad.ao.n_elec = 4;  // inconsistent with the active space
  const ScanResult scan = pes_scan(default_config(ActiveSpaceSpec::contiguous(6, 4, 3)), {bad, good});
  ASSERT_EQ(scan.rows.size(), 2u);
  EXPECT_FALSE(scan.rows[0].error.empty());
  EXPECT_TRUE(scan.rows[1].error.empty());
}

}  // namespace
}  // namespace saoovqe
