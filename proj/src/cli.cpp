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

#include "saoovqe/cli.hpp"

#include <cmath>
#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#if __has_include(<CLI11.hpp>)
#include <CLI11.hpp>
#else
#include <CLI/CLI.hpp>
#endif

#include "saoovqe/ci_model.hpp"
#include "saoovqe/driver.hpp"
#include "saoovqe/error.hpp"
#include "saoovqe/reference.hpp"
#include "saoovqe/synthetic.hpp"

namespace saoovqe {
namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<double> parse_list(const std::string& text, const char* what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(cell, &used));
      if (used != cell.size()) throw std::invalid_argument(cell);
    } catch (const std::exception&) {
      throw UsageError(std::string("cannot parse ") + what + " '" + text + "'");
    }
  }
  return out;
}

struct Common {
  std::string fixture, fcidump, active = "4,3", frozen, weights = "0.5,0.5", out, trace;
  double tol = 1e-4;
  int max_cycles = 20;
  int oo_window = -1;
  bool variance = false;
  bool oracle = false;
  bool no_oo = false;
  bool cold_start = false;
  unsigned long long seed = 0;
  int restarts = 0;
};

void add_fixture_options(CLI::App* app, Common& o) {
  app->add_option("--fixture", o.fixture, "AOINT or FCIDUMP file");
  app->add_option("--fcidump", o.fcidump, "FCIDUMP file");
  app->add_option("--active", o.active, "active space as n_elec,n_orb")->capture_default_str();
  app->add_option("--frozen", o.frozen, "comma-separated frozen orbitals (0-based)");
}

void add_run_options(CLI::App* app, Common& o) {
  app->add_option("--weights", o.weights, "ensemble weights w_A,w_B")->capture_default_str();
  app->add_option("--tol", o.tol, "global convergence threshold (Ha)")->capture_default_str();
  app->add_option("--max-cycles", o.max_cycles, "maximum SA-OO-VQE cycles")->capture_default_str();
  app->add_option("--oo-window", o.oo_window, "number of MOs in the orbital-optimization window");
  app->add_flag("--variance", o.variance, "add the state-averaged variance to the cost");
  app->add_flag("--no-oo", o.no_oo, "skip orbital optimization (SA-VQE in the input orbitals)");
  app->add_flag("--cold-start", o.cold_start, "reset theta to zero at every cycle");
  app->add_option("--trace", o.trace, "trace CSV path");
  app->add_option("--seed", o.seed, "seed for optimizer restarts");
  app->add_option("--restarts", o.restarts, "random restarts of each SA-VQE solve");
}

Fixture load(const Common& o) {
  const std::string& path = o.fcidump.empty() ? o.fixture : o.fcidump;
  if (path.empty()) throw UsageError("a fixture is required (--fixture or --fcidump)");
  if (!std::filesystem::exists(path)) throw UsageError("fixture not found: " + path);
  return load_fixture(path);
}

ActiveSpaceSpec make_spec(const Common& o, const IntegralSet& ints) {
  const auto act = parse_list(o.active, "--active");
  if (act.size() != 2) throw UsageError("--active expects n_elec,n_orb");
  const int n_elec = static_cast<int>(act[0]), n_orb = static_cast<int>(act[1]);
  ActiveSpaceSpec spec;
  if (o.frozen.empty()) {
    spec = ActiveSpaceSpec::contiguous(ints.n_elec, n_elec, n_orb);
  } else {
    for (double f : parse_list(o.frozen, "--frozen")) spec.frozen.push_back(static_cast<int>(f));
    for (int p = 0; p < ints.n_orb && static_cast<int>(spec.active.size()) < n_orb; ++p)
      if (std::find(spec.frozen.begin(), spec.frozen.end(), p) == spec.frozen.end())
        spec.active.push_back(p);
    spec.n_active_elec = n_elec;
  }
  try {
    spec.validate(ints.n_orb, ints.n_elec);
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
  return spec;
}

RunConfig make_config(const Common& o, const ActiveSpaceSpec& spec) {
  RunConfig cfg;
  cfg.active = spec;
  const auto w = parse_list(o.weights, "--weights");
  if (w.size() != 2) throw UsageError("--weights expects w_A,w_B");
  if (!(w[0] >= w[1] && w[1] >= 0.0 && std::abs(w[0] + w[1] - 1.0) < 1e-12))
    throw UsageError("--weights must satisfy w_A >= w_B >= 0 and sum to 1");
  cfg.w_a = w[0];
  cfg.w_b = w[1];
  cfg.global_tol = o.tol;
  cfg.max_cycles = o.max_cycles;
  cfg.use_variance = o.variance;
  cfg.orbital_optimization = !o.no_oo;
  cfg.warm_start = !o.cold_start;
  cfg.vqe.seed = o.seed;
  cfg.vqe.n_restarts = o.restarts;
  if (o.oo_window >= 0) {
    cfg.oo.n_virtual = o.oo_window - static_cast<int>(spec.frozen.size() + spec.active.size());
    if (cfg.oo.n_virtual < 0) throw UsageError("--oo-window is smaller than frozen + active");
  }
  try {
    cfg.validate();
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
  return cfg;
}

std::unique_ptr<std::ofstream> open_out(const std::string& path) {
  auto f = std::make_unique<std::ofstream>(path);
  if (!*f) throw UsageError("cannot write " + path);
  return f;
}

void attach_trace(RunConfig& cfg, const std::string& path, std::unique_ptr<std::ofstream>& sink) {
  if (path.empty()) return;
  sink = open_out(path);
  write_trace_header(*sink);
  std::ofstream* s = sink.get();
  cfg.trace = [s](const TraceRow& row) { write_trace_row(*s, row); };
}

void print_row(std::ostream& out, const ScanRow& r) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), "e_A %.10f\ne_B %.10f\ne_sa %.10f\ngap %.10f\ncycles %d\nconverged %d\n",
                r.e_a, r.e_b, r.e_sa, r.gap, r.n_cycles, r.converged ? 1 : 0);
  out << buf;
  if (r.fid_a) {
    std::snprintf(buf, sizeof(buf), "fid_A %.8f\nfid_B %.8f\n", *r.fid_a, *r.fid_b);
    out << buf;
  }
}

int cmd_run(const Common& o, std::ostream& out, bool fidelity_only) {
  const Fixture fx = load(o);
  RunConfig cfg = make_config(o, make_spec(o, fx.ao));
  std::unique_ptr<std::ofstream> trace;
  attach_trace(cfg, o.trace, trace);
  ScanOptions sopt;
  sopt.oracle = o.oracle || fidelity_only;
  const ScanRow row = scan_point(cfg, fx, sopt);
  if (!row.error.empty()) throw NumericalError(row.error);
  print_row(out, row);
  if (!o.out.empty()) {
    auto f = open_out(o.out);
    write_scan_csv(*f, ScanResult{{row}});
  }
  return 0;
}

int cmd_scan(const Common& o, const std::string& dir, std::ostream& out) {
  if (dir.empty() || !std::filesystem::is_directory(dir)) throw UsageError("--fixtures must name a directory");
  std::vector<Fixture> fixtures;
  std::vector<std::filesystem::path> paths;
  for (const auto& e : std::filesystem::directory_iterator(dir)) {
    const auto ext = e.path().extension().string();
    if (e.is_regular_file() && (ext == ".aoint" || ext == ".fcidump" || ext == ".dump"))
      paths.push_back(e.path());
  }
  std::sort(paths.begin(), paths.end());
  if (paths.empty()) throw UsageError("no fixtures (*.aoint, *.fcidump, *.dump) in " + dir);
  for (const auto& p : paths) fixtures.push_back(load_fixture(p.string()));
  std::stable_sort(fixtures.begin(), fixtures.end(), [](const Fixture& a, const Fixture& b) {
    return a.alpha_deg.value_or(0.0) < b.alpha_deg.value_or(0.0);
  });

  RunConfig cfg = make_config(o, make_spec(o, fixtures.front().ao));
  std::unique_ptr<std::ofstream> trace;
  attach_trace(cfg, o.trace, trace);
  ScanOptions sopt;
  sopt.oracle = o.oracle;
  ScanResult scan;
  for (const auto& fx : fixtures) {
    if (trace) *trace << "# " << fx.label << '\n';
    scan.rows.push_back(scan_point(cfg, fx, sopt));
  }
  if (o.out.empty()) {
    write_scan_csv(out, scan);
  } else {
    auto f = open_out(o.out);
    write_scan_csv(*f, scan);
  }
  for (double a : locate_crossing(scan)) out << "crossing " << a << '\n';
  return std::any_of(scan.rows.begin(), scan.rows.end(), [](const ScanRow& r) { return !r.error.empty(); })
             ? 2
             : 0;
}

int cmd_casci(const Common& o, int n_states, bool singlets, std::ostream& out) {
  const Fixture fx = load(o);
  const ActiveSpaceSpec spec = make_spec(o, fx.ao);
  const FrozenCoreHamiltonian fc = build_frozen_core(transform_to_mo(fx.ao, fx.c), spec);
  const DeterminantBasis basis(fc.n_active_orb, fc.n_active_elec);
  const int n = std::min<int>(n_states, static_cast<int>(basis.size()));
  std::vector<CASCIState> states;
  try {
    states = casci_solve(fc, n, singlets ? SpinTarget::Singlet : SpinTarget::Any);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  char buf[128];
  for (std::size_t k = 0; k < states.size(); ++k) {
    std::snprintf(buf, sizeof(buf), "%zu %.12f %.6f\n", k, states[k].energy, std::abs(states[k].s2) < 5e-13 ? 0.0 : states[k].s2);
    out << buf;
  }
  return 0;
}

int cmd_make_synthetic(unsigned long long seed, int n_orb, int n_elec, double coupling,
                       const std::string& path, const std::string& fcidump, std::ostream& out) {
  if (n_orb < 1 || n_orb > 16) throw UsageError("--n-orb must be in [1, 16]");
  if (n_elec < 0 || n_elec > 2 * n_orb || n_elec % 2) throw UsageError("--n-elec must be even and <= 2 n_orb");
  const auto [ao, c] = synthetic_fixture(n_orb, n_elec, seed, coupling);
  if (path.empty()) {
    write_aoint(out, ao, c);
  } else {
    auto f = open_out(path);
    write_aoint(*f, ao, c);
  }
  if (!fcidump.empty()) {
    auto f = open_out(fcidump);
    write_fcidump(*f, transform_to_mo(ao, c));
  }
  return 0;
}

int cmd_ci_model(double hx, double hz, double lo, double hi, int n, const std::string& path,
                 std::ostream& out) {
  ConeModel m{Eigen::Vector2d::Zero(), Eigen::Vector2d(1.0, 0.0), Eigen::Vector2d(0.0, 1.0), hx, hz, {}};
  m.validate();
  if (path.empty()) {
    write_cone_grid(out, m, lo, hi, n);
  } else {
    auto f = open_out(path);
    write_cone_grid(*f, m, lo, hi, n);
  }
  return 0;
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"SA-OO-VQE toolkit", "saoovqe"};
  app.require_subcommand(1);
  Common o;
  std::string fixtures_dir, synth_out, synth_fcidump;
  unsigned long long synth_seed = 7;
  int n_orb = 4, n_elec = 4, n_states = 4, grid = 41;
  double coupling = 0.05, hx = 1.0, hz = 1.0, lo = -1.0, hi = 1.0;
  bool singlets = false;

  auto* run = app.add_subcommand("run", "SA-OO-VQE on one fixture");
  add_fixture_options(run, o);
  add_run_options(run, o);
  run->add_flag("--oracle", o.oracle, "compare against the internal SA-CASSCF");
  run->add_option("--out", o.out, "result CSV path");

  auto* scan = app.add_subcommand("scan", "SA-OO-VQE over a directory of fixtures");
  scan->add_option("--fixtures", fixtures_dir, "fixture directory")->required();
  scan->add_option("--active", o.active, "active space as n_elec,n_orb")->capture_default_str();
  scan->add_option("--frozen", o.frozen, "comma-separated frozen orbitals (0-based)");
  add_run_options(scan, o);
  scan->add_flag("--oracle", o.oracle, "add SA-CASSCF fidelity columns");
  scan->add_option("--out", o.out, "scan CSV path (stdout when omitted)");

  auto* casci = app.add_subcommand("casci", "exact CASCI energies");
  add_fixture_options(casci, o);
  casci->add_option("--n-states", n_states, "number of states")->capture_default_str();
  casci->add_flag("--singlets", singlets, "restrict to S = 0");

  auto* fid = app.add_subcommand("fidelity", "SA-OO-VQE vs SA-CASSCF state fidelities");
  add_fixture_options(fid, o);
  add_run_options(fid, o);
  fid->add_option("--out", o.out, "result CSV path");

  auto* synth = app.add_subcommand("make-synthetic", "write a deterministic synthetic AOINT fixture");
  synth->add_option("--seed", synth_seed, "generator seed")->capture_default_str();
  synth->add_option("--n-orb", n_orb, "number of orbitals")->capture_default_str();
  synth->add_option("--n-elec", n_elec, "number of electrons")->capture_default_str();
  synth->add_option("--coupling", coupling, "off-diagonal one-electron scale")->capture_default_str();
  synth->add_option("--out", synth_out, "AOINT path (stdout when omitted)");
  synth->add_option("--fcidump", synth_fcidump, "also write the MO integrals as FCIDUMP");

  auto* cone = app.add_subcommand("ci-model", "CSV grid of a two-dimensional cone model");
  cone->add_option("--hx", hx, "h_X")->capture_default_str();
  cone->add_option("--hz", hz, "h_Z")->capture_default_str();
  cone->add_option("--min", lo, "grid lower bound")->capture_default_str();
  cone->add_option("--max", hi, "grid upper bound")->capture_default_str();
  cone->add_option("--n", grid, "points per axis")->capture_default_str();
  cone->add_option("--out", o.out, "CSV path (stdout when omitted)");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << "run with --help for usage\n";
    return 1;
  }

  try {
    if (*run) return cmd_run(o, out, false);
    if (*scan) return cmd_scan(o, fixtures_dir, out);
    if (*casci) return cmd_casci(o, n_states, singlets, out);
    if (*fid) return cmd_run(o, out, true);
    if (*synth) return cmd_make_synthetic(synth_seed, n_orb, n_elec, coupling, synth_out, synth_fcidump, out);
    if (*cone) return cmd_ci_model(hx, hz, lo, hi, grid, o.out, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << "\n";
    return 2;
  } catch (const InvariantError& e) {
    err << "invariant violated: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

int cli_main(int argc, char** argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return cli_main(args, std::cout, std::cerr);
}

}  // namespace saoovqe
