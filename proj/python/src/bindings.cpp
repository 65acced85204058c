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


#include <pybind11/eigen.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "saoovqe/ansatz.hpp"
#include "saoovqe/ci_model.hpp"
#include "saoovqe/cli.hpp"
#include "saoovqe/driver.hpp"
#include "saoovqe/error.hpp"
#include "saoovqe/integrals.hpp"
#include "saoovqe/reference.hpp"
#include "saoovqe/synthetic.hpp"

namespace py = pybind11;
using namespace saoovqe;

namespace {

py::array_t<double> tensor_to_numpy(const Tensor4& t) {
  const auto n = static_cast<py::ssize_t>(t.dim());
  py::array_t<double> out({n, n, n, n});
  std::copy(t.data(), t.data() + t.size(), out.mutable_data());
  return out;
}

Tensor4 tensor_from_numpy(const py::array_t<double, py::array::c_style | py::array::forcecast>& a) {
  if (a.ndim() != 4 || a.shape(0) != a.shape(1) || a.shape(0) != a.shape(2) || a.shape(0) != a.shape(3))
    throw std::invalid_argument("g must have shape (n, n, n, n)");
  Tensor4 t(static_cast<std::size_t>(a.shape(0)));
  std::copy(a.data(), a.data() + a.size(), t.data());
  return t;
}

std::vector<double> casci_energies(const FrozenCoreHamiltonian& fc, int n_states, bool singlets) {
  std::vector<double> out;
  for (const auto& s : casci_solve(fc, n_states, singlets ? SpinTarget::Singlet : SpinTarget::Any)) out.push_back(s.energy);
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "State-averaged orbital-optimized VQE on a statevector simulator";

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<InvariantError>(m, "InvariantError", PyExc_ValueError);
  py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);

  py::enum_<BasisTag>(m, "BasisTag").value("AO", BasisTag::AO).value("MO", BasisTag::MO);

  py::class_<IntegralSet>(m, "IntegralSet")
      .def(py::init([](const Eigen::MatrixXd& h, const py::array_t<double>& g, double e_scalar, int n_elec,
                       std::optional<Eigen::MatrixXd> s, BasisTag basis) {
             IntegralSet out;
             out.n_orb = static_cast<int>(h.rows());
             out.h = h;
             out.g = tensor_from_numpy(g);
             out.s = s ? *s : Eigen::MatrixXd::Identity(h.rows(), h.rows());
             out.e_scalar = e_scalar;
             out.n_elec = n_elec;
             out.basis = basis;
             out.validate();
             return out;
           }),
           py::arg("h"), py::arg("g"), py::arg("e_scalar") = 0.0, py::arg("n_elec") = 0, py::arg("s") = py::none(),
           py::arg("basis") = BasisTag::MO)
      .def_readonly("n_orb", &IntegralSet::n_orb)
      .def_readonly("n_elec", &IntegralSet::n_elec)
      .def_readonly("e_scalar", &IntegralSet::e_scalar)
      .def_readonly("basis", &IntegralSet::basis)
      .def_readonly("h", &IntegralSet::h)
      .def_readonly("s", &IntegralSet::s)
      .def_property_readonly("g", [](const IntegralSet& i) { return tensor_to_numpy(i.g); })
      .def("to_fcidump", [](const IntegralSet& i) {
        std::ostringstream out;
        write_fcidump(out, i);
        return out.str();
      });

  py::class_<ActiveSpaceSpec>(m, "ActiveSpaceSpec")
      .def(py::init<std::vector<int>, std::vector<int>, int>(), py::arg("frozen"), py::arg("active"), py::arg("n_active_elec"))
      .def_static("contiguous", &ActiveSpaceSpec::contiguous, py::arg("n_elec_total"), py::arg("n_active_elec"),
                  py::arg("n_active_orb"))
      .def_readonly("frozen", &ActiveSpaceSpec::frozen)
      .def_readonly("active", &ActiveSpaceSpec::active)
      .def_readonly("n_active_elec", &ActiveSpaceSpec::n_active_elec);

  py::class_<FrozenCoreHamiltonian>(m, "FrozenCoreHamiltonian")
      .def_readonly("h_eff", &FrozenCoreHamiltonian::h_eff)
      .def_property_readonly("g_act", [](const FrozenCoreHamiltonian& f) { return tensor_to_numpy(f.g_act); })
      .def_readonly("shift", &FrozenCoreHamiltonian::shift)
      .def_readonly("n_active_orb", &FrozenCoreHamiltonian::n_active_orb)
      .def_readonly("n_active_elec", &FrozenCoreHamiltonian::n_active_elec);

  m.def("read_fcidump", &read_fcidump, py::arg("path"));
  m.def("read_aoint", [](const std::string& path) {
    auto [ao, c] = read_aoint(path);
    return py::make_tuple(ao, c.c);
  }, py::arg("path"), "AO integrals and MO coefficients (columns are MOs).");
  m.def("synthetic_fixture", [](int n_orb, int n_elec, std::uint64_t seed, double coupling) {
    auto [ao, c] = synthetic_fixture(n_orb, n_elec, seed, coupling);
    return py::make_tuple(ao, c.c);
  }, py::arg("n_orb"), py::arg("n_elec"), py::arg("seed"), py::arg("coupling") = 0.05);
  m.def("molecular_like_integrals", &molecular_like_integrals, py::arg("n_orb"), py::arg("n_elec"), py::arg("seed"),
        py::arg("coupling") = 0.05);
  m.def("transform_to_mo", [](const IntegralSet& ao, const Eigen::MatrixXd& c) { return transform_to_mo(ao, MOCoefficients{c}); },
        py::arg("ao"), py::arg("c"));
  m.def("build_frozen_core", &build_frozen_core, py::arg("mo"), py::arg("spec"));
  m.def("casci_energies", &casci_energies, py::arg("fc"), py::arg("n_states"), py::arg("singlets") = false);

  py::class_<GateCount>(m, "GateCount")
      .def_readonly("total", &GateCount::total)
      .def_readonly("single_qubit", &GateCount::single_qubit)
      .def_readonly("two_qubit", &GateCount::two_qubit);
  m.def("n_parameters", [](int n_active_orb) { return enumerate_parameters(n_active_orb).n_parameters(); },
        py::arg("n_active_orb"));
  m.def("count_gates", [](int n_active_orb) { return count_gates(enumerate_parameters(n_active_orb)); },
        py::arg("n_active_orb"));

  py::class_<RunResult>(m, "RunResult")
      .def_readonly("e_a", &RunResult::e_a)
      .def_readonly("e_b", &RunResult::e_b)
      .def_readonly("e_sa", &RunResult::e_sa)
      .def_readonly("theta", &RunResult::theta)
      .def_property_readonly("c", [](const RunResult& r) { return r.c.c; })
      .def_readonly("n_cycles", &RunResult::n_cycles)
      .def_readonly("converged", &RunResult::converged);
  m.def(
      "run",
      [](const IntegralSet& ao, const Eigen::MatrixXd& c, const ActiveSpaceSpec& spec, double w_a, double w_b,
         double tol, int max_cycles, bool variance, bool orbital_optimization) {
        RunConfig cfg;
        cfg.active = spec;
        cfg.w_a = w_a;
        cfg.w_b = w_b;
        cfg.global_tol = tol;
        cfg.max_cycles = max_cycles;
        cfg.use_variance = variance;
        cfg.orbital_optimization = orbital_optimization;
        py::gil_scoped_release release;
        return sa_oo_vqe_run(ao, MOCoefficients{c}, cfg);
      },
      py::arg("ao"), py::arg("c"), py::arg("spec"), py::arg("w_a") = 0.5, py::arg("w_b") = 0.5, py::arg("tol") = 1e-4,
      py::arg("max_cycles") = 20, py::arg("variance") = false, py::arg("orbital_optimization") = true);

  py::class_<ReferenceResult>(m, "ReferenceResult")
      .def_readonly("energies", &ReferenceResult::energies)
      .def_readonly("e_sa", &ReferenceResult::e_sa)
      .def_property_readonly("c", [](const ReferenceResult& r) { return r.c.c; })
      .def_readonly("n_cycles", &ReferenceResult::n_cycles)
      .def_readonly("converged", &ReferenceResult::converged);
  m.def(
      "sa_casscf",
      [](const IntegralSet& ao, const Eigen::MatrixXd& c, const ActiveSpaceSpec& spec, double w_a, double w_b) {
        py::gil_scoped_release release;
        return sa_casscf_reference(ao, MOCoefficients{c}, spec, w_a, w_b);
      },
      py::arg("ao"), py::arg("c"), py::arg("spec"), py::arg("w_a") = 0.5, py::arg("w_b") = 0.5);

  m.def(
      "cone_energies",
      [](const Eigen::VectorXd& r0, const Eigen::VectorXd& rx, const Eigen::VectorXd& rz, double hx, double hz,
         const Eigen::VectorXd& r) {
        ConeModel model{r0, rx, rz, hx, hz, {}};
        model.validate();
        return cone_energies(model, r);
      },
      py::arg("r0"), py::arg("rx"), py::arg("rz"), py::arg("hx"), py::arg("hz"), py::arg("r"));

  m.def(
      "cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        const int code = cli_main(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Run the command-line driver in process; returns (exit_code, stdout, stderr).");
}
