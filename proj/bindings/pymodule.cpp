#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "jtberry/perturb.hpp"
#include "jtberry/rotor.hpp"
#include "jtberry/vibronic.hpp"

namespace py = pybind11;
using namespace jtberry;

namespace {

void translate_errors() {
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      PyErr_SetString(PyExc_RuntimeError,
                      (std::string("[") + e.code() + "] " + e.what()).c_str());
    }
  });
}

}  // namespace

PYBIND11_MODULE(_jtberry, m) {
  m.doc() = "Jahn-Teller trough, Berry-phase, and vibronic spectrum library";
  translate_errors();

  py::class_<JTModel>(m, "JTModel")
      .def_readonly("name", &JTModel::name)
      .def_readonly("N", &JTModel::N)
      .def_readonly("M", &JTModel::M)
      .def_readonly("F", &JTModel::F)
      .def_readonly("omega", &JTModel::omega)
      .def_readonly("c", &JTModel::c)
      .def_property_readonly(
          "couplings", [](const JTModel& mm) { return mm.V; })
      .def("__repr__", [](const JTModel& mm) {
        return "<JTModel " + mm.name + " N=" + std::to_string(mm.N) +
               " M=" + std::to_string(mm.M) + ">";
      });

  py::class_<AdiabaticFrame>(m, "AdiabaticFrame")
      .def_readonly("Q", &AdiabaticFrame::Q)
      .def_readonly("eigenvalues", &AdiabaticFrame::eigenvalues)
      .def_readonly("eigenvectors", &AdiabaticFrame::eigenvectors)
      .def_readonly("clusters", &AdiabaticFrame::clusters);

  py::class_<TroughSpec>(m, "TroughSpec")
      .def_readonly("model", &TroughSpec::model)
      .def_readonly("Qstar", &TroughSpec::Qstar)
      .def_readonly("Emin", &TroughSpec::Emin)
      .def_readonly("Q_M", &TroughSpec::Q_M);

  py::class_<TroughPoint>(m, "TroughPoint")
      .def_readonly("theta", &TroughPoint::theta)
      .def_readonly("Q", &TroughPoint::Q);

  py::class_<PatternReport>(m, "PatternReport")
      .def_readonly("is_pattern", &PatternReport::is_pattern)
      .def_readonly("x_value", &PatternReport::x_value)
      .def_readonly("ratios", &PatternReport::ratios);

  py::enum_<LoopKind>(m, "LoopKind")
      .value("contractible", LoopKind::contractible)
      .value("nontrivial", LoopKind::nontrivial)
      .value("custom", LoopKind::custom);

  py::class_<LoopPath>(m, "LoopPath")
      .def_readonly("points", &LoopPath::points)
      .def_readonly("kind", &LoopPath::kind)
      .def_readonly("base", &LoopPath::base);

  py::class_<TransportRecord>(m, "TransportRecord")
      .def_readonly("transported", &TransportRecord::transported)
      .def_readonly("step_overlaps", &TransportRecord::step_overlaps)
      .def_readonly("C_end", &TransportRecord::C_end)
      .def_readonly("min_gap", &TransportRecord::min_gap);

  py::class_<HolonomyResult>(m, "HolonomyResult")
      .def_readonly("phase", &HolonomyResult::gamma0)
      .def_readonly("phase_raw", &HolonomyResult::gamma0_raw)
      .def_readonly("W", &HolonomyResult::W)
      .def_readonly("flipped_count", &HolonomyResult::flipped_count)
      .def_readonly("min_step_overlap", &HolonomyResult::min_step_overlap)
      .def_readonly("min_gap", &HolonomyResult::min_gap)
      .def_readonly("steps", &HolonomyResult::steps);

  py::class_<VibronicSpectrum>(m, "VibronicSpectrum")
      .def_readonly("levels", &VibronicSpectrum::levels)
      .def_readonly("degeneracies", &VibronicSpectrum::degeneracies)
      .def_readonly("n_max", &VibronicSpectrum::n_max)
      .def_readonly("converged", &VibronicSpectrum::converged)
      .def_readonly("ground_shift", &VibronicSpectrum::ground_shift);

  py::class_<VgsdReport>(m, "VgsdReport")
      .def_readonly("applicable", &VgsdReport::applicable)
      .def_readonly("converged", &VgsdReport::converged)
      .def_readonly("ground_degeneracy", &VgsdReport::ground_degeneracy)
      .def_readonly("ground_splitting", &VgsdReport::ground_splitting)
      .def_readonly("matches_vector_irrep", &VgsdReport::matches_vector_irrep);

  py::enum_<RotorParity>(m, "RotorParity")
      .value("even", RotorParity::even)
      .value("odd", RotorParity::odd)
      .value("both", RotorParity::both);

  py::class_<RotorLevel>(m, "RotorLevel")
      .def_readonly("L", &RotorLevel::L)
      .def_readonly("energy", &RotorLevel::energy)
      .def_readonly("degeneracy", &RotorLevel::degeneracy);

  py::class_<RotorSpectrum>(m, "RotorSpectrum")
      .def_readonly("N", &RotorSpectrum::N)
      .def_readonly("parity", &RotorSpectrum::parity)
      .def_readonly("levels", &RotorSpectrum::levels);

  py::enum_<PerturbKind>(m, "PerturbKind")
      .value("quadratic", PerturbKind::quadratic)
      .value("field", PerturbKind::field);

  py::class_<PerturbedModel>(m, "PerturbedModel")
      .def_readonly("base", &PerturbedModel::base)
      .def_readonly("kind", &PerturbedModel::kind)
      .def_readonly("g", &PerturbedModel::g)
      .def_readonly("epsilon", &PerturbedModel::epsilon);

  py::class_<ScanRow>(m, "ScanRow")
      .def_readonly("strength", &ScanRow::strength)
      .def_readonly("phase_raw", &ScanRow::phase_raw)
      .def_readonly("phase", &ScanRow::phase_snapped)
      .def_readonly("min_gap", &ScanRow::min_gap)
      .def_readonly("splitting", &ScanRow::splitting)
      .def_readonly("status", &ScanRow::status);

  m.def("build_model", &build_model, py::arg("name"), py::arg("F") = 1.0,
        py::arg("omega") = 1.0);
  m.def("make_custom_model", &make_custom_model, py::arg("name"), py::arg("N"),
        py::arg("couplings"), py::arg("F") = 1.0, py::arg("omega") = 1.0);
  m.def("hamiltonian", &hamiltonian, py::arg("model"), py::arg("Q"));
  m.def("eigensystem", &eigensystem, py::arg("model"), py::arg("Q"),
        py::arg("cluster_tol") = kDefaultClusterTol);
  m.def("apes", &apes, py::arg("model"), py::arg("Q"));
  m.def("electronic_rotation", &electronic_rotation, py::arg("model"),
        py::arg("theta"));
  m.def("induced_configuration_rotation", &induced_configuration_rotation,
        py::arg("model"), py::arg("U"));

  m.def("find_trough", &find_trough, py::arg("model"));
  m.def("trough_point", &trough_point, py::arg("spec"), py::arg("theta"));
  m.def("verify_trough_spectrum", &verify_trough_spectrum, py::arg("model"),
        py::arg("Q"));
  m.def("antipode", &antipode, py::arg("spec"), py::arg("theta"));

  m.def("make_loop", &make_loop, py::arg("spec"), py::arg("kind"),
        py::arg("base_theta"), py::arg("steps") = 256);
  m.def("transport_ground", &transport_ground, py::arg("model"),
        py::arg("path"));
  m.def("berry_phase", &berry_phase, py::arg("model"), py::arg("path"));
  m.def("berry_phase_raw", &berry_phase_raw, py::arg("model"),
        py::arg("path"));
  m.def("subspace_holonomy", &subspace_holonomy, py::arg("model"),
        py::arg("path"));
  m.def("projector", &projector, py::arg("model"), py::arg("Q"));

  m.def("low_spectrum", &low_spectrum, py::arg("model"), py::arg("n_max"),
        py::arg("k"), py::arg("tol") = kDefaultVibronicTol,
        py::arg("max_dim") = kDefaultDimBudget,
        py::arg("check_convergence") = true);
  m.def("vgsd_check", &vgsd_check, py::arg("model"), py::arg("n_max"),
        py::arg("max_dim") = kDefaultDimBudget);

  m.def("rotor_degeneracy", &rotor_degeneracy, py::arg("N"), py::arg("L"));
  m.def("rotor_spectrum", &rotor_spectrum, py::arg("N"), py::arg("parity"),
        py::arg("k"));

  m.def("add_quadratic", &add_quadratic, py::arg("model"), py::arg("g"));
  m.def("add_field", &add_field, py::arg("model"), py::arg("W"),
        py::arg("epsilon"));
  m.def("perturbed_hamiltonian", &perturbed_hamiltonian, py::arg("perturbed"),
        py::arg("Q"));
  m.def("robustness_scan", &robustness_scan, py::arg("perturbed"),
        py::arg("loop"), py::arg("strengths"),
        py::arg("splitting_n_max") = 0, py::arg("threads") = 1);
}
