#include "distill/channels.hpp"
#include "distill/experiments.hpp"
#include "distill/quadrature.hpp"
#include "distill/scattering.hpp"
#include "distill/sector_model.hpp"
#include "distill/spin_algebra.hpp"
#include "distill/trajectories.hpp"

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace distill;

PYBIND11_MODULE(_core, m) {
  m.doc() =
      "Repeated on-/off-resonant scattering of flying ancilla qubits that "
      "drives two fixed qubits into the singlet state: scattering operators, "
      "the induced quantum channels, their sector model, and Monte Carlo "
      "trajectories.";

  py::register_exception<NotMixingError>(m, "NotMixingError", PyExc_RuntimeError);

  py::enum_<Axis>(m, "Axis")
      .value("x", Axis::X)
      .value("y", Axis::Y)
      .value("z", Axis::Z);
  py::enum_<Site>(m, "Site")
      .value("X", Site::X)
      .value("A", Site::A)
      .value("B", Site::B);

  py::class_<PhysicalParams>(m, "PhysicalParams")
      .def(py::init([](double kappa, double chi, double coupling, int n,
                       double delta_kappa, double eta) {
             PhysicalParams p{kappa, chi, coupling, n, delta_kappa, eta};
             p.validate();
             return p;
           }),
           py::arg("kappa") = pi, py::arg("chi") = 2.5 * pi,
           py::arg("coupling") = pi, py::arg("n") = 1,
           py::arg("delta_kappa") = 0.0, py::arg("eta") = 1.0)
      .def_readwrite("kappa", &PhysicalParams::kappa)
      .def_readwrite("chi", &PhysicalParams::chi)
      .def_readwrite("coupling", &PhysicalParams::coupling)
      .def_readwrite("n", &PhysicalParams::n)
      .def_readwrite("delta_kappa", &PhysicalParams::delta_kappa)
      .def_readwrite("eta", &PhysicalParams::eta)
      .def("resonant_kappa", &PhysicalParams::resonant_kappa)
      .def("validate", &PhysicalParams::validate)
      .def("__repr__", [](const PhysicalParams& p) {
        std::ostringstream os;
        os << "PhysicalParams(kappa=" << p.kappa << ", chi=" << p.chi
           << ", coupling=" << p.coupling << ", n=" << p.n
           << ", delta_kappa=" << p.delta_kappa << ", eta=" << p.eta << ")";
        return os.str();
      });

  // spin algebra
  m.def("pauli", &pauli, py::arg("axis"), py::arg("site"));
  m.def("build_projectors", [] {
    const Projectors p = build_projectors();
    py::dict d;
    d["p_minus"] = p.p_minus;
    d["p_plus"] = p.p_plus;
    d["q_three_half"] = p.q_three_half;
    d["q_one_half"] = p.q_one_half;
    d["k_plus"] = p.k_plus;
    d["k_minus"] = p.k_minus;
    return d;
  });
  m.def("partial_trace_x", &partial_trace_x, py::arg("op"));
  m.def("lift_ab", &lift_ab, py::arg("op"));
  m.def("singlet_vector", &singlet_vector);
  m.def("singlet_projector_ab", &singlet_projector_ab);
  m.def("triplet_projector_ab", &triplet_projector_ab);
  m.def("singlet_fidelity", &singlet_fidelity, py::arg("rho"));
  m.def("unpolarized_spin", &unpolarized_spin);

  // scattering
  py::class_<ScatterCoefficients>(m, "ScatterCoefficients")
      .def_readonly("omega", &ScatterCoefficients::omega)
      .def_readonly("alpha", &ScatterCoefficients::alpha)
      .def_readonly("beta", &ScatterCoefficients::beta);
  m.def("scatter_coefficients", &scatter_coefficients, py::arg("kappa"),
        py::arg("coupling"));

  py::class_<ScatterPair>(m, "ScatterPair")
      .def_readonly("transmission", &ScatterPair::transmission)
      .def_readonly("reflection", &ScatterPair::reflection)
      .def_readonly("kappa", &ScatterPair::kappa);
  m.def("scatter_operators",
        py::overload_cast<double, double>(&scatter_operators), py::arg("kappa"),
        py::arg("coupling"));
  m.def("scatter_operators",
        py::overload_cast<const PhysicalParams&>(&scatter_operators),
        py::arg("params"));
  m.def("resonant_operators", &resonant_operators, py::arg("n"),
        py::arg("coupling"));
  m.def("transmission_probability", &transmission_probability, py::arg("params"),
        py::arg("spin_x"), py::arg("rho_ab"));

  // channels
  py::class_<Superoperator>(m, "Superoperator")
      .def_readonly("matrix", &Superoperator::matrix)
      .def_readonly("label", &Superoperator::label)
      .def("apply", &Superoperator::apply, py::arg("rho"))
      .def("__matmul__",
           [](const Superoperator& a, const Superoperator& b) { return a * b; })
      .def("__add__",
           [](const Superoperator& a, const Superoperator& b) { return a + b; })
      .def("__rmul__",
           [](const Superoperator& s, double scale) { return scale * s; })
      .def("__repr__", [](const Superoperator& s) {
        return "Superoperator(" + s.label + ")";
      });

  m.def("channel_T", &channel_T, py::arg("params"),
        py::arg("spin_x") = unpolarized_spin());
  m.def("channel_R", &channel_R, py::arg("params"),
        py::arg("spin_x") = unpolarized_spin());
  m.def("channel_S", &channel_S, py::arg("params"),
        py::arg("spin_x") = unpolarized_spin());
  m.def(
      "protocol_map",
      [](const PhysicalParams& p, bool warn) {
        return warn ? protocol_map(p) : protocol_map(p, nullptr);
      },
      py::arg("params"), py::arg("warn") = true);

  py::enum_<DetectorVariant>(m, "DetectorVariant")
      .value("I", DetectorVariant::I)
      .value("II", DetectorVariant::II);
  m.def("detector_map", &detector_map, py::arg("params"), py::arg("variant"));

  py::class_<MomentumDistribution>(m, "MomentumDistribution")
      .def_static("point", &MomentumDistribution::point, py::arg("kappa"))
      .def_static("gaussian", &MomentumDistribution::gaussian, py::arg("center"),
                  py::arg("width"))
      .def_static("discrete", &MomentumDistribution::discrete, py::arg("nodes"),
                  py::arg("weights"));
  m.def("averaged_map",
        py::overload_cast<const MomentumDistribution&, const PhysicalParams&>(
            &averaged_map),
        py::arg("momentum_k"), py::arg("params"));
  m.def("averaged_map",
        py::overload_cast<const MomentumDistribution&, const MomentumDistribution&,
                          const PhysicalParams&>(&averaged_map),
        py::arg("momentum_k"), py::arg("momentum_q"), py::arg("params"));

  m.def("superop_spectrum", &superop_spectrum, py::arg("s"));
  m.def("spectral_gap", &spectral_gap, py::arg("s"));
  m.def("fixed_point", &fixed_point, py::arg("s"));
  m.def("iterate", &iterate, py::arg("s"), py::arg("rho0"), py::arg("cycles"));
  m.def("average_fidelity", &average_fidelity, py::arg("s"), py::arg("cycles"));
  m.def("choi_matrix", &choi_matrix, py::arg("s"));

  py::class_<CptReport>(m, "CptReport")
      .def_readonly("trace_defect", &CptReport::trace_defect)
      .def_readonly("hermiticity_defect", &CptReport::hermiticity_defect)
      .def_readonly("choi_min_eigenvalue", &CptReport::choi_min_eigenvalue)
      .def("passes", &CptReport::passes, py::arg("tp_tol") = 1e-12,
           py::arg("herm_tol") = 1e-12, py::arg("choi_floor") = -1e-10);
  m.def("certify_cpt", &certify_cpt, py::arg("s"));

  // sector model
  py::class_<SectorMatrix>(m, "SectorMatrix")
      .def_readonly("entries", &SectorMatrix::entries)
      .def_readonly("label", &SectorMatrix::label)
      .def("__repr__", [](const SectorMatrix& s) {
        return "SectorMatrix(" + s.label + ")";
      });
  m.def("w_coefficient", &w_coefficient, py::arg("chi"), py::arg("coupling"));
  m.def("v_coefficient", &v_coefficient, py::arg("n"), py::arg("coupling"));
  m.def("sector_T", &sector_T, py::arg("kappa"), py::arg("coupling"));
  m.def("sector_R", &sector_R, py::arg("kappa"), py::arg("coupling"));
  m.def("sector_S", &sector_S, py::arg("chi"), py::arg("coupling"));
  m.def("sector_protocol", &sector_protocol, py::arg("kappa"), py::arg("chi"),
        py::arg("coupling"));
  m.def("sector_ideal", &sector_ideal, py::arg("n"), py::arg("chi"),
        py::arg("coupling"));
  m.def("fixed_fidelity", &fixed_fidelity, py::arg("m"));

  py::enum_<DetectorCase>(m, "DetectorCase")
      .value("I", DetectorCase::I)
      .value("II", DetectorCase::II);
  m.def("detector_sector", &detector_sector, py::arg("n"), py::arg("chi"),
        py::arg("coupling"), py::arg("eta"), py::arg("variant"));

  py::class_<AveragedSector>(m, "AveragedSector")
      .def_readonly("matrix", &AveragedSector::matrix)
      .def_readonly("fidelity", &AveragedSector::fidelity);
  m.def("averaged_sector", &averaged_sector, py::arg("n"), py::arg("delta_kappa"),
        py::arg("chi"), py::arg("coupling"));
  m.def("closed_form_curve", &closed_form_curve, py::arg("n"), py::arg("chi"),
        py::arg("coupling"), py::arg("f0"), py::arg("cycles"));

  // trajectories
  py::enum_<ProtocolVariant>(m, "ProtocolVariant")
      .value("ideal", ProtocolVariant::Ideal)
      .value("detector1", ProtocolVariant::DetectorI)
      .value("detector2", ProtocolVariant::DetectorII);
  py::enum_<CycleOutcome>(m, "CycleOutcome")
      .value("transmitted", CycleOutcome::Transmitted)
      .value("reflected_shaken", CycleOutcome::ReflectedShaken)
      .value("missed_resent", CycleOutcome::MissedResent)
      .value("missed_shaken", CycleOutcome::MissedShaken);

  py::class_<TrajectoryConfig>(m, "TrajectoryConfig")
      .def(py::init<>())
      .def_readwrite("params", &TrajectoryConfig::params)
      .def_readwrite("cycles", &TrajectoryConfig::cycles)
      .def_readwrite("variant", &TrajectoryConfig::variant)
      .def_readwrite("seed", &TrajectoryConfig::seed)
      .def_readwrite("rho0", &TrajectoryConfig::rho0)
      .def_readwrite("resonant_spin", &TrajectoryConfig::resonant_spin)
      .def_readwrite("shake_spin", &TrajectoryConfig::shake_spin);

  py::class_<TrajectoryRecord>(m, "TrajectoryRecord")
      .def_readonly("outcomes", &TrajectoryRecord::outcomes)
      .def_readonly("fidelities", &TrajectoryRecord::fidelities)
      .def_readonly("final_state", &TrajectoryRecord::final_state);
  m.def("run_trajectory", &run_trajectory, py::arg("config"),
        py::arg("stream_index") = 0);

  py::class_<EnsembleResult>(m, "EnsembleResult")
      .def_readonly("mean_fidelity", &EnsembleResult::mean_fidelity)
      .def_readonly("stderr_fidelity", &EnsembleResult::stderr_fidelity)
      .def_readonly("mean_final_state", &EnsembleResult::mean_final_state)
      .def_readonly("final_state_stderr", &EnsembleResult::final_state_stderr)
      .def_readonly("fraction_below_090", &EnsembleResult::fraction_below_090);
  m.def("ensemble_average", &ensemble_average, py::arg("config"),
        py::arg("n_traj"), py::arg("threads") = 1,
        py::call_guard<py::gil_scoped_release>());

  m.attr("PI") = pi;
}
