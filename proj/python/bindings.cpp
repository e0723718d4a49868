// Copyright 2026 The cvqe-lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cvqe/pipeline.hpp"

namespace py = pybind11;
using namespace cvqe;

namespace {

std::map<FockIndex, double> probs_of(const Distribution& d) { return d.probs; }

Distribution distribution_from(const std::map<FockIndex, double>& probs, int n_qubits) {
  Distribution d;
  d.probs = probs;
  d.n_qubits = n_qubits;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Cascaded VQE desk laboratory for minimal-basis hydrogen clusters";

  auto base = py::register_exception<Error>(m, "CvqeError");
  py::register_exception<ParseError>(m, "ParseError", base.ptr());
  py::register_exception<DomainError>(m, "DomainError", base.ptr());
  py::register_exception<FormatError>(m, "FormatError", base.ptr());
  py::register_exception<ResourceError>(m, "ResourceError", base.ptr());
  py::register_exception<EmptySubspaceError>(m, "EmptySubspaceError", base.ptr());
  py::register_exception<UnavailableCorrectionError>(m, "UnavailableCorrectionError", base.ptr());
  static py::exception<StageError> stage_error(m, "StageError", base.ptr());
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const StageError& e) {
      py::object err = py::reinterpret_borrow<py::object>(stage_error.ptr())(e.what());
      err.attr("stage") = e.stage();
      PyErr_SetObject(stage_error.ptr(), err.ptr());
    }
  });

  m.attr("HARTREE_TO_EV") = units::kHartreeToEv;
  m.attr("CHEMICAL_ACCURACY_EV") = units::kChemicalAccuracyEv;

  py::class_<Geometry>(m, "Geometry")
      .def_property_readonly("comment", &Geometry::comment)
      .def_property_readonly("positions", [](const Geometry& g) {
        std::vector<std::array<double, 3>> out;
        for (const auto& a : g.atoms()) out.push_back(a.position);
        return out;
      })
      .def("__len__", &Geometry::size)
      .def("distance", &Geometry::distance)
      .def("to_xyz", &Geometry::to_xyz);
  m.def("parse_geometry", [](const std::string& t) { return parse_geometry(t); });
  m.def("builtin_geometry", [](const std::string& l) { return builtin_geometry(l); });
  m.def("nuclear_repulsion", &nuclear_repulsion);

  py::class_<IntegralSet>(m, "IntegralSet")
      .def_readonly("n_ao", &IntegralSet::n_ao)
      .def_readonly("overlap", &IntegralSet::overlap)
      .def_readonly("core", &IntegralSet::core)
      .def_readonly("e_nuc", &IntegralSet::e_nuc)
      .def("eri", [](const IntegralSet& s, int p, int q, int r, int t) { return s.eri(p, q, r, t); });
  m.def("compute_integrals", [](const Geometry& g, const std::string& basis) {
    return compute_integrals(g, parse_basis_set(basis));
  }, py::arg("geometry"), py::arg("basis") = "sto-6g");

  py::class_<SCFResult>(m, "SCFResult")
      .def_readonly("mo_coeffs", &SCFResult::mo_coeffs)
      .def_readonly("orbital_energies", &SCFResult::orbital_energies)
      .def_readonly("e_hf", &SCFResult::e_hf)
      .def_readonly("n_alpha", &SCFResult::n_alpha)
      .def_readonly("n_beta", &SCFResult::n_beta)
      .def_readonly("converged", &SCFResult::converged)
      .def_readonly("iterations", &SCFResult::iterations);
  m.def("run_scf", [](const IntegralSet& ints, int na, int nb) { return run_scf(ints, na, nb); });

  py::class_<PauliSum>(m, "PauliSum")
      .def(py::init<int>())
      .def_property_readonly("n_qubits", &PauliSum::n_qubits)
      .def("__len__", &PauliSum::size)
      .def("add", [](PauliSum& h, const std::string& letters, double c) {
        h.add(PauliString::from_letters(letters), c);
      })
      .def("coefficient", [](const PauliSum& h, const std::string& letters) {
        return h.coefficient(PauliString::from_letters(letters));
      })
      .def("terms", [](const PauliSum& h) {
        std::vector<std::pair<std::string, double>> out;
        for (const auto& [p, c] : h.terms()) out.emplace_back(p.letters(), c);
        return out;
      })
      .def("to_dense", [](const PauliSum& h) { return to_dense(h); })
      .def("to_text", &PauliSum::to_text)
      .def_static("from_text", [](const std::string& t) { return PauliSum::from_text(t); });
  m.def("interpolate", &interpolate);
  m.def("prune", &prune, py::arg("h"), py::arg("threshold"), py::arg("drop_diagonal") = false);

  py::class_<ScheduleStep>(m, "ScheduleStep")
      .def_readonly("eta", &ScheduleStep::eta)
      .def_readonly("scale", &ScheduleStep::scale);
  py::class_<PrepSchedule>(m, "PrepSchedule")
      .def_readonly("K", &PrepSchedule::K)
      .def_readonly("hbar_omega", &PrepSchedule::hbar_omega)
      .def_readonly("steps", &PrepSchedule::steps);
  m.def("build_schedule", &build_schedule, py::arg("K"), py::arg("hbar_omega"),
        py::arg("with_h0_half_step") = false);

  py::class_<ConditionReport>(m, "ConditionReport")
      .def_readonly("left_ratio", &ConditionReport::left_ratio)
      .def_readonly("right_ratio", &ConditionReport::right_ratio)
      .def_readonly("margin", &ConditionReport::margin)
      .def_property_readonly("left", [](const ConditionReport& r) { return to_string(r.left); })
      .def_property_readonly("right", [](const ConditionReport& r) { return to_string(r.right); });
  m.def("check_conditions", &check_conditions, py::arg("K"), py::arg("hbar_omega"),
        py::arg("omega0"), py::arg("margin") = 0.5);

  py::class_<CircuitStats>(m, "CircuitStats")
      .def_readonly("term_count_per_step", &CircuitStats::term_count_per_step)
      .def_readonly("total_rotations", &CircuitStats::total_rotations)
      .def_readonly("cnot_estimate", &CircuitStats::cnot_estimate)
      .def_readonly("depth_proxy", &CircuitStats::depth_proxy);

  m.def("sample_counts", [](const std::map<FockIndex, double>& probs, int n_qubits, long long shots,
                            std::uint64_t seed) {
    return sample(distribution_from(probs, n_qubits), shots, seed).counts;
  }, py::arg("probs"), py::arg("n_qubits"), py::arg("shots"), py::arg("seed"));
  m.def("mix_noise", [](const std::map<FockIndex, double>& probs, int n_qubits, double lambda) {
    return mix_noise(distribution_from(probs, n_qubits), lambda).probs;
  });

  py::class_<RunConfig>(m, "RunConfig")
      .def(py::init<>())
      .def_readwrite("geometry", &RunConfig::geometry)
      .def_readwrite("fcidump", &RunConfig::fcidump)
      .def_readwrite("basis", &RunConfig::basis)
      .def_readwrite("charge", &RunConfig::charge)
      .def_readwrite("two_s", &RunConfig::two_s)
      .def_readwrite("K", &RunConfig::K)
      .def_readwrite("hbar_omega", &RunConfig::hbar_omega)
      .def_readwrite("shots", &RunConfig::shots)
      .def_readwrite("seed", &RunConfig::seed)
      .def_readwrite("count_threshold", &RunConfig::count_threshold)
      .def_readwrite("prune_threshold_ha", &RunConfig::prune_threshold_ha)
      .def_readwrite("drop_diagonal", &RunConfig::drop_diagonal)
      .def_readwrite("term_order", &RunConfig::term_order)
      .def_readwrite("noise_lambda", &RunConfig::noise_lambda)
      .def_readwrite("condition_margin", &RunConfig::condition_margin)
      .def_readwrite("postselect_sector", &RunConfig::postselect_sector)
      .def_readwrite("output_dir", &RunConfig::output_dir)
      .def_readwrite("large_basis_table", &RunConfig::large_basis_table)
      .def_readwrite("n_seeds", &RunConfig::n_seeds)
      .def_readonly("regime", &RunConfig::regime)
      .def("apply_regime", [](RunConfig& c, const std::string& r) { apply_regime(c, r); })
      .def("validate", &RunConfig::validate)
      .def("to_json", [](const RunConfig& c) { return config_to_json(c); })
      .def_static("from_json", [](const std::string& t) { return config_from_json(t); });

  py::class_<PreparedSystem>(m, "PreparedSystem")
      .def_readonly("label", &PreparedSystem::label)
      .def_readonly("n_alpha", &PreparedSystem::n_alpha)
      .def_readonly("n_beta", &PreparedSystem::n_beta)
      .def_readonly("e_hf", &PreparedSystem::e_hf)
      .def_readonly("hamiltonian", &PreparedSystem::hamiltonian)
      .def_readonly("h0", &PreparedSystem::h0)
      .def_readonly("phi0", &PreparedSystem::phi0)
      .def_readonly("warnings", &PreparedSystem::warnings)
      .def_property_readonly("omega0", [](const PreparedSystem& s) { return s.model.omega0; })
      .def_property_readonly("e_fci", [](const PreparedSystem& s) { return s.fci.energy; })
      .def_property_readonly("fci_vector", [](const PreparedSystem& s) { return s.fci.vector; })
      .def_property_readonly("fci_determinants", [](const PreparedSystem& s) {
        return s.fci.basis.determinants;
      })
      .def_property_readonly("spin", [](const PreparedSystem& s) {
        return std::make_pair(s.fci.s_squared, s.fci.s_z);
      })
      .def_property_readonly("ground_distribution", [](const PreparedSystem& s) {
        return ground_distribution(s.fci).probs;
      })
      .def("fcidump", [](const PreparedSystem& s) { return write_fcidump(s.mo, s.n_alpha, s.n_beta); });
  m.def("prepare_system", &prepare_system);

  py::class_<StageReport>(m, "StageReport")
      .def_readonly("label", &StageReport::label)
      .def_readonly("e_hf", &StageReport::e_hf)
      .def_readonly("e_g", &StageReport::e_g)
      .def_readonly("e_trapezoidal", &StageReport::e_trapezoidal)
      .def_readonly("e_guiding", &StageReport::e_guiding)
      .def_readonly("e_optimized", &StageReport::e_optimized)
      .def_readonly("omega0", &StageReport::omega0)
      .def_readonly("subspace_size", &StageReport::subspace_size)
      .def_readonly("seed", &StageReport::seed)
      .def_readonly("conditions", &StageReport::conditions)
      .def_readonly("circuit", &StageReport::circuit)
      .def_readonly("warnings", &StageReport::warnings)
      .def_property_readonly("trapezoidal_error_ev", &StageReport::trapezoidal_error_ev)
      .def_property_readonly("guiding_error_ev", &StageReport::guiding_error_ev)
      .def_property_readonly("optimized_error_ev", &StageReport::optimized_error_ev)
      .def("distribution", [](const StageReport& r, const std::string& label) {
        const auto it = r.distributions.find(label);
        if (it == r.distributions.end()) throw py::key_error(label);
        return probs_of(it->second);
      })
      .def("tv", [](const StageReport& r, const std::string& label) { return r.metrics.at(label).tv; })
      .def("to_json", [](const StageReport& r) { return report_to_json(r); })
      .def("emit", [](const StageReport& r, const std::string& dir) {
        return emit_report(r, resolve_output_dir(dir));
      });
  m.def("run_pipeline", &run_pipeline);
  m.def("report_from_json", &report_from_json);

  py::class_<MultiSeedSummary>(m, "MultiSeedSummary")
      .def_readonly("seeds", &MultiSeedSummary::seeds)
      .def_readonly("errors_ev", &MultiSeedSummary::optimized_errors_ev)
      .def_readonly("median", &MultiSeedSummary::median)
      .def_readonly("q10", &MultiSeedSummary::q10)
      .def_readonly("q90", &MultiSeedSummary::q90)
      .def_readonly("fraction_below_chemical_accuracy",
                    &MultiSeedSummary::fraction_below_chemical_accuracy);
  m.def("run_multi_seed", &run_multi_seed);

  m.def("sweep_reaction_path", [](const std::vector<std::string>& geometries, const RunConfig& c,
                                  const std::string& table_path) {
    std::optional<LargeBasisTable> table;
    if (!table_path.empty()) table = LargeBasisTable::read_file(table_path);
    return sweep_to_json(sweep_reaction_path(geometries, c, table));
  }, py::arg("geometries"), py::arg("config"), py::arg("large_basis_table") = "");

  m.def("omega_scan", [](const RunConfig& c, const std::vector<double>& omegas) {
    std::vector<std::pair<double, double>> out;
    for (const auto& row : omega_scan(c, omegas)) out.emplace_back(row.hbar_omega, row.p_reference);
    return out;
  });

  m.def("basis_set_correction", &basis_set_correction);
}
