#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "idbench/cluster_search.hpp"
#include "idbench/sweep.hpp"

namespace py = pybind11;
using namespace idbench;

PYBIND11_MODULE(_core, m) {
  m.doc() = "ID-based nonclassicality benchmarks for linear qubit arrays";

  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<ResourceError>(m, "ResourceError", PyExc_RuntimeError);

  py::class_<PauliString>(m, "PauliString")
      .def(py::init(&PauliString::parse), py::arg("text"))
      .def_static("from_letters", &PauliString::from_letters)
      .def_property_readonly("n_qubits", &PauliString::n_qubits)
      .def_property_readonly("phase_exp", &PauliString::phase_exp)
      .def("letters", &PauliString::letters)
      .def("weight", &PauliString::weight)
      .def("commutes_with", &PauliString::commutes_with)
      .def("to_matrix", &PauliString::to_matrix,
           py::arg("dense_cap") = PauliString::kDefaultDenseCap)
      .def(py::self * py::self)
      .def(py::self == py::self)
      .def("__str__", &PauliString::str)
      .def("__repr__", [](const PauliString& p) { return "PauliString('" + p.str() + "')"; });

  py::class_<IdTable>(m, "IdTable")
      .def(py::init(&IdTable::from_letters), py::arg("rows"), py::arg("eigenvalues"))
      .def_readonly("n_qubits", &IdTable::n_qubits)
      .def_readonly("rows", &IdTable::rows)
      .def_readonly("eigenvalues", &IdTable::eigenvalues)
      .def_readonly("sign", &IdTable::sign)
      .def_property_readonly("n_rows", &IdTable::n_rows)
      .def(py::self == py::self)
      .def("__repr__",
           [](const IdTable& t) { return "<IdTable N=" + std::to_string(t.n_qubits) + " M=" +
                                         std::to_string(t.n_rows()) + ">"; });

  py::class_<ValidationReport>(m, "ValidationReport")
      .def_readonly("computed_sign", &ValidationReport::computed_sign)
      .def_readonly("issues", &ValidationReport::issues)
      .def_readonly("noncommuting_pairs", &ValidationReport::noncommuting_pairs)
      .def("ok", &ValidationReport::ok);

  m.def("validate_id", &validate_id);
  m.def("ghz_parity_check", &ghz_parity_check);
  m.def("is_maximally_entangled", &is_maximally_entangled, py::arg("table"),
        py::arg("enumeration_cap") = 20);
  m.def("eigenspace_projector", &eigenspace_projector, py::arg("table"),
        py::arg("dense_cap") = PauliString::kDefaultDenseCap);
  m.def("lhvt_max_brute", &lhvt_max_brute, py::arg("table"), py::arg("exponent_cap") = 18,
        py::arg("n_workers") = 0);
  m.def("flip_eigenvalue_pair", &flip_eigenvalue_pair);
  m.def("benchmark_score", &benchmark_score);
  m.def("fidelity_lower_bound", &fidelity_lower_bound);
  m.def("catalog_to_string", &catalog_to_string);
  m.def("parse_catalog", &parse_catalog);

  m.def("minimal_m", &minimal_m);
  m.def("cluster_stabilizer_group",
        [](uint32_t n) { return cluster_stabilizer_group(n).elements; });
  m.def(
      "search_ids",
      [](uint32_t n, uint32_t m_rows, bool ghz, bool maxent, uint64_t limit) {
        SearchConstraints cons;
        cons.n_rows = m_rows;
        cons.require_ghz_parity = ghz;
        cons.require_max_entanglement = maxent;
        cons.max_results = limit ? limit : UINT64_MAX;
        return search_ids(n, cons);
      },
      py::arg("n_qubits"), py::arg("m_rows"), py::arg("ghz") = true, py::arg("maxent") = true,
      py::arg("limit") = 0);
  m.def("builtin_catalog", [] {
    py::dict out;
    for (const IdTable& t : builtin_catalog()) {
      out[py::int_(t.n_qubits)] = t;
    }
    return out;
  });
  m.def("derive_catalog_entry", &derive_catalog_entry, py::arg("n_qubits"),
        py::arg("candidate_limit") = 500, py::arg("n_workers") = 0);

  py::class_<NoiseParams>(m, "NoiseParams")
      .def(py::init<>())
      .def_static("ideal", &NoiseParams::ideal)
      .def_static("uniform", &NoiseParams::uniform, py::arg("n_qubits"), py::arg("t1_s"),
                  py::arg("t2_s"), py::arg("width_rad"), py::arg("p_excited"))
      .def_readwrite("t1", &NoiseParams::t1)
      .def_readwrite("t2", &NoiseParams::t2)
      .def_readwrite("jitter_width", &NoiseParams::jitter_width)
      .def_readwrite("init_error", &NoiseParams::init_error)
      .def_readwrite("dt_single", &NoiseParams::dt_single)
      .def_readwrite("dt_two", &NoiseParams::dt_two);

  m.def("chip_noise", &chip_noise, py::arg("n_qubits"), py::arg("t2_us"), py::arg("width_rad"));

  py::class_<MeasurementMode>(m, "MeasurementMode")
      .def_static("exact", &MeasurementMode::exact)
      .def_static("sampled", &MeasurementMode::sampled, py::arg("n_shots"), py::arg("seed"));

  py::class_<DensityMatrix>(m, "DensityMatrix")
      .def(py::init<uint32_t, Eigen::MatrixXcd>(), py::arg("n_qubits"), py::arg("rho"))
      .def_static("zero_state", &DensityMatrix::zero_state)
      .def_property_readonly("n_qubits", &DensityMatrix::n_qubits)
      .def_property_readonly(
          "matrix", [](const DensityMatrix& d) -> Eigen::MatrixXcd { return d.matrix(); })
      .def("purity", &DensityMatrix::purity)
      .def("expectation", &DensityMatrix::expectation)
      .def("overlap", &DensityMatrix::overlap);

  m.def("jitter_coefficient", &jitter_coefficient);
  m.def("init_state",
        [](uint32_t n, const std::vector<double>& pe) { return init_state(n, pe); });
  m.def("prepare_cluster", &prepare_cluster, py::arg("n_qubits"), py::arg("noise"));
  m.def("measure_setting", &measure_setting, py::arg("prepared"), py::arg("row"),
        py::arg("noise"), py::arg("mode") = MeasurementMode::exact());

  py::class_<BenchmarkResult>(m, "BenchmarkResult")
      .def_readonly("n_qubits", &BenchmarkResult::n_qubits)
      .def_readonly("n_rows", &BenchmarkResult::n_rows)
      .def_readonly("row_expectations", &BenchmarkResult::row_expectations)
      .def_readonly("alpha", &BenchmarkResult::alpha)
      .def_readonly("score", &BenchmarkResult::score)
      .def_readonly("fid_bound", &BenchmarkResult::fid_bound)
      .def_readonly("true_fidelity", &BenchmarkResult::true_fidelity);

  m.def("run_benchmark", &run_benchmark, py::arg("table"), py::arg("noise"),
        py::arg("mode") = MeasurementMode::exact());

  m.def(
      "run_sweep_csv",
      [](const std::string& spec_text, unsigned n_workers) {
        return sweep_to_csv(run_sweep(parse_sweep_spec(spec_text), n_workers));
      },
      py::arg("spec_text"), py::arg("n_workers") = 0,
      "Run a sweep from key=value spec text and return the CSV.");
  m.def(
      "make_report",
      [](const std::string& csv, const std::string& kind) {
        return make_report(sweep_from_csv(csv), report_kind_from_string(kind));
      },
      py::arg("sweep_csv"), py::arg("kind"));
}
