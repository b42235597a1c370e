#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gsm/crn.hpp"
#include "gsm/driver.hpp"
#include "gsm/errors.hpp"
#include "gsm/model.hpp"
#include "gsm/spi.hpp"
#include "gsm/trace.hpp"

namespace py = pybind11;

namespace {

struct PyTrace {
  std::vector<std::string> columns;
  std::vector<double> times;
  std::vector<std::vector<gsm::Count>> populations;
  std::optional<double> deadlock_time;
  std::uint64_t steps = 0;
  std::string csv;
};

struct PyEnsemble {
  std::vector<std::string> columns;
  std::vector<double> times;
  std::vector<std::vector<double>> means;
  std::vector<std::vector<double>> stds;
  std::uint64_t runs = 0;
  std::uint64_t deadlocked_runs = 0;
  std::string csv;
};

std::string kind_name(gsm::ModelKind kind) {
  switch (kind) {
    case gsm::ModelKind::crn:
      return "crn";
    case gsm::ModelKind::spi:
      return "spi";
    case gsm::ModelKind::multi:
      return "multi";
  }
  return "unknown";
}

gsm::EnsembleOptions make_options(const std::string& algorithm,
                                  std::uint64_t seed, double t_max, double dt,
                                  std::uint64_t runs, bool validate) {
  if (algorithm != "direct" && algorithm != "nrm")
    throw std::invalid_argument("algorithm must be 'direct' or 'nrm'");
  gsm::EnsembleOptions options;
  options.algorithm = algorithm == "nrm" ? gsm::AlgorithmKind::nrm
                                         : gsm::AlgorithmKind::direct;
  options.base_seed = seed;
  options.t_max = t_max;
  options.sample_interval = dt;
  options.runs = runs;
  options.validate = validate;
  return options;
}

void raise_violations(const std::vector<std::string>& violations) {
  if (violations.empty()) return;
  std::string message = "validation failed:";
  for (const std::string& violation : violations)
    message += "\n  " + violation;
  throw gsm::ModelError(message);
}

PyTrace run_trace(const gsm::LoadedModel& model, double t_max, double dt,
                  const std::string& algorithm, std::uint64_t seed,
                  bool validate) {
  gsm::EnsembleOptions options =
      make_options(algorithm, seed, t_max, dt, 1, validate);
  gsm::RunResult result = gsm::run_single(*model.calculus, options, 0);
  raise_violations(result.violations);
  gsm::DisplayNameFn name = [&model](const gsm::SpeciesKey& key) {
    return model.calculus->display_name(key);
  };
  PyTrace out;
  out.csv = gsm::trace_csv(result, name);
  for (const gsm::SpeciesKey& column : result.columns)
    out.columns.push_back(name(column));
  for (const gsm::TraceRecord& record : result.records) {
    out.times.push_back(record.time);
    std::vector<gsm::Count> row = record.populations;
    row.resize(result.columns.size(), 0);
    out.populations.push_back(std::move(row));
  }
  out.deadlock_time = result.deadlock_time;
  out.steps = result.steps;
  return out;
}

PyEnsemble run_ensemble_py(const gsm::LoadedModel& model, double t_max,
                           double dt, std::uint64_t runs,
                           const std::string& algorithm, std::uint64_t seed,
                           bool validate) {
  gsm::EnsembleOptions options =
      make_options(algorithm, seed, t_max, dt, runs, validate);
  gsm::EnsembleResult result = gsm::run_ensemble(*model.calculus, options);
  raise_violations(result.violations);
  gsm::DisplayNameFn name = [&model](const gsm::SpeciesKey& key) {
    return model.calculus->display_name(key);
  };
  PyEnsemble out;
  out.csv = gsm::ensemble_csv(result, name);
  for (const gsm::SpeciesKey& column : result.columns)
    out.columns.push_back(name(column));
  out.times = result.times;
  out.means = result.means;
  out.stds = result.stds;
  out.runs = result.runs;
  out.deadlocked_runs = result.deadlocked_runs;
  return out;
}

}  // namespace

PYBIND11_MODULE(_gsm, m) {
  m.doc() = "stochastic simulation of process-calculus models";

  py::register_exception<gsm::ParseError>(m, "ParseError");
  py::register_exception<gsm::ModelError>(m, "ModelError");

  py::class_<gsm::LoadedModel>(m, "Model")
      .def_property_readonly(
          "path", [](const gsm::LoadedModel& model) { return model.source_path; })
      .def_property_readonly(
          "kind", [](const gsm::LoadedModel& model) { return kind_name(model.kind); })
      .def("species_names", [](const gsm::LoadedModel& model) {
        gsm::SpeciesMultiset initial = model.calculus->initial_species();
        std::vector<std::string> names;
        for (const auto& [key, count] : initial.entries())
          names.push_back(model.calculus->display_name(key));
        return names;
      });

  py::class_<PyTrace>(m, "Trace")
      .def_readonly("columns", &PyTrace::columns)
      .def_readonly("times", &PyTrace::times)
      .def_readonly("populations", &PyTrace::populations)
      .def_readonly("deadlock_time", &PyTrace::deadlock_time)
      .def_readonly("steps", &PyTrace::steps)
      .def_readonly("csv", &PyTrace::csv);

  py::class_<PyEnsemble>(m, "Ensemble")
      .def_readonly("columns", &PyEnsemble::columns)
      .def_readonly("times", &PyEnsemble::times)
      .def_readonly("means", &PyEnsemble::means)
      .def_readonly("stds", &PyEnsemble::stds)
      .def_readonly("runs", &PyEnsemble::runs)
      .def_readonly("deadlocked_runs", &PyEnsemble::deadlocked_runs)
      .def_readonly("csv", &PyEnsemble::csv);

  m.def("load_model", &gsm::load_model, py::arg("path"),
        "Load a .crn, .spi or .multi model file.");
  m.def(
      "parse_crn_text",
      [](const std::string& text, const std::string& name) {
        return gsm::LoadedModel{
            gsm::ModelKind::crn,
            std::make_unique<gsm::CrnCalculus>(gsm::parse_crn(text, name)),
            name};
      },
      py::arg("text"), py::arg("name") = "<string>");
  m.def(
      "parse_spi_text",
      [](const std::string& text, const std::string& name) {
        return gsm::LoadedModel{
            gsm::ModelKind::spi,
            std::make_unique<gsm::SpiCalculus>(gsm::parse_spi(text, name)),
            name};
      },
      py::arg("text"), py::arg("name") = "<string>");
  m.def("run", &run_trace, py::arg("model"), py::arg("t_max"), py::arg("dt"),
        py::arg("algorithm") = "direct", py::arg("seed") = 0,
        py::arg("validate") = false,
        "Simulate one trajectory and return the sampled trace.");
  m.def("run_ensemble", &run_ensemble_py, py::arg("model"), py::arg("t_max"),
        py::arg("dt"), py::arg("runs"), py::arg("algorithm") = "direct",
        py::arg("seed") = 0, py::arg("validate") = false,
        "Simulate independent trajectories and return per-point statistics.");
}
