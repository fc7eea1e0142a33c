// Copyright 2026 The qmix developers
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

#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cmath>
#include <optional>

#include "qmix/amplitude_estimation.hpp"
#include "qmix/calibration.hpp"
#include "qmix/distribution.hpp"
#include "qmix/errors.hpp"
#include "qmix/pricing.hpp"
#include "qmix/statevector.hpp"
#include "qmix/walk.hpp"

namespace py = pybind11;
using namespace qmix;

namespace {

std::vector<double> simulate_probabilities(const Circuit& circuit) {
  StateVector state = new_state(circuit.num_qubits);
  state.apply_circuit(circuit);
  return state.probabilities();
}

EstimateResult qae_estimate(double amplitude, int m_eval,
                            std::optional<std::uint64_t> shots,
                            std::uint64_t seed) {
  if (amplitude < 0.0 || amplitude > 1.0) {
    throw DomainError("amplitude must lie in [0, 1]");
  }
  Circuit prep(1);
  prep.ry(0, 2.0 * std::asin(std::sqrt(amplitude)));
  QaeConfig config;
  config.eval_qubits = m_eval;
  config.shots = shots;
  config.seed = seed;
  return canonical_qae(AmplitudeProblem{prep, 0}, config);
}

}  // namespace

PYBIND11_MODULE(_qmix, m) {
  m.doc() = "statevector toolkit for mixed-signal option pricing circuits";
  m.attr("__version__") = "0.1.0";

  // translators run newest-first, so the base class goes in first
  py::register_exception<Error>(m, "QmixError", PyExc_ValueError);
  py::register_exception<CapacityError>(m, "CapacityError", PyExc_ValueError);
  py::register_exception<ParseError>(m, "QmixParseError", PyExc_ValueError);

  // --- circuits and simulation ---------------------------------------------
  py::class_<Circuit>(m, "Circuit")
      .def_readonly("num_qubits", &Circuit::num_qubits)
      .def("gate_count",
           [](const Circuit& c) { return c.ops.size(); })
      .def("to_text", &Circuit::to_text);
  m.def("circuit_metrics", [](const Circuit& c) {
    const auto metrics = circuit_metrics(c);
    return py::make_tuple(metrics.gate_count, metrics.depth);
  });
  m.def("simulate_probabilities", &simulate_probabilities);

  // --- distribution encoding ------------------------------------------------
  py::class_<DiscretizedDistribution>(m, "DiscretizedDistribution")
      .def_readonly("levels", &DiscretizedDistribution::levels)
      .def_readonly("probabilities", &DiscretizedDistribution::probabilities)
      .def_readonly("support_values", &DiscretizedDistribution::support_values);
  py::class_<LevelLut>(m, "LevelLut")
      .def_readonly("input_bits", &LevelLut::input_bits)
      .def_readonly("output_bits", &LevelLut::output_bits)
      .def_readonly("levels", &LevelLut::levels)
      .def_readonly("table", &LevelLut::table)
      .def("level_frequencies", &LevelLut::level_frequencies);
  py::class_<SynthesisCost>(m, "SynthesisCost")
      .def_readonly("gate_count", &SynthesisCost::gate_count)
      .def_readonly("depth", &SynthesisCost::depth)
      .def_readonly("model_name", &SynthesisCost::model_name);
  m.def("discretize_lognormal", &discretize_lognormal, py::arg("mu"),
        py::arg("sigma"), py::arg("levels"));
  m.def("build_level_lut", &build_level_lut, py::arg("dist"),
        py::arg("input_bits"));
  m.def("lut_synthesis_cost", &lut_synthesis_cost);
  m.def("lut_level_marginals", &lut_level_marginals);
  m.def("baseline_state_prep", &baseline_state_prep);
  m.def("lut_state_prep", &lut_state_prep);

  // --- calibration -----------------------------------------------------------
  py::class_<CalibrationTable>(m, "CalibrationTable")
      .def_readonly("resolution_bits", &CalibrationTable::resolution_bits)
      .def_readonly("entries", &CalibrationTable::entries)
      .def("lookup", &CalibrationTable::lookup);
  py::class_<AngleScale>(m, "AngleScale")
      .def_readonly("m_scale", &AngleScale::m_scale)
      .def_readonly("max_deviation", &AngleScale::max_deviation);
  m.def("digital_calibration_angle", &digital_calibration_angle);
  m.def("build_calibration_table", &build_calibration_table, py::arg("bits"));
  m.def("calibrated_pipeline", &calibrated_pipeline, py::arg("x"),
        py::arg("table"));
  m.def("uncalibrated_small_angle_map", &uncalibrated_small_angle_map,
        py::arg("x"), py::arg("slope"));
  m.def("standard_error_grid", &standard_error_grid);
  m.def("max_relative_error", &max_relative_error, py::arg("mapping"),
        py::arg("grid"));
  m.def("f_theta", &f_theta, py::arg("theta"), py::arg("m_scale"));
  m.def("optimal_scale_search", &optimal_scale_search, py::arg("theta_min"),
        py::arg("theta_max"), py::arg("tolerance") = 1e-4);

  // --- amplitude estimation ---------------------------------------------------
  py::class_<EstimateResult>(m, "EstimateResult")
      .def_readonly("amplitude_estimate", &EstimateResult::amplitude_estimate)
      .def_readonly("grid_index", &EstimateResult::grid_index)
      .def_readonly("posterior", &EstimateResult::posterior);
  m.def("qae_estimate", &qae_estimate, py::arg("amplitude"),
        py::arg("m_eval"), py::arg("shots") = py::none(), py::arg("seed") = 0);

  // --- pricing pipelines -------------------------------------------------------
  py::class_<PipelineResult>(m, "PipelineResult")
      .def_readonly("name", &PipelineResult::name)
      .def_readonly("estimate", &PipelineResult::estimate)
      .def_readonly("exact", &PipelineResult::exact)
      .def_readonly("relative_error_pct", &PipelineResult::relative_error_pct)
      .def_readonly("max_error_pct", &PipelineResult::max_error_pct)
      .def_readonly("gate_count", &PipelineResult::gate_count)
      .def_readonly("depth", &PipelineResult::depth)
      .def_readonly("cost_model", &PipelineResult::cost_model);
  py::class_<PricingReport>(m, "PricingReport")
      .def_readonly("baseline", &PricingReport::baseline)
      .def_readonly("proposed", &PricingReport::proposed)
      .def_readonly("baseline_state_prep_gates",
                    &PricingReport::baseline_state_prep_gates);
  py::class_<PricingProblem>(m, "PricingProblem")
      .def(py::init<>())
      .def_readwrite("mu", &PricingProblem::mu)
      .def_readwrite("sigma", &PricingProblem::sigma)
      .def_readwrite("levels", &PricingProblem::levels)
      .def_readwrite("input_bits", &PricingProblem::input_bits)
      .def_readwrite("slope", &PricingProblem::slope)
      .def_readwrite("offset", &PricingProblem::offset)
      .def_readwrite("calib_bits", &PricingProblem::calib_bits)
      .def_readwrite("slope_angle", &PricingProblem::slope_angle);
  m.def("compare_pipelines", &compare_pipelines);
  m.def("report_to_csv", &report_to_csv);
  m.def("report_to_table", &report_to_table);

  // --- random walk ---------------------------------------------------------------
  py::class_<WalkModel>(m, "WalkModel")
      .def(py::init<>())
      .def_readwrite("days", &WalkModel::days)
      .def_readwrite("step_bits", &WalkModel::step_bits)
      .def_readwrite("step_values", &WalkModel::step_values)
      .def_readwrite("step_probabilities", &WalkModel::step_probabilities)
      .def_readwrite("drift_per_day", &WalkModel::drift_per_day)
      .def_readwrite("initial_price", &WalkModel::initial_price);
  py::class_<PriceOutcome>(m, "PriceOutcome")
      .def_readonly("sum", &PriceOutcome::sum)
      .def_readonly("probability", &PriceOutcome::probability)
      .def_readonly("price", &PriceOutcome::price);
  py::class_<PriceDistribution>(m, "PriceDistribution")
      .def_readonly("outcomes", &PriceDistribution::outcomes)
      .def_readonly("mean_sum", &PriceDistribution::mean_sum)
      .def_readonly("mean_price", &PriceDistribution::mean_price)
      .def_readonly("samples", &PriceDistribution::samples);
  m.def(
      "quantum_price_distribution",
      [](const WalkModel& model, double lam) {
        AccumulatorEncoding enc;
        enc.lambda = lam;
        return quantum_price_distribution(model, enc);
      },
      py::arg("model"), py::arg("lambda_") = 0.0);
  m.def("classical_enumeration", &classical_enumeration);
  m.def("classical_monte_carlo", &classical_monte_carlo, py::arg("model"),
        py::arg("num_samples"), py::arg("seed"));
  m.def(
      "estimate_mean_qae",
      [](const WalkModel& model, int eval_qubits, double lam) {
        AccumulatorEncoding enc;
        enc.lambda = lam;
        return estimate_mean_qae(model, enc, eval_qubits);
      },
      py::arg("model"), py::arg("eval_qubits"), py::arg("lambda_") = 0.0);
  m.def("exp_reconstruct", &exp_reconstruct, py::arg("sum"),
        py::arg("initial_price"));
}
