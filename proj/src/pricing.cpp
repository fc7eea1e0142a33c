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

#include "qmix/pricing.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace qmix {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kHeadroom = 0.95;
}  // namespace

double LinearPayoff::unit_value(double level) const {
  const double x = normalization * value(level);
  if (x < 0.0 || x > 1.0) {
    throw DomainError("normalized payoff outside [0,1] at level " +
                      std::to_string(level));
  }
  return x;
}

LinearPayoff LinearPayoff::normalized(double slope, double offset,
                                      int levels) {
  LinearPayoff payoff{slope, offset, 1.0};
  double max_value = 0.0;
  for (int i = 0; i < levels; ++i) {
    const double v = payoff.value(i);
    if (v < 0.0) throw DomainError("payoff negative on the level range");
    max_value = std::max(max_value, v);
  }
  if (max_value <= 0.0) throw DomainError("payoff vanishes on the level range");
  payoff.normalization = kHeadroom / max_value;
  return payoff;
}

double expected_value_exact(const DiscretizedDistribution& dist,
                            const LinearPayoff& payoff) {
  double sum = 0.0;
  for (int i = 0; i < dist.levels; ++i) {
    sum += payoff.value(i) * dist.probabilities[i];
  }
  return sum;
}

PricedCircuit build_jpm_circuit(const DiscretizedDistribution& dist,
                                const LinearPayoff& payoff,
                                double slope_angle) {
  Circuit prep = baseline_state_prep(dist);
  const int n = prep.num_qubits;
  for (int i = 0; i < dist.levels; ++i) payoff.unit_value(i);  // domain check

  PricedCircuit priced{Circuit(n + 1), n,
                       static_cast<std::int64_t>(prep.ops.size())};
  for (auto& op : prep.ops) priced.circuit.add(std::move(op));

  // theta(i) = pi/4 + slope_angle * (c*payoff(i) - 1/2), decomposed into
  // an unconditional offset plus one controlled term per index bit.
  const double theta0 =
      kPi / 4.0 + slope_angle * (payoff.normalization * payoff.offset - 0.5);
  priced.circuit.ry(n, 2.0 * theta0);
  for (int j = 0; j < n; ++j) {
    const double per_bit = slope_angle * payoff.normalization * payoff.slope *
                           static_cast<double>(std::uint64_t{1} << j);
    priced.circuit.cry(j, n, 2.0 * per_bit);
  }
  return priced;
}

double decode_jpm_estimate(double p_one, const LinearPayoff& payoff,
                           double slope_angle) {
  const double mean_unit = 0.5 + (p_one - 0.5) / slope_angle;
  return mean_unit / payoff.normalization;
}

PricedCircuit build_proposed_circuit(const LevelLut& lut,
                                     const LinearPayoff& payoff,
                                     const CalibrationTable& table) {
  const int n = lut.input_bits;
  const int b = lut.output_bits;
  if (n + b + 1 > kMaxQubits) throw CapacityError("registers too wide");

  PricedCircuit priced{Circuit(n + b + 1), n + b, n + 1};
  Circuit& circuit = priced.circuit;
  for (int q = 0; q < n; ++q) circuit.h(q);

  const std::uint64_t low_mask = (std::uint64_t{1} << n) - 1;
  const std::uint64_t reg_mask = (std::uint64_t{1} << (n + b)) - 1;
  auto lut_table = lut.table;
  auto write_level = [lut_table, low_mask, reg_mask, n](std::uint64_t i) {
    const std::uint64_t lev =
        static_cast<std::uint64_t>(lut_table[i & low_mask]) << n;
    return (i & ~reg_mask) | (((i & reg_mask) ^ lev));
  };
  const int id = circuit.add_oracle(
      PermutationOracle{write_level, write_level, "level_lut"});
  GateOp oracle{GateKind::ORACLE, {}, {}};
  for (int q = n; q < n + b; ++q) oracle.targets.push_back(q);
  for (int q = 0; q < n; ++q) oracle.controls.push_back(q);
  oracle.oracle_id = id;
  circuit.add(std::move(oracle));

  // One calibrated rotation per level value, dispatched on the level
  // register.
  GateOp mry{GateKind::MRY, {n + b}, {}};
  for (int q = n; q < n + b; ++q) mry.controls.push_back(q);
  mry.angles.assign(std::size_t{1} << b, 0.0);
  for (int v = 0; v < lut.levels; ++v) {
    mry.angles[v] = 2.0 * table.lookup(payoff.unit_value(v));
  }
  circuit.add(std::move(mry));
  return priced;
}

double decode_proposed_estimate(double p_one, const LinearPayoff& payoff) {
  return p_one / payoff.normalization;
}

double run_objective_probability(const PricedCircuit& priced) {
  StateVector state = new_state(priced.circuit.num_qubits);
  state.apply_circuit(priced.circuit);
  return state.marginal_prob_one(priced.objective_qubit);
}

PricingReport compare_pipelines(const PricingProblem& problem) {
  const int n = problem.input_bits;
  const int fine_levels = 1 << n;

  // Baseline: full-resolution loading; the payoff slope is rescaled so a
  // fine index spans the same price range as a coarse level.
  const DiscretizedDistribution fine =
      discretize_lognormal(problem.mu, problem.sigma, fine_levels);
  const double fine_slope =
      problem.slope * static_cast<double>(problem.levels) / fine_levels;
  const LinearPayoff fine_payoff =
      LinearPayoff::normalized(fine_slope, problem.offset, fine_levels);

  const PricedCircuit baseline =
      build_jpm_circuit(fine, fine_payoff, problem.slope_angle);
  const double p1_baseline = run_objective_probability(baseline);
  const CircuitMetrics baseline_metrics = circuit_metrics(baseline.circuit);

  Circuit baseline_prep_only = baseline_state_prep(fine);
  const CircuitMetrics prep_metrics = circuit_metrics(baseline_prep_only);

  PricingReport report;
  report.baseline.name = "jpm-baseline";
  report.baseline.estimate =
      decode_jpm_estimate(p1_baseline, fine_payoff, problem.slope_angle);
  report.baseline.exact = expected_value_exact(fine, fine_payoff);
  report.baseline.gate_count = prep_metrics.gate_count;
  report.baseline.depth = prep_metrics.depth;
  report.baseline.max_error_pct = max_relative_error(
      [](double x) { return uncalibrated_small_angle_map(x, kPi / 2.0); },
      standard_error_grid());
  report.baseline_state_prep_gates = baseline.state_prep_gates;

  // Proposed: LUT pre-processing plus calibrated payoff rotations.
  const DiscretizedDistribution coarse =
      discretize_lognormal(problem.mu, problem.sigma, problem.levels);
  const LevelLut lut = build_level_lut(coarse, n);
  const LinearPayoff payoff =
      LinearPayoff::normalized(problem.slope, problem.offset, problem.levels);
  const CalibrationTable table = build_calibration_table(problem.calib_bits);

  const PricedCircuit proposed = build_proposed_circuit(lut, payoff, table);
  const double p1_proposed = run_objective_probability(proposed);
  report.lut_cost = lut_synthesis_cost(lut);

  report.proposed.name = "lut-calibrated";
  report.proposed.estimate = decode_proposed_estimate(p1_proposed, payoff);
  // Exact expectation of the quantized distribution the LUT realizes.
  DiscretizedDistribution realized = coarse;
  realized.probabilities = lut.level_frequencies();
  report.proposed.exact = expected_value_exact(realized, payoff);
  report.proposed.gate_count = report.lut_cost.gate_count;
  report.proposed.depth = report.lut_cost.depth;
  report.proposed.cost_model = report.lut_cost.model_name;
  report.proposed.max_error_pct = max_relative_error(
      [&table](double x) { return calibrated_pipeline(x, table); },
      standard_error_grid());

  for (PipelineResult* r : {&report.baseline, &report.proposed}) {
    r->relative_error_pct =
        r->exact != 0.0 ? std::abs(r->estimate - r->exact) / std::abs(r->exact) * 100.0
                        : std::abs(r->estimate) * 100.0;
  }
  (void)baseline_metrics;
  return report;
}

std::string report_to_csv(const PricingReport& report) {
  std::ostringstream out;
  out.precision(15);
  out << "pipeline,gate_count,depth,cost_model,max_error_pct,estimate,exact,"
         "relative_error_pct,state_prep_gates\n";
  auto row = [&](const PipelineResult& r, std::int64_t prep_gates) {
    out << r.name << ',' << r.gate_count << ',' << r.depth << ','
        << (r.cost_model.empty() ? "simulated" : r.cost_model) << ','
        << r.max_error_pct << ',' << r.estimate << ',' << r.exact << ','
        << r.relative_error_pct << ',' << prep_gates << '\n';
  };
  row(report.baseline, report.baseline_state_prep_gates);
  row(report.proposed, report.lut_cost.gate_count);
  return out.str();
}

std::string report_to_table(const PricingReport& report) {
  std::ostringstream out;
  out.precision(6);
  out << "pipeline         gate_count  depth  max_error_pct  estimate     exact\n";
  auto row = [&](const PipelineResult& r) {
    std::ostringstream gates;
    gates << r.gate_count;
    if (!r.cost_model.empty()) gates << " (" << r.cost_model << ")";
    out << r.name << (r.name.size() < 16 ? std::string(16 - r.name.size(), ' ')
                                         : " ")
        << gates.str() << "  " << r.depth << "  " << r.max_error_pct << "  "
        << r.estimate << "  " << r.exact << '\n';
  };
  row(report.baseline);
  row(report.proposed);
  return out.str();
}

}  // namespace qmix
