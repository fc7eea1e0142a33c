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

#pragma once

#include <string>
#include <vector>

#include "qmix/calibration.hpp"
#include "qmix/distribution.hpp"
#include "qmix/statevector.hpp"

namespace qmix {

/// Linear payoff segment payoff(i) = slope*i + offset over level indices,
/// with normalization c mapping every level payoff into [0, 1].
struct LinearPayoff {
  double slope = 0.0;
  double offset = 0.0;
  double normalization = 1.0;

  double value(double level) const { return slope * level + offset; }
  double unit_value(double level) const;  // c * payoff, must land in [0,1]

  /// Pick c so the largest level payoff maps to 0.95, leaving headroom
  /// below 1 where arcsin is well conditioned.
  static LinearPayoff normalized(double slope, double offset, int levels);
};

double expected_value_exact(const DiscretizedDistribution& dist,
                            const LinearPayoff& payoff);

struct PricedCircuit {
  Circuit circuit;
  int objective_qubit = 0;
  std::int64_t state_prep_gates = 0;
};

/// Baseline averaging circuit: tree state prep loading sqrt(pdf), then an
/// uncalibrated payoff rotation ladder around pi/4 (one RY offset plus one
/// CRY per index qubit).
PricedCircuit build_jpm_circuit(const DiscretizedDistribution& dist,
                                const LinearPayoff& payoff,
                                double slope_angle = 0.01);

/// Invert the small-angle affine relation P(1) ~ 1/2 + slope_angle*(x-1/2)
/// and undo the payoff normalization.
double decode_jpm_estimate(double p_one, const LinearPayoff& payoff,
                           double slope_angle);

/// Proposed circuit: Hadamard thread register + level LUT oracle, then one
/// arcsin-calibrated rotation per level value, multiplexed on the level
/// register.
PricedCircuit build_proposed_circuit(const LevelLut& lut,
                                     const LinearPayoff& payoff,
                                     const CalibrationTable& table);

double decode_proposed_estimate(double p_one, const LinearPayoff& payoff);

/// Run a circuit from |0...0> and read P(objective = 1).
double run_objective_probability(const PricedCircuit& priced);

struct PipelineResult {
  std::string name;
  double estimate = 0.0;
  double exact = 0.0;
  double relative_error_pct = 0.0;
  double max_error_pct = 0.0;  // worst-case mapping error on the standard grid
  std::int64_t gate_count = 0;
  std::int64_t depth = 0;
  std::string cost_model;  // empty for simulated metrics
};

struct PricingReport {
  PipelineResult baseline;
  PipelineResult proposed;
  SynthesisCost lut_cost;
  std::int64_t baseline_state_prep_gates = 0;
};

struct PricingProblem {
  double mu = 0.0;
  double sigma = 0.1;
  int levels = 32;
  int input_bits = 12;
  double slope = 1.0;
  double offset = 0.0;
  int calib_bits = 12;
  double slope_angle = 0.01;
};

/// Baseline at full 2^input_bits resolution vs the proposed LUT pipeline
/// at `levels` resolution, both against their classical expectations.
PricingReport compare_pipelines(const PricingProblem& problem);

std::string report_to_csv(const PricingReport& report);
std::string report_to_table(const PricingReport& report);

}  // namespace qmix
