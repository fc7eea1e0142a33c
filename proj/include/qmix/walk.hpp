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

#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

#include "qmix/statevector.hpp"

namespace qmix {

/// Multi-day price walk: each day draws one of 2^step_bits log-return
/// steps. The quantum construction needs uniform step probabilities
/// (Hadamard-generated) and affine step values; anything else is served
/// by the classical oracles only.
struct WalkModel {
  int days = 1;
  int step_bits = 1;
  std::vector<double> step_values;         // 2^step_bits log-returns
  std::vector<double> step_probabilities;  // >= 0, sum 1
  double drift_per_day = 0.0;
  double initial_price = 1.0;

  void validate() const;
  bool uniform_steps() const;
  /// s(r) = s_min + delta*r within 1e-12; throws ModelError otherwise.
  void affine_steps(double& s_min, double& delta) const;
};

/// Angle bookkeeping for the single-qubit accumulator: the qubit sits at
/// pi/4 + lambda * (accumulated log-return), which must stay within the
/// +-0.2 rad flatness region of the m = pi/2 analog calibration.
struct AccumulatorEncoding {
  double base_angle = std::numbers::pi / 4.0;
  double m_scale = std::numbers::pi / 2.0;
  double lambda = 0.0;  // radians per unit log-return; <= 0 requests auto

  static constexpr double kDeviationBudget = 0.2;
  static constexpr double kAutoTarget = 0.15;
};

/// lambda scaled so the worst path deviation is kAutoTarget.
double auto_lambda(const WalkModel& model);

struct PriceOutcome {
  double sum = 0.0;          // accumulated log-return
  double probability = 0.0;
  double price = 0.0;        // initial_price * exp(sum)
};

struct PriceDistribution {
  std::vector<PriceOutcome> outcomes;  // ascending by sum
  double mean_sum = 0.0;
  double mean_price = 0.0;
  std::uint64_t samples = 0;  // 0 for exact (enumeration/statevector)
};

struct WalkCircuit {
  Circuit circuit;
  int accumulator_qubit = 0;
  double lambda = 0.0;  // resolved value
};

WalkCircuit build_walk_circuit(const WalkModel& model,
                               const AccumulatorEncoding& enc);

/// mean theta ~ p1 - 1/2, so mean sum = (p1 - 1/2) / lambda.
double decode_mean_sum(double p_one, double lambda);

/// Exact outcome distribution read from the final statevector.
PriceDistribution quantum_price_distribution(const WalkModel& model,
                                             const AccumulatorEncoding& enc);

/// Exhaustive path enumeration; ground truth. Up to 2^24 paths.
PriceDistribution classical_enumeration(const WalkModel& model);

/// Seeded sampling oracle; deterministic per seed.
PriceDistribution classical_monte_carlo(const WalkModel& model,
                                        std::uint64_t num_samples,
                                        std::uint64_t seed);

double exp_reconstruct(double sum, double initial_price);

/// L-infinity distance between two outcome distributions, outcomes
/// aligned by sum within `sum_tol`.
double distribution_linf(const PriceDistribution& a,
                         const PriceDistribution& b, double sum_tol = 1e-9);

/// QAE on the accumulator qubit, then linear decode of the mean
/// accumulated log-return. Deterministic.
double estimate_mean_qae(const WalkModel& model,
                         const AccumulatorEncoding& enc, int eval_qubits);

/// CSV export: sum,probability,price (exact) or sum,count (sampled).
std::string price_distribution_to_csv(const PriceDistribution& dist);

}  // namespace qmix
