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

#include "qmix/walk.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "qmix/amplitude_estimation.hpp"

namespace qmix {

namespace {

/// Merge (sum, probability) pairs into an outcome list sorted by sum,
/// collapsing sums equal within tol.
PriceDistribution bucket_outcomes(std::vector<std::pair<double, double>> raw,
                                  double initial_price, double tol = 1e-9) {
  std::sort(raw.begin(), raw.end());
  PriceDistribution dist;
  for (const auto& [sum, prob] : raw) {
    if (!dist.outcomes.empty() &&
        sum - dist.outcomes.back().sum <= tol) {
      dist.outcomes.back().probability += prob;
    } else {
      dist.outcomes.push_back({sum, prob, 0.0});
    }
  }
  for (auto& o : dist.outcomes) {
    o.price = exp_reconstruct(o.sum, initial_price);
    dist.mean_sum += o.probability * o.sum;
    dist.mean_price += o.probability * o.price;
  }
  return dist;
}

}  // namespace

void WalkModel::validate() const {
  if (days < 1) throw DomainError("days must be >= 1");
  if (step_bits < 1) throw DomainError("step_bits must be >= 1");
  const std::size_t n = std::size_t{1} << step_bits;
  if (step_values.size() != n || step_probabilities.size() != n) {
    throw ShapeError("step tables must have 2^step_bits entries");
  }
  double total = 0.0;
  for (double p : step_probabilities) {
    if (p < 0.0) throw DomainError("negative step probability");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw DomainError("step probabilities must sum to 1");
  }
  if (!(initial_price > 0.0)) throw DomainError("initial price must be > 0");
}

bool WalkModel::uniform_steps() const {
  const double expect = 1.0 / static_cast<double>(step_probabilities.size());
  for (double p : step_probabilities) {
    if (std::abs(p - expect) > 1e-12) return false;
  }
  return true;
}

void WalkModel::affine_steps(double& s_min, double& delta) const {
  s_min = step_values.front();
  delta = step_values.size() > 1 ? step_values[1] - step_values[0] : 0.0;
  for (std::size_t r = 0; r < step_values.size(); ++r) {
    const double expected = s_min + delta * static_cast<double>(r);
    if (std::abs(step_values[r] - expected) > 1e-12) {
      throw ModelError("step values are not affine in the step index");
    }
  }
}

double auto_lambda(const WalkModel& model) {
  model.validate();
  double worst_step = 0.0;
  for (double s : model.step_values) {
    worst_step = std::max(worst_step, std::abs(s + model.drift_per_day));
  }
  const double worst = worst_step * model.days;
  return worst > 0.0 ? AccumulatorEncoding::kAutoTarget / worst : 1.0;
}

WalkCircuit build_walk_circuit(const WalkModel& model,
                               const AccumulatorEncoding& enc) {
  model.validate();
  if (!model.uniform_steps()) {
    throw ModelError("quantum walk needs uniform step probabilities");
  }
  double s_min = 0.0, delta = 0.0;
  model.affine_steps(s_min, delta);

  const int q = model.step_bits;
  const int step_qubits = model.days * q;
  if (step_qubits + 1 > 25) {
    throw CapacityError("walk registers exceed 25 qubits");
  }

  const double lambda = enc.lambda > 0.0 ? enc.lambda : auto_lambda(model);
  double worst_step = 0.0;
  for (double s : model.step_values) {
    worst_step = std::max(worst_step, std::abs(s + model.drift_per_day));
  }
  if (lambda * worst_step * model.days >
      AccumulatorEncoding::kDeviationBudget + 1e-12) {
    throw ModelError("encoded deviation exceeds the 0.2 rad budget");
  }

  WalkCircuit walk{Circuit(step_qubits + 1), step_qubits, lambda};
  Circuit& circuit = walk.circuit;
  const int acc = walk.accumulator_qubit;

  circuit.ry(acc, 2.0 * enc.base_angle);
  for (int day = 0; day < model.days; ++day) {
    for (int j = 0; j < q; ++j) circuit.h(day * q + j);
    circuit.ry(acc, 2.0 * lambda * (s_min + model.drift_per_day));
    for (int j = 0; j < q; ++j) {
      circuit.cry(day * q + j, acc,
                  2.0 * lambda * delta * static_cast<double>(std::uint64_t{1} << j));
    }
  }
  return walk;
}

double decode_mean_sum(double p_one, double lambda) {
  return (p_one - 0.5) / lambda;
}

PriceDistribution quantum_price_distribution(const WalkModel& model,
                                             const AccumulatorEncoding& enc) {
  const WalkCircuit walk = build_walk_circuit(model, enc);
  StateVector state = new_state(walk.circuit.num_qubits);
  state.apply_circuit(walk.circuit);

  const int q = model.step_bits;
  const std::uint64_t step_states = std::uint64_t{1} << (model.days * q);
  const std::uint64_t acc_bit = std::uint64_t{1} << walk.accumulator_qubit;
  const std::uint64_t step_mask = (std::uint64_t{1} << q) - 1;

  std::vector<std::pair<double, double>> raw;
  raw.reserve(step_states);
  for (std::uint64_t s = 0; s < step_states; ++s) {
    const double prob = std::norm(state.amplitudes()[s]) +
                        std::norm(state.amplitudes()[s | acc_bit]);
    double sum = model.drift_per_day * model.days;
    for (int day = 0; day < model.days; ++day) {
      sum += model.step_values[(s >> (day * q)) & step_mask];
    }
    raw.emplace_back(sum, prob);
  }
  return bucket_outcomes(std::move(raw), model.initial_price);
}

PriceDistribution classical_enumeration(const WalkModel& model) {
  model.validate();
  const std::uint64_t branches = std::uint64_t{1} << model.step_bits;
  double paths_estimate = std::pow(static_cast<double>(branches),
                                   static_cast<double>(model.days));
  if (paths_estimate > static_cast<double>(std::uint64_t{1} << 24)) {
    throw CapacityError("path count exceeds 2^24");
  }
  const std::uint64_t paths = static_cast<std::uint64_t>(paths_estimate);

  std::vector<std::pair<double, double>> raw;
  raw.reserve(paths);
  for (std::uint64_t p = 0; p < paths; ++p) {
    double sum = model.drift_per_day * model.days;
    double prob = 1.0;
    std::uint64_t rest = p;
    for (int day = 0; day < model.days; ++day) {
      const std::uint64_t r = rest % branches;
      rest /= branches;
      sum += model.step_values[r];
      prob *= model.step_probabilities[r];
    }
    raw.emplace_back(sum, prob);
  }
  return bucket_outcomes(std::move(raw), model.initial_price);
}

PriceDistribution classical_monte_carlo(const WalkModel& model,
                                        std::uint64_t num_samples,
                                        std::uint64_t seed) {
  model.validate();
  if (num_samples == 0) throw DomainError("samples must be >= 1");

  std::vector<double> cdf(model.step_probabilities.size());
  double acc = 0.0;
  for (std::size_t r = 0; r < cdf.size(); ++r) {
    acc += model.step_probabilities[r];
    cdf[r] = acc;
  }
  cdf.back() = 1.0;

  std::mt19937_64 rng(seed);
  std::vector<std::pair<double, double>> raw;
  const double w = 1.0 / static_cast<double>(num_samples);
  for (std::uint64_t s = 0; s < num_samples; ++s) {
    double sum = model.drift_per_day * model.days;
    for (int day = 0; day < model.days; ++day) {
      const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
      const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
      const std::size_t r = std::min<std::size_t>(it - cdf.begin(), cdf.size() - 1);
      sum += model.step_values[r];
    }
    raw.emplace_back(sum, w);
  }
  PriceDistribution dist = bucket_outcomes(std::move(raw), model.initial_price);
  dist.samples = num_samples;
  return dist;
}

double exp_reconstruct(double sum, double initial_price) {
  if (!std::isfinite(sum)) throw DomainError("non-finite accumulated sum");
  return initial_price * std::exp(sum);
}

double distribution_linf(const PriceDistribution& a,
                         const PriceDistribution& b, double sum_tol) {
  double worst = 0.0;
  std::size_t i = 0, j = 0;
  while (i < a.outcomes.size() || j < b.outcomes.size()) {
    if (j >= b.outcomes.size() ||
        (i < a.outcomes.size() &&
         a.outcomes[i].sum < b.outcomes[j].sum - sum_tol)) {
      worst = std::max(worst, a.outcomes[i++].probability);
    } else if (i >= a.outcomes.size() ||
               b.outcomes[j].sum < a.outcomes[i].sum - sum_tol) {
      worst = std::max(worst, b.outcomes[j++].probability);
    } else {
      worst = std::max(worst, std::abs(a.outcomes[i].probability -
                                       b.outcomes[j].probability));
      ++i;
      ++j;
    }
  }
  return worst;
}

double estimate_mean_qae(const WalkModel& model,
                         const AccumulatorEncoding& enc, int eval_qubits) {
  const WalkCircuit walk = build_walk_circuit(model, enc);
  AmplitudeProblem problem{walk.circuit, walk.accumulator_qubit};
  QaeConfig config;
  config.eval_qubits = eval_qubits;
  const EstimateResult result = canonical_qae(problem, config);
  return decode_mean_sum(result.amplitude_estimate, walk.lambda);
}

std::string price_distribution_to_csv(const PriceDistribution& dist) {
  std::ostringstream out;
  out.precision(17);
  if (dist.samples > 0) {
    out << "sum,count\n";
    for (const auto& o : dist.outcomes) {
      out << o.sum << ','
          << static_cast<std::uint64_t>(
                 std::llround(o.probability * static_cast<double>(dist.samples)))
          << '\n';
    }
  } else {
    out << "sum,probability,price\n";
    for (const auto& o : dist.outcomes) {
      out << o.sum << ',' << o.probability << ',' << o.price << '\n';
    }
  }
  return out.str();
}

}  // namespace qmix
