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
#include <optional>
#include <vector>

#include "qmix/statevector.hpp"

namespace qmix {

struct AmplitudeProblem {
  Circuit prep_circuit;  // the A operator
  int objective_qubit = 0;
};

struct QaeConfig {
  int eval_qubits = 5;
  // Exact statevector readout by default; sampled readout when shots set.
  std::optional<std::uint64_t> shots;
  std::uint64_t seed = 0;
};

struct EstimateResult {
  double amplitude_estimate = 0.0;  // sin^2(pi * grid_index / 2^m)
  std::uint64_t grid_index = 0;     // smaller of the conjugate pair
  std::vector<double> posterior;    // outcome -> probability, size 2^m
};

/// a = P(objective = 1) of A|0>, read from the statevector.
double problem_amplitude(const AmplitudeProblem& problem);

/// Q = A * S0 * A^dag * S_psi with S_psi = I - 2P(objective=1) and
/// S0 = 2|0><0| - I, so <A0|Q|A0> = cos(2 * arcsin(sqrt(a))).
Circuit build_grover_operator(const AmplitudeProblem& problem);

/// Forward QFT on the listed qubits, qubits[0] the least significant bit
/// of the register value.
Circuit qft(int num_qubits, const std::vector<int>& qubits);

Circuit inverse_qft(int num_qubits, const std::vector<int>& qubits);

/// Phase-estimation QAE with controlled Q^{2^k} and inverse QFT on the
/// eval register. Exact mode picks the argmax outcome of the eval
/// marginal; sampled mode the most frequent sampled outcome.
EstimateResult canonical_qae(const AmplitudeProblem& problem,
                             const QaeConfig& config);

/// Fraction of sampled outcomes with the objective bit set.
double direct_measure_estimate(const AmplitudeProblem& problem,
                               std::uint64_t shots, std::uint64_t seed);

/// CSV export: m_eval,y,amplitude,posterior_prob.
std::string estimate_to_csv(const EstimateResult& result, int eval_qubits);

}  // namespace qmix
