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
#include <string>
#include <vector>

#include "qmix/statevector.hpp"

namespace qmix {

struct DiscretizedDistribution {
  int levels = 0;
  std::vector<double> probabilities;   // >= 0, sum 1
  std::vector<double> support_values;  // strictly increasing
};

/// Thread-ID lookup: every n-bit input index maps to one of the L levels,
/// monotone non-decreasing (inverse-CDF construction).
struct LevelLut {
  int input_bits = 0;
  int output_bits = 0;
  int levels = 0;
  std::vector<std::uint16_t> table;  // size 2^input_bits, entries < levels

  /// Fraction of inputs landing on each level.
  std::vector<double> level_frequencies() const;
};

struct SynthesisCost {
  std::int64_t gate_count = 0;
  std::int64_t depth = 0;
  std::string model_name;
};

/// L midpoints of equal-width bins spanning [exp(mu-3*sigma), exp(mu+3*sigma)],
/// mass from the lognormal density at each midpoint, renormalized.
DiscretizedDistribution discretize_lognormal(double mu, double sigma,
                                             int levels);

/// Input i maps to the smallest level whose cumulative probability reaches
/// (i + 0.5) / 2^n.
LevelLut build_level_lut(const DiscretizedDistribution& dist, int input_bits);

/// Binary tree of multi-controlled RY gates loading amplitude sqrt(p_i)
/// onto basis state i. Exactly 2^n - 1 gates for 2^n outcomes.
Circuit baseline_state_prep(const DiscretizedDistribution& dist);

/// n Hadamards on the thread-ID register (qubits 0..n-1) followed by one
/// ORACLE xor-writing the level into qubits n..n+b-1.
Circuit lut_state_prep(const LevelLut& lut);

/// Marginal distribution of the level register after lut_state_prep,
/// computed from the statevector. Register widths must fit kMaxQubits.
std::vector<double> lut_level_marginals(const LevelLut& lut);

/// Reversible-logic cost of the LUT under the documented
/// "monotone-threshold-v1" model: each of the realized level boundaries
/// costs one n-bit comparison, combined into b output bits.
SynthesisCost lut_synthesis_cost(const LevelLut& lut);

// File formats.
std::string distribution_to_csv(const DiscretizedDistribution& dist);
DiscretizedDistribution distribution_from_csv(const std::string& text);
std::string lut_to_text(const LevelLut& lut);
LevelLut lut_from_text(const std::string& text);

}  // namespace qmix
