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

#include "qmix/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <numeric>
#include <sstream>

namespace qmix {

namespace {

bool is_power_of_two(std::uint64_t x) { return x != 0 && (x & (x - 1)) == 0; }

int int_log2(std::uint64_t x) {
  int n = 0;
  while ((std::uint64_t{1} << n) < x) ++n;
  return n;
}

int ceil_log2(std::uint64_t x) { return x <= 1 ? 0 : int_log2(x); }

}  // namespace

std::vector<double> LevelLut::level_frequencies() const {
  std::vector<double> freq(levels, 0.0);
  const double w = 1.0 / static_cast<double>(table.size());
  for (auto v : table) freq[v] += w;
  return freq;
}

DiscretizedDistribution discretize_lognormal(double mu, double sigma,
                                             int levels) {
  if (!(sigma > 0.0)) throw DomainError("sigma must be > 0");
  if (levels < 2) throw DomainError("levels must be >= 2");
  const double lo = std::exp(mu - 3.0 * sigma);
  const double hi = std::exp(mu + 3.0 * sigma);
  const double width = (hi - lo) / levels;

  DiscretizedDistribution dist;
  dist.levels = levels;
  dist.support_values.resize(levels);
  dist.probabilities.resize(levels);
  double total = 0.0;
  for (int j = 0; j < levels; ++j) {
    const double s = lo + (j + 0.5) * width;
    dist.support_values[j] = s;
    const double z = (std::log(s) - mu) / sigma;
    const double dens = std::exp(-0.5 * z * z) /
                        (s * sigma * std::sqrt(2.0 * std::numbers::pi));
    dist.probabilities[j] = dens * width;
    total += dist.probabilities[j];
  }
  for (double& p : dist.probabilities) p /= total;
  return dist;
}

LevelLut build_level_lut(const DiscretizedDistribution& dist, int input_bits) {
  if (input_bits < 1 || input_bits > 24) {
    throw CapacityError("input_bits outside [1, 24]");
  }
  const std::uint64_t inputs = std::uint64_t{1} << input_bits;
  if (inputs < static_cast<std::uint64_t>(dist.levels)) {
    throw CapacityError("2^input_bits must cover all levels");
  }
  std::vector<double> cdf(dist.levels);
  std::partial_sum(dist.probabilities.begin(), dist.probabilities.end(),
                   cdf.begin());
  cdf.back() = 1.0;  // guard against rounding in the last bucket

  LevelLut lut;
  lut.input_bits = input_bits;
  lut.levels = dist.levels;
  lut.output_bits = ceil_log2(static_cast<std::uint64_t>(dist.levels));
  lut.table.resize(inputs);
  int level = 0;
  for (std::uint64_t i = 0; i < inputs; ++i) {
    const double target = (static_cast<double>(i) + 0.5) / static_cast<double>(inputs);
    while (level < dist.levels - 1 && cdf[level] < target) ++level;
    lut.table[i] = static_cast<std::uint16_t>(level);
  }
  return lut;
}

Circuit baseline_state_prep(const DiscretizedDistribution& dist) {
  const std::uint64_t outcomes = dist.probabilities.size();
  if (!is_power_of_two(outcomes) || outcomes < 2) {
    throw ShapeError("baseline loader needs a power-of-two outcome count");
  }
  const int n = int_log2(outcomes);
  if (n > kMaxQubits) throw CapacityError("distribution too large to simulate");

  // mass[k][c]: probability that the top k index bits equal pattern c.
  // Built bottom-up from the leaves.
  std::vector<std::vector<double>> mass(n + 1);
  mass[n] = dist.probabilities;
  for (int k = n - 1; k >= 0; --k) {
    mass[k].resize(std::uint64_t{1} << k);
    for (std::uint64_t c = 0; c < mass[k].size(); ++c) {
      mass[k][c] = mass[k + 1][2 * c] + mass[k + 1][2 * c + 1];
    }
  }

  Circuit circuit(n);
  for (int k = 0; k < n; ++k) {
    const int target = n - 1 - k;  // MSB of the index first
    std::vector<int> controls;
    for (int j = 0; j < k; ++j) controls.push_back(n - 1 - j);
    for (std::uint64_t c = 0; c < (std::uint64_t{1} << k); ++c) {
      const double m0 = mass[k + 1][2 * c];
      const double m1 = mass[k + 1][2 * c + 1];
      const double phi =
          (m0 + m1 > 0.0) ? 2.0 * std::atan2(std::sqrt(m1), std::sqrt(m0)) : 0.0;
      GateOp op{k == 0 ? GateKind::RY : GateKind::MCRY, {target}, controls, phi};
      // controls[j] holds index bit n-1-j; pattern bit j mirrors bit k-1-j of c
      std::uint64_t pattern = 0;
      for (int j = 0; j < k; ++j) {
        if ((c >> (k - 1 - j)) & 1) pattern |= std::uint64_t{1} << j;
      }
      if (k > 0) op.control_pattern = pattern;
      circuit.add(std::move(op));
    }
  }
  return circuit;
}

Circuit lut_state_prep(const LevelLut& lut) {
  const int n = lut.input_bits;
  const int b = lut.output_bits;
  if (n + b > kMaxQubits) throw CapacityError("thread + level register too wide");

  Circuit circuit(n + b);
  for (int q = 0; q < n; ++q) circuit.h(q);

  const std::uint64_t low_mask = (std::uint64_t{1} << n) - 1;
  auto table = lut.table;  // captured by value; circuit owns its oracle
  auto write_level = [table, low_mask, n](std::uint64_t i) {
    return i ^ (static_cast<std::uint64_t>(table[i & low_mask]) << n);
  };
  const int id = circuit.add_oracle(
      PermutationOracle{write_level, write_level, "level_lut"});

  GateOp op{GateKind::ORACLE, {}, {}};
  for (int q = n; q < n + b; ++q) op.targets.push_back(q);
  for (int q = 0; q < n; ++q) op.controls.push_back(q);
  op.oracle_id = id;
  circuit.add(std::move(op));
  return circuit;
}

std::vector<double> lut_level_marginals(const LevelLut& lut) {
  const Circuit circuit = lut_state_prep(lut);
  StateVector state = new_state(circuit.num_qubits);
  state.apply_circuit(circuit);
  std::vector<double> marg(lut.levels, 0.0);
  const std::uint64_t threads = std::uint64_t{1} << lut.input_bits;
  for (std::uint64_t i = 0; i < state.size(); ++i) {
    const std::uint64_t level = i >> lut.input_bits;
    if (level < static_cast<std::uint64_t>(lut.levels)) {
      marg[level] += std::norm(state.amplitudes()[i]);
    }
  }
  (void)threads;
  return marg;
}

SynthesisCost lut_synthesis_cost(const LevelLut& lut) {
  std::int64_t thresholds = 0;
  for (std::size_t i = 1; i < lut.table.size(); ++i) {
    if (lut.table[i] < lut.table[i - 1]) {
      throw ModelError("monotone-threshold model needs a monotone LUT");
    }
    if (lut.table[i] != lut.table[i - 1]) ++thresholds;
  }
  SynthesisCost cost;
  cost.model_name = "monotone-threshold-v1";
  cost.gate_count = thresholds * lut.input_bits + lut.output_bits * thresholds;
  cost.depth = thresholds > 0
                   ? ceil_log2(static_cast<std::uint64_t>(lut.input_bits)) +
                         ceil_log2(static_cast<std::uint64_t>(lut.levels))
                   : 0;
  return cost;
}

std::string distribution_to_csv(const DiscretizedDistribution& dist) {
  std::ostringstream out;
  out.precision(17);
  out << "level,support_value,probability\n";
  for (int j = 0; j < dist.levels; ++j) {
    out << j << ',' << dist.support_values[j] << ',' << dist.probabilities[j]
        << '\n';
  }
  return out.str();
}

DiscretizedDistribution distribution_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  DiscretizedDistribution dist;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      header_seen = true;  // "level,support_value,probability"
      continue;
    }
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream row(line);
    int level;
    double support, prob;
    if (!(row >> level >> support >> prob)) {
      throw ParseError("bad distribution row: " + line);
    }
    dist.support_values.push_back(support);
    dist.probabilities.push_back(prob);
  }
  dist.levels = static_cast<int>(dist.probabilities.size());
  if (dist.levels == 0) throw ParseError("empty distribution file");
  return dist;
}

std::string lut_to_text(const LevelLut& lut) {
  std::ostringstream out;
  out << "levels=" << lut.levels << " input_bits=" << lut.input_bits << '\n';
  for (std::size_t i = 0; i < lut.table.size(); ++i) {
    out << i << ' ' << lut.table[i] << '\n';
  }
  return out.str();
}

LevelLut lut_from_text(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  LevelLut lut;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      int levels = 0, bits = 0;
      if (std::sscanf(line.c_str(), "levels=%d input_bits=%d", &levels, &bits) != 2) {
        throw ParseError("bad LUT header: " + line);
      }
      lut.levels = levels;
      lut.input_bits = bits;
      lut.output_bits = ceil_log2(static_cast<std::uint64_t>(levels));
      header_seen = true;
      continue;
    }
    std::istringstream row(line);
    std::uint64_t index;
    int level;
    if (!(row >> index >> level)) throw ParseError("bad LUT row: " + line);
    if (index != lut.table.size()) throw ParseError("LUT rows out of order");
    if (level < 0 || level >= lut.levels) throw ParseError("LUT level out of range");
    lut.table.push_back(static_cast<std::uint16_t>(level));
  }
  if (!header_seen) throw ParseError("missing LUT header");
  if (lut.table.size() != (std::uint64_t{1} << lut.input_bits)) {
    throw ParseError("LUT row count does not match input_bits");
  }
  return lut;
}

}  // namespace qmix
