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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "qmix/pricing.hpp"

using namespace qmix;

namespace {

constexpr double kPi = std::numbers::pi;

DiscretizedDistribution uniform_dist(int levels) {
  DiscretizedDistribution dist;
  dist.levels = levels;
  dist.probabilities.assign(levels, 1.0 / levels);
  for (int j = 0; j < levels; ++j) dist.support_values.push_back(j);
  return dist;
}

DiscretizedDistribution point_mass(int levels, int at) {
  DiscretizedDistribution dist = uniform_dist(levels);
  dist.probabilities.assign(levels, 0.0);
  dist.probabilities[at] = 1.0;
  return dist;
}

}  // namespace

TEST_CASE("exact expectation oracle") {
  LinearPayoff identity{1.0, 0.0, 1.0};
  CHECK(expected_value_exact(uniform_dist(8), identity) ==
        doctest::Approx(3.5).epsilon(1e-14));

  LinearPayoff affine{2.0, 1.0, 1.0};
  CHECK(expected_value_exact(point_mass(8, 5), affine) ==
        doctest::Approx(11.0).epsilon(1e-14));

  // independent running-sum check on a lognormal instance
  const auto dist = discretize_lognormal(0.0, 0.1, 32);
  double running = 0.0;
  for (int i = 31; i >= 0; --i) running += (2.0 * i + 1.0) * dist.probabilities[i];
  CHECK(std::abs(expected_value_exact(dist, affine) - running) < 1e-12);
}

TEST_CASE("payoff normalization") {
  const auto payoff = LinearPayoff::normalized(1.0, 0.0, 32);
  CHECK(payoff.unit_value(31) == doctest::Approx(0.95).epsilon(1e-12));
  for (int i = 0; i < 32; ++i) {
    const double x = payoff.unit_value(i);
    CHECK(x >= 0.0);
    CHECK(x <= 1.0);
  }
  CHECK_THROWS_AS(LinearPayoff::normalized(-1.0, 0.0, 4), DomainError);
  CHECK_THROWS_AS(LinearPayoff::normalized(0.0, 0.0, 4), DomainError);
}

TEST_CASE("baseline circuit: zero slope is distribution independent") {
  const auto dist = discretize_lognormal(0.0, 0.1, 8);
  LinearPayoff flat{0.0, 1.0, 0.5};
  const auto priced = build_jpm_circuit(dist, flat, 0.01);
  const double p1 = run_objective_probability(priced);
  const double theta = kPi / 4.0 + 0.01 * (0.5 * 1.0 - 0.5);
  CHECK(p1 == doctest::Approx(std::pow(std::sin(theta), 2)).epsilon(1e-12));
}

TEST_CASE("baseline circuit decodes the expectation in the small-angle regime") {
  const auto dist = uniform_dist(8);
  const auto payoff = LinearPayoff::normalized(1.0, 0.5, 8);
  const auto priced = build_jpm_circuit(dist, payoff, 0.01);
  CHECK(priced.state_prep_gates == 7);
  CHECK(priced.circuit.ops.size() == 7 + 3 + 1);

  const double estimate = decode_jpm_estimate(run_objective_probability(priced),
                                              payoff, 0.01);
  const double exact = expected_value_exact(dist, payoff);
  CHECK(std::abs(estimate - exact) / exact < 0.02);
}

TEST_CASE("baseline decode error shrinks with the slope angle") {
  const auto dist = discretize_lognormal(0.0, 0.1, 16);
  const auto payoff = LinearPayoff::normalized(1.0, 1.0, 16);
  const double exact = expected_value_exact(dist, payoff);
  double previous = 1e9;
  for (double slope_angle : {0.1, 0.03, 0.01}) {
    const auto priced = build_jpm_circuit(dist, payoff, slope_angle);
    const double estimate =
        decode_jpm_estimate(run_objective_probability(priced), payoff, slope_angle);
    const double err = std::abs(estimate - exact);
    CHECK(err < previous);
    previous = err;
  }
}

TEST_CASE("proposed circuit: point mass and uniform LUTs") {
  const auto table = build_calibration_table(12);

  const auto point_lut = build_level_lut(point_mass(4, 2), 4);
  const auto payoff = LinearPayoff::normalized(1.0, 1.0, 4);
  const auto priced = build_proposed_circuit(point_lut, payoff, table);
  const double p1 = run_objective_probability(priced);
  CHECK(std::abs(p1 - payoff.unit_value(2)) <= 2.0 / 4096.0);

  const auto uniform_lut = build_level_lut(uniform_dist(4), 4);
  const auto priced_u = build_proposed_circuit(uniform_lut, payoff, table);
  const double mean_payoff = expected_value_exact(uniform_dist(4), payoff);
  const double estimate =
      decode_proposed_estimate(run_objective_probability(priced_u), payoff);
  CHECK(std::abs(estimate - mean_payoff) < 1e-3);
}

TEST_CASE("proposed circuit decoding correctness, exhaustive small cases") {
  const auto table = build_calibration_table(12);
  const double quant = 2.0 / 4096.0;
  std::mt19937_64 rng(53);
  std::uniform_real_distribution<double> u(0.01, 1.0);
  for (int levels : {2, 4, 8, 16}) {
    DiscretizedDistribution dist = uniform_dist(levels);
    double total = 0.0;
    for (auto& p : dist.probabilities) {
      p = u(rng);
      total += p;
    }
    for (auto& p : dist.probabilities) p /= total;

    const int bits = 8;
    const auto lut = build_level_lut(dist, bits);
    const auto payoff = LinearPayoff::normalized(u(rng), u(rng), levels);
    const auto priced = build_proposed_circuit(lut, payoff, table);
    const double p1 = run_objective_probability(priced);

    const auto freq = lut.level_frequencies();
    double expected = 0.0;
    for (int v = 0; v < levels; ++v) expected += freq[v] * payoff.unit_value(v);
    CHECK(std::abs(p1 - expected) <= 2.0 * quant);
  }
}

TEST_CASE("proposed circuit is monotone in the payoff") {
  const auto table = build_calibration_table(12);
  const auto dist = discretize_lognormal(0.0, 0.1, 8);
  const auto lut = build_level_lut(dist, 8);
  double previous = -1.0;
  for (double offset : {0.1, 0.3, 0.5}) {
    LinearPayoff payoff{1.0, offset, 0.1};
    const auto priced = build_proposed_circuit(lut, payoff, table);
    const double p1 = run_objective_probability(priced);
    CHECK(p1 > previous);
    previous = p1;
  }
}

TEST_CASE("pipeline comparison on a small instance") {
  PricingProblem problem;
  problem.levels = 8;
  problem.input_bits = 6;
  problem.calib_bits = 12;
  const auto report = compare_pipelines(problem);

  // relative errors match an independent recomputation
  for (const PipelineResult* r : {&report.baseline, &report.proposed}) {
    const double expect =
        std::abs(r->estimate - r->exact) / std::abs(r->exact) * 100.0;
    CHECK(r->relative_error_pct == doctest::Approx(expect).epsilon(1e-12));
  }

  CHECK(report.baseline_state_prep_gates == 63);
  CHECK(report.proposed.cost_model == "monotone-threshold-v1");
  // metrics ordering: baseline exponential vs proposed model cost
  CHECK(report.baseline.gate_count + 7 > report.proposed.gate_count);
  CHECK(report.proposed.max_error_pct < report.baseline.max_error_pct);
  // both pipelines decode their own discretized exact to well under 1%
  CHECK(report.baseline.relative_error_pct < 1.0);
  CHECK(report.proposed.relative_error_pct < 1.0);
}

TEST_CASE("metrics ordering past the exponential crossover at L = 32") {
  for (int n : {10, 12, 14}) {
    const auto dist = discretize_lognormal(0.0, 0.1, 32);
    const auto cost = lut_synthesis_cost(build_level_lut(dist, n));
    const std::int64_t baseline = (std::int64_t{1} << n) - 1 + (n + 1);
    CHECK(baseline > cost.gate_count);
  }
}

TEST_CASE("point-mass comparison: both pipelines near exact") {
  PricingProblem problem;
  problem.sigma = 1e-4;  // lognormal collapses to a near-point mass
  problem.levels = 4;
  problem.input_bits = 4;
  const auto report = compare_pipelines(problem);
  CHECK(report.baseline.relative_error_pct < 2.0);
  CHECK(report.proposed.relative_error_pct < 2.0);
}

TEST_CASE("report serialization") {
  PricingProblem problem;
  problem.levels = 4;
  problem.input_bits = 4;
  const auto report = compare_pipelines(problem);
  const std::string csv = report_to_csv(report);
  CHECK(csv.find("pipeline,gate_count,depth,cost_model") == 0);
  CHECK(csv.find("jpm-baseline") != std::string::npos);
  CHECK(csv.find("lut-calibrated") != std::string::npos);
  CHECK(csv.find("monotone-threshold-v1") != std::string::npos);
  const std::string table = report_to_table(report);
  CHECK(table.find("(monotone-threshold-v1)") != std::string::npos);
}
