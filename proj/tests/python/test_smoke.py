# Copyright 2026 The qmix developers
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

import math

import pytest

import qmix


def test_distribution_and_lut():
    dist = qmix.discretize_lognormal(0.0, 0.1, 32)
    assert dist.levels == 32
    assert abs(sum(dist.probabilities) - 1.0) < 1e-12

    lut = qmix.build_level_lut(dist, 12)
    assert len(lut.table) == 4096
    cost = qmix.lut_synthesis_cost(lut)
    assert 300 <= cost.gate_count <= 700
    assert cost.model_name == "monotone-threshold-v1"

    prep = qmix.baseline_state_prep(dist)
    assert prep.gate_count() == 31
    probs = qmix.simulate_probabilities(prep)
    worst = max(abs(p - q) for p, q in zip(probs, dist.probabilities))
    assert worst < 1e-10


def test_calibration():
    table = qmix.build_calibration_table(12)
    assert table.entries[0] == 0.0
    assert abs(table.entries[-1] - math.pi / 2) < 1e-12
    assert abs(qmix.calibrated_pipeline(0.3, table) - 0.3) <= 2.0 / 4096.0

    grid = qmix.standard_error_grid()
    err = qmix.max_relative_error(
        lambda x: qmix.calibrated_pipeline(x, table), grid
    )
    assert err <= 1.64

    best = qmix.optimal_scale_search(-0.2, 0.2)
    assert 1.52 <= best.m_scale <= 1.62


def test_qae():
    result = qmix.qae_estimate(0.5, m_eval=3)
    assert result.grid_index == 2
    assert abs(result.amplitude_estimate - 0.5) < 1e-10

    with pytest.raises(ValueError):
        qmix.qae_estimate(2.0, m_eval=3)
    with pytest.raises(ValueError):
        qmix.qae_estimate(0.5, m_eval=99)


def test_pricing_compare():
    problem = qmix.PricingProblem()
    problem.levels = 8
    problem.input_bits = 6
    report = qmix.compare_pipelines(problem)
    assert report.baseline_state_prep_gates == 63
    assert report.proposed.max_error_pct < report.baseline.max_error_pct
    assert "jpm-baseline" in qmix.report_to_csv(report)


def test_walk():
    model = qmix.WalkModel()
    model.days = 3
    model.step_bits = 1
    model.step_values = [-0.01, 0.01]
    model.step_probabilities = [0.5, 0.5]
    model.initial_price = 100.0

    quantum = qmix.quantum_price_distribution(model)
    exact = qmix.classical_enumeration(model)
    assert len(quantum.outcomes) == len(exact.outcomes)
    for a, b in zip(quantum.outcomes, exact.outcomes):
        assert abs(a.probability - b.probability) < 1e-9

    sampled = qmix.classical_monte_carlo(model, 10000, 7)
    assert sampled.samples == 10000
    assert abs(sampled.mean_sum) < 3 * 0.01 * math.sqrt(3) / math.sqrt(10000)

    assert qmix.exp_reconstruct(0.0, 100.0) == 100.0
