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

#include "qmix/amplitude_estimation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace qmix {

namespace {

constexpr double kPi = std::numbers::pi;

/// Append src's ops to dst, optionally adding one extra control qubit.
/// Oracles are re-registered and, when dst is wider than src, wrapped so
/// they leave the high bits alone.
void append_embedded(Circuit& dst, const Circuit& src,
                     int extra_control = -1) {
  const std::uint64_t low_mask = (std::uint64_t{1} << src.num_qubits) - 1;
  const std::uint64_t cbit =
      extra_control >= 0 ? (std::uint64_t{1} << extra_control) : 0;

  std::vector<int> oracle_remap(src.oracles.size(), -1);
  auto remap_oracle = [&](int id) {
    if (oracle_remap[id] >= 0) return oracle_remap[id];
    const auto& spec = src.oracles[id];
    OracleSpec wrapped;
    if (const auto* perm = std::get_if<PermutationOracle>(&spec)) {
      auto wrap = [low_mask, cbit](std::function<std::uint64_t(std::uint64_t)> f) {
        return [low_mask, cbit, f](std::uint64_t i) -> std::uint64_t {
          if (cbit != 0 && (i & cbit) == 0) return i;
          return (i & ~low_mask) | f(i & low_mask);
        };
      };
      wrapped = PermutationOracle{wrap(perm->map), wrap(perm->inverse),
                                  perm->name};
    } else {
      const auto& diag = std::get<DiagonalOracle>(spec);
      auto f = diag.factor;
      wrapped = DiagonalOracle{
          [low_mask, cbit, f](std::uint64_t i) -> cplx {
            if (cbit != 0 && (i & cbit) == 0) return cplx{1.0, 0.0};
            return f(i & low_mask);
          },
          diag.name};
    }
    oracle_remap[id] = dst.add_oracle(std::move(wrapped));
    return oracle_remap[id];
  };

  for (const auto& src_op : src.ops) {
    GateOp op = src_op;
    if (op.kind == GateKind::ORACLE) {
      op.oracle_id = remap_oracle(op.oracle_id);
    } else if (extra_control >= 0) {
      op.control_pattern |= std::uint64_t{1} << op.controls.size();
      op.controls.push_back(extra_control);
      if (op.kind == GateKind::MRY) {
        // doubling the selector register: upper half active, lower half
        // identity (angle 0)
        std::vector<double> angles(op.angles.size() * 2, 0.0);
        std::copy(op.angles.begin(), op.angles.end(),
                  angles.begin() + static_cast<std::ptrdiff_t>(op.angles.size()));
        op.angles = std::move(angles);
      }
    }
    dst.add(std::move(op));
  }
}

}  // namespace

double problem_amplitude(const AmplitudeProblem& problem) {
  StateVector state = new_state(problem.prep_circuit.num_qubits);
  state.apply_circuit(problem.prep_circuit);
  return state.marginal_prob_one(problem.objective_qubit);
}

Circuit build_grover_operator(const AmplitudeProblem& problem) {
  const int n = problem.prep_circuit.num_qubits;
  if (problem.objective_qubit < 0 || problem.objective_qubit >= n) {
    throw IndexError("objective qubit out of range");
  }
  const std::uint64_t obj_bit = std::uint64_t{1} << problem.objective_qubit;

  Circuit q(n);

  // S_psi: phase flip on objective = 1.
  const int flip_id = q.add_oracle(DiagonalOracle{
      [obj_bit](std::uint64_t i) {
        return (i & obj_bit) ? cplx{-1.0, 0.0} : cplx{1.0, 0.0};
      },
      "flip_objective"});
  GateOp flip{GateKind::ORACLE, {problem.objective_qubit}, {}};
  flip.oracle_id = flip_id;
  q.add(std::move(flip));

  append_embedded(q, problem.prep_circuit.inverted());

  // S0 = 2|0><0| - I.
  const int zero_id = q.add_oracle(DiagonalOracle{
      [](std::uint64_t i) {
        return i == 0 ? cplx{1.0, 0.0} : cplx{-1.0, 0.0};
      },
      "reflect_zero"});
  GateOp reflect{GateKind::ORACLE, {}, {}};
  for (int j = 0; j < n; ++j) reflect.targets.push_back(j);
  reflect.oracle_id = zero_id;
  q.add(std::move(reflect));

  append_embedded(q, problem.prep_circuit);
  return q;
}

Circuit qft(int num_qubits, const std::vector<int>& qubits) {
  if (qubits.empty()) throw ShapeError("QFT register must be nonempty");
  Circuit circuit(num_qubits);
  const int m = static_cast<int>(qubits.size());
  for (int j = m - 1; j >= 0; --j) {
    circuit.h(qubits[j]);
    for (int k = j - 1; k >= 0; --k) {
      circuit.cp(qubits[k], qubits[j], kPi / static_cast<double>(1 << (j - k)));
    }
  }
  for (int i = 0; i < m / 2; ++i) {
    const int a = qubits[i], b = qubits[m - 1 - i];
    circuit.mcx({a}, b);
    circuit.mcx({b}, a);
    circuit.mcx({a}, b);
  }
  return circuit;
}

Circuit inverse_qft(int num_qubits, const std::vector<int>& qubits) {
  return qft(num_qubits, qubits).inverted();
}

EstimateResult canonical_qae(const AmplitudeProblem& problem,
                             const QaeConfig& config) {
  const int n_state = problem.prep_circuit.num_qubits;
  const int m = config.eval_qubits;
  if (m < 1 || m > 12) throw CapacityError("eval_qubits outside [1, 12]");
  if (n_state + m > kMaxQubits) {
    throw CapacityError("state + eval register exceeds capacity");
  }

  Circuit full(n_state + m);
  append_embedded(full, problem.prep_circuit);
  std::vector<int> eval_qubits(m);
  for (int k = 0; k < m; ++k) {
    eval_qubits[k] = n_state + k;
    full.h(eval_qubits[k]);
  }

  const Circuit grover = build_grover_operator(problem);
  for (int k = 0; k < m; ++k) {
    const std::uint64_t reps = std::uint64_t{1} << k;
    for (std::uint64_t r = 0; r < reps; ++r) {
      append_embedded(full, grover, eval_qubits[k]);
    }
  }
  append_embedded(full, inverse_qft(n_state + m, eval_qubits));

  StateVector state = new_state(n_state + m);
  state.apply_circuit(full);

  const std::uint64_t outcomes = std::uint64_t{1} << m;
  std::vector<double> posterior(outcomes, 0.0);
  for (std::uint64_t i = 0; i < state.size(); ++i) {
    posterior[i >> n_state] += std::norm(state.amplitudes()[i]);
  }

  std::uint64_t best = 0;
  if (config.shots.has_value()) {
    std::map<std::uint64_t, std::uint64_t> eval_counts;
    for (const auto& [outcome, count] :
         state.sample_counts(*config.shots, config.seed)) {
      eval_counts[outcome >> n_state] += count;
    }
    std::uint64_t top = 0;
    for (const auto& [y, count] : eval_counts) {
      if (count > top) {
        top = count;
        best = y;
      }
    }
  } else {
    for (std::uint64_t y = 1; y < outcomes; ++y) {
      if (posterior[y] > posterior[best]) best = y;
    }
  }
  // y and 2^m - y decode to the same amplitude; report the smaller index.
  const std::uint64_t conjugate = (outcomes - best) % outcomes;
  if (conjugate < best && posterior[conjugate] > posterior[best] - 1e-9) {
    best = conjugate;
  }

  EstimateResult result;
  result.grid_index = best;
  const double s =
      std::sin(kPi * static_cast<double>(best) / static_cast<double>(outcomes));
  result.amplitude_estimate = s * s;
  result.posterior = std::move(posterior);
  return result;
}

double direct_measure_estimate(const AmplitudeProblem& problem,
                               std::uint64_t shots, std::uint64_t seed) {
  if (shots == 0) throw DomainError("shots must be >= 1");
  StateVector state = new_state(problem.prep_circuit.num_qubits);
  state.apply_circuit(problem.prep_circuit);
  const std::uint64_t obj_bit = std::uint64_t{1} << problem.objective_qubit;
  std::uint64_t ones = 0;
  for (const auto& [outcome, count] : state.sample_counts(shots, seed)) {
    if (outcome & obj_bit) ones += count;
  }
  return static_cast<double>(ones) / static_cast<double>(shots);
}

std::string estimate_to_csv(const EstimateResult& result, int eval_qubits) {
  std::ostringstream out;
  out.precision(17);
  out << "m_eval,y,amplitude,posterior_prob\n";
  const std::uint64_t n = std::uint64_t{1} << eval_qubits;
  for (std::uint64_t y = 0; y < n; ++y) {
    const double s = std::sin(kPi * static_cast<double>(y) / static_cast<double>(n));
    out << eval_qubits << ',' << y << ',' << s * s << ','
        << result.posterior[y] << '\n';
  }
  return out.str();
}

}  // namespace qmix
