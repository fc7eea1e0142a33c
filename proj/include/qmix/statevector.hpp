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

#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "qmix/errors.hpp"

namespace qmix {

using cplx = std::complex<double>;

/// Hard cap on exact simulation size. The largest register this toolkit
/// ever needs is 24 state qubits plus a couple of ancillas.
inline constexpr int kMaxQubits = 26;

enum class GateKind {
  H,
  X,
  RY,     // RY(phi): [[cos(phi/2), -sin(phi/2)], [sin(phi/2), cos(phi/2)]]
  CRY,    // single-control RY
  CP,     // controlled phase: |1..1,1> gains e^{i*phi}
  MCX,    // multi-controlled X
  MCRY,   // multi-controlled RY
  MRY,    // RY multiplexed over a control register value
  ORACLE  // classical basis-state permutation or diagonal phase, one step
};

std::string gate_kind_name(GateKind kind);

struct GateOp {
  GateKind kind;
  std::vector<int> targets;
  std::vector<int> controls;
  double angle = 0.0;
  // Required control values, bit j = value of controls[j]. Default: all 1.
  // A uniformly-controlled rotation is one gate per control pattern.
  std::uint64_t control_pattern = ~std::uint64_t{0};
  // MRY only: angle indexed by the little-endian value of the control
  // register. Size must be 2^controls.size().
  std::vector<double> angles;
  // ORACLE only: index into Circuit::oracles.
  int oracle_id = -1;
};

/// Bijection on basis indices, e.g. |i>|y> -> |i>|y xor f(i)>.
struct PermutationOracle {
  std::function<std::uint64_t(std::uint64_t)> map;
  std::function<std::uint64_t(std::uint64_t)> inverse;
  std::string name;
};

/// Diagonal unitary with per-basis-state phase factor (|factor| = 1).
struct DiagonalOracle {
  std::function<cplx(std::uint64_t)> factor;
  std::string name;
};

using OracleSpec = std::variant<PermutationOracle, DiagonalOracle>;

struct Circuit {
  int num_qubits = 0;
  std::vector<GateOp> ops;
  std::vector<OracleSpec> oracles;

  explicit Circuit(int n = 0) : num_qubits(n) {}

  int add_oracle(OracleSpec spec);
  void add(GateOp op);

  // Convenience builders.
  void h(int q) { add({GateKind::H, {q}, {}}); }
  void x(int q) { add({GateKind::X, {q}, {}}); }
  void ry(int q, double phi) { add({GateKind::RY, {q}, {}, phi}); }
  void cry(int control, int q, double phi) {
    add({GateKind::CRY, {q}, {control}, phi});
  }
  void cp(int control, int q, double phi) {
    add({GateKind::CP, {q}, {control}, phi});
  }
  void mcx(std::vector<int> controls, int q) {
    add({GateKind::MCX, {q}, std::move(controls)});
  }
  void mcry(std::vector<int> controls, int q, double phi) {
    add({GateKind::MCRY, {q}, std::move(controls), phi});
  }

  /// Unitary inverse: reversed ops with negated angles. Permutation
  /// oracles must carry their inverse map.
  Circuit inverted() const;

  /// Line-oriented text form, one gate per line.
  std::string to_text() const;
};

struct CircuitMetrics {
  std::int64_t gate_count = 0;
  std::int64_t depth = 0;
};

class StateVector {
 public:
  /// |0...0> on num_qubits qubits. Qubit 0 is the least significant bit
  /// of the basis index.
  static StateVector zero_state(int num_qubits);

  int num_qubits() const { return num_qubits_; }
  std::uint64_t size() const { return amps_.size(); }
  const std::vector<cplx>& amplitudes() const { return amps_; }
  std::vector<cplx>& amplitudes() { return amps_; }

  double norm_squared() const;

  void apply_gate(const GateOp& op, const Circuit* context = nullptr);
  void apply_circuit(const Circuit& circuit);

  /// P(bit(qubit) = 1) under Born rule.
  double marginal_prob_one(int qubit) const;

  /// Probability of each basis state, |amp|^2.
  std::vector<double> probabilities() const;

  /// Multinomial sampling of basis outcomes; deterministic per seed.
  std::map<std::uint64_t, std::uint64_t> sample_counts(std::uint64_t shots,
                                                       std::uint64_t seed) const;

 private:
  StateVector(int num_qubits, std::vector<cplx> amps)
      : num_qubits_(num_qubits), amps_(std::move(amps)) {}

  int num_qubits_;
  std::vector<cplx> amps_;
};

inline StateVector new_state(int num_qubits) {
  return StateVector::zero_state(num_qubits);
}

/// Gate count is |ops| (an ORACLE counts as one step); depth is ASAP
/// layering over shared qubits, controls included.
CircuitMetrics circuit_metrics(const Circuit& circuit);

}  // namespace qmix
