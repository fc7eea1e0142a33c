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

#include "qmix/statevector.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <sstream>

namespace qmix {

namespace {

void check_indices(const GateOp& op, int num_qubits) {
  for (int t : op.targets) {
    if (t < 0 || t >= num_qubits) {
      throw IndexError("target qubit " + std::to_string(t) + " out of range");
    }
  }
  for (int c : op.controls) {
    if (c < 0 || c >= num_qubits) {
      throw IndexError("control qubit " + std::to_string(c) + " out of range");
    }
    for (int t : op.targets) {
      if (c == t) {
        throw IndexError("control and target sets overlap at qubit " +
                         std::to_string(c));
      }
    }
  }
}

std::uint64_t control_mask(const std::vector<int>& controls) {
  std::uint64_t mask = 0;
  for (int c : controls) mask |= std::uint64_t{1} << c;
  return mask;
}

void check_angle(double phi) {
  if (!std::isfinite(phi)) throw DomainError("non-finite gate angle");
}

}  // namespace

std::string gate_kind_name(GateKind kind) {
  switch (kind) {
    case GateKind::H: return "H";
    case GateKind::X: return "X";
    case GateKind::RY: return "RY";
    case GateKind::CRY: return "CRY";
    case GateKind::CP: return "CP";
    case GateKind::MCX: return "MCX";
    case GateKind::MCRY: return "MCRY";
    case GateKind::MRY: return "MRY";
    case GateKind::ORACLE: return "ORACLE";
  }
  return "?";
}

int Circuit::add_oracle(OracleSpec spec) {
  oracles.push_back(std::move(spec));
  return static_cast<int>(oracles.size()) - 1;
}

void Circuit::add(GateOp op) {
  check_indices(op, num_qubits);
  ops.push_back(std::move(op));
}

Circuit Circuit::inverted() const {
  Circuit inv(num_qubits);
  inv.oracles.reserve(oracles.size());
  for (const auto& spec : oracles) {
    if (const auto* perm = std::get_if<PermutationOracle>(&spec)) {
      if (!perm->inverse) {
        throw ModelError("permutation oracle '" + perm->name +
                         "' has no inverse map");
      }
      inv.oracles.push_back(
          PermutationOracle{perm->inverse, perm->map, perm->name + "_inv"});
    } else {
      const auto& diag = std::get<DiagonalOracle>(spec);
      auto f = diag.factor;
      inv.oracles.push_back(DiagonalOracle{
          [f](std::uint64_t i) { return std::conj(f(i)); },
          diag.name + "_inv"});
    }
  }
  inv.ops.reserve(ops.size());
  for (auto it = ops.rbegin(); it != ops.rend(); ++it) {
    GateOp op = *it;
    switch (op.kind) {
      case GateKind::RY:
      case GateKind::CRY:
      case GateKind::CP:
      case GateKind::MCRY:
        op.angle = -op.angle;
        break;
      case GateKind::MRY:
        for (double& a : op.angles) a = -a;
        break;
      default:
        break;  // H, X, MCX self-inverse; ORACLE swapped above
    }
    inv.ops.push_back(std::move(op));
  }
  return inv;
}

std::string Circuit::to_text() const {
  std::ostringstream out;
  out.precision(17);
  auto list = [&out](const std::vector<int>& qs) {
    out << '[';
    for (std::size_t i = 0; i < qs.size(); ++i) {
      if (i) out << ',';
      out << qs[i];
    }
    out << ']';
  };
  for (const auto& op : ops) {
    out << gate_kind_name(op.kind);
    switch (op.kind) {
      case GateKind::RY:
      case GateKind::CRY:
      case GateKind::CP:
      case GateKind::MCRY:
        out << ' ' << op.angle;
        break;
      default:
        break;
    }
    out << " targets=";
    list(op.targets);
    out << " controls=";
    list(op.controls);
    if (!op.controls.empty()) {
      const std::uint64_t all =
          (op.controls.size() >= 64)
              ? ~std::uint64_t{0}
              : ((std::uint64_t{1} << op.controls.size()) - 1);
      if ((op.control_pattern & all) != all) {
        out << " pattern=" << (op.control_pattern & all);
      }
    }
    if (op.kind == GateKind::MRY) {
      out << " angles=[";
      for (std::size_t i = 0; i < op.angles.size(); ++i) {
        if (i) out << ',';
        out << op.angles[i];
      }
      out << ']';
    }
    if (op.kind == GateKind::ORACLE) {
      out << " id=" << op.oracle_id;
      if (op.oracle_id >= 0 &&
          op.oracle_id < static_cast<int>(oracles.size())) {
        const auto& spec = oracles[op.oracle_id];
        out << " name="
            << std::visit([](const auto& o) { return o.name; }, spec);
      }
    }
    out << '\n';
  }
  return out.str();
}

StateVector StateVector::zero_state(int num_qubits) {
  if (num_qubits < 1 || num_qubits > kMaxQubits) {
    throw CapacityError("qubit count " + std::to_string(num_qubits) +
                        " outside [1, " + std::to_string(kMaxQubits) + "]");
  }
  std::vector<cplx> amps(std::uint64_t{1} << num_qubits, cplx{0.0, 0.0});
  amps[0] = cplx{1.0, 0.0};
  return StateVector(num_qubits, std::move(amps));
}

double StateVector::norm_squared() const {
  double s = 0.0;
  for (const auto& a : amps_) s += std::norm(a);
  return s;
}

void StateVector::apply_gate(const GateOp& op, const Circuit* context) {
  check_indices(op, num_qubits_);
  const std::uint64_t n = amps_.size();
  const std::uint64_t cmask = control_mask(op.controls);
  std::uint64_t want = 0;
  for (std::size_t j = 0; j < op.controls.size(); ++j) {
    if ((op.control_pattern >> j) & 1) want |= std::uint64_t{1} << op.controls[j];
  }

  // 2x2 kernel on a target with optional controls.
  auto apply_2x2 = [&](int target, cplx m00, cplx m01, cplx m10, cplx m11) {
    const std::uint64_t tbit = std::uint64_t{1} << target;
    for (std::uint64_t i = 0; i < n; ++i) {
      if (i & tbit) continue;
      if ((i & cmask) != want) continue;
      const cplx a0 = amps_[i];
      const cplx a1 = amps_[i | tbit];
      amps_[i] = m00 * a0 + m01 * a1;
      amps_[i | tbit] = m10 * a0 + m11 * a1;
    }
  };

  switch (op.kind) {
    case GateKind::H: {
      const double s = 1.0 / std::sqrt(2.0);
      apply_2x2(op.targets.at(0), s, s, s, -s);
      break;
    }
    case GateKind::X:
    case GateKind::MCX:
      apply_2x2(op.targets.at(0), 0.0, 1.0, 1.0, 0.0);
      break;
    case GateKind::RY:
    case GateKind::CRY:
    case GateKind::MCRY: {
      check_angle(op.angle);
      const double c = std::cos(op.angle / 2.0);
      const double s = std::sin(op.angle / 2.0);
      apply_2x2(op.targets.at(0), c, -s, s, c);
      break;
    }
    case GateKind::CP: {
      check_angle(op.angle);
      const cplx phase = std::polar(1.0, op.angle);
      const std::uint64_t tbit = std::uint64_t{1} << op.targets.at(0);
      for (std::uint64_t i = 0; i < n; ++i) {
        if ((i & tbit) && (i & cmask) == want) amps_[i] *= phase;
      }
      break;
    }
    case GateKind::MRY: {
      const std::uint64_t tbit = std::uint64_t{1} << op.targets.at(0);
      const std::size_t nsel = op.controls.size();
      if (op.angles.size() != (std::size_t{1} << nsel)) {
        throw ShapeError("MRY angle table size mismatch");
      }
      for (double a : op.angles) check_angle(a);
      for (std::uint64_t i = 0; i < n; ++i) {
        if (i & tbit) continue;
        std::uint64_t sel = 0;
        for (std::size_t j = 0; j < nsel; ++j) {
          if (i & (std::uint64_t{1} << op.controls[j])) sel |= std::uint64_t{1} << j;
        }
        const double c = std::cos(op.angles[sel] / 2.0);
        const double s = std::sin(op.angles[sel] / 2.0);
        const cplx a0 = amps_[i];
        const cplx a1 = amps_[i | tbit];
        amps_[i] = c * a0 - s * a1;
        amps_[i | tbit] = s * a0 + c * a1;
      }
      break;
    }
    case GateKind::ORACLE: {
      if (context == nullptr || op.oracle_id < 0 ||
          op.oracle_id >= static_cast<int>(context->oracles.size())) {
        throw ShapeError("ORACLE gate without a resolvable oracle id");
      }
      const auto& spec = context->oracles[op.oracle_id];
      if (const auto* perm = std::get_if<PermutationOracle>(&spec)) {
        std::vector<cplx> next(n, cplx{0.0, 0.0});
        for (std::uint64_t i = 0; i < n; ++i) {
          const std::uint64_t j = perm->map(i);
          if (j >= n) throw ShapeError("oracle maps outside the register");
          next[j] = amps_[i];
        }
        amps_ = std::move(next);
      } else {
        const auto& diag = std::get<DiagonalOracle>(spec);
        for (std::uint64_t i = 0; i < n; ++i) amps_[i] *= diag.factor(i);
      }
      break;
    }
  }
}

void StateVector::apply_circuit(const Circuit& circuit) {
  if (circuit.num_qubits != num_qubits_) {
    throw ShapeError("circuit has " + std::to_string(circuit.num_qubits) +
                     " qubits, state has " + std::to_string(num_qubits_));
  }
  for (const auto& op : circuit.ops) apply_gate(op, &circuit);
}

double StateVector::marginal_prob_one(int qubit) const {
  if (qubit < 0 || qubit >= num_qubits_) {
    throw IndexError("qubit " + std::to_string(qubit) + " out of range");
  }
  const std::uint64_t bit = std::uint64_t{1} << qubit;
  double p = 0.0;
  for (std::uint64_t i = 0; i < amps_.size(); ++i) {
    if (i & bit) p += std::norm(amps_[i]);
  }
  return std::clamp(p, 0.0, 1.0);
}

std::vector<double> StateVector::probabilities() const {
  std::vector<double> p(amps_.size());
  for (std::uint64_t i = 0; i < amps_.size(); ++i) p[i] = std::norm(amps_[i]);
  return p;
}

std::map<std::uint64_t, std::uint64_t> StateVector::sample_counts(
    std::uint64_t shots, std::uint64_t seed) const {
  if (shots == 0) throw DomainError("shots must be >= 1");
  std::vector<double> cdf(amps_.size());
  double acc = 0.0;
  for (std::uint64_t i = 0; i < amps_.size(); ++i) {
    acc += std::norm(amps_[i]);
    cdf[i] = acc;
  }
  std::mt19937_64 rng(seed);
  std::map<std::uint64_t, std::uint64_t> counts;
  for (std::uint64_t s = 0; s < shots; ++s) {
    // 53-bit uniform in [0,1); avoids distribution classes so the stream
    // is identical across standard library implementations.
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53 * acc;
    const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    std::uint64_t outcome = static_cast<std::uint64_t>(it - cdf.begin());
    if (outcome >= amps_.size()) outcome = amps_.size() - 1;
    ++counts[outcome];
  }
  return counts;
}

CircuitMetrics circuit_metrics(const Circuit& circuit) {
  CircuitMetrics m;
  m.gate_count = static_cast<std::int64_t>(circuit.ops.size());
  std::vector<std::int64_t> busy_until(circuit.num_qubits, 0);
  std::int64_t depth = 0;
  for (const auto& op : circuit.ops) {
    std::int64_t layer = 0;
    auto touch = [&](int q) { layer = std::max(layer, busy_until[q]); };
    for (int q : op.targets) touch(q);
    for (int q : op.controls) touch(q);
    ++layer;
    for (int q : op.targets) busy_until[q] = layer;
    for (int q : op.controls) busy_until[q] = layer;
    depth = std::max(depth, layer);
  }
  m.depth = depth;
  return m;
}

}  // namespace qmix
