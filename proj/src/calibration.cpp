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

#include "qmix/calibration.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "qmix/errors.hpp"
#include "qmix/statevector.hpp"

namespace qmix {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kRelErrFloor = 1e-6;
}  // namespace

double CalibrationTable::lookup(double x) const {
  if (x < 0.0 || x > 1.0) throw DomainError("calibration input outside [0,1]");
  const double last = static_cast<double>(entries.size()) - 1.0;
  const double t = x * last;
  std::size_t idx = static_cast<std::size_t>(std::floor(t));
  if (idx + 1 < entries.size() && t - static_cast<double>(idx) > 0.5) ++idx;
  return entries[idx];
}

double digital_calibration_angle(double x) {
  if (!(x >= 0.0 && x <= 1.0)) throw DomainError("x outside [0,1]");
  return std::asin(std::sqrt(x));
}

CalibrationTable build_calibration_table(int resolution_bits) {
  if (resolution_bits < 4 || resolution_bits > 16) {
    throw CapacityError("resolution_bits outside [4, 16]");
  }
  CalibrationTable table;
  table.resolution_bits = resolution_bits;
  const std::size_t size = std::size_t{1} << resolution_bits;
  table.entries.resize(size);
  for (std::size_t j = 0; j < size; ++j) {
    table.entries[j] = std::asin(
        std::sqrt(static_cast<double>(j) / static_cast<double>(size - 1)));
  }
  table.entries.back() = kPi / 2.0;
  return table;
}

double calibrated_pipeline(double x, const CalibrationTable& table) {
  const double r = table.lookup(x);
  StateVector state = new_state(1);
  state.apply_gate({GateKind::RY, {0}, {}, 2.0 * r});
  return state.marginal_prob_one(0);
}

double uncalibrated_small_angle_map(double x, double slope) {
  const double r = kPi / 4.0 + slope * (x - 0.5);
  const double s = std::sin(r);
  return s * s;
}

double max_relative_error(const std::function<double(double)>& mapping,
                          const std::vector<double>& x_grid) {
  if (x_grid.empty()) throw DomainError("empty evaluation grid");
  double worst = 0.0;
  for (double x : x_grid) {
    const double y = mapping(x);
    worst = std::max(worst, std::abs(y - x) / std::max(x, kRelErrFloor));
  }
  return worst * 100.0;
}

std::vector<double> standard_error_grid() {
  std::vector<double> grid(1024);
  const double lo = 1.0 / 32.0;
  for (std::size_t j = 0; j < grid.size(); ++j) {
    grid[j] = lo + (1.0 - lo) * static_cast<double>(j) / 1023.0;
  }
  return grid;
}

double f_theta(double theta, double m_scale) {
  const double num = kPi / 4.0 + m_scale * theta;
  if (num < 0.0) throw DomainError("pi/4 + m*theta must be >= 0");
  const double den = std::sin(kPi / 4.0 + theta);
  if (!(den > 0.0)) throw DomainError("sin(pi/4 + theta) must be > 0");
  return std::sqrt(num) / den;
}

AngleScale optimal_scale_search(double theta_lo, double theta_hi,
                                double tolerance) {
  if (!(theta_lo < theta_hi)) throw DomainError("empty theta interval");
  const double target = std::sqrt(kPi / 2.0);

  constexpr int kGridPoints = 2001;
  std::vector<double> thetas(kGridPoints);
  for (int i = 0; i < kGridPoints; ++i) {
    thetas[i] = theta_lo + (theta_hi - theta_lo) * i / (kGridPoints - 1);
  }
  auto deviation = [&](double m) {
    double worst = 0.0;
    for (double t : thetas) {
      worst = std::max(worst, std::abs(f_theta(t, m) / target - 1.0));
    }
    return worst;
  };

  // Coarse scan then local refinement; the objective is cheap and this
  // avoids any unimodality assumption.
  double best_m = 1.0, best = deviation(1.0);
  double lo = 0.1, hi = 4.0;
  for (int pass = 0; pass < 6; ++pass) {
    const int steps = 200;
    for (int i = 0; i <= steps; ++i) {
      const double m = lo + (hi - lo) * i / steps;
      if (kPi / 4.0 + m * theta_lo < 0.0 || kPi / 4.0 + m * theta_hi < 0.0) {
        continue;
      }
      const double d = deviation(m);
      if (d < best) {
        best = d;
        best_m = m;
      }
    }
    const double span = (hi - lo) / steps * 2.0;
    lo = best_m - span;
    hi = best_m + span;
    if (span < tolerance) break;
  }
  return AngleScale{best_m, best};
}

double perturbation_robustness(RobustnessScheme scheme, double delta) {
  if (delta < 0.0) throw DomainError("delta must be >= 0");
  const std::vector<double> angles =
      scheme == RobustnessScheme::kNarrowInterval
          ? std::vector<double>{0.785, 0.786, 0.787, 0.788}
          : std::vector<double>{0.1, 0.2, 0.3, 0.4};
  for (std::size_t i = 0; i < angles.size(); ++i) {
    for (double shift : {-delta, delta}) {
      const double observed = angles[i] + shift;
      const double d_true = std::abs(observed - angles[i]);
      for (std::size_t j = 0; j < angles.size(); ++j) {
        // strict < keeps exact midpoints decoding to the true symbol
        if (j != i && std::abs(observed - angles[j]) < d_true - 1e-15) {
          return 1.0;
        }
      }
    }
  }
  return 0.0;
}

std::string calibration_table_to_csv(const CalibrationTable& table) {
  std::ostringstream out;
  out.precision(15);
  out << "index,x,r_radians\n";
  const double last = static_cast<double>(table.entries.size()) - 1.0;
  for (std::size_t j = 0; j < table.entries.size(); ++j) {
    out << j << ',' << static_cast<double>(j) / last << ','
        << table.entries[j] << '\n';
  }
  return out.str();
}

}  // namespace qmix
