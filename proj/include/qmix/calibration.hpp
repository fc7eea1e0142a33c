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

#include <functional>
#include <string>
#include <vector>

namespace qmix {

/// Quantized r = arcsin(sqrt(x)) lookup. Entry j corresponds to the input
/// grid point x_j = j / (2^resolution_bits - 1).
struct CalibrationTable {
  int resolution_bits = 0;
  std::vector<double> entries;  // monotone, entries[0] = 0, last = pi/2

  /// Nearest-entry lookup for x in [0,1]; exact-half ties go to the lower
  /// index.
  double lookup(double x) const;
};

struct AngleScale {
  double m_scale = 0.0;
  double max_deviation = 0.0;  // flatness objective at m_scale
};

/// r = arcsin(sqrt(x)), the exact pre-rotation transform.
double digital_calibration_angle(double x);

/// resolution_bits in [4, 16].
CalibrationTable build_calibration_table(int resolution_bits);

/// Recover x by running RY(2r) on |0> and reading P(|1>) from the
/// statevector, r taken from the table.
double calibrated_pipeline(double x, const CalibrationTable& table);

/// Pre-calibration reference: affine angle map r(x) = pi/4 + slope*(x - 1/2),
/// output sin^2(r(x)).
double uncalibrated_small_angle_map(double x, double slope);

/// max over the grid of |y(x) - x| / max(x, 1e-6) * 100.
double max_relative_error(const std::function<double(double)>& mapping,
                          const std::vector<double>& x_grid);

/// Standard 1024-point evaluation grid on [1/32, 1]. Points below the
/// coarsest table resolution make relative error meaningless, so the grid
/// stays clear of zero.
std::vector<double> standard_error_grid();

/// f(theta) = sqrt(pi/4 + m*theta) / sin(pi/4 + theta).
double f_theta(double theta, double m_scale);

/// Minimize max over a theta grid of |f(theta, m)/sqrt(pi/2) - 1|.
AngleScale optimal_scale_search(double theta_lo, double theta_hi,
                                double tolerance = 1e-4);

enum class RobustnessScheme {
  kNarrowInterval,  // angles {0.785, 0.786, 0.787, 0.788}
  kWideInterval     // angles {0.1, 0.2, 0.3, 0.4}
};

/// Worst-case misdecoding probability of a 4-symbol angle encoding under a
/// deterministic shift of +-delta with nearest-angle decoding. Returns 0 or 1.
double perturbation_robustness(RobustnessScheme scheme, double delta);

/// CSV export: index,x,r_radians.
std::string calibration_table_to_csv(const CalibrationTable& table);

}  // namespace qmix
