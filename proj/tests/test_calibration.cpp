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

#include "qmix/calibration.hpp"
#include "qmix/errors.hpp"

using namespace qmix;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("arcsin-sqrt calibration angle") {
  CHECK(digital_calibration_angle(0.0) == 0.0);
  CHECK(digital_calibration_angle(1.0) == doctest::Approx(kPi / 2).epsilon(1e-15));
  CHECK(digital_calibration_angle(0.5) == doctest::Approx(kPi / 4).epsilon(1e-15));
  CHECK_THROWS_AS(digital_calibration_angle(-0.1), DomainError);
  CHECK_THROWS_AS(digital_calibration_angle(1.1), DomainError);
}

TEST_CASE("round-trip identity on a 4096-point grid") {
  for (int j = 0; j <= 4096; ++j) {
    const double x = static_cast<double>(j) / 4096.0;
    const double r = digital_calibration_angle(x);
    const double y = std::sin(r) * std::sin(r);
    CHECK(std::abs(y - x) < 1e-13);
  }
}

TEST_CASE("calibration table construction") {
  const auto table = build_calibration_table(4);
  CHECK(table.entries.size() == 16);
  CHECK(table.entries.front() == 0.0);
  CHECK(table.entries.back() == doctest::Approx(kPi / 2).epsilon(1e-15));
  for (std::size_t j = 1; j < table.entries.size(); ++j) {
    CHECK(table.entries[j] >= table.entries[j - 1]);
  }
  CHECK_THROWS_AS(build_calibration_table(3), CapacityError);
  CHECK_THROWS_AS(build_calibration_table(17), CapacityError);
}

TEST_CASE("table quantization bound at 10 bits") {
  const auto table = build_calibration_table(10);
  // offset grid so points fall between the knots
  for (int j = 0; j < 1024; ++j) {
    const double x = (j + 0.5) / 1024.0;
    const double r = table.lookup(x);
    CHECK(std::abs(std::sin(r) * std::sin(r) - x) <= 2.0 / 1024.0);
  }
}

TEST_CASE("calibrated statevector pipeline") {
  const auto table = build_calibration_table(12);
  CHECK(calibrated_pipeline(0.0, table) < 1e-12);
  CHECK(std::abs(calibrated_pipeline(0.5, table) - 0.5) < 0.01);
  const double q = 1.0 / 4096.0;
  CHECK(std::abs(calibrated_pipeline(0.3, table) - 0.3) <= 2.0 * q);

  // brute-force sweep: quantization bound holds everywhere
  for (int j = 0; j <= 500; ++j) {
    const double x = j / 500.0;
    CHECK(std::abs(calibrated_pipeline(x, table) - x) <= 2.0 * q);
  }

  // monotone up to quantization ties
  double prev = -1.0;
  for (int j = 0; j <= 200; ++j) {
    const double y = calibrated_pipeline(j / 200.0, table);
    CHECK(y >= prev - 1e-12);
    prev = y;
  }
}

TEST_CASE("uncalibrated affine map") {
  CHECK(uncalibrated_small_angle_map(0.5, 1.0) == doctest::Approx(0.5).epsilon(1e-12));
  const double y = uncalibrated_small_angle_map(1.0, 1.0);
  CHECK(y == doctest::Approx(std::pow(std::sin(kPi / 4 + 0.5), 2)).epsilon(1e-12));
  CHECK(y == doctest::Approx(0.920735).epsilon(1e-4));
  for (int j = 0; j <= 10; ++j) {
    CHECK(uncalibrated_small_angle_map(j / 10.0, 0.0) ==
          doctest::Approx(0.5).epsilon(1e-12));
  }
}

TEST_CASE("max relative error") {
  const auto grid = standard_error_grid();
  CHECK(grid.size() == 1024);
  CHECK(max_relative_error([](double x) { return x; }, grid) == 0.0);
  CHECK_THROWS_AS(max_relative_error([](double x) { return x; }, {}),
                  DomainError);

  // calibrated 12-bit pipeline stays under the design target
  const auto table = build_calibration_table(12);
  const double calibrated = max_relative_error(
      [&table](double x) { return calibrated_pipeline(x, table); }, grid);
  CHECK(calibrated <= 1.64);

  // uncalibrated map stretched over [0, pi/2]
  const double uncalibrated = max_relative_error(
      [](double x) { return uncalibrated_small_angle_map(x, kPi / 2); }, grid);
  CHECK(uncalibrated >= 20.0);
}

TEST_CASE("error dominance for every resolution >= 8 bits") {
  const auto grid = standard_error_grid();
  const double uncalibrated = max_relative_error(
      [](double x) { return uncalibrated_small_angle_map(x, kPi / 2); }, grid);
  for (int bits = 8; bits <= 16; ++bits) {
    const auto table = build_calibration_table(bits);
    const double calibrated = max_relative_error(
        [&table](double x) { return calibrated_pipeline(x, table); }, grid);
    CHECK(calibrated * 5.0 < uncalibrated);
  }
}

TEST_CASE("f_theta evaluation") {
  CHECK(f_theta(0.0, 1.0) == doctest::Approx(std::sqrt(kPi / 2)).epsilon(1e-12));
  CHECK(f_theta(0.0, 99.0) == doctest::Approx(std::sqrt(kPi / 2)).epsilon(1e-12));
  CHECK(f_theta(0.2, kPi / 2) == doctest::Approx(1.2580).epsilon(1e-4));
  CHECK(f_theta(0.2, 2.0) == doctest::Approx(1.306).epsilon(1e-3));
  CHECK_THROWS_AS(f_theta(-1.0, 2.0), DomainError);   // pi/4 + m*theta < 0
  CHECK_THROWS_AS(f_theta(-kPi, 0.1), DomainError);   // sin <= 0
}

TEST_CASE("optimal scale search") {
  const auto best = optimal_scale_search(-0.2, 0.2);
  CHECK(best.m_scale >= 1.52);
  CHECK(best.m_scale <= 1.62);

  // flatness: < 1% at m = pi/2, > 3% at the heuristic m = 2
  const double target = std::sqrt(kPi / 2);
  double dev_pi2 = 0.0, dev_2 = 0.0;
  for (int i = 0; i <= 2000; ++i) {
    const double t = -0.2 + 0.4 * i / 2000.0;
    dev_pi2 = std::max(dev_pi2, std::abs(f_theta(t, kPi / 2) / target - 1.0));
    dev_2 = std::max(dev_2, std::abs(f_theta(t, 2.0) / target - 1.0));
  }
  CHECK(dev_pi2 < 0.01);
  CHECK(dev_2 > 0.03);
  CHECK(best.max_deviation * 3.0 < dev_2);

  // wider interval still prefers m* over the heuristic
  const auto wide = optimal_scale_search(-0.3, 0.3);
  double dev_2_wide = 0.0;
  for (int i = 0; i <= 2000; ++i) {
    const double t = -0.3 + 0.6 * i / 2000.0;
    dev_2_wide = std::max(dev_2_wide, std::abs(f_theta(t, 2.0) / target - 1.0));
  }
  CHECK(wide.max_deviation < dev_2_wide);

  // degenerate interval: any m works, deviation ~ 0
  const auto tiny = optimal_scale_search(-1e-9, 1e-9);
  CHECK(tiny.max_deviation < 1e-6);

  CHECK_THROWS_AS(optimal_scale_search(0.2, -0.2), DomainError);
}

TEST_CASE("search output stable under grid density") {
  // the built-in grid has 2001 points; a denser independent grid agrees
  const auto best = optimal_scale_search(-0.2, 0.2);
  const double target = std::sqrt(kPi / 2);
  auto dev_at = [&](double m, int points) {
    double worst = 0.0;
    for (int i = 0; i <= points; ++i) {
      const double t = -0.2 + 0.4 * i / points;
      worst = std::max(worst, std::abs(f_theta(t, m) / target - 1.0));
    }
    return worst;
  };
  double best_dense_m = 0.0, best_dense = 1e9;
  for (int i = 0; i <= 4000; ++i) {
    const double m = 1.0 + i / 4000.0;  // [1, 2]
    const double d = dev_at(m, 5000);
    if (d < best_dense) {
      best_dense = d;
      best_dense_m = m;
    }
  }
  CHECK(std::abs(best.m_scale - best_dense_m) <= 0.01);
}

TEST_CASE("perturbation robustness") {
  CHECK(perturbation_robustness(RobustnessScheme::kNarrowInterval, 0.0) == 0.0);
  CHECK(perturbation_robustness(RobustnessScheme::kWideInterval, 0.0) == 0.0);
  CHECK(perturbation_robustness(RobustnessScheme::kWideInterval, 0.05) == 0.0);
  CHECK(perturbation_robustness(RobustnessScheme::kNarrowInterval, 0.05) == 1.0);
  CHECK_THROWS_AS(perturbation_robustness(RobustnessScheme::kWideInterval, -1.0),
                  DomainError);
}

TEST_CASE("table CSV export") {
  const auto table = build_calibration_table(4);
  const std::string csv = calibration_table_to_csv(table);
  CHECK(csv.find("index,x,r_radians") == 0);
  CHECK(csv.find("\n0,0,0\n") != std::string::npos);
}
