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

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "qmix/amplitude_estimation.hpp"
#include "qmix/calibration.hpp"
#include "qmix/distribution.hpp"
#include "qmix/errors.hpp"
#include "qmix/pricing.hpp"
#include "qmix/walk.hpp"

namespace {

using nlohmann::json;

constexpr const char* kVersion = "0.1.0";

constexpr int kExitOk = 0;
constexpr int kExitParse = 2;
constexpr int kExitCapacity = 3;
constexpr int kExitDomain = 4;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw qmix::ParseError("cannot open input file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

json load_config(const std::string& path) {
  try {
    return json::parse(read_file(path));
  } catch (const json::exception& e) {
    throw qmix::ParseError("config " + path + ": " + e.what());
  }
}

/// Every output opens with the exact invoking configuration so a run can
/// be reproduced from the file alone.
std::string provenance(const std::string& command, const json& config,
                       std::uint64_t seed) {
  std::ostringstream out;
  out << "# qmix " << kVersion << "\n";
  out << "# command: " << command << "\n";
  out << "# config: " << config.dump() << "\n";
  out << "# seed: " << seed << "\n";
  return out.str();
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream out(path);
  if (!out) throw qmix::ParseError("cannot open output file: " + path);
  out << content;
}

qmix::PricingProblem pricing_problem_from(const json& config) {
  qmix::PricingProblem problem;
  problem.mu = config.value("mu", problem.mu);
  problem.sigma = config.value("sigma", problem.sigma);
  problem.levels = config.value("levels", problem.levels);
  problem.input_bits = config.value("input_bits", problem.input_bits);
  problem.slope = config.value("slope", problem.slope);
  problem.offset = config.value("offset", problem.offset);
  problem.calib_bits = config.value("calib_bits", problem.calib_bits);
  problem.slope_angle = config.value("slope_angle", problem.slope_angle);
  return problem;
}

qmix::WalkModel walk_model_from(const json& config, double& lambda) {
  qmix::WalkModel model;
  model.days = config.value("days", 1);
  model.step_bits = config.value("step_bits", 1);
  model.drift_per_day = config.value("drift", 0.0);
  model.initial_price = config.value("S0", 1.0);
  const double s_min = config.value("step_min", -0.01);
  const double delta = config.value("step_delta", 0.02);
  const int branches = 1 << model.step_bits;
  for (int r = 0; r < branches; ++r) {
    model.step_values.push_back(s_min + delta * r);
    model.step_probabilities.push_back(1.0 / branches);
  }
  lambda = 0.0;  // auto
  if (config.contains("lambda") && !config["lambda"].is_string()) {
    lambda = config["lambda"].get<double>();
  }
  return model;
}

json pipeline_json(const qmix::PipelineResult& r) {
  json out;
  out["pipeline"] = r.name;
  out["estimate"] = r.estimate;
  out["exact"] = r.exact;
  out["relative_error_pct"] = r.relative_error_pct;
  out["max_error_pct"] = r.max_error_pct;
  out["gate_count"] = r.gate_count;
  out["depth"] = r.depth;
  if (!r.cost_model.empty()) out["cost_model"] = r.cost_model;
  return out;
}

int run_encode_dist(const json& config, const std::string& out_path,
                    std::uint64_t seed) {
  const auto dist = qmix::discretize_lognormal(config.value("mu", 0.0),
                                               config.value("sigma", 0.1),
                                               config.value("levels", 32));
  std::string body = provenance("encode-dist", config, seed);
  body += qmix::distribution_to_csv(dist);
  write_output(out_path, body);

  if (config.contains("input_bits")) {
    const auto lut = qmix::build_level_lut(dist, config["input_bits"]);
    const auto cost = qmix::lut_synthesis_cost(lut);
    std::string lut_body = provenance("encode-dist", config, seed);
    lut_body += qmix::lut_to_text(lut);
    const std::string lut_path =
        out_path.empty() ? "" : out_path + ".lut";
    write_output(lut_path, lut_body);
    std::cout << "lut gate_count=" << cost.gate_count
              << " depth=" << cost.depth << " model=" << cost.model_name
              << "\n";
  }
  return kExitOk;
}

int run_calibrate(int bits, const std::string& out_path, std::uint64_t seed) {
  const auto table = qmix::build_calibration_table(bits);
  json config;
  config["bits"] = bits;
  std::string body = provenance("calibrate", config, seed);
  body += qmix::calibration_table_to_csv(table);
  write_output(out_path, body);
  return kExitOk;
}

int run_price(const std::string& command, const json& config,
              const std::string& out_path, std::uint64_t seed) {
  const auto problem = pricing_problem_from(config);
  const auto report = qmix::compare_pipelines(problem);

  json out;
  out["command"] = command;
  out["version"] = kVersion;
  out["config"] = config;
  out["seed"] = seed;
  if (command == "price-baseline") {
    out["result"] = pipeline_json(report.baseline);
    out["result"]["state_prep_gates"] = report.baseline_state_prep_gates;
  } else {
    out["result"] = pipeline_json(report.proposed);
    out["result"]["lut_gate_count"] = report.lut_cost.gate_count;
    out["result"]["lut_depth"] = report.lut_cost.depth;
    out["result"]["lut_cost_model"] = report.lut_cost.model_name;
  }
  write_output(out_path, out.dump(2) + "\n");
  return kExitOk;
}

int run_compare(const json& config, const std::string& out_path,
                std::uint64_t seed) {
  const auto problem = pricing_problem_from(config);
  const auto report = qmix::compare_pipelines(problem);
  std::string body = provenance("compare", config, seed);
  body += qmix::report_to_csv(report);
  write_output(out_path, body);
  if (!out_path.empty()) std::cout << qmix::report_to_table(report);
  return kExitOk;
}

int run_walk_sim(const json& config, const std::string& out_path,
                 std::uint64_t seed, std::uint64_t shots) {
  double lambda = 0.0;
  const auto model = walk_model_from(config, lambda);
  qmix::PriceDistribution dist;
  if (shots > 0) {
    dist = qmix::classical_monte_carlo(model, shots, seed);
  } else {
    qmix::AccumulatorEncoding enc;
    enc.lambda = lambda;
    dist = qmix::quantum_price_distribution(model, enc);
  }
  std::string body = provenance("walk-sim", config, seed);
  body += qmix::price_distribution_to_csv(dist);
  write_output(out_path, body);
  return kExitOk;
}

int run_qae_estimate(double amplitude, int m_eval, std::uint64_t shots,
                     std::uint64_t seed, const std::string& out_path) {
  if (amplitude < 0.0 || amplitude > 1.0) {
    throw qmix::DomainError("amplitude must lie in [0, 1]");
  }
  qmix::Circuit prep(1);
  prep.ry(0, 2.0 * std::asin(std::sqrt(amplitude)));
  qmix::AmplitudeProblem problem{prep, 0};
  qmix::QaeConfig config;
  config.eval_qubits = m_eval;
  if (shots > 0) {
    config.shots = shots;
    config.seed = seed;
  }
  const auto result = qmix::canonical_qae(problem, config);

  json echo;
  echo["amplitude"] = amplitude;
  echo["m_eval"] = m_eval;
  if (shots > 0) echo["shots"] = shots;
  std::string body = provenance("qae-estimate", echo, seed);
  body += qmix::estimate_to_csv(result, m_eval);
  write_output(out_path, body);
  std::cout << "estimate=" << result.amplitude_estimate
            << " grid_index=" << result.grid_index << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mixed-signal option pricing circuit toolkit"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  std::string config_path;
  std::string out_path;
  std::uint64_t seed = 0;
  int bits = 12;
  std::uint64_t shots = 0;
  int m_eval = 5;
  double amplitude = 0.5;

  auto* encode = app.add_subcommand(
      "encode-dist", "discretize a lognormal and build its level LUT");
  encode->add_option("--config", config_path)->required();
  encode->add_option("--out", out_path);
  encode->add_option("--seed", seed);

  auto* calibrate =
      app.add_subcommand("calibrate", "export an arcsin calibration table");
  calibrate->add_option("--bits", bits);
  calibrate->add_option("--out", out_path);
  calibrate->add_option("--seed", seed);

  auto* baseline = app.add_subcommand(
      "price-baseline", "price with the exponential-loader baseline");
  baseline->add_option("--config", config_path)->required();
  baseline->add_option("--out", out_path);
  baseline->add_option("--seed", seed);

  auto* proposed = app.add_subcommand(
      "price-proposed", "price with the LUT + calibrated-rotation pipeline");
  proposed->add_option("--config", config_path)->required();
  proposed->add_option("--out", out_path);
  proposed->add_option("--seed", seed);

  auto* compare =
      app.add_subcommand("compare", "run both pipelines and tabulate");
  compare->add_option("--config", config_path)->required();
  compare->add_option("--out", out_path);
  compare->add_option("--seed", seed);

  auto* walk = app.add_subcommand(
      "walk-sim", "simulate the accumulator random walk");
  walk->add_option("--config", config_path)->required();
  walk->add_option("--out", out_path);
  walk->add_option("--seed", seed);
  walk->add_option("--shots", shots);

  auto* qae = app.add_subcommand(
      "qae-estimate", "canonical amplitude estimation on one amplitude");
  qae->add_option("--amplitude", amplitude)->required();
  qae->add_option("--m-eval", m_eval);
  qae->add_option("--shots", shots);
  qae->add_option("--seed", seed);
  qae->add_option("--out", out_path);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitParse;
  }

  try {
    if (encode->parsed()) {
      return run_encode_dist(load_config(config_path), out_path, seed);
    }
    if (calibrate->parsed()) return run_calibrate(bits, out_path, seed);
    if (baseline->parsed()) {
      return run_price("price-baseline", load_config(config_path), out_path,
                       seed);
    }
    if (proposed->parsed()) {
      return run_price("price-proposed", load_config(config_path), out_path,
                       seed);
    }
    if (compare->parsed()) {
      return run_compare(load_config(config_path), out_path, seed);
    }
    if (walk->parsed()) {
      return run_walk_sim(load_config(config_path), out_path, seed, shots);
    }
    if (qae->parsed()) {
      return run_qae_estimate(amplitude, m_eval, shots, seed, out_path);
    }
  } catch (const qmix::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const qmix::CapacityError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCapacity;
  } catch (const qmix::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDomain;
  }
  return kExitOk;
}
