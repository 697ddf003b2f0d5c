// Copyright 2026 The graffmap Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "graffmap/error.hpp"
#include "graffmap/pipeline/commands.hpp"
#include "graffmap/pipeline/config.hpp"
#include "graffmap/synth/field.hpp"
#include "graffmap/util/files.hpp"

namespace {

namespace fs = std::filesystem;
using graffmap::Error;
using graffmap::ErrorCode;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitConfig = 2;
constexpr int kExitStage = 3;

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::kConfigInvalid: return kExitConfig;
    case ErrorCode::kStageOrderViolation:
    case ErrorCode::kStaleStage: return kExitStage;
    default: return kExitFailure;
  }
}

void report(const graffmap::pipeline::CommandResult& r) {
  fmt::print(stderr, "{}: {}{}\n", r.command, r.ran ? "" : "skipped, ", r.summary);
}

void emit(const std::optional<fs::path>& output, const std::string& text) {
  if (output) {
    graffmap::util::write_file_atomic(*output, text);
  } else {
    std::fwrite(text.data(), 1, text.size(), stdout);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Street-level graffiti mapping pipeline"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "graffmap 0.1.0");

  std::string config_path = "graffmap.json";
  std::optional<std::string> output_dir;
  bool force = false;
  std::optional<std::string> detections;

  auto add_stage = [&](const std::string& name, const std::string& help) {
    auto* cmd = app.add_subcommand(name, help);
    cmd->add_option("-c,--config", config_path, "Pipeline config file")->capture_default_str();
    cmd->add_option("-o,--output-dir", output_dir, "Override the config's output_dir");
    cmd->add_flag("-f,--force", force, "Rerun even if up to date; clears later stages");
    return cmd;
  };
  auto* sample = add_stage("sample", "Draw sample locations over the region");
  auto* fetch = add_stage("fetch", "Fetch street-level views for every location");
  auto* detect = add_stage("detect", "Ingest and link a detection file");
  detect->add_option("-d,--detections", detections, "Detection wire-format file");
  auto* score = add_stage("score", "Score each location");
  auto* aggregate = add_stage("aggregate", "Aggregate scores per district");
  auto* render = add_stage("render", "Draw the district choropleth as SVG");
  auto* run = add_stage("run", "Run every stage in order, then render");
  run->add_option("-d,--detections", detections, "Detection wire-format file");

  std::string eval_dets, eval_anns;
  double iou = graffmap::detection::kDefaultIouThreshold;
  std::optional<std::string> eval_out;
  auto* evaluate = app.add_subcommand("evaluate", "Average precision of detections against annotations");
  evaluate->add_option("-d,--detections", eval_dets, "Detection wire-format file")->required();
  evaluate->add_option("-a,--annotations", eval_anns, "Annotation wire-format file")->required();
  evaluate->add_option("--iou", iou, "IoU threshold for a match")->capture_default_str();
  evaluate->add_option("--output", eval_out, "Write the report here instead of stdout");

  std::string field_path;
  std::size_t sim_n = 100, sim_trials = 1000;
  std::uint64_t first_seed = 1;
  graffmap::synth::SimulatedDetector detector;
  double quadrature = 5.0;
  std::optional<std::string> sim_out;
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo region-mean estimates on a synthetic field");
  simulate->add_option("--field", field_path, "Synthetic field definition")->required();
  simulate->add_option("-n", sim_n, "Locations per estimate")->capture_default_str();
  simulate->add_option("--trials", sim_trials, "Number of seeds")->capture_default_str();
  simulate->add_option("--first-seed", first_seed, "First sampling seed")->capture_default_str();
  simulate->add_option("--noise-sd", detector.noise_sd, "Detector noise")->capture_default_str();
  simulate->add_option("--false-positive-rate", detector.false_positive_rate,
                       "Spurious-detection probability")->capture_default_str();
  simulate->add_option("--detector-seed", detector.seed, "Detector seed")->capture_default_str();
  simulate->add_option("--quadrature-m", quadrature, "Spacing for the reference mean")->capture_default_str();
  simulate->add_option("--output", sim_out, "Write the CSV here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (evaluate->parsed()) {
      emit(eval_out ? std::optional<fs::path>(*eval_out) : std::nullopt,
           graffmap::pipeline::cmd_evaluate(eval_dets, eval_anns, iou));
      return kExitOk;
    }
    if (simulate->parsed()) {
      const auto field = graffmap::synth::parse_field_json(graffmap::util::read_file(field_path));
      const double truth = graffmap::synth::true_region_mean(field, quadrature);
      const auto rows = graffmap::synth::simulate_random_estimates(field, detector, sim_n, first_seed, sim_trials);
      double mean = 0.0;
      for (const auto& r : rows) mean += r.estimate / static_cast<double>(rows.size());
      fmt::print(stderr, "simulate: {} estimates at n={}; mean {:.6f}, reference {:.6f}\n",
                 rows.size(), sim_n, mean, truth);
      emit(sim_out ? std::optional<fs::path>(*sim_out) : std::nullopt,
           graffmap::synth::simulation_to_csv(rows));
      return kExitOk;
    }

    auto config = graffmap::pipeline::load_config(config_path);
    if (output_dir) config.output_dir = fs::absolute(*output_dir);
    graffmap::pipeline::RunOptions options;
    options.force = force;
    if (detections) options.detections = fs::absolute(*detections);

    using namespace graffmap::pipeline;
    if (sample->parsed()) report(cmd_sample(config, options));
    if (fetch->parsed()) report(cmd_fetch(config, options));
    if (detect->parsed()) report(cmd_detect(config, options));
    if (score->parsed()) report(cmd_score(config, options));
    if (aggregate->parsed()) report(cmd_aggregate(config, options));
    if (render->parsed()) report(cmd_render(config, options));
    if (run->parsed()) {
      // Report each stage as it completes rather than after the whole run.
      report(cmd_sample(config, options));
      report(cmd_fetch(config, options));
      report(cmd_detect(config, options));
      report(cmd_score(config, options));
      report(cmd_aggregate(config, options));
      report(cmd_render(config, options));
    }
    return kExitOk;
  } catch (const Error& e) {
    fmt::print(stderr, "error [{}]: {}\n", graffmap::to_string(e.code()), e.what());
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return kExitFailure;
  }
}
