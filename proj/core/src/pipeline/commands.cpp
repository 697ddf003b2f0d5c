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

#include "graffmap/pipeline/commands.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <unordered_map>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "graffmap/acquisition/coverage.hpp"
#include "graffmap/acquisition/fetch.hpp"
#include "graffmap/acquisition/filter.hpp"
#include "graffmap/acquisition/records_io.hpp"
#include "graffmap/detection/wire_format.hpp"
#include "graffmap/error.hpp"
#include "graffmap/geo/io.hpp"
#include "graffmap/metrics/io.hpp"
#include "graffmap/pipeline/render.hpp"
#include "graffmap/util/files.hpp"
#include "graffmap/util/text.hpp"

namespace graffmap::pipeline {
namespace {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

std::string file_hash(const fs::path& p) { return util::sha256_file(p); }

ordered_json scheme_json(const geo::SamplingScheme& scheme) {
  if (const auto* s = std::get_if<geo::SystematicScheme>(&scheme)) {
    return {{"scheme", "systematic"}, {"spacing_m", s->spacing_m}};
  }
  const auto& r = std::get<geo::RandomScheme>(scheme);
  return {{"scheme", "random"}, {"n", r.n}, {"seed", r.seed}};
}

ordered_json provider_json(const PipelineConfig& c) {
  if (const auto* stub = std::get_if<StubProviderConfig>(&c.provider)) {
    return {{"type", "stub"}, {"manifest", file_hash(stub->directory / "manifest.json")}};
  }
  const auto& h = std::get<acquisition::HttpProviderConfig>(c.provider);
  return {{"type", "http"},
          {"url_template", h.url_template},
          {"metadata_url_template", h.metadata_url_template},
          {"width", h.width},
          {"height", h.height}};
}

ordered_json view_filter_json(const PipelineConfig& c) {
  ordered_json j = {{"exclude_third_party", c.exclude_third_party}, {"capture_years", nullptr}};
  if (c.capture_years) j["capture_years"] = {c.capture_years->first, c.capture_years->second};
  return j;
}

std::string fingerprint(const ordered_json& j) { return util::sha256_hex(j.dump()); }

std::string config_hash(const PipelineConfig& c) {
  ordered_json j = {{"region", file_hash(c.region_geojson)},
                    {"districts", file_hash(c.districts_geojson)},
                    {"sampling", scheme_json(c.sampling)},
                    {"headings", c.headings},
                    {"provider", provider_json(c)},
                    {"filter", view_filter_json(c)},
                    {"confidence_threshold", c.confidence_threshold},
                    {"rescale_partial", c.rescale_partial},
                    {"min_views", c.min_views},
                    {"n_classes", c.n_classes},
                    {"log_epsilon", c.log_epsilon},
                    {"indicator", c.indicator_csv ? file_hash(*c.indicator_csv) : ""}};
  return fingerprint(j);
}

// Stage bookkeeping shared by the commands.
class StageRun {
 public:
  // With `through`, `stage` itself must already be complete (read-only use).
  StageRun(const PipelineConfig& config, Stage stage, bool force, bool through = false)
      : config_(config), stage_(stage), force_(force), lock_(config.output_dir) {
    manifest_ = RunManifest::load(config.output_dir);
    for (Stage prior : kStages) {
      if (prior == stage && !through) break;
      const StageRecord* rec = manifest_.record(prior);
      if (!rec) {
        throw Error(ErrorCode::kStageOrderViolation,
                    fmt::format("stage '{}' has not completed; run `graffmap {}` first",
                                to_string(prior), command_name(prior)));
      }
      check_outputs(prior, *rec, ErrorCode::kStaleStage);
      if (prior == stage) break;
    }
  }

  const fs::path& out() const { return config_.output_dir; }
  fs::path out(std::string_view name) const { return config_.output_dir / name; }

  // Hash of a file written by an earlier stage, as recorded in the manifest.
  std::string upstream(Stage s, std::string_view name) const {
    return manifest_.record(s)->outputs.at(std::string(name));
  }

  // True when the stage must run. Throws kStaleStage if it completed with
  // other inputs and force is not set.
  bool begin(const std::string& inputs) {
    inputs_ = inputs;
    const StageRecord* rec = manifest_.record(stage_);
    if (rec && !force_) {
      if (rec->inputs != inputs) {
        throw Error(ErrorCode::kStaleStage,
                    fmt::format("inputs changed since stage '{}' completed; rerun with --force",
                                to_string(stage_)));
      }
      if (outputs_intact(*rec)) return false;
    }
    manifest_.clear_from(stage_);
    manifest_.config_hash = config_hash(config_);
    manifest_.save(out());
    return true;
  }

  void finish(const std::vector<std::string_view>& outputs) {
    StageRecord rec{inputs_, {}};
    for (auto name : outputs) rec.outputs.emplace(std::string(name), file_hash(out(name)));
    manifest_.mark(stage_, std::move(rec));
    manifest_.save(out());
  }

 private:
  bool outputs_intact(const StageRecord& rec) const {
    for (const auto& [name, sha] : rec.outputs) {
      std::error_code ec;
      if (!fs::is_regular_file(out(name), ec) || file_hash(out(name)) != sha) return false;
    }
    return true;
  }

  void check_outputs(Stage s, const StageRecord& rec, ErrorCode code) const {
    for (const auto& [name, sha] : rec.outputs) {
      std::error_code ec;
      if (!fs::is_regular_file(out(name), ec)) {
        throw Error(code, fmt::format("{} from stage '{}' is missing; rerun `graffmap {} --force`",
                                      name, to_string(s), command_name(s)));
      }
      if (file_hash(out(name)) != sha) {
        throw Error(code, fmt::format("{} changed after stage '{}' completed; rerun `graffmap {} --force`",
                                      name, to_string(s), command_name(s)));
      }
    }
  }

  const PipelineConfig& config_;
  Stage stage_;
  bool force_;
  OutputLock lock_;
  RunManifest manifest_;
  std::string inputs_;
};

// Runs fn, prefixing any graffmap error with the command name.
template <typename Fn>
CommandResult with_prefix(std::string_view command, Fn&& fn) {
  try {
    CommandResult r = fn();
    r.command = std::string(command);
    return r;
  } catch (const Error& e) {
    throw Error(e.code(), fmt::format("{}: {}", command, e.what()));
  }
}

void write(const fs::path& path, std::string_view contents) { util::write_file_atomic(path, contents); }

geo::RegionPolygon load_region(const PipelineConfig& c) {
  auto regions = geo::parse_regions_geojson(util::read_file(c.region_geojson));
  if (regions.size() != 1) {
    throw Error(ErrorCode::kConfigInvalid,
                fmt::format("region_geojson: expected exactly one polygon, found {}", regions.size()));
  }
  return std::move(regions.front());
}

std::vector<geo::RegionPolygon> load_districts(const PipelineConfig& c) {
  auto d = geo::parse_regions_geojson(util::read_file(c.districts_geojson));
  if (d.empty()) throw Error(ErrorCode::kConfigInvalid, "districts_geojson: no polygons");
  return d;
}

geo::SampleSet load_sample(const PipelineConfig& c, const fs::path& csv) {
  return {c.sampling, "", geo::parse_sample_csv(util::read_file(csv))};
}

std::unique_ptr<acquisition::ProviderClient> make_client(const PipelineConfig& c) {
  if (const auto* stub = std::get_if<StubProviderConfig>(&c.provider)) {
    return std::make_unique<acquisition::DirectoryProvider>(stub->directory);
  }
  return std::make_unique<acquisition::HttpProvider>(std::get<acquisition::HttpProviderConfig>(c.provider));
}

acquisition::MetadataPredicate usable_views(const PipelineConfig& c) {
  using acquisition::MetadataPredicate;
  auto p = MetadataPredicate::fetched();
  if (c.exclude_third_party) {
    p = std::move(p) && MetadataPredicate([](const acquisition::ViewRecord& r) {
          return r.provider != acquisition::Provider::kThirdParty;
        });
  }
  if (c.capture_years) {
    p = std::move(p) && MetadataPredicate::year_between(c.capture_years->first, c.capture_years->second);
  }
  return p;
}

// Links each detection set to fetched views, by view key first and content
// hash second. Returns the sets keyed by view index.
std::map<std::size_t, detection::DetectionSet> link_detections(
    const std::vector<acquisition::ViewRecord>& records, std::vector<detection::DetectionSet> sets) {
  std::unordered_map<std::string, std::size_t> by_key;
  std::unordered_multimap<std::string, std::size_t> by_hash;
  for (std::size_t i = 0; i < records.size(); ++i) {
    by_key.emplace(acquisition::view_key(records[i].spec), i);
    if (records[i].status == acquisition::ViewStatus::kFetched) by_hash.emplace(records[i].image_id, i);
  }
  std::map<std::size_t, detection::DetectionSet> linked;
  for (std::size_t s = 0; s < sets.size(); ++s) {
    auto& set = sets[s];
    std::vector<std::size_t> targets;
    if (const auto it = by_key.find(set.image_id); it != by_key.end()) {
      if (records[it->second].status != acquisition::ViewStatus::kFetched) {
        throw Error(ErrorCode::kSchemaViolation,
                    fmt::format("/images/{}/image_id: view '{}' was not fetched", s, set.image_id));
      }
      targets.push_back(it->second);
    } else {
      const auto [lo, hi] = by_hash.equal_range(set.image_id);
      for (auto it = lo; it != hi; ++it) targets.push_back(it->second);
      std::sort(targets.begin(), targets.end());
    }
    if (targets.empty()) {
      throw Error(ErrorCode::kSchemaViolation,
                  fmt::format("/images/{}/image_id: '{}' matches no fetched view", s, set.image_id));
    }
    for (std::size_t t : targets) {
      const auto& rec = records[t];
      if (rec.width != set.width || rec.height != set.height) {
        throw Error(ErrorCode::kDimensionMismatch,
                    fmt::format("/images/{}: detections are {}x{} but view {} is {}x{}", s, set.width,
                                set.height, acquisition::view_key(rec.spec), rec.width, rec.height));
      }
      detection::DetectionSet copy = set;
      copy.image_id = acquisition::view_key(rec.spec);
      if (!linked.emplace(t, std::move(copy)).second) {
        throw Error(ErrorCode::kSchemaViolation,
                    fmt::format("/images/{}: view {} already has detections", s,
                                acquisition::view_key(rec.spec)));
      }
    }
  }
  return linked;
}

}  // namespace

CommandResult cmd_sample(const PipelineConfig& config, const RunOptions& options) {
  return with_prefix("sample", [&] {
    StageRun run(config, Stage::kSampled, options.force);
    const ordered_json inputs = {{"region", file_hash(config.region_geojson)},
                                 {"sampling", scheme_json(config.sampling)}};
    if (!run.begin(fingerprint(inputs))) return CommandResult{{}, false, "up to date"};
    const auto region = load_region(config);
    const geo::SampleSet sample = std::visit(
        [&](const auto& s) {
          if constexpr (std::is_same_v<std::decay_t<decltype(s)>, geo::SystematicScheme>) {
            return geo::systematic_grid(region, s.spacing_m);
          } else {
            return geo::random_sample(region, s.n, s.seed);
          }
        },
        config.sampling);
    write(run.out(files::kSampleCsv), geo::sample_to_csv(sample));
    write(run.out(files::kSampleGeojson), geo::sample_to_geojson(sample));
    run.finish({files::kSampleCsv, files::kSampleGeojson});
    return CommandResult{{}, true, fmt::format("{} points in region '{}'", sample.points.size(), region.id())};
  });
}

CommandResult cmd_fetch(const PipelineConfig& config, const RunOptions& options) {
  return with_prefix("fetch", [&] {
    StageRun run(config, Stage::kFetched, options.force);
    const ordered_json inputs = {{"sample", run.upstream(Stage::kSampled, files::kSampleCsv)},
                                 {"headings", config.headings},
                                 {"provider", provider_json(config)}};
    if (!run.begin(fingerprint(inputs))) return CommandResult{{}, false, "up to date"};
    const auto sample = load_sample(config, run.out(files::kSampleCsv));
    const auto specs = acquisition::plan_views(sample, config.headings);
    std::unique_ptr<acquisition::ProviderClient> owned;
    acquisition::ProviderClient* client = options.client;
    if (!client) {
      owned = make_client(config);
      client = owned.get();
    }
    acquisition::FetchStats stats;
    const auto records = acquisition::fetch_views(specs, *client, run.out(files::kCacheDir),
                                                  config.max_in_flight, &stats);
    const auto report = acquisition::coverage_report(records, sample);
    write(run.out(files::kViews), acquisition::records_to_json(records));
    write(run.out(files::kCoverage), acquisition::coverage_to_json(report));
    write(run.out(files::kYearCensus), acquisition::year_census_csv(report));
    run.finish({files::kViews, files::kCoverage, files::kYearCensus});
    return CommandResult{{}, true,
                         fmt::format("{} views: {} fetched, {} failed; {} from cache, {} provider calls; "
                                     "{} of {} points mapped",
                                     records.size(), report.views_fetched, stats.failures,
                                     stats.cache_hits, stats.client_calls, report.mapped_points,
                                     report.total_points)};
  });
}

CommandResult cmd_detect(const PipelineConfig& config, const RunOptions& options) {
  return with_prefix("detect", [&] {
    const auto source = options.detections ? options.detections : config.detections;
    if (!source) {
      throw Error(ErrorCode::kConfigInvalid,
                  "detections: no detection file given (use --detections or set it in the config)");
    }
    StageRun run(config, Stage::kDetected, options.force);
    const ordered_json inputs = {{"views", run.upstream(Stage::kFetched, files::kViews)},
                                 {"detections", file_hash(*source)}};
    if (!run.begin(fingerprint(inputs))) return CommandResult{{}, false, "up to date"};
    const auto records = acquisition::parse_records_json(util::read_file(run.out(files::kViews)));
    auto sets = detection::parse_detection_file(util::read_file(*source));
    const std::size_t given = sets.size();
    const auto linked = link_detections(records, std::move(sets));
    std::vector<detection::DetectionSet> ordered;
    ordered.reserve(linked.size());
    for (const auto& [index, set] : linked) ordered.push_back(set);
    write(run.out(files::kDetections), detection::emit_detection_file(ordered));
    run.finish({files::kDetections});
    std::size_t fetched = 0;
    for (const auto& r : records) fetched += r.status == acquisition::ViewStatus::kFetched;
    return CommandResult{{}, true,
                         fmt::format("{} detection sets linked to {} of {} fetched views", given,
                                     linked.size(), fetched)};
  });
}

CommandResult cmd_score(const PipelineConfig& config, const RunOptions& options) {
  return with_prefix("score", [&] {
    StageRun run(config, Stage::kScored, options.force);
    const ordered_json inputs = {{"views", run.upstream(Stage::kFetched, files::kViews)},
                                 {"detections", run.upstream(Stage::kDetected, files::kDetections)},
                                 {"filter", view_filter_json(config)},
                                 {"confidence_threshold", config.confidence_threshold},
                                 {"rescale_partial", config.rescale_partial}};
    if (!run.begin(fingerprint(inputs))) return CommandResult{{}, false, "up to date"};
    const auto records = acquisition::parse_records_json(util::read_file(run.out(files::kViews)));
    const auto sets = detection::parse_detection_file(util::read_file(run.out(files::kDetections)));
    std::unordered_map<std::string, const detection::DetectionSet*> by_key;
    for (const auto& s : sets) by_key.emplace(s.image_id, &s);
    const auto usable = usable_views(config);

    std::vector<metrics::LocationScore> scores;
    std::vector<metrics::ScoredView> views;
    auto flush = [&] {
      if (views.empty()) return;
      scores.push_back(metrics::location_score(views, {config.confidence_threshold, config.rescale_partial}));
      views.clear();
    };
    for (const auto& r : records) {
      if (!views.empty() && views.front().record.spec.point_id != r.spec.point_id) flush();
      metrics::ScoredView v{r, std::nullopt};
      if (usable(r)) {
        if (const auto it = by_key.find(acquisition::view_key(r.spec)); it != by_key.end()) {
          v.detections = *it->second;
        }
      }
      views.push_back(std::move(v));
    }
    flush();
    write(run.out(files::kScores), metrics::scores_to_csv(scores));
    run.finish({files::kScores});
    std::size_t scored = 0;
    for (const auto& s : scores) scored += s.k_actual > 0;
    return CommandResult{{}, true,
                         fmt::format("{} locations scored, {} with at least one usable view",
                                     scores.size(), scored)};
  });
}

CommandResult cmd_aggregate(const PipelineConfig& config, const RunOptions& options) {
  return with_prefix("aggregate", [&] {
    StageRun run(config, Stage::kAggregated, options.force);
    const ordered_json inputs = {
        {"sample", run.upstream(Stage::kSampled, files::kSampleCsv)},
        {"scores", run.upstream(Stage::kScored, files::kScores)},
        {"districts", file_hash(config.districts_geojson)},
        {"min_views", config.min_views},
        {"n_classes", config.n_classes},
        {"log_epsilon", config.log_epsilon},
        {"indicator", config.indicator_csv ? file_hash(*config.indicator_csv) : ""}};
    if (!run.begin(fingerprint(inputs))) return CommandResult{{}, false, "up to date"};
    const auto sample = load_sample(config, run.out(files::kSampleCsv));
    const auto districts = load_districts(config);
    const auto assignment = metrics::assign_districts(sample, districts);
    const auto all_scores = metrics::parse_scores_csv(util::read_file(run.out(files::kScores)));
    std::vector<metrics::LocationScore> scores;
    for (const auto& s : all_scores) {
      if (assignment.contains(s.point_id)) scores.push_back(s);
    }
    const auto aggregates = metrics::log_class_breaks(
        metrics::region_aggregate(scores, assignment, config.min_views), config.n_classes,
        config.log_epsilon);
    write(run.out(files::kRegionsCsv), metrics::aggregates_to_csv(aggregates));
    write(run.out(files::kRegionsGeojson), metrics::aggregates_to_geojson(aggregates, districts));
    std::vector<std::string_view> outputs{files::kRegionsCsv, files::kRegionsGeojson};
    std::string correlation = "no indicator configured";
    if (config.indicator_csv) {
      const auto indicator = metrics::parse_indicator_csv(util::read_file(*config.indicator_csv));
      std::size_t shared = 0;
      for (const auto& a : aggregates) shared += indicator.contains(a.region_id);
      ordered_json report = {{"method", "spearman"}, {"regions", shared}, {"rho", nullptr}};
      try {
        const double rho = metrics::rank_correlation(aggregates, indicator);
        report["rho"] = rho;
        correlation = fmt::format("spearman rho {} over {} regions", util::format_fixed(rho, 4), shared);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::kInsufficientOverlap && e.code() != ErrorCode::kDegenerateRanks) throw;
        report["error"] = e.what();
        correlation = fmt::format("no correlation: {}", e.what());
      }
      write(run.out(files::kCorrelation), report.dump(2) + "\n");
      outputs.push_back(files::kCorrelation);
    } else {
      std::error_code ec;
      fs::remove(run.out(files::kCorrelation), ec);
    }
    run.finish(outputs);
    return CommandResult{{}, true,
                         fmt::format("{} regions from {} located points ({} outside every district); {}",
                                     aggregates.size(), scores.size(),
                                     all_scores.size() - scores.size(), correlation)};
  });
}

CommandResult cmd_render(const PipelineConfig& config, const RunOptions&) {
  return with_prefix("render", [&] {
    // Rendering is cheap and has no stage flag of its own; it always rewrites.
    StageRun run(config, Stage::kAggregated, false, true);
    const auto aggregates = metrics::parse_aggregates_csv(util::read_file(run.out(files::kRegionsCsv)));
    const auto districts = load_districts(config);
    write(run.out(files::kMap), render_svg(aggregates, districts));
    return CommandResult{{}, true, fmt::format("{} districts drawn", districts.size())};
  });
}

std::vector<CommandResult> run_all(const PipelineConfig& config, const RunOptions& options) {
  std::vector<CommandResult> out;
  out.push_back(cmd_sample(config, options));
  out.push_back(cmd_fetch(config, options));
  out.push_back(cmd_detect(config, options));
  out.push_back(cmd_score(config, options));
  out.push_back(cmd_aggregate(config, options));
  out.push_back(cmd_render(config, options));
  return out;
}

std::string evaluation_report_json(const detection::ApEvaluation& eval) {
  const ordered_json j = {{"average_precision", eval.average_precision},
                          {"iou_threshold", eval.iou_threshold},
                          {"match_on", "instance_masks"},
                          {"interpolation", "all_points"},
                          {"num_images", eval.num_images},
                          {"num_detections", eval.num_detections},
                          {"num_annotations", eval.num_annotations},
                          {"true_positives", eval.true_positives}};
  return j.dump(2) + "\n";
}

std::string cmd_evaluate(const fs::path& detections_file, const fs::path& annotations_file,
                         double iou_threshold) {
  try {
    const auto dets = detection::parse_detection_file(util::read_file(detections_file));
    const auto anns = detection::parse_annotation_file(util::read_file(annotations_file));
    return evaluation_report_json(detection::evaluate_average_precision(dets, anns, iou_threshold));
  } catch (const Error& e) {
    throw Error(e.code(), fmt::format("evaluate: {}", e.what()));
  }
}

}  // namespace graffmap::pipeline
