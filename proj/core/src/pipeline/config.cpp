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

#include "graffmap/pipeline/config.hpp"

#include <cmath>
#include <set>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "graffmap/error.hpp"
#include "graffmap/util/files.hpp"

namespace graffmap::pipeline {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

[[noreturn]] void invalid(std::string_view field, std::string_view why) {
  throw Error(ErrorCode::kConfigInvalid, fmt::format("{}: {}", field, why));
}

// Typed field access with path-qualified errors.
class Reader {
 public:
  Reader(const json& obj, std::string prefix) : obj_(obj), prefix_(std::move(prefix)) {
    if (!obj_.is_object()) invalid(prefix_.empty() ? "<root>" : prefix_, "expected an object");
  }

  std::string path(std::string_view key) const {
    return prefix_.empty() ? std::string(key) : fmt::format("{}.{}", prefix_, key);
  }
  bool has(std::string_view key) const { return obj_.contains(std::string(key)); }
  const json& raw(std::string_view key) const { return obj_.at(std::string(key)); }

  const json& require(std::string_view key) const {
    if (!has(key)) invalid(path(key), "required field is missing");
    return raw(key);
  }

  std::string string(std::string_view key) const {
    const json& v = require(key);
    if (!v.is_string()) invalid(path(key), "expected a string");
    return v.get<std::string>();
  }

  double number(std::string_view key, std::optional<double> fallback = std::nullopt) const {
    if (!has(key)) {
      if (fallback) return *fallback;
      invalid(path(key), "required field is missing");
    }
    const json& v = raw(key);
    if (!v.is_number()) invalid(path(key), "expected a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) invalid(path(key), "expected a finite number");
    return d;
  }

  long long integer(std::string_view key, std::optional<long long> fallback = std::nullopt) const {
    if (!has(key)) {
      if (fallback) return *fallback;
      invalid(path(key), "required field is missing");
    }
    const json& v = raw(key);
    if (!v.is_number_integer()) invalid(path(key), "expected an integer");
    return v.get<long long>();
  }

  bool boolean(std::string_view key, bool fallback) const {
    if (!has(key)) return fallback;
    const json& v = raw(key);
    if (!v.is_boolean()) invalid(path(key), "expected true or false");
    return v.get<bool>();
  }

  void reject_unknown(const std::set<std::string>& known) const {
    for (const auto& [k, v] : obj_.items()) {
      if (!known.contains(k)) invalid(path(k), "unknown field");
    }
  }

 private:
  const json& obj_;
  std::string prefix_;
};

fs::path existing_path(const Reader& r, std::string_view key, const fs::path& base,
                       bool directory = false) {
  const fs::path p = base / r.string(key);
  std::error_code ec;
  if (directory ? !fs::is_directory(p, ec) : !fs::is_regular_file(p, ec)) {
    invalid(r.path(key), fmt::format("{} '{}' does not exist", directory ? "directory" : "file",
                                     p.string()));
  }
  return p.lexically_normal();
}

geo::SamplingScheme parse_sampling(const Reader& r) {
  const std::string scheme = r.string("scheme");
  if (scheme == "systematic") {
    r.reject_unknown({"scheme", "spacing_m"});
    const double s = r.number("spacing_m");
    if (!(s > 0.0)) invalid(r.path("spacing_m"), "must be positive");
    return geo::SystematicScheme{s};
  }
  if (scheme == "random") {
    r.reject_unknown({"scheme", "n", "seed"});
    const long long n = r.integer("n");
    if (n < 1) invalid(r.path("n"), "must be at least 1");
    const long long seed = r.integer("seed", 0);
    if (seed < 0) invalid(r.path("seed"), "must be non-negative");
    return geo::RandomScheme{static_cast<std::size_t>(n), static_cast<std::uint64_t>(seed)};
  }
  invalid(r.path("scheme"), fmt::format("unknown scheme '{}' (expected systematic or random)", scheme));
}

ProviderConfig parse_provider(const Reader& r, const fs::path& base) {
  const std::string type = r.string("type");
  if (type == "stub") {
    r.reject_unknown({"type", "directory"});
    return StubProviderConfig{existing_path(r, "directory", base, true)};
  }
  if (type == "http") {
    r.reject_unknown({"type", "url_template", "metadata_url_template", "api_key_env",
                      "requests_per_second", "width", "height", "timeout_s"});
    acquisition::HttpProviderConfig c;
    c.url_template = r.string("url_template");
    if (c.url_template.find("://") == std::string::npos) {
      invalid(r.path("url_template"), "expected an absolute http(s) URL");
    }
    if (r.has("metadata_url_template")) c.metadata_url_template = r.string("metadata_url_template");
    if (r.has("api_key_env")) c.api_key_env = r.string("api_key_env");
    c.requests_per_second = r.number("requests_per_second", 10.0);
    if (!(c.requests_per_second > 0.0)) invalid(r.path("requests_per_second"), "must be positive");
    const long long w = r.integer("width", 640);
    const long long h = r.integer("height", 640);
    if (w < 1 || w > 65535) invalid(r.path("width"), "must be in [1, 65535]");
    if (h < 1 || h > 65535) invalid(r.path("height"), "must be in [1, 65535]");
    c.width = static_cast<std::uint32_t>(w);
    c.height = static_cast<std::uint32_t>(h);
    const long long t = r.integer("timeout_s", 30);
    if (t < 1) invalid(r.path("timeout_s"), "must be at least 1");
    c.timeout = std::chrono::seconds(t);
    return c;
  }
  invalid(r.path("type"), fmt::format("unknown provider type '{}' (expected stub or http)", type));
}

}  // namespace

PipelineConfig parse_config(std::string_view text, const fs::path& base_dir) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kConfigInvalid, fmt::format("<root>: not valid JSON: {}", e.what()));
  }
  const Reader r(doc, "");
  r.reject_unknown({"config_version", "region_geojson", "districts_geojson", "sampling", "headings",
                    "provider", "max_in_flight", "exclude_third_party", "capture_years",
                    "detections", "confidence_threshold", "rescale_partial", "min_views",
                    "n_classes", "log_epsilon", "indicator_csv", "output_dir"});

  if (r.integer("config_version") != kConfigVersion) {
    invalid("config_version", fmt::format("unsupported version (expected {})", kConfigVersion));
  }

  PipelineConfig c;
  c.region_geojson = existing_path(r, "region_geojson", base_dir);
  c.districts_geojson = existing_path(r, "districts_geojson", base_dir);
  c.sampling = parse_sampling(Reader(r.require("sampling"), "sampling"));

  if (r.has("headings")) {
    const json& h = r.raw("headings");
    if (!h.is_array() || h.empty()) invalid("headings", "expected a non-empty array");
    c.headings.clear();
    std::set<double> seen;
    for (std::size_t i = 0; i < h.size(); ++i) {
      const auto field = fmt::format("headings[{}]", i);
      if (!h[i].is_number()) invalid(field, "expected a number");
      const double d = h[i].get<double>();
      if (!(d >= 0.0 && d < 360.0)) invalid(field, "must be in [0, 360)");
      if (!seen.insert(d).second) invalid(field, fmt::format("duplicate heading {}", d));
      c.headings.push_back(d);
    }
  }

  c.provider = parse_provider(Reader(r.require("provider"), "provider"), base_dir);

  const long long inflight = r.integer("max_in_flight", 4);
  if (inflight < 1 || inflight > 256) invalid("max_in_flight", "must be in [1, 256]");
  c.max_in_flight = static_cast<std::size_t>(inflight);
  c.exclude_third_party = r.boolean("exclude_third_party", true);

  if (r.has("capture_years")) {
    const json& y = r.raw("capture_years");
    if (!y.is_array() || y.size() != 2 || !y[0].is_number_integer() || !y[1].is_number_integer()) {
      invalid("capture_years", "expected [first_year, last_year]");
    }
    const int lo = y[0].get<int>();
    const int hi = y[1].get<int>();
    if (lo > hi) invalid("capture_years", "first year is after last year");
    c.capture_years = std::pair{lo, hi};
  }

  if (r.has("detections")) c.detections = existing_path(r, "detections", base_dir);

  c.confidence_threshold = r.number("confidence_threshold", 0.5);
  if (!(c.confidence_threshold >= 0.0 && c.confidence_threshold <= 1.0)) {
    invalid("confidence_threshold", "must be in [0, 1]");
  }
  c.rescale_partial = r.boolean("rescale_partial", false);

  const long long min_views = r.integer("min_views", 1);
  if (min_views < 0 || static_cast<std::size_t>(min_views) > c.headings.size()) {
    invalid("min_views", fmt::format("must be in [0, {}]", c.headings.size()));
  }
  c.min_views = static_cast<std::size_t>(min_views);

  const long long n_classes = r.integer("n_classes", 5);
  if (n_classes < 2 || n_classes > kMaxClasses) {
    invalid("n_classes", fmt::format("must be in [2, {}]", kMaxClasses));
  }
  c.n_classes = static_cast<int>(n_classes);

  c.log_epsilon = r.number("log_epsilon", 1e-6);
  if (!(c.log_epsilon > 0.0)) invalid("log_epsilon", "must be positive");

  if (r.has("indicator_csv")) c.indicator_csv = existing_path(r, "indicator_csv", base_dir);

  c.output_dir = (base_dir / (r.has("output_dir") ? r.string("output_dir") : "out")).lexically_normal();
  return c;
}

PipelineConfig load_config(const fs::path& path) {
  std::string text;
  try {
    text = util::read_file(path);
  } catch (const Error& e) {
    throw Error(ErrorCode::kConfigInvalid, fmt::format("<file>: {}", e.what()));
  }
  return parse_config(text, path.parent_path());
}

}  // namespace graffmap::pipeline
