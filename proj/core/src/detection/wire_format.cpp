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

#include "graffmap/detection/wire_format.hpp"

#include <cmath>
#include <cstdint>
#include <limits>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "graffmap/error.hpp"

namespace graffmap::detection {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

[[noreturn]] void violation(const std::string& where, const std::string& what) {
  throw Error(ErrorCode::kSchemaViolation, fmt::format("{}: {}", where.empty() ? "/" : where, what));
}

const json& member(const json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) violation(where, fmt::format("missing \"{}\"", key));
  return *it;
}

std::uint32_t positive_dim(const json& v, const std::string& where) {
  if (!v.is_number_integer() || v.get<long long>() <= 0 ||
      v.get<long long>() > std::numeric_limits<std::uint32_t>::max()) {
    violation(where, "expected a positive integer");
  }
  return static_cast<std::uint32_t>(v.get<long long>());
}

RleMask parse_rle(const json& rle, std::uint32_t height, std::uint32_t width,
                  const std::string& where) {
  if (!rle.is_object()) violation(where, "expected an object");
  const json& size = member(rle, "size", where);
  if (!size.is_array() || size.size() != 2) violation(where + "/size", "expected [height, width]");
  const std::uint32_t h = positive_dim(size[0], where + "/size/0");
  const std::uint32_t w = positive_dim(size[1], where + "/size/1");
  if (h != height || w != width) {
    violation(where + "/size",
              fmt::format("mask is {}x{} but the image is {}x{}", h, w, height, width));
  }
  const json& counts = member(rle, "counts", where);
  if (!counts.is_array() || counts.empty()) violation(where + "/counts", "expected a non-empty array");
  RleMask mask{h, w, {}};
  mask.counts.reserve(counts.size());
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    const json& c = counts[i];
    if (!c.is_number_integer() || c.get<long long>() < 0 ||
        c.get<long long>() > std::numeric_limits<std::uint32_t>::max()) {
      violation(fmt::format("{}/counts/{}", where, i), "expected a non-negative integer");
    }
    if (i > 0 && c.get<long long>() == 0) {
      violation(fmt::format("{}/counts/{}", where, i), "only the leading run may be zero");
    }
    mask.counts.push_back(static_cast<std::uint32_t>(c.get<long long>()));
    total += mask.counts.back();
  }
  if (total != std::uint64_t{h} * w) {
    violation(where + "/counts",
              fmt::format("runs sum to {}, expected height*width = {}", total, std::uint64_t{h} * w));
  }
  return mask;
}

std::string parse_label(const json& inst, const std::string& where) {
  const json& label = member(inst, "label", where);
  if (!label.is_string() || label.get<std::string>() != kGraffitiLabel) {
    violation(where + "/label", fmt::format("expected \"{}\"", kGraffitiLabel));
  }
  return label.get<std::string>();
}

template <typename Set, typename InstanceParser>
std::vector<Set> parse_document(std::string_view text, InstanceParser parse_instance) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    violation("", fmt::format("not valid JSON ({})", e.what()));
  }
  if (!doc.is_object()) violation("", "expected an object");
  const json& version = member(doc, "format_version", "");
  if (!version.is_number_integer() || version.get<long long>() != kWireFormatVersion) {
    violation("/format_version", fmt::format("unsupported version {}", version.dump()));
  }
  const json& images = member(doc, "images", "");
  if (!images.is_array()) violation("/images", "expected an array");

  std::vector<Set> out;
  out.reserve(images.size());
  for (std::size_t i = 0; i < images.size(); ++i) {
    const std::string where = fmt::format("/images/{}", i);
    const json& img = images[i];
    if (!img.is_object()) violation(where, "expected an object");
    Set set;
    const json& id = member(img, "image_id", where);
    if (!id.is_string() || id.get<std::string>().empty()) {
      violation(where + "/image_id", "expected a non-empty string");
    }
    set.image_id = id.get<std::string>();
    set.width = positive_dim(member(img, "width", where), where + "/width");
    set.height = positive_dim(member(img, "height", where), where + "/height");
    const json& instances = member(img, "instances", where);
    if (!instances.is_array()) violation(where + "/instances", "expected an array");
    for (std::size_t k = 0; k < instances.size(); ++k) {
      const std::string iwhere = fmt::format("{}/instances/{}", where, k);
      if (!instances[k].is_object()) violation(iwhere, "expected an object");
      set.instances.push_back(parse_instance(instances[k], set, iwhere));
    }
    out.push_back(std::move(set));
  }
  return out;
}

ordered_json rle_json(const RleMask& m) {
  return ordered_json{{"size", {m.height, m.width}}, {"counts", m.counts}};
}

template <typename Set, typename InstanceEmitter>
std::string emit_document(std::span<const Set> sets, InstanceEmitter emit_instance) {
  std::string out = fmt::format("{{\"format_version\": {}, \"images\": [", kWireFormatVersion);
  for (std::size_t i = 0; i < sets.size(); ++i) {
    const Set& s = sets[i];
    ordered_json img;
    img["image_id"] = s.image_id;
    img["width"] = s.width;
    img["height"] = s.height;
    img["instances"] = ordered_json::array();
    for (const auto& inst : s.instances) img["instances"].push_back(emit_instance(inst));
    out += i == 0 ? "\n" : ",\n";
    out += img.dump();
  }
  out += sets.empty() ? "]}\n" : "\n]}\n";
  return out;
}

}  // namespace

std::vector<DetectionSet> parse_detection_file(std::string_view text) {
  return parse_document<DetectionSet>(
      text, [](const json& inst, const DetectionSet& set, const std::string& where) {
        Instance out;
        out.label = parse_label(inst, where);
        const json& conf = member(inst, "confidence", where);
        if (!conf.is_number() || !std::isfinite(conf.get<double>()) ||
            conf.get<double>() < 0.0 || conf.get<double>() > 1.0) {
          violation(where + "/confidence", "expected a number in [0, 1]");
        }
        out.confidence = conf.get<double>();
        out.mask = parse_rle(member(inst, "rle", where), set.height, set.width, where + "/rle");
        return out;
      });
}

std::vector<AnnotationSet> parse_annotation_file(std::string_view text) {
  return parse_document<AnnotationSet>(
      text, [](const json& inst, const AnnotationSet& set, const std::string& where) {
        if (inst.contains("confidence")) {
          violation(where + "/confidence", "annotations must not carry a confidence");
        }
        Annotation out;
        out.label = parse_label(inst, where);
        out.mask = parse_rle(member(inst, "rle", where), set.height, set.width, where + "/rle");
        return out;
      });
}

std::string emit_detection_file(std::span<const DetectionSet> sets) {
  return emit_document(sets, [](const Instance& inst) {
    return ordered_json{
        {"label", inst.label}, {"confidence", inst.confidence}, {"rle", rle_json(inst.mask)}};
  });
}

std::string emit_annotation_file(std::span<const AnnotationSet> sets) {
  return emit_document(sets, [](const Annotation& inst) {
    return ordered_json{{"label", inst.label}, {"rle", rle_json(inst.mask)}};
  });
}

}  // namespace graffmap::detection
