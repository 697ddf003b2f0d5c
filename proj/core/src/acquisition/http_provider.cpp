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

#define CPPHTTPLIB_OPENSSL_SUPPORT
#include <httplib.h>

#include <algorithm>
#include <cstdlib>
#include <thread>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "graffmap/acquisition/provider.hpp"
#include "graffmap/error.hpp"
#include "graffmap/util/text.hpp"

namespace graffmap::acquisition {
namespace {

struct SplitUrl {
  std::string origin;  // scheme://host[:port]
  std::string path;    // path and query
};

SplitUrl split_url(const std::string& url) {
  const auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos) {
    throw Error(ErrorCode::kConfigInvalid, fmt::format("url '{}' has no scheme", url));
  }
  const auto path_start = url.find('/', scheme_end + 3);
  if (path_start == std::string::npos) return {url, "/"};
  return {url.substr(0, path_start), url.substr(path_start)};
}

void replace_all(std::string& s, std::string_view from, std::string_view to) {
  for (std::size_t pos = s.find(from); pos != std::string::npos; pos = s.find(from, pos + to.size())) {
    s.replace(pos, from.size(), to);
  }
}

std::optional<int> year_from_metadata(const nlohmann::json& meta) {
  if (meta.contains("year") && meta["year"].is_number_integer()) return meta["year"].get<int>();
  if (meta.contains("date") && meta["date"].is_string()) {
    const std::string date = meta["date"].get<std::string>();
    long long year = 0;
    if (date.size() >= 4 && util::parse_int(std::string_view(date).substr(0, 4), year)) {
      return static_cast<int>(year);
    }
  }
  return std::nullopt;
}

}  // namespace

TokenBucket::TokenBucket(double rate, double burst)
    : rate_(rate), burst_(std::max(1.0, burst)), tokens_(std::max(1.0, burst)) {
  if (!(rate > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, fmt::format("rate must be positive, got {}", rate));
  }
}

TokenBucket::Clock::duration TokenBucket::reserve(Clock::time_point now) {
  std::lock_guard lock(mu_);
  if (last_ && now > *last_) {
    const double elapsed = std::chrono::duration<double>(now - *last_).count();
    tokens_ = std::min(burst_, tokens_ + elapsed * rate_);
  }
  if (!last_ || now > *last_) last_ = now;
  tokens_ -= 1.0;
  if (tokens_ >= 0.0) return Clock::duration::zero();
  // Debt is repaid at `rate` tokens per second, measured from last_.
  const auto wait = std::chrono::duration<double>(-tokens_ / rate_);
  return std::chrono::duration_cast<Clock::duration>(wait) + (*last_ - now);
}

void TokenBucket::acquire() {
  const auto wait = reserve(Clock::now());
  if (wait > Clock::duration::zero()) std::this_thread::sleep_for(wait);
}

HttpProvider::HttpProvider(HttpProviderConfig config)
    : config_(std::move(config)), bucket_(config_.requests_per_second) {
  if (config_.url_template.empty()) {
    throw Error(ErrorCode::kConfigInvalid, "provider.url_template is empty");
  }
  split_url(config_.url_template);
  if (!config_.metadata_url_template.empty()) split_url(config_.metadata_url_template);
  if (!config_.api_key_env.empty()) {
    const char* key = std::getenv(config_.api_key_env.c_str());
    if (key == nullptr || *key == '\0') {
      throw Error(ErrorCode::kConfigInvalid,
                  fmt::format("provider.api_key_env: environment variable {} is not set",
                              config_.api_key_env));
    }
    api_key_ = key;
  }
}

std::string HttpProvider::expand(const std::string& tmpl, const ViewSpec& spec) const {
  std::string url = tmpl;
  replace_all(url, "{lat}", util::format_real(spec.location.lat));
  replace_all(url, "{lon}", util::format_real(spec.location.lon));
  replace_all(url, "{heading}", format_heading(spec.heading));
  replace_all(url, "{width}", std::to_string(config_.width));
  replace_all(url, "{height}", std::to_string(config_.height));
  if (!api_key_.empty()) {
    if (tmpl.find("{api_key}") != std::string::npos) {
      replace_all(url, "{api_key}", httplib::detail::encode_query_param(api_key_));
    } else {
      url += (url.find('?') == std::string::npos ? "?" : "&");
      url += "key=" + httplib::detail::encode_query_param(api_key_);
    }
  }
  return url;
}

FetchResult HttpProvider::fetch(const ViewSpec& spec) {
  auto get = [&](const std::string& tmpl) {
    const SplitUrl url = split_url(expand(tmpl, spec));
    httplib::Client client(url.origin);
    client.set_connection_timeout(config_.timeout);
    client.set_read_timeout(config_.timeout);
    client.set_follow_location(true);
    bucket_.acquire();
    return client.Get(url.path);
  };

  FetchResult out;
  if (!config_.metadata_url_template.empty()) {
    auto res = get(config_.metadata_url_template);
    if (!res) {
      out.detail = fmt::format("metadata request failed: {}", httplib::to_string(res.error()));
      return out;
    }
    if (res->status != 200) {
      out.detail = fmt::format("metadata request returned HTTP {}", res->status);
      return out;
    }
    nlohmann::json meta;
    try {
      meta = nlohmann::json::parse(res->body);
    } catch (const nlohmann::json::exception&) {
      out.detail = "metadata response is not JSON";
      return out;
    }
    const std::string status = meta.value("status", "ok");
    if (status != "ok" && status != "OK") {
      out.status = ViewStatus::kNoImagery;
      return out;
    }
    out.capture_year = year_from_metadata(meta);
    if (meta.contains("provider") && meta["provider"].is_string()) {
      try {
        out.provider = parse_provider(meta["provider"].get<std::string>());
      } catch (const Error&) {
        out.provider = Provider::kUnknown;
      }
    }
  }

  auto res = get(config_.url_template);
  if (!res) {
    out.detail = fmt::format("image request failed: {}", httplib::to_string(res.error()));
    return out;
  }
  if (res->status == 404) {
    out.status = ViewStatus::kNoImagery;
    return out;
  }
  if (res->status != 200) {
    out.detail = fmt::format("image request returned HTTP {}", res->status);
    return out;
  }
  out.status = ViewStatus::kFetched;
  out.bytes = std::move(res->body);
  return out;
}

}  // namespace graffmap::acquisition
