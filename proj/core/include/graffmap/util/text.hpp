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

#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace graffmap::util {

// Shortest decimal text that parses back to exactly `value`.
std::string format_real(double value);

// Fixed-point text with `decimals` digits after the point; "-0.000" is
// normalized to "0.000" so outputs stay byte-stable.
std::string format_fixed(double value, int decimals);

// Parses a full string as a finite double; returns false on any trailing junk.
bool parse_real(std::string_view text, double& out);
bool parse_int(std::string_view text, long long& out);

// Minimal RFC 4180 CSV support: fields containing separators, quotes or
// newlines are quoted on output and unquoted on input.
std::string csv_escape(std::string_view field);
std::vector<std::vector<std::string>> parse_csv(std::string_view text);

}  // namespace graffmap::util
