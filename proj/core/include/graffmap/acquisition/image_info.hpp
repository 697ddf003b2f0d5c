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

#include <cstdint>
#include <optional>
#include <string_view>

namespace graffmap::acquisition {

struct ImageSize {
  std::uint32_t width = 0;
  std::uint32_t height = 0;
};

// Reads pixel dimensions from a JPEG (SOFn segment) or PNG (IHDR) header
// without decoding the image. Returns nullopt for anything else.
std::optional<ImageSize> read_image_size(std::string_view bytes);

}  // namespace graffmap::acquisition
