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

#include "graffmap/error.hpp"

namespace graffmap {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kPoleProximity: return "PoleProximity";
    case ErrorCode::kInvalidPolygon: return "InvalidPolygon";
    case ErrorCode::kEmptySample: return "EmptySample";
    case ErrorCode::kRejectionBudgetExceeded: return "RejectionBudgetExceeded";
    case ErrorCode::kDuplicateHeading: return "DuplicateHeading";
    case ErrorCode::kCacheUnwritable: return "CacheUnwritable";
    case ErrorCode::kUnknownPointId: return "UnknownPointId";
    case ErrorCode::kMalformedRle: return "MalformedRle";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kMissingAnnotationForImage: return "MissingAnnotationForImage";
    case ErrorCode::kZeroAnnotations: return "ZeroAnnotations";
    case ErrorCode::kSchemaViolation: return "SchemaViolation";
    case ErrorCode::kMixedPointIds: return "MixedPointIds";
    case ErrorCode::kUnassignedPoint: return "UnassignedPoint";
    case ErrorCode::kInsufficientOverlap: return "InsufficientOverlap";
    case ErrorCode::kDegenerateRanks: return "DegenerateRanks";
    case ErrorCode::kQuadratureTooCoarse: return "QuadratureTooCoarse";
    case ErrorCode::kConfigInvalid: return "ConfigInvalid";
    case ErrorCode::kStageOrderViolation: return "StageOrderViolation";
    case ErrorCode::kStaleStage: return "StaleStage";
    case ErrorCode::kOutputLocked: return "OutputLocked";
    case ErrorCode::kIo: return "Io";
    case ErrorCode::kParse: return "Parse";
  }
  return "Unknown";
}

}  // namespace graffmap
