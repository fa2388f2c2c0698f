// Copyright 2026 The bipexp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "bipexp/error.hpp"

namespace bipexp {

std::string_view error_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kOk: return "Ok";
    case ErrorCode::kIndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::kDuplicateEdge: return "DuplicateEdge";
    case ErrorCode::kIsolatedOutcomeUnit: return "IsolatedOutcomeUnit";
    case ErrorCode::kInvalidDegreeBound: return "InvalidDegreeBound";
    case ErrorCode::kEmptyCluster: return "EmptyCluster";
    case ErrorCode::kAllUnitsIsolated: return "AllUnitsIsolated";
    case ErrorCode::kInvalidProbability: return "InvalidProbability";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kSizeGuardExceeded: return "SizeGuardExceeded";
    case ErrorCode::kNoTreatedExposure: return "NoTreatedExposure";
    case ErrorCode::kNoControlExposure: return "NoControlExposure";
    case ErrorCode::kInvalidAlpha: return "InvalidAlpha";
    case ErrorCode::kEnumerationGuardExceeded: return "EnumerationGuardExceeded";
    case ErrorCode::kInvalidReps: return "InvalidReps";
    case ErrorCode::kDegenerateVariance: return "DegenerateVariance";
    case ErrorCode::kAllDrawsDegenerate: return "AllDrawsDegenerate";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kIoError: return "IoError";
    case ErrorCode::kInvalidConfig: return "InvalidConfig";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

std::string Error::detail() const {
  const std::string full = what();
  const std::string prefix = std::string(error_name(code_)) + ": ";
  return full.rfind(prefix, 0) == 0 ? full.substr(prefix.size()) : full;
}

void fail(ErrorCode code, const std::string& message) {
  throw Error(code, std::string(error_name(code)) + ": " + message);
}

}  // namespace bipexp
