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

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace bipexp {

/// Failure categories raised by the library. The numeric values are part of
/// the C API (see bipexp.h) and must stay stable.
enum class ErrorCode : int {
  kOk = 0,
  kIndexOutOfRange = 1,
  kDuplicateEdge = 2,
  kIsolatedOutcomeUnit = 3,
  kInvalidDegreeBound = 4,
  kEmptyCluster = 5,
  kAllUnitsIsolated = 6,
  kInvalidProbability = 7,
  kDimensionMismatch = 8,
  kSizeGuardExceeded = 9,
  kNoTreatedExposure = 10,
  kNoControlExposure = 11,
  kInvalidAlpha = 12,
  kEnumerationGuardExceeded = 13,
  kInvalidReps = 14,
  kDegenerateVariance = 15,
  kAllDrawsDegenerate = 16,
  kParseError = 17,
  kIoError = 18,
  kInvalidConfig = 19,
  kInvalidArgument = 20,
};

std::string_view error_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }
  /// Message without the leading "Name: " prefix.
  std::string detail() const;

 private:
  ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& message);

}  // namespace bipexp
