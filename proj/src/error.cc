// Copyright 2026 The innoindex Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "innoindex/error.h"

namespace innoindex {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kMalformedModel: return "MalformedModel";
    case ErrorCode::kConstraintViolation: return "ConstraintViolation";
    case ErrorCode::kDanglingSynonym: return "DanglingSynonym";
    case ErrorCode::kIoError: return "IoError";
    case ErrorCode::kMalformedCorpus: return "MalformedCorpus";
    case ErrorCode::kSourceUnavailable: return "SourceUnavailable";
    case ErrorCode::kPrecondition: return "PreconditionError";
    case ErrorCode::kDomainError: return "DomainError";
    case ErrorCode::kEmptyMeasurement: return "EmptyMeasurement";
    case ErrorCode::kInvalidWeights: return "InvalidWeights";
    case ErrorCode::kInsufficientData: return "InsufficientData";
    case ErrorCode::kDegenerateSpan: return "DegenerateSpan";
    case ErrorCode::kSpanMismatch: return "SpanMismatch";
    case ErrorCode::kTotalConflict: return "TotalConflict";
    case ErrorCode::kFrameMismatch: return "FrameMismatch";
    case ErrorCode::kSchemaError: return "SchemaError";
    case ErrorCode::kConfigError: return "ConfigError";
  }
  return "UnknownError";
}

int exit_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::kMalformedModel:
    case ErrorCode::kConstraintViolation:
    case ErrorCode::kDanglingSynonym:
    case ErrorCode::kConfigError:
    case ErrorCode::kInvalidWeights:
      return 1;
    case ErrorCode::kSourceUnavailable:
      return 3;
    default:
      return 2;
  }
}

Error::Error(ErrorCode code, std::string const& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message),
      code_(code) {}

}  // namespace innoindex
