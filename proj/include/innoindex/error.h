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

#ifndef INNOINDEX_ERROR_H
#define INNOINDEX_ERROR_H

#include <stdexcept>
#include <string>
#include <string_view>

namespace innoindex {

enum class ErrorCode {
  kMalformedModel,
  kConstraintViolation,
  kDanglingSynonym,
  kIoError,
  kMalformedCorpus,
  kSourceUnavailable,
  kPrecondition,
  kDomainError,
  kEmptyMeasurement,
  kInvalidWeights,
  kInsufficientData,
  kDegenerateSpan,
  kSpanMismatch,
  kTotalConflict,
  kFrameMismatch,
  kSchemaError,
  kConfigError,
};

std::string_view to_string(ErrorCode code);

/// Process exit status used by the command-line tool for an error category:
/// 1 for usage/config problems, 2 for data problems, 3 for source problems.
int exit_status(ErrorCode code);

/// Base exception for every failure raised by the library.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string const& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace innoindex

#endif  // INNOINDEX_ERROR_H
