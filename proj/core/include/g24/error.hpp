// Copyright 2026 The g24 Authors
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

#ifndef G24_ERROR_HPP_
#define G24_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace g24 {

enum class ErrorCode {
  kDependentBasis,
  kNotDecomposable,
  kNearDependent,
  kZeroVector,
  kBoundTooLarge,
  kEmptyRange,
  kNotIncident,
  kPrecisionExhausted,
  kObstacleEqualsQ,
  kRetryExhausted,
  kEnumerationCapExceeded,
  kParse,
  kIo,
  kInvalidArgument,
};

std::string_view ErrorCodeName(ErrorCode code);

// All library failures surface as g24::Error; the code identifies the
// contract that was violated.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Parse failure with a 1-based position inside the offending input.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, int line, int column)
      : Error(ErrorCode::kParse, message + " (line " + std::to_string(line) +
                                     ", column " + std::to_string(column) + ")"),
        line_(line),
        column_(column) {}

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

}  // namespace g24

#endif  // G24_ERROR_HPP_
