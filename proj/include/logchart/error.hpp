// Copyright 2026 The logchart Authors
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

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace logchart {

enum class ErrorCode {
  kDivisionByZero,
  kNegativeValuation,
  kZeroPolynomial,
  kExponentOverflow,
  kBudgetExceeded,
  kCapExceeded,
  kNotFree,
  kTorsionNotInvertible,
  kNoUnitContentGenerator,
  kRetryExhausted,
  kNotCertified,
  kPreconditionError,
  kParseError,
  kDomainError,
  kIdentityFailed,
  kInvalidArgument,
};

std::string_view error_code_name(ErrorCode code);

// Every failure surfaced by the library carries a machine-readable code so
// the CLI can map it to an exit status and a report field.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
        code_(code),
        detail_(message) {}

  ErrorCode code() const noexcept { return code_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace logchart
