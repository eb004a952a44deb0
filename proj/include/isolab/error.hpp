// Copyright 2026 The isolab Authors
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
#ifndef ISOLAB_ERROR_HPP
#define ISOLAB_ERROR_HPP

#include <stdexcept>
#include <string>

namespace isolab {

/// Failure categories. The numeric values are mirrored by the C API status
/// codes in isolab.h and must stay in sync.
enum class ErrorCode {
  invalid_argument = 1,
  dimension_mismatch = 2,
  refused = 3,
  not_closed = 4,
  validation = 5,
  parse = 6,
  numerical = 7,
  limit_exceeded = 8,
};

const char* to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace isolab

#endif  // ISOLAB_ERROR_HPP
