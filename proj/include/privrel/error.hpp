// Copyright 2026 The privrel Authors
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

#ifndef PRIVREL_ERROR_HPP
#define PRIVREL_ERROR_HPP

#include <stdexcept>
#include <string>

namespace privrel {

enum class ErrorCode {
  kInvalidArgument = 1,
  kDimensionMismatch = 2,
  kParse = 3,
  kIo = 4,
  kDatabaseTooSmall = 5,
  kParameterOverflow = 6,
  kBudgetExceeded = 7,
  kCapability = 8,
  kFeatureOverflow = 9,
  kTraining = 10,
  kLearnerFailure = 11,
  kInternal = 12,
};

const char* error_code_name(ErrorCode code);

// All recoverable failures in the library surface as an Error carrying a
// machine-readable code; the C API maps codes one-to-one.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace privrel

#endif  // PRIVREL_ERROR_HPP
