// Copyright 2026 The nonlocal_lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef NONLOCAL_ERROR_H
#define NONLOCAL_ERROR_H

#include <stdexcept>
#include <string>
#include <string_view>

namespace nonlocal {

enum class ErrorKind {
    kInvalidArgument,
    kLengthMismatch,
    kInvalidInput,
    kDivisionByZeroEfficiency,
    kResourceLimit,
    kBudgetExceeded,
    kMalformedTree,
    kArityMismatch,
    kFlavorMismatch,
    kEmptyWeight,
    kEmptyIntersection,
    kDeltaOutOfRange,
    kModulusMismatch,
    kPreconditionViolated,
    kTooFewSets,
    kNotPowerOfTwo,
    kInfeasible,
    kParseError,
};

std::string_view error_kind_name(ErrorKind kind);

/// Every failure raised by the library carries a machine-readable kind so the
/// CLI can map it to a report field and tests can assert on it.
class Error : public std::runtime_error {
   public:
    Error(ErrorKind kind, const std::string &message);

    ErrorKind kind() const noexcept {
        return kind_;
    }

   private:
    ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string &message);

inline void require(bool condition, ErrorKind kind, const std::string &message) {
    if (!condition) {
        fail(kind, message);
    }
}

}  // namespace nonlocal

#endif
