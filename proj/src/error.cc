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

#include "nonlocal/error.h"

namespace nonlocal {

namespace {

const char *kErrorNames[] = {
    "InvalidArgument",    "LengthMismatch", "InvalidInput",     "DivisionByZeroEfficiency",
    "ResourceLimit",      "BudgetExceeded", "MalformedTree",    "ArityMismatch",
    "FlavorMismatch",     "EmptyWeight",    "EmptyIntersection", "DeltaOutOfRange",
    "ModulusMismatch",    "PreconditionViolated", "TooFewSets", "NotPowerOfTwo",
    "Infeasible",         "ParseError",
};

}  // namespace

std::string_view error_kind_name(ErrorKind kind) {
    return kErrorNames[static_cast<int>(kind)];
}

Error::Error(ErrorKind kind, const std::string &message)
    : std::runtime_error(std::string(error_kind_name(kind)) + ": " + message), kind_(kind) {
}

void fail(ErrorKind kind, const std::string &message) {
    throw Error(kind, message);
}

}  // namespace nonlocal
