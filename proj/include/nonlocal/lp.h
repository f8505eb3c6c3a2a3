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

#ifndef NONLOCAL_LP_H
#define NONLOCAL_LP_H

#include <cstdint>
#include <vector>

#include "nonlocal/numeric.h"

namespace nonlocal {

/// maximize c.x subject to A x = b, x >= 0.
struct LinearProgram {
    std::vector<std::vector<Rational>> a;
    std::vector<Rational> b;
    std::vector<Rational> c;
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

struct LpSolution {
    LpStatus status = LpStatus::kInfeasible;
    std::vector<Rational> x;
    Rational objective;
    /// Optimal dual y: A^T y >= c and b.y = objective certify optimality.
    std::vector<Rational> dual;
    std::uint64_t pivots = 0;
};

/// Two-phase tableau simplex in exact arithmetic with Bland's rule.
LpSolution solve_lp(const LinearProgram &lp);

}  // namespace nonlocal

#endif
