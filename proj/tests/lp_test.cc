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

#include <gtest/gtest.h>

#include "nonlocal/lp.h"
#include "nonlocal/random.h"

namespace nonlocal {
namespace {

using Matrix = std::vector<std::vector<Rational>>;

Rational q(long p, long d = 1) {
    return make_rational(p, d);
}

/// Primal feasibility, dual feasibility and zero gap.
void expect_certificate(const LinearProgram &lp, const LpSolution &sol) {
    ASSERT_EQ(sol.status, LpStatus::kOptimal);
    ASSERT_EQ(sol.x.size(), lp.c.size());
    ASSERT_EQ(sol.dual.size(), lp.b.size());
    Rational primal = 0, dual = 0;
    for (std::size_t j = 0; j < lp.c.size(); j++) {
        EXPECT_GE(sol.x[j], 0);
        primal += lp.c[j] * sol.x[j];
        Rational reduced = 0;
        for (std::size_t i = 0; i < lp.b.size(); i++) {
            reduced += lp.a[i][j] * sol.dual[i];
        }
        EXPECT_GE(reduced, lp.c[j]) << "column " << j;
    }
    for (std::size_t i = 0; i < lp.b.size(); i++) {
        Rational row = 0;
        for (std::size_t j = 0; j < lp.c.size(); j++) {
            row += lp.a[i][j] * sol.x[j];
        }
        EXPECT_EQ(row, lp.b[i]);
        dual += lp.b[i] * sol.dual[i];
    }
    EXPECT_EQ(primal, sol.objective);
    EXPECT_EQ(dual, sol.objective);
}

TEST(lp, box) {
    LinearProgram lp{Matrix{{1, 0, 1, 0}, {0, 1, 0, 1}}, {4, 3}, {1, 1, 0, 0}};
    LpSolution sol = solve_lp(lp);
    EXPECT_EQ(sol.objective, 7);
    expect_certificate(lp, sol);
}

TEST(lp, infeasible_and_unbounded) {
    LinearProgram infeasible{Matrix{{1, 1}}, {-1}, {1, 0}};
    EXPECT_EQ(solve_lp(infeasible).status, LpStatus::kInfeasible);
    LinearProgram unbounded{Matrix{{1, -1}}, {0}, {1, 0}};
    EXPECT_EQ(solve_lp(unbounded).status, LpStatus::kUnbounded);
}

TEST(lp, redundant_rows) {
    LinearProgram lp{Matrix{{1, 1}, {2, 2}}, {1, 2}, {1, 0}};
    LpSolution sol = solve_lp(lp);
    EXPECT_EQ(sol.objective, 1);
    expect_certificate(lp, sol);
}

TEST(lp, degenerate_cycling_example) {
    // Columns: three slacks, then x4..x7.
    LinearProgram lp{Matrix{{1, 0, 0, q(1, 4), -8, -1, 9},
                            {0, 1, 0, q(1, 2), -12, q(-1, 2), 3},
                            {0, 0, 1, 0, 0, 1, 0}},
                     {0, 0, 1},
                     {0, 0, 0, q(3, 4), -20, q(1, 2), -6}};
    LpSolution sol = solve_lp(lp);
    EXPECT_EQ(sol.objective, q(5, 4));
    expect_certificate(lp, sol);
}

TEST(lp, random_programs_carry_certificates) {
    Rng rng(77);
    int optimal = 0;
    for (int trial = 0; trial < 300; trial++) {
        int m = 1 + static_cast<int>(rng.below(4));
        int n = m + 1 + static_cast<int>(rng.below(5));
        LinearProgram lp;
        lp.a.assign(m, std::vector<Rational>(n));
        std::vector<Rational> x0(n);
        for (auto &v : x0) {
            v = static_cast<long>(rng.below(3));
        }
        lp.b.assign(m, 0);
        for (int i = 0; i < m; i++) {
            for (int j = 0; j < n; j++) {
                lp.a[i][j] = static_cast<long>(rng.below(7)) - 2;
                lp.b[i] += lp.a[i][j] * x0[j];
            }
        }
        for (int j = 0; j < n; j++) {
            lp.c.push_back(static_cast<long>(rng.below(9)) - 4);
        }
        LpSolution sol = solve_lp(lp);
        ASSERT_NE(sol.status, LpStatus::kInfeasible);
        if (sol.status == LpStatus::kOptimal) {
            optimal++;
            expect_certificate(lp, sol);
            Rational at_x0 = 0;
            for (int j = 0; j < n; j++) {
                at_x0 += lp.c[j] * x0[j];
            }
            EXPECT_GE(sol.objective, at_x0);
        }
    }
    EXPECT_GT(optimal, 50);
}

}  // namespace
}  // namespace nonlocal
