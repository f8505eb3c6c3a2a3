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

#include <cmath>

#include "nonlocal/error.h"
#include "nonlocal/ghz.h"
#include "oracles.h"

namespace nonlocal {
namespace {

GhzInstance inst(int n, int k) {
    return GhzInstance::create(n, k);
}

TEST(ghz, instance_bounds) {
    EXPECT_THROW(inst(1, 2), Error);
    EXPECT_THROW(inst(3, 1), Error);
    EXPECT_EQ(GhzInstance::with_default_settings(2).k, 2);
    EXPECT_EQ(GhzInstance::with_default_settings(64).k, 2);
    EXPECT_EQ(GhzInstance::with_default_settings(65).k, 4);
    EXPECT_EQ(GhzInstance::with_default_settings(4096).k, 4);
    EXPECT_EQ(GhzInstance::with_default_settings(4097).k, 8);
}

TEST(ghz, validity) {
    std::vector<int> a{1, 1, 0}, b{1, 0, 0}, c{1, 1, 1, 1};
    EXPECT_TRUE(is_valid(inst(3, 2), a));
    EXPECT_FALSE(is_valid(inst(3, 2), b));
    EXPECT_TRUE(is_valid(inst(4, 4), c));
    std::vector<int> short_x{0, 0};
    EXPECT_THROW(is_valid(inst(3, 2), short_x), Error);
}

TEST(ghz, promise_bit) {
    std::vector<int> z{0, 0, 0}, a{1, 1, 0}, b{3, 3, 1, 1}, bad{1, 0, 0};
    EXPECT_EQ(f_bit(inst(3, 2), z), 0);
    EXPECT_EQ(f_bit(inst(3, 2), a), 1);
    EXPECT_EQ(f_bit(inst(4, 4), b), 0);
    EXPECT_THROW(f_bit(inst(3, 2), bad), Error);
    for (int k : {2, 3, 4, 8}) {
        for (const auto &x : oracle::valid_inputs(4, k)) {
            EXPECT_EQ(f_bit(inst(4, k), x), oracle::promise_bit(x, k));
        }
    }
}

TEST(ghz, target_examples) {
    std::vector<int> z{0, 0, 0}, a{1, 1, 0}, b{1, 1};
    EXPECT_EQ(target_probability(inst(3, 2), z, Outcome{{0, 0, 0}}), make_rational(1, 4));
    EXPECT_EQ(target_probability(inst(3, 2), a, Outcome{{0, 0, 0}}), 0);
    EXPECT_EQ(target_probability(inst(2, 2), b, Outcome{{0, 1}}), make_rational(1, 2));
}

TEST(ghz, target_support_shape) {
    for (int n = 2; n <= 5; n++) {
        for (int k : {2, 4}) {
            for (const auto &x : oracle::valid_inputs(n, k)) {
                int nonzero = 0;
                for (const auto &a : oracle::all_vectors(n, 2)) {
                    Rational p = target_probability(inst(n, k), x, Outcome{a});
                    if (p != 0) {
                        nonzero++;
                        EXPECT_EQ(p, inverse_power_of_two(n - 1));
                    }
                }
                EXPECT_EQ(nonzero, 1 << (n - 1));
            }
        }
    }
}

TEST(ghz, quantum_examples) {
    std::vector<int> z{0, 0, 0}, a{1, 1, 0}, b{1, 0, 0};
    EXPECT_NEAR(quantum_probability(inst(3, 2), z, Outcome{{0, 0, 0}}), 0.25, kRealTolerance);
    EXPECT_NEAR(quantum_probability(inst(3, 2), a, Outcome{{0, 0, 0}}), 0.0, kRealTolerance);
    EXPECT_NEAR(quantum_probability(inst(3, 2), b, Outcome{{0, 0, 0}}), 0.125, kRealTolerance);
}

TEST(ghz, quantum_matches_state_vector) {
    for (int n = 2; n <= 5; n++) {
        for (int k : {2, 3, 4}) {
            for (const auto &x : oracle::all_vectors(n, k)) {
                double total = 0;
                for (const auto &a : oracle::all_vectors(n, 2)) {
                    double q = quantum_probability(inst(n, k), x, Outcome{a});
                    EXPECT_NEAR(q, oracle::state_vector_probability(n, k, x, a), kRealTolerance);
                    EXPECT_NEAR(q, quantum_probability_closed_form(inst(n, k), x, Outcome{a}), kRealTolerance);
                    total += q;
                }
                EXPECT_NEAR(total, 1.0, kRealTolerance);
            }
        }
    }
}

TEST(ghz, normalization_up_to_eight_parties) {
    Rng rng(2);
    for (int n = 6; n <= 8; n++) {
        for (int trial = 0; trial < 20; trial++) {
            std::vector<int> x(n);
            for (int &v : x) {
                v = static_cast<int>(rng.below(4));
            }
            double total = 0;
            for (const auto &a : oracle::all_vectors(n, 2)) {
                total += quantum_probability(inst(n, 4), x, Outcome{a});
            }
            EXPECT_NEAR(total, 1.0, kRealTolerance);
        }
    }
}

TEST(ghz, problem_examples) {
    CorrelationProblem p3 = ghz_problem(inst(3, 2));
    EXPECT_EQ(p3.mu.size(), 4u);
    for (const auto &[x, w] : p3.mu) {
        EXPECT_EQ(w, make_rational(1, 4));
    }
    CorrelationProblem p2 = ghz_problem(inst(2, 2));
    EXPECT_EQ(p2.mu.size(), 2u);
    EXPECT_TRUE(p2.in_support({0, 0}));
    EXPECT_TRUE(p2.in_support({1, 1}));
    EXPECT_EQ(ghz_problem(inst(4, 4)).mu.size(), 64u);
    EXPECT_EQ(inst(4, 4).valid_input_count(), 64);
    auto expected = oracle::valid_inputs(5, 3);
    EXPECT_EQ(valid_inputs(inst(5, 3)), expected);
}

TEST(ghz, enumeration_cap) {
    try {
        ghz_problem(inst(12, 4), 1000);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::kResourceLimit);
    }
}

TEST(ghz, phase) {
    EXPECT_DOUBLE_EQ((PhaseMeasurement{1, 4}).phase(), std::acos(-1.0) / 4);
    EXPECT_LT((PhaseMeasurement{3, 4}).phase(), std::acos(-1.0));
}

}  // namespace
}  // namespace nonlocal
