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

#include <algorithm>

#include "nonlocal/error.h"
#include "nonlocal/zgroup.h"
#include "oracles.h"

namespace nonlocal {
namespace {

std::vector<BigInt> big(std::initializer_list<long> v) {
    std::vector<BigInt> out;
    for (long x : v) {
        out.emplace_back(x);
    }
    return out;
}

MultisetZ ms(int T, std::initializer_list<long> v) {
    return MultisetZ(T, big(v));
}

MultisetZ random_multiset(int T, Rng &rng, bool positive) {
    std::vector<BigInt> mult(T);
    for (auto &m : mult) {
        m = static_cast<long>(rng.below(6)) + (positive ? 1 : 0);
    }
    mult[rng.below(T)] += 1;
    return MultisetZ(T, mult);
}

TEST(zgroup, multiset_invariants) {
    EXPECT_THROW(ms(3, {0, 0, 0}), Error);
    EXPECT_THROW(ms(2, {1, -1}), Error);
    std::vector<int> elems{0, 0, 3};
    EXPECT_EQ(MultisetZ::from_elements(4, elems), ms(4, {2, 0, 0, 1}));
    EXPECT_EQ(MultisetZ::singleton(4, 2)[2], 1);
    EXPECT_EQ(ms(4, {2, 0, 0, 1})[-1], 1);
}

TEST(zgroup, sum_examples) {
    EXPECT_EQ(multiset_sum(ms(2, {1, 1}), ms(2, {1, 1})), ms(2, {2, 2}));
    EXPECT_EQ(multiset_sum(ms(4, {1, 1, 0, 0}), ms(4, {1, 1, 0, 0})), ms(4, {1, 2, 1, 0}));
    try {
        multiset_sum(ms(2, {1, 1}), ms(4, {1, 0, 0, 0}));
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::kModulusMismatch);
    }
}

TEST(zgroup, sum_algebra) {
    Rng rng(8);
    for (int trial = 0; trial < 200; trial++) {
        int T = 1 << (1 + rng.below(4));
        MultisetZ a = random_multiset(T, rng, false), b = random_multiset(T, rng, false),
                  c = random_multiset(T, rng, false);
        EXPECT_EQ(multiset_sum(a, b), multiset_sum(b, a));
        EXPECT_EQ(multiset_sum(multiset_sum(a, b), c), multiset_sum(a, multiset_sum(b, c)));
        EXPECT_EQ(multiset_sum(a, b).total(), a.total() * b.total());
        int d = static_cast<int>(rng.below(T));
        MultisetZ shifted = multiset_sum(a, MultisetZ::singleton(T, d));
        for (int x = 0; x < T; x++) {
            EXPECT_EQ(shifted[x + d], a[x]);
        }
    }
}

TEST(zgroup, subgroups) {
    Subgroup h{8, 6};
    std::vector<int> elems = h.elements();
    std::sort(elems.begin(), elems.end());
    EXPECT_EQ(elems, (std::vector<int>{0, 2, 4, 6}));
    EXPECT_EQ(h.order(), 4);
    EXPECT_EQ((Subgroup{4, 0}).order(), 1);
}

TEST(zgroup, bias_examples) {
    EXPECT_EQ(subgroup_bias(ms(4, {3, 3, 3, 3}), Subgroup{4, 1}), BiasValue::finite(0));
    EXPECT_TRUE(subgroup_bias(ms(4, {1, 2, 1, 0}), Subgroup{4, 2}).infinite);
    EXPECT_EQ(subgroup_bias(ms(4, {3, 0, 2, 0}), Subgroup{4, 2}), BiasValue::finite(make_rational(1, 2)));
    EXPECT_EQ(subgroup_bias(ms(4, {1, 2, 1, 0}), Subgroup{4, 0}), BiasValue::finite(0));
}

TEST(zgroup, adding_never_increases_bias) {
    Rng rng(31);
    for (int T : {2, 4, 8, 16}) {
        for (int trial = 0; trial < 1000; trial++) {
            MultisetZ a = random_multiset(T, rng, true);
            MultisetZ b = random_multiset(T, rng, false);
            Subgroup h{T, static_cast<int>(rng.below(T))};
            BiasValue before = subgroup_bias(a, h);
            ASSERT_FALSE(before.infinite);
            EXPECT_LE(subgroup_bias(multiset_sum(a, b), h), before);
            int d = static_cast<int>(rng.below(T));
            EXPECT_EQ(subgroup_bias(multiset_sum(a, MultisetZ::singleton(T, d)), h), before);
        }
    }
}

TEST(zgroup, coin_examples) {
    EXPECT_EQ(coin_counts(4, 2), big({8, 8}));
    EXPECT_EQ(coin_counts(2, 4), big({1, 2, 1, 0}));
    EXPECT_EQ(coin_counts(7, 1), big({128}));
    EXPECT_TRUE(check_coins_bound(4, 2));
    EXPECT_TRUE(check_coins_bound(16, 4));
    try {
        check_coins_bound(3, 2);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::kPreconditionViolated);
    }
}

TEST(zgroup, coin_counts_match_enumeration) {
    for (int s = 1; s <= 20; s++) {
        for (int K : {1, 2, 3, 4, 8}) {
            if (s > 16 && K != 2) {
                continue;
            }
            EXPECT_EQ(coin_counts(s, K), oracle::coin_counts(s, K)) << s << " " << K;
        }
    }
    BigInt total = 0;
    for (const auto &c : coin_counts(100, 16)) {
        total += c;
    }
    EXPECT_EQ(total, ipow(BigInt(2), 100));
}

TEST(zgroup, pair_sum_examples) {
    EXPECT_EQ(repeated_pair_sum(1, 2, 2), ms(2, {2, 2}));
    EXPECT_EQ(repeated_pair_sum(2, 3, 4), ms(4, {4, 0, 4, 0}));
    EXPECT_EQ(repeated_pair_sum(0, 5, 4), ms(4, {32, 0, 0, 0}));
    EXPECT_EQ(subgroup_bias(repeated_pair_sum(0, 5, 4), Subgroup{4, 0}), BiasValue::finite(0));
}

TEST(zgroup, sqrt_bound_is_exact) {
    EXPECT_TRUE(within_sqrt_bound(BiasValue::finite(make_rational(1, 2)), 1, 4));
    EXPECT_FALSE(within_sqrt_bound(BiasValue::finite(make_rational(1, 2)), 1, 5));
    EXPECT_FALSE(within_sqrt_bound(BiasValue::infinity(), 1000, 1));
}

TEST(zgroup, size2_lemma) {
    Rng rng(12);
    auto pairs = random_pairs(2, 8, rng);
    Size2LemmaReport r2 = verify_size2_lemma(pairs, 2);
    EXPECT_EQ(r2.bias, BiasValue::finite(0));
    EXPECT_TRUE(r2.pass);
    auto many = random_pairs(4, 6400, rng);
    Size2LemmaReport r4 = verify_size2_lemma(many, 4);
    EXPECT_TRUE(r4.pass);
    EXPECT_TRUE(r4.copies_pass);
    EXPECT_LE(r4.bias.to_double(), 0.4);
    try {
        verify_size2_lemma(std::span(many).first(10), 4);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::kTooFewSets);
    }
    try {
        verify_size2_lemma(many, 6);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::kNotPowerOfTwo);
    }
}

TEST(zgroup, addition_theorem) {
    std::vector<std::vector<int>> full(64, std::vector<int>{0, 1, 2, 3});
    AdditionReport uniform = verify_addition_theorem(full, 4);
    EXPECT_EQ(uniform.bias, BiasValue::finite(0));
    EXPECT_TRUE(uniform.pass);
    EXPECT_EQ(uniform.subgroup.generator, 2);
    for (auto [T, r] : {std::pair{4, 6400}, {8, 4096}}) {
        Rng rng(static_cast<std::uint64_t>(T));
        auto sets = random_subsets(T, r, 2, rng);
        AdditionReport report = verify_addition_theorem(sets, T);
        EXPECT_TRUE(report.pass);
        EXPECT_LE(report.bias.to_double(), report.bound);
    }
    try {
        std::vector<std::vector<int>> three(27, std::vector<int>{0, 1});
        verify_addition_theorem(three, 3);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::kNotPowerOfTwo);
    }
    std::vector<std::vector<int>> singletons(64, std::vector<int>{1});
    EXPECT_THROW(verify_addition_theorem(singletons, 4), Error);
}

TEST(zgroup, random_sets_are_seeded) {
    Rng a(99), b(99);
    EXPECT_EQ(random_subsets(8, 600, 2, a), random_subsets(8, 600, 2, b));
    Rng c(5);
    for (const auto &set : random_subsets(8, 600, 3, c)) {
        EXPECT_GE(set.size(), 3u);
        for (std::size_t i = 1; i < set.size(); i++) {
            EXPECT_LT(set[i - 1], set[i]);
        }
    }
}

}  // namespace
}  // namespace nonlocal
