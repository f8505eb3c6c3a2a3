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

#include "nonlocal/zgroup.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "nonlocal/error.h"

namespace nonlocal {

MultisetZ::MultisetZ(int modulus, std::vector<BigInt> multiplicities) : mult_(std::move(multiplicities)) {
    require(modulus >= 1, ErrorKind::kInvalidArgument, "modulus must be >= 1");
    require(static_cast<int>(mult_.size()) == modulus, ErrorKind::kLengthMismatch,
            "multiplicity vector length != modulus");
    BigInt total = 0;
    for (const auto &m : mult_) {
        require(m >= 0, ErrorKind::kInvalidArgument, "negative multiplicity");
        total += m;
    }
    require(total > 0, ErrorKind::kInvalidArgument, "multiset is empty");
}

MultisetZ MultisetZ::from_elements(int modulus, std::span<const int> elems) {
    require(modulus >= 1, ErrorKind::kInvalidArgument, "modulus must be >= 1");
    std::vector<BigInt> mult(modulus, 0);
    for (int e : elems) {
        mult[((e % modulus) + modulus) % modulus] += 1;
    }
    return MultisetZ(modulus, std::move(mult));
}

MultisetZ MultisetZ::singleton(int modulus, int element) {
    return from_elements(modulus, std::span<const int>(&element, 1));
}

BigInt MultisetZ::total() const {
    BigInt t = 0;
    for (const auto &m : mult_) {
        t += m;
    }
    return t;
}

std::vector<int> Subgroup::elements() const {
    std::vector<int> out;
    for (int i = 0; i < order(); i++) {
        out.push_back(static_cast<int>((static_cast<long long>(i) * generator) % modulus));
    }
    return out;
}

int Subgroup::order() const {
    int h = ((generator % modulus) + modulus) % modulus;
    return modulus / std::gcd(h, modulus);
}

MultisetZ multiset_sum(const MultisetZ &a, const MultisetZ &b) {
    require(a.modulus() == b.modulus(), ErrorKind::kModulusMismatch, "multisets live in different groups");
    int T = a.modulus();
    std::vector<BigInt> out(T, 0);
    for (int y = 0; y < T; y++) {
        const BigInt &weight = b.multiplicities()[y];
        if (weight == 0) {
            continue;
        }
        for (int x = 0; x < T; x++) {
            const BigInt &m = a.multiplicities()[x];
            if (m != 0) {
                out[(x + y) % T] += m * weight;
            }
        }
    }
    return MultisetZ(T, std::move(out));
}

BiasValue subgroup_bias(const MultisetZ &a, const Subgroup &h) {
    require(a.modulus() == h.modulus, ErrorKind::kModulusMismatch, "subgroup of a different group");
    int T = a.modulus();
    Rational worst = 1;
    for (int x = 0; x < T; x++) {
        const BigInt &mx = a.multiplicities()[x];
        if (mx == 0) {
            continue;
        }
        for (int g : h.elements()) {
            const BigInt &my = a.multiplicities()[(x + g) % T];
            if (my == 0) {
                return BiasValue::infinity();
            }
            Rational ratio(mx, my);
            if (ratio > worst) {
                worst = ratio;
            }
        }
    }
    worst.canonicalize();
    return BiasValue::finite(worst - 1);
}

namespace {

/// Row s of Pascal's triangle.
std::vector<BigInt> binomial_row(int s) {
    std::vector<BigInt> row(s + 1);
    row[0] = 1;
    for (int j = 0; j < s; j++) {
        row[j + 1] = row[j] * (s - j);
        mpz_divexact_ui(row[j + 1].get_mpz_t(), row[j + 1].get_mpz_t(), static_cast<unsigned long>(j + 1));
    }
    return row;
}

void require_power_of_two(int T) {
    require(T >= 2 && is_power_of_two(static_cast<std::uint64_t>(T)), ErrorKind::kNotPowerOfTwo,
            "T = " + std::to_string(T) + " is not a power of two >= 2");
}

void require_enough_sets(std::size_t r, int T) {
    std::uint64_t cube = static_cast<std::uint64_t>(T) * T * T;
    require(r >= cube, ErrorKind::kTooFewSets,
            "r = " + std::to_string(r) + " sets, need at least T^3 = " + std::to_string(cube));
}

}  // namespace

std::vector<BigInt> coin_counts(int s, int K) {
    require(s >= 1 && K >= 1, ErrorKind::kInvalidArgument, "coin counting needs s >= 1 and K >= 1");
    std::vector<BigInt> counts(K, 0);
    auto row = binomial_row(s);
    for (int j = 0; j <= s; j++) {
        counts[j % K] += row[j];
    }
    return counts;
}

bool check_coins_bound(int s, int K) {
    require(s >= 1 && K >= 1, ErrorKind::kInvalidArgument, "coin counting needs s >= 1 and K >= 1");
    require(static_cast<long long>(s) >= static_cast<long long>(K) * K, ErrorKind::kPreconditionViolated,
            "coin bound needs s >= K^2");
    auto counts = coin_counts(s, K);
    auto [lo, hi] = std::minmax_element(counts.begin(), counts.end());
    // (hi - lo) sqrt(s) <= 4 K lo, both sides nonnegative.
    BigInt gap = *hi - *lo;
    BigInt lhs = gap * gap * s;
    BigInt rhs = BigInt(16) * K * K * (*lo) * (*lo);
    return lhs <= rhs;
}

MultisetZ repeated_pair_sum(int b, int s, int T) {
    require(s >= 1, ErrorKind::kInvalidArgument, "need s >= 1 copies");
    require(T >= 1, ErrorKind::kInvalidArgument, "modulus must be >= 1");
    b = ((b % T) + T) % T;
    std::vector<BigInt> mult(T, 0);
    auto row = binomial_row(s);
    for (int i = 0; i <= s; i++) {
        mult[static_cast<int>((static_cast<long long>(i) * b) % T)] += row[i];
    }
    return MultisetZ(T, std::move(mult));
}

bool within_sqrt_bound(const BiasValue &a, const BigInt &numerator_sq, const BigInt &denominator) {
    if (a.infinite) {
        return false;
    }
    Rational lhs = a.value * a.value * Rational(denominator);
    return lhs <= Rational(numerator_sq);
}

Size2LemmaReport verify_size2_lemma(std::span<const std::array<int, 2>> sets, int T) {
    require_power_of_two(T);
    require_enough_sets(sets.size(), T);
    std::vector<std::int64_t> by_difference(T, 0);
    MultisetZ sum = MultisetZ::singleton(T, 0);
    for (const auto &pair : sets) {
        int u = ((pair[0] % T) + T) % T;
        int v = ((pair[1] % T) + T) % T;
        require(u != v, ErrorKind::kInvalidInput, "size-2 set has a repeated element");
        // {u, v} + {-u} = {0, v-u} and {u, v} + {-v} = {0, u-v}: both name the same class.
        int d = (v - u + T) % T;
        by_difference[std::min(d, T - d)]++;
        std::array<int, 2> elems{u, v};
        sum = multiset_sum(sum, MultisetZ::from_elements(T, elems));
    }
    Size2LemmaReport report;
    report.majority_difference =
        static_cast<int>(std::max_element(by_difference.begin(), by_difference.end()) - by_difference.begin());
    report.copies = by_difference[report.majority_difference];
    report.subgroup = Subgroup{T, report.majority_difference};

    int order = report.subgroup.order();
    MultisetZ copies = repeated_pair_sum(report.majority_difference, static_cast<int>(report.copies), T);
    report.copies_bias = subgroup_bias(copies, report.subgroup);
    report.copies_pass =
        within_sqrt_bound(report.copies_bias, BigInt(16) * order * order, BigInt(static_cast<long>(report.copies)));

    report.bias = subgroup_bias(sum, report.subgroup);
    BigInt r(static_cast<unsigned long>(sets.size()));
    report.pass = within_sqrt_bound(report.bias, BigInt(16) * T * T * T, r);
    report.bound = 4.0 * std::pow(T, 1.5) / std::sqrt(static_cast<double>(sets.size()));
    return report;
}

AdditionReport verify_addition_theorem(std::span<const std::vector<int>> sets, int T) {
    require_power_of_two(T);
    require_enough_sets(sets.size(), T);
    // Running convolution; each step shifts the current vector by every element.
    std::vector<BigInt> cur(T, 0), next(T, 0);
    cur[0] = 1;
    std::vector<char> present(T);
    for (const auto &set : sets) {
        std::fill(present.begin(), present.end(), 0);
        int distinct = 0;
        for (int e : set) {
            int v = ((e % T) + T) % T;
            distinct += !present[v];
            present[v] = 1;
        }
        require(distinct >= 2 && distinct == static_cast<int>(set.size()), ErrorKind::kInvalidInput,
                "every set needs at least two distinct elements");
        for (auto &c : next) {
            c = 0;
        }
        for (int e = 0; e < T; e++) {
            if (!present[e]) {
                continue;
            }
            for (int x = 0; x < T; x++) {
                next[(x + e) % T] += cur[x];
            }
        }
        std::swap(cur, next);
    }
    AdditionReport report;
    report.subgroup = Subgroup{T, T / 2};
    report.sum = MultisetZ(T, std::move(cur));
    report.bias = subgroup_bias(report.sum, report.subgroup);
    BigInt r(static_cast<unsigned long>(sets.size()));
    report.pass = within_sqrt_bound(report.bias, BigInt(16) * T * T * T, r);
    report.bound = 4.0 * std::pow(T, 1.5) / std::sqrt(static_cast<double>(sets.size()));
    return report;
}

std::vector<std::vector<int>> random_subsets(int T, std::int64_t r, int min_size, Rng &rng) {
    require(T >= 1 && min_size >= 1 && min_size <= T, ErrorKind::kInvalidArgument, "bad subset shape");
    std::vector<std::vector<int>> out;
    out.reserve(static_cast<std::size_t>(r));
    std::vector<int> pool(T);
    for (std::int64_t i = 0; i < r; i++) {
        std::iota(pool.begin(), pool.end(), 0);
        int size = rng.uniform_int(min_size, T);
        for (int j = 0; j < size; j++) {
            std::swap(pool[j], pool[j + static_cast<int>(rng.below(static_cast<std::uint64_t>(T - j)))]);
        }
        std::vector<int> set(pool.begin(), pool.begin() + size);
        std::sort(set.begin(), set.end());
        out.push_back(std::move(set));
    }
    return out;
}

std::vector<std::array<int, 2>> random_pairs(int T, std::int64_t r, Rng &rng) {
    require(T >= 2, ErrorKind::kInvalidArgument, "pairs need T >= 2");
    std::vector<std::array<int, 2>> out;
    out.reserve(static_cast<std::size_t>(r));
    for (std::int64_t i = 0; i < r; i++) {
        int u = static_cast<int>(rng.below(T));
        int v = static_cast<int>(rng.below(T - 1));
        if (v >= u) {
            v++;
        }
        out.push_back({u, v});
    }
    return out;
}

}  // namespace nonlocal
