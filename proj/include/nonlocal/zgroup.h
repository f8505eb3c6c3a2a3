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

#ifndef NONLOCAL_ZGROUP_H
#define NONLOCAL_ZGROUP_H

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "nonlocal/numeric.h"
#include "nonlocal/random.h"

namespace nonlocal {

/// Multiset over the cyclic group Z_T, stored as a multiplicity vector.
class MultisetZ {
   public:
    MultisetZ(int modulus, std::vector<BigInt> multiplicities);

    /// Each element of elems (reduced mod T) with multiplicity one per occurrence.
    static MultisetZ from_elements(int modulus, std::span<const int> elems);
    static MultisetZ singleton(int modulus, int element);

    int modulus() const {
        return static_cast<int>(mult_.size());
    }
    const std::vector<BigInt> &multiplicities() const {
        return mult_;
    }
    const BigInt &operator[](int x) const {
        return mult_[((x % modulus()) + modulus()) % modulus()];
    }
    BigInt total() const;

    bool operator==(const MultisetZ &other) const {
        return mult_ == other.mult_;
    }

   private:
    std::vector<BigInt> mult_;
};

/// Cyclic subgroup <h> of Z_T.
struct Subgroup {
    int modulus = 1;
    int generator = 0;

    std::vector<int> elements() const;
    int order() const;
};

/// A + B: cyclic convolution of multiplicities. Throws ModulusMismatch.
MultisetZ multiset_sum(const MultisetZ &a, const MultisetZ &b);

/// Smallest e with mu(x) <= (1+e) mu(x+g) for every x with mu(x) > 0 and
/// every g in H; infinite when such an x faces a zero.
BiasValue subgroup_bias(const MultisetZ &a, const Subgroup &h);

/// |f^{-1}(x)| for f(a) = (a_1 + ... + a_s) mod K over {0,1}^s, as binomial sums.
std::vector<BigInt> coin_counts(int s, int K);

/// |f^{-1}(x)| <= (1 + 4K/sqrt(s)) |f^{-1}(y)| for all x, y, decided exactly
/// in squared form. Throws PreconditionViolated when s < K^2.
bool check_coins_bound(int s, int K);

/// ({0, b})^{+s}: i*b with multiplicity C(s, i).
MultisetZ repeated_pair_sum(int b, int s, int T);

/// a <= sqrt(numerator_sq / denominator), decided as a^2 denominator <= numerator_sq.
/// Infinite a never satisfies it.
bool within_sqrt_bound(const BiasValue &a, const BigInt &numerator_sq, const BigInt &denominator);

struct Size2LemmaReport {
    Subgroup subgroup;
    /// Difference b shared by the most normalized sets {0, b}.
    int majority_difference = 0;
    /// How many sets normalize to {0, b}.
    std::int64_t copies = 0;
    BiasValue bias;
    /// Bias of the s copies alone and its bound 4|<b>|/sqrt(s).
    BiasValue copies_bias;
    bool copies_pass = false;
    /// Final verdict: bias <= 4 T^{3/2} / sqrt(r).
    bool pass = false;
    double bound = 0;
};

/// Checks the size-2 subset lemma on concrete sets: shift each set to contain
/// 0, take the most common difference b, and bound the bias of the full sum
/// with respect to <b>. Throws NotPowerOfTwo and TooFewSets (r < T^3).
Size2LemmaReport verify_size2_lemma(std::span<const std::array<int, 2>> sets, int T);

struct AdditionReport {
    Subgroup subgroup;
    BiasValue bias;
    /// 4 T^{3/2} / sqrt(r), for display; the verdict is exact.
    double bound = 0;
    bool pass = false;
    MultisetZ sum{1, {BigInt(1)}};
};

/// Exact A_1 + ... + A_r and its bias with respect to {0, T/2}; pass iff the
/// bias is at most 4 T^{3/2} / sqrt(r). Throws NotPowerOfTwo, TooFewSets and
/// InvalidInput (a set with fewer than two elements).
AdditionReport verify_addition_theorem(std::span<const std::vector<int>> sets, int T);

/// r subsets of Z_T, each of uniform size in [min_size, T], uniformly chosen.
std::vector<std::vector<int>> random_subsets(int T, std::int64_t r, int min_size, Rng &rng);
std::vector<std::array<int, 2>> random_pairs(int T, std::int64_t r, Rng &rng);

}  // namespace nonlocal

#endif
