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

#ifndef NONLOCAL_RECT_H
#define NONLOCAL_RECT_H

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nonlocal/ghz.h"
#include "nonlocal/model.h"

namespace nonlocal {

/// A_1 x ... x A_n with every A_i a nonempty subset of {0..k-1}.
struct Rectangle {
    /// Sorted, duplicate-free per-party input sets.
    std::vector<std::vector<int>> sets;

    int parties() const {
        return static_cast<int>(sets.size());
    }
    BigInt size() const;
    bool contains(std::span<const int> x) const;
    void validate(int k) const;

    static Rectangle full(int n, int k);
    /// Bit v of masks[i] selects input v for party i.
    static Rectangle from_masks(std::span<const std::uint32_t> masks, int k);
};

/// Inputs on which a deterministic model produces a; empty when some party
/// never outputs a_i.
std::optional<Rectangle> preimage(const DeterministicLhv &lhv, const Outcome &a);

/// counts[r] = #{x in R : (sum x_i) mod modulus = r}, by iterated cyclic
/// convolution of per-party indicator vectors.
std::vector<BigInt> residue_counts(const Rectangle &r, int modulus);

/// mu(R n adm(a)) / mu(R). Throws EmptyWeight when mu(R) = 0 and InvalidInput
/// for outcomes containing a no-click.
Rational advantage(const Rectangle &r, const Outcome &a, const CorrelationProblem &problem);

struct RectangleStats {
    BigInt size;
    int involvement = 0;
    /// Residues of sum x_i modulo 2k.
    std::vector<BigInt> counts;
    /// Valid inputs of R with F = 0 and F = 1.
    BigInt n0;
    BigInt n1;
    BiasValue bias;
    /// Advantage of even- and odd-parity outcomes under uniform mu on D;
    /// empty when R misses D.
    std::optional<Rational> advantage_even;
    std::optional<Rational> advantage_odd;
};

RectangleStats rectangle_stats(const Rectangle &r, const GhzInstance &inst);

/// max(n0, n1) / min(n0, n1) - 1. Throws EmptyIntersection when R misses D.
BiasValue bias(const Rectangle &r, const GhzInstance &inst);

struct AdvantageBiasReport {
    BiasValue bias;
    /// max over click-only a of advantage(R, a), computed from the problem.
    Rational max_advantage;
    /// (1 + bias) / (2 + bias), or 1 for infinite bias.
    Rational predicted_max_advantage;
    bool pass = false;
};

/// Checks "bias <= d iff every a-advantage <= (1+d)/(2+d)". Since
/// d -> (1+d)/(2+d) is strictly increasing, the equivalence holds for every d
/// exactly when the largest advantage equals the map applied to the bias.
AdvantageBiasReport advantage_bias_relation(const Rectangle &r, const GhzInstance &inst,
                                            const CorrelationProblem &problem);

/// Number of parties whose set has at least two inputs.
int involvement(const Rectangle &r);

/// |R| <= k^involvement, the size bound behind "small rectangles are insignificant".
bool satisfies_size_bound(const Rectangle &r, int k);

/// (1/2^c) eta_n (1 - eps/(1-delta)) <= l^n r_cap, exactly.
/// Throws DeltaOutOfRange unless 0 <= delta < 1.
bool theorem2_check(const Rational &delta, const Rational &r_cap, unsigned c, const Rational &eta_n,
                    const Rational &eps, int l, int n);

/// The same inequality solved for eta_n: 2^c l^n r_cap / (1 - eps/(1-delta)),
/// or empty when eps >= 1 - delta leaves eta_n unconstrained.
std::optional<Rational> theorem2_eta_bound(const Rational &delta, const Rational &r_cap, unsigned c,
                                           const Rational &eps, int l, int n);

enum class ScanMode { kExhaustive, kSymmetryReduced, kSampled };

std::string scan_mode_name(ScanMode mode);

struct ScanOptions {
    /// Maximum number of rectangles to visit.
    std::uint64_t budget = 5'000'000;
    /// Enumerate multisets of per-party sets instead of all ordered tuples.
    bool use_symmetry = true;
    /// Fall back to random rectangles when the enumeration exceeds the budget.
    bool allow_sampling = false;
    std::uint64_t samples = 100'000;
    std::uint64_t seed = 1;
    int threads = 1;
};

/// Upper envelope of (largest advantage, weight) over scanned rectangles.
struct RectangleProfile {
    GhzInstance instance;
    ScanMode mode = ScanMode::kExhaustive;
    std::uint64_t visited = 0;
    /// Largest advantage -> largest |R n D| seen with exactly that advantage.
    std::map<Rational, BigInt> best_count;

    bool exhaustive() const {
        return mode != ScanMode::kSampled;
    }
    /// max mu(R) over scanned rectangles whose largest advantage is >= delta.
    Rational r_cap(const Rational &delta) const;
    /// Same with advantage strictly above delta: the cap that holds for every
    /// delta' in (delta, next threshold].
    Rational r_cap_above(const Rational &delta) const;
    /// Distinct largest-advantage values, ascending.
    std::vector<Rational> thresholds() const;
};

std::uint64_t exhaustive_rectangle_count(int n, int k);
/// Number of rectangles the symmetry-reduced enumeration visits, saturating.
std::uint64_t reduced_rectangle_count(int n, int k);

RectangleProfile profile_rectangles(const GhzInstance &inst, const ScanOptions &options = {});

struct ScanResult {
    Rational delta;
    Rational r_cap;
    ScanMode mode = ScanMode::kExhaustive;
    std::uint64_t visited = 0;

    /// False when r_cap is only a lower bound from sampling.
    bool exhaustive() const {
        return mode != ScanMode::kSampled;
    }
};

ScanResult scan_rectangles(const GhzInstance &inst, const Rational &delta, const ScanOptions &options = {});

/// Visits all (2^k - 1)^n rectangles in lexicographic mask order.
void for_each_rectangle(int n, int k, const std::function<void(const Rectangle &)> &visit);

std::string stats_csv_header();
std::string stats_csv_row(const Rectangle &r, const RectangleStats &stats);

}  // namespace nonlocal

#endif
