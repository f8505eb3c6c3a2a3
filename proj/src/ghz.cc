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

#include "nonlocal/ghz.h"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include "nonlocal/error.h"

namespace nonlocal {

namespace {

int input_sum(const GhzInstance &inst, std::span<const int> x) {
    require(static_cast<int>(x.size()) == inst.n, ErrorKind::kLengthMismatch, "input length != n");
    int sum = 0;
    for (int v : x) {
        require(v >= 0 && v < inst.k, ErrorKind::kInvalidInput, "input entry out of range");
        sum += v;
    }
    return sum;
}

int outcome_parity(const GhzInstance &inst, const Outcome &a) {
    require(static_cast<int>(a.size()) == inst.n, ErrorKind::kLengthMismatch, "outcome length != n");
    int parity = 0;
    for (int v : a.values) {
        require(v == 0 || v == 1, ErrorKind::kInvalidInput, "GHZ outcomes are click-only bits");
        parity ^= v;
    }
    return parity;
}

bool next_vector(std::vector<int> &v, int radix) {
    for (std::size_t i = v.size(); i-- > 0;) {
        if (++v[i] < radix) {
            return true;
        }
        v[i] = 0;
    }
    return false;
}

}  // namespace

GhzInstance GhzInstance::create(int n, int k) {
    require(n >= 2, ErrorKind::kInvalidArgument, "GHZ instance needs n >= 2");
    require(k >= 2, ErrorKind::kInvalidArgument, "GHZ instance needs k >= 2");
    return GhzInstance{n, k};
}

GhzInstance GhzInstance::with_default_settings(int n) {
    int k = static_cast<int>(std::ceil(std::pow(static_cast<double>(n), 1.0 / 6.0) - kRealTolerance));
    k = std::max(k, 2);
    int pow2 = 1;
    while (pow2 < k) {
        pow2 *= 2;
    }
    return create(n, pow2);
}

BigInt GhzInstance::valid_input_count() const {
    return ipow(BigInt(k), static_cast<unsigned>(n - 1));
}

double PhaseMeasurement::phase() const {
    return std::numbers::pi * setting / k;
}

bool is_valid(const GhzInstance &inst, std::span<const int> x) {
    return input_sum(inst, x) % inst.k == 0;
}

int f_bit(const GhzInstance &inst, std::span<const int> x) {
    int sum = input_sum(inst, x);
    require(sum % inst.k == 0, ErrorKind::kInvalidInput, "F is defined on valid inputs only");
    return (sum % (2 * inst.k)) / inst.k;
}

Rational target_probability(const GhzInstance &inst, std::span<const int> x, const Outcome &a) {
    int f = f_bit(inst, x);
    if (outcome_parity(inst, a) != f) {
        return 0;
    }
    return inverse_power_of_two(static_cast<unsigned>(inst.n - 1));
}

double quantum_probability(const GhzInstance &inst, std::span<const int> x, const Outcome &a) {
    input_sum(inst, x);
    outcome_parity(inst, a);
    // <phi_a(x_i)| = (<0| + (-1)^a e^{-i theta} <1|) / sqrt(2).
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    std::complex<double> zeros = inv_sqrt2;
    std::complex<double> ones = inv_sqrt2;
    for (int i = 0; i < inst.n; i++) {
        PhaseMeasurement m{x[i], inst.k};
        std::complex<double> bra_one = std::polar(inv_sqrt2, -m.phase());
        if (a.values[i] == 1) {
            bra_one = -bra_one;
        }
        zeros *= inv_sqrt2;
        ones *= bra_one;
    }
    return std::norm(zeros + ones);
}

double quantum_probability_closed_form(const GhzInstance &inst, std::span<const int> x, const Outcome &a) {
    int sx = input_sum(inst, x);
    int sa = 0;
    for (int v : a.values) {
        sa += v;
    }
    outcome_parity(inst, a);
    double angle = std::numbers::pi * (sa - static_cast<double>(sx) / inst.k);
    return (1.0 + std::cos(angle)) / std::ldexp(1.0, inst.n);
}

std::vector<InputVector> valid_inputs(const GhzInstance &inst, std::uint64_t enumeration_cap) {
    require(inst.valid_input_count() <= BigInt(std::to_string(enumeration_cap)), ErrorKind::kResourceLimit,
            "k^(n-1) = " + to_string(inst.valid_input_count()) + " valid inputs exceed the enumeration cap");
    // Choose the first n-1 entries freely; the last one closes the sum.
    std::vector<InputVector> out;
    std::vector<int> head(inst.n - 1, 0);
    do {
        int sum = 0;
        for (int v : head) {
            sum += v;
        }
        InputVector x = head;
        x.push_back((inst.k - sum % inst.k) % inst.k);
        out.push_back(std::move(x));
    } while (next_vector(head, inst.k));
    std::sort(out.begin(), out.end());
    return out;
}

CorrelationProblem ghz_problem(const GhzInstance &inst, std::uint64_t enumeration_cap) {
    GhzInstance checked = GhzInstance::create(inst.n, inst.k);
    CorrelationProblem p;
    p.n = checked.n;
    p.k = checked.k;
    p.l = 2;
    auto inputs = valid_inputs(checked, enumeration_cap);
    Rational weight(BigInt(1), checked.valid_input_count());
    Rational mass = inverse_power_of_two(static_cast<unsigned>(checked.n - 1));
    for (auto &x : inputs) {
        int f = f_bit(checked, x);
        OutcomeDistribution row;
        Outcome a{std::vector<int>(checked.n, 0)};
        do {
            if (outcome_parity(checked, a) == f) {
                row.emplace_hint(row.end(), a, mass);
            }
        } while (next_vector(a.values, 2));
        p.target.emplace_hint(p.target.end(), x, std::move(row));
        p.mu.emplace_hint(p.mu.end(), std::move(x), weight);
    }
    return p;
}

namespace {

ProtocolTree broadcast_subtree(const GhzInstance &inst, InputVector &prefix, const std::vector<int> &pattern) {
    int depth = static_cast<int>(prefix.size());
    if (depth == inst.n) {
        int sum = 0;
        for (int v : prefix) {
            sum += v;
        }
        int f = sum % inst.k == 0 ? (sum % (2 * inst.k)) / inst.k : 0;
        DeterministicLhv lhv = DeterministicLhv::constant(inst.n, inst.k, 0);
        int parity = 0;
        for (int i = 0; i + 1 < inst.n; i++) {
            std::fill(lhv.tables[i].begin(), lhv.tables[i].end(), pattern[i]);
            parity ^= pattern[i];
        }
        std::fill(lhv.tables[inst.n - 1].begin(), lhv.tables[inst.n - 1].end(), f ^ parity);
        return ProtocolTree::make_leaf(inst.k, std::move(lhv));
    }
    std::vector<std::pair<std::vector<int>, ProtocolTree>> children;
    for (int v = 0; v < inst.k; v++) {
        prefix.push_back(v);
        children.emplace_back(std::vector<int>{v}, broadcast_subtree(inst, prefix, pattern));
        prefix.pop_back();
    }
    return ProtocolTree::make_node(depth, std::move(children));
}

}  // namespace

ProtocolTree broadcast_strategy(const GhzInstance &inst) {
    GhzInstance checked = GhzInstance::create(inst.n, inst.k);
    InputVector prefix;
    // All-zero pattern on parties 0..n-2: the last party carries F(x).
    return broadcast_subtree(checked, prefix, std::vector<int>(checked.n - 1, 0));
}

MixedProtocol broadcast_mixture(const GhzInstance &inst) {
    GhzInstance checked = GhzInstance::create(inst.n, inst.k);
    MixedProtocol m;
    Rational weight = inverse_power_of_two(static_cast<unsigned>(checked.n - 1));
    std::vector<int> pattern(checked.n - 1, 0);
    do {
        InputVector prefix;
        m.components.push_back(WeightedProtocol{broadcast_subtree(checked, prefix, pattern), weight});
    } while (next_vector(pattern, 2));
    return m;
}

}  // namespace nonlocal
