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


#ifndef NONLOCAL_TESTS_ORACLES_H
#define NONLOCAL_TESTS_ORACLES_H

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

#include "nonlocal/model.h"
#include "nonlocal/numeric.h"
#include "nonlocal/protocol.h"
#include "nonlocal/random.h"
#include "nonlocal/rect.h"

namespace nonlocal::oracle {

/// Every vector in {0..radix-1}^n, last entry fastest.
inline std::vector<std::vector<int>> all_vectors(int n, int radix) {
    std::vector<std::vector<int>> out;
    std::vector<int> v(n, 0);
    while (true) {
        out.push_back(v);
        int i = n - 1;
        while (i >= 0 && ++v[i] == radix) {
            v[i--] = 0;
        }
        if (i < 0) {
            return out;
        }
    }
}

inline int sum(const std::vector<int> &v) {
    int s = 0;
    for (int x : v) {
        s += x;
    }
    return s;
}

inline std::vector<std::vector<int>> valid_inputs(int n, int k) {
    std::vector<std::vector<int>> out;
    for (auto &x : all_vectors(n, k)) {
        if (sum(x) % k == 0) {
            out.push_back(x);
        }
    }
    return out;
}

/// Parity of the valid input's sum divided by k.
inline int promise_bit(const std::vector<int> &x, int k) {
    return (sum(x) / k) % 2;
}

/// <phi|psi> summed over all 2^n computational basis states, with
/// phi_i = (|0> + (-1)^a_i e^{i pi x_i / k} |1>) / sqrt(2).
inline double state_vector_probability(int n, int k, const std::vector<int> &x, const std::vector<int> &a) {
    const double pi = std::acos(-1.0);
    std::complex<double> amp = 0;
    for (std::uint64_t basis = 0; basis < (std::uint64_t{1} << n); basis++) {
        std::complex<double> psi = 0;
        if (basis == 0 || basis == (std::uint64_t{1} << n) - 1) {
            psi = 1 / std::sqrt(2.0);
        }
        std::complex<double> phi = 1;
        for (int i = 0; i < n; i++) {
            bool one = basis >> (n - 1 - i) & 1;
            std::complex<double> c = one ? std::polar(1.0, pi * x[i] / k) * (a[i] ? -1.0 : 1.0) : 1.0;
            phi *= c / std::sqrt(2.0);
        }
        amp += std::conj(phi) * psi;
    }
    return std::norm(amp);
}

inline std::vector<BigInt> residue_counts(const Rectangle &r, int modulus) {
    std::vector<BigInt> counts(modulus, 0);
    std::vector<std::vector<int>> points{{}};
    for (const auto &set : r.sets) {
        std::vector<std::vector<int>> next;
        for (const auto &p : points) {
            for (int v : set) {
                auto q = p;
                q.push_back(v);
                next.push_back(q);
            }
        }
        points = std::move(next);
    }
    for (const auto &p : points) {
        counts[sum(p) % modulus] += 1;
    }
    return counts;
}

/// Number of s-bit strings with popcount = x mod K.
inline std::vector<BigInt> coin_counts(int s, int K) {
    std::vector<BigInt> counts(K, 0);
    for (std::uint64_t v = 0; v < (std::uint64_t{1} << s); v++) {
        counts[__builtin_popcountll(v) % K] += 1;
    }
    return counts;
}

/// Fraction of valid GHZ inputs whose outputs have the wrong parity.
inline Rational ghz_error(const DeterministicLhv &lhv, int n, int k) {
    auto inputs = valid_inputs(n, k);
    long wrong = 0;
    for (const auto &x : inputs) {
        int parity = 0;
        for (int i = 0; i < n; i++) {
            parity ^= lhv.tables[i][x[i]];
        }
        wrong += parity != promise_bit(x, k);
    }
    return make_rational(wrong, static_cast<long>(inputs.size()));
}

inline Rational random_weight(Rng &rng) {
    return make_rational(1 + static_cast<long>(rng.below(9)), 1);
}

inline DeterministicLhv random_lhv(int n, int k, int l, Rng &rng, bool allow_no_click) {
    DeterministicLhv lhv;
    lhv.tables.assign(n, std::vector<int>(k));
    for (auto &table : lhv.tables) {
        for (int &v : table) {
            v = allow_no_click && rng.below(4) == 0 ? kNoClick : static_cast<int>(rng.below(l));
        }
    }
    return lhv;
}

/// Random broadcast tree: every internal node splits the speaker's input
/// range into random nonempty blocks.
inline ProtocolTree random_tree(int n, int k, int l, int depth, Rng &rng, bool allow_no_click) {
    if (depth == 0 || rng.below(3) == 0) {
        return ProtocolTree::make_leaf(k, random_lhv(n, k, l, rng, allow_no_click));
    }
    int party = static_cast<int>(rng.below(n));
    std::vector<int> block_of(k);
    int blocks = 1 + static_cast<int>(rng.below(k));
    for (int v = 0; v < k; v++) {
        block_of[v] = v < blocks ? v : static_cast<int>(rng.below(blocks));
    }
    std::vector<std::pair<std::vector<int>, ProtocolTree>> children;
    for (int b = 0; b < blocks; b++) {
        std::vector<int> inputs;
        for (int v = 0; v < k; v++) {
            if (block_of[v] == b) {
                inputs.push_back(v);
            }
        }
        children.emplace_back(inputs, random_tree(n, k, l, depth - 1, rng, allow_no_click));
    }
    return ProtocolTree::make_node(party, std::move(children));
}

inline MixedProtocol random_protocol(int n, int k, int l, int depth, Rng &rng, bool allow_no_click) {
    MixedProtocol m;
    int parts = 1 + static_cast<int>(rng.below(3));
    Rational total = 0;
    std::vector<Rational> weights;
    for (int i = 0; i < parts; i++) {
        weights.push_back(random_weight(rng));
        total += weights.back();
    }
    for (int i = 0; i < parts; i++) {
        m.components.push_back(WeightedProtocol{random_tree(n, k, l, depth, rng, allow_no_click), weights[i] / total});
    }
    return m;
}

/// Leaf reached by x, following edges by membership.
inline const DeterministicLhv &walk(const ProtocolTree &t, const std::vector<int> &x) {
    std::size_t u = 0;
    while (!t.nodes()[u].is_leaf()) {
        const ProtocolNode &node = t.nodes()[u];
        for (const auto &e : node.edges) {
            if (std::find(e.inputs.begin(), e.inputs.end(), x[node.party]) != e.inputs.end()) {
                u = e.child;
                break;
            }
        }
    }
    return *t.nodes()[u].leaf;
}

/// Worst-case sum of ceil(log2(children)) along root-to-leaf paths.
inline unsigned path_cost(const ProtocolTree &t, std::size_t u = 0) {
    const ProtocolNode &node = t.nodes()[u];
    if (node.is_leaf()) {
        return 0;
    }
    unsigned bits = 0;
    while ((std::size_t{1} << bits) < node.edges.size()) {
        bits++;
    }
    unsigned worst = 0;
    for (const auto &e : node.edges) {
        worst = std::max(worst, path_cost(t, e.child));
    }
    return bits + worst;
}

}  // namespace nonlocal::oracle

#endif
