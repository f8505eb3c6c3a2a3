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

#ifndef NONLOCAL_PROTOCOL_H
#define NONLOCAL_PROTOCOL_H

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "nonlocal/model.h"

namespace nonlocal {

enum class Randomness { kShared, kLocal };

struct ProtocolEdge {
    /// Inputs of the speaking party that select this edge.
    std::vector<int> inputs;
    std::size_t child = 0;
};

struct ProtocolNode {
    int party = -1;
    std::vector<ProtocolEdge> edges;
    std::optional<DeterministicLhv> leaf;

    bool is_leaf() const {
        return leaf.has_value();
    }
};

struct ExecutionResult {
    std::size_t leaf = 0;
    Outcome outcome;
};

/// Set of inputs that reach one leaf. It is always a rectangle: allowed[i][v]
/// says whether x_i = v is consistent with the conversation ending there.
struct LeafRegion {
    std::size_t node = 0;
    std::vector<std::vector<bool>> allowed;
    /// Bits broadcast on the path to this leaf.
    unsigned path_cost = 0;
};

/// Deterministic broadcast protocol. Node 0 is the root; every internal node
/// lets one party announce which block of a partition of {0..k-1} its input
/// lies in, and each leaf applies a local deterministic model.
class ProtocolTree {
   public:
    ProtocolTree(int n, int k, std::vector<ProtocolNode> nodes);

    static ProtocolTree make_leaf(int k, DeterministicLhv lhv);
    static ProtocolTree make_node(int party, std::vector<std::pair<std::vector<int>, ProtocolTree>> children);

    int parties() const {
        return n_;
    }
    int settings() const {
        return k_;
    }
    const std::vector<ProtocolNode> &nodes() const {
        return nodes_;
    }

    /// Checks the partition invariant at every node, the tree shape (every node
    /// has exactly one parent and is reachable) and the leaf arities.
    void validate() const;

    /// Walks the unique root-to-leaf path selected by x. Throws MalformedTree
    /// when a visited node's edge blocks do not partition {0..k-1}.
    ExecutionResult execute(std::span<const int> x) const;

    /// Worst-case bits broadcast: max over leaves of the path sum of
    /// ceil(log2(child count)).
    unsigned cost() const;

    /// Leaves in depth-first order with their input regions and path costs.
    std::vector<LeafRegion> leaf_regions() const;

    std::size_t leaf_count() const;

   private:
    void check_partition(const ProtocolNode &node) const;

    int n_;
    int k_;
    std::vector<ProtocolNode> nodes_;
};

struct WeightedProtocol {
    ProtocolTree tree;
    Rational weight;
};

/// Distribution over deterministic protocols. With local randomness the
/// distribution is meant to factor over parties; the flag is carried so the
/// detector-model conversion can refuse it.
struct MixedProtocol {
    std::vector<WeightedProtocol> components;
    Randomness flavor = Randomness::kShared;

    static MixedProtocol deterministic(ProtocolTree tree, Randomness flavor = Randomness::kShared);

    /// Max cost over components.
    unsigned cost() const;
    void validate() const;
};

inline unsigned cost(const ProtocolTree &t) {
    return t.cost();
}

ModelDistribution induced_distribution(const MixedProtocol &m, const CorrelationProblem &problem);

/// Replaces communication by detector failures. Every component is expanded to
/// 2^c equally likely guessed conversations (c = m.cost()); in each guess a
/// party answers as the protocol would at that leaf if its input is
/// consistent with the conversation and does not click otherwise. Guesses
/// beyond the leaf count are conversations no input produces, so nobody
/// clicks. The all-click probability is then exactly 2^-c on every input.
MixedLhv to_detector_model(const MixedProtocol &m);

}  // namespace nonlocal

#endif
