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

#include "nonlocal/protocol.h"

#include <algorithm>

#include "nonlocal/error.h"

namespace nonlocal {

ProtocolTree::ProtocolTree(int n, int k, std::vector<ProtocolNode> nodes) : n_(n), k_(k), nodes_(std::move(nodes)) {
    require(n_ >= 1 && k_ >= 1, ErrorKind::kMalformedTree, "tree needs n >= 1 and k >= 1");
    require(!nodes_.empty(), ErrorKind::kMalformedTree, "tree has no nodes");
    for (const auto &node : nodes_) {
        for (const auto &e : node.edges) {
            require(e.child < nodes_.size(), ErrorKind::kMalformedTree, "edge points past the node table");
        }
    }
}

ProtocolTree ProtocolTree::make_leaf(int k, DeterministicLhv lhv) {
    int n = lhv.parties();
    ProtocolNode node;
    node.leaf = std::move(lhv);
    return ProtocolTree(n, k, {std::move(node)});
}

ProtocolTree ProtocolTree::make_node(int party, std::vector<std::pair<std::vector<int>, ProtocolTree>> children) {
    require(!children.empty(), ErrorKind::kMalformedTree, "internal node needs at least one child");
    int n = children.front().second.parties();
    int k = children.front().second.settings();
    std::vector<ProtocolNode> nodes(1);
    nodes[0].party = party;
    for (auto &[inputs, subtree] : children) {
        require(subtree.parties() == n && subtree.settings() == k, ErrorKind::kMalformedTree,
                "children disagree on (n, k)");
        std::size_t offset = nodes.size();
        nodes[0].edges.push_back(ProtocolEdge{std::move(inputs), offset});
        for (auto node : subtree.nodes_) {
            for (auto &e : node.edges) {
                e.child += offset;
            }
            nodes.push_back(std::move(node));
        }
    }
    return ProtocolTree(n, k, std::move(nodes));
}

void ProtocolTree::check_partition(const ProtocolNode &node) const {
    require(node.party >= 0 && node.party < n_, ErrorKind::kMalformedTree, "speaking party out of range");
    require(!node.edges.empty(), ErrorKind::kMalformedTree, "internal node without edges");
    std::vector<int> seen(k_, 0);
    for (const auto &e : node.edges) {
        require(!e.inputs.empty(), ErrorKind::kMalformedTree, "empty edge block");
        for (int v : e.inputs) {
            require(v >= 0 && v < k_, ErrorKind::kMalformedTree, "edge block entry out of range");
            require(seen[v]++ == 0, ErrorKind::kMalformedTree, "edge blocks overlap");
        }
    }
    for (int v = 0; v < k_; v++) {
        require(seen[v] == 1, ErrorKind::kMalformedTree, "edge blocks do not cover every input");
    }
}

void ProtocolTree::validate() const {
    std::vector<int> parents(nodes_.size(), 0);
    for (const auto &node : nodes_) {
        if (node.is_leaf()) {
            require(node.edges.empty(), ErrorKind::kMalformedTree, "leaf with outgoing edges");
            require(node.leaf->parties() == n_, ErrorKind::kMalformedTree, "leaf model has wrong party count");
            for (const auto &table : node.leaf->tables) {
                require(static_cast<int>(table.size()) == k_, ErrorKind::kMalformedTree, "leaf table is not total");
            }
        } else {
            check_partition(node);
            for (const auto &e : node.edges) {
                parents[e.child]++;
            }
        }
    }
    require(parents[0] == 0, ErrorKind::kMalformedTree, "root has a parent");
    for (std::size_t i = 1; i < nodes_.size(); i++) {
        require(parents[i] == 1, ErrorKind::kMalformedTree, "node is shared or unreachable");
    }
    // One parent per node plus a parentless root still admits detached cycles.
    std::vector<std::size_t> stack{0};
    std::size_t visited = 0;
    while (!stack.empty()) {
        std::size_t u = stack.back();
        stack.pop_back();
        visited++;
        for (const auto &e : nodes_[u].edges) {
            stack.push_back(e.child);
        }
    }
    require(visited == nodes_.size(), ErrorKind::kMalformedTree, "node is unreachable from the root");
}

ExecutionResult ProtocolTree::execute(std::span<const int> x) const {
    require(static_cast<int>(x.size()) == n_, ErrorKind::kLengthMismatch, "input length != party count");
    for (int v : x) {
        require(v >= 0 && v < k_, ErrorKind::kInvalidInput, "input entry out of range");
    }
    std::size_t u = 0;
    for (std::size_t steps = 0; !nodes_[u].is_leaf(); steps++) {
        require(steps < nodes_.size(), ErrorKind::kMalformedTree, "execution does not terminate");
        const auto &node = nodes_[u];
        check_partition(node);
        int v = x[node.party];
        for (const auto &e : node.edges) {
            if (std::find(e.inputs.begin(), e.inputs.end(), v) != e.inputs.end()) {
                u = e.child;
                break;
            }
        }
    }
    return ExecutionResult{u, nodes_[u].leaf->apply(x)};
}

unsigned ProtocolTree::cost() const {
    unsigned worst = 0;
    for (const auto &region : leaf_regions()) {
        worst = std::max(worst, region.path_cost);
    }
    return worst;
}

std::size_t ProtocolTree::leaf_count() const {
    return static_cast<std::size_t>(std::count_if(nodes_.begin(), nodes_.end(), [](const ProtocolNode &node) {
        return node.is_leaf();
    }));
}

std::vector<LeafRegion> ProtocolTree::leaf_regions() const {
    std::vector<LeafRegion> out;
    struct Frame {
        std::size_t node;
        std::vector<std::vector<bool>> allowed;
        unsigned cost;
    };
    std::vector<Frame> stack;
    stack.push_back(Frame{0, std::vector<std::vector<bool>>(n_, std::vector<bool>(k_, true)), 0});
    while (!stack.empty()) {
        Frame f = std::move(stack.back());
        stack.pop_back();
        const auto &node = nodes_[f.node];
        if (node.is_leaf()) {
            out.push_back(LeafRegion{f.node, std::move(f.allowed), f.cost});
            continue;
        }
        unsigned bits = ceil_log2(node.edges.size());
        // Reverse push keeps depth-first, left-to-right leaf order.
        for (auto e = node.edges.rbegin(); e != node.edges.rend(); ++e) {
            Frame child{e->child, f.allowed, f.cost + bits};
            std::vector<bool> block(k_, false);
            for (int v : e->inputs) {
                if (v >= 0 && v < k_) {
                    block[v] = true;
                }
            }
            for (int v = 0; v < k_; v++) {
                child.allowed[node.party][v] = child.allowed[node.party][v] && block[v];
            }
            stack.push_back(std::move(child));
        }
    }
    return out;
}

MixedProtocol MixedProtocol::deterministic(ProtocolTree tree, Randomness flavor) {
    MixedProtocol m;
    m.components.push_back(WeightedProtocol{std::move(tree), Rational(1)});
    m.flavor = flavor;
    return m;
}

unsigned MixedProtocol::cost() const {
    unsigned c = 0;
    for (const auto &comp : components) {
        c = std::max(c, comp.tree.cost());
    }
    return c;
}

void MixedProtocol::validate() const {
    require(!components.empty(), ErrorKind::kInvalidArgument, "empty protocol mixture");
    Rational total = 0;
    for (const auto &comp : components) {
        comp.tree.validate();
        require(comp.tree.parties() == components.front().tree.parties() &&
                    comp.tree.settings() == components.front().tree.settings(),
                ErrorKind::kArityMismatch, "mixture components disagree on (n, k)");
        require(comp.weight > 0, ErrorKind::kInvalidArgument, "protocol weights must be positive");
        total += comp.weight;
    }
    require(total == 1, ErrorKind::kInvalidArgument, "protocol weights do not sum to 1");
}

ModelDistribution induced_distribution(const MixedProtocol &m, const CorrelationProblem &problem) {
    m.validate();
    const auto &first = m.components.front().tree;
    require(first.parties() == problem.n && first.settings() == problem.k, ErrorKind::kArityMismatch,
            "protocol (n, k) does not match the problem");
    for (const auto &comp : m.components) {
        for (const auto &node : comp.tree.nodes()) {
            if (node.is_leaf()) {
                for (const auto &table : node.leaf->tables) {
                    for (int v : table) {
                        require(v == kNoClick || (v >= 0 && v < problem.l), ErrorKind::kArityMismatch,
                                "leaf output outside the problem's output alphabet");
                    }
                }
            }
        }
    }
    ModelDistribution d;
    for (const auto &entry : problem.mu) {
        auto &row = d.probs[entry.first];
        for (const auto &comp : m.components) {
            row[comp.tree.execute(entry.first).outcome] += comp.weight;
        }
    }
    return d;
}

MixedLhv to_detector_model(const MixedProtocol &m) {
    m.validate();
    require(m.flavor == Randomness::kShared, ErrorKind::kFlavorMismatch,
            "conversation guessing needs shared randomness");
    unsigned c = m.cost();
    Rational guess = inverse_power_of_two(c);
    BigInt slots;
    mpz_ui_pow_ui(slots.get_mpz_t(), 2, c);

    int n = m.components.front().tree.parties();
    int k = m.components.front().tree.settings();
    MixedLhv out;
    Rational silent = 0;
    for (const auto &comp : m.components) {
        auto regions = comp.tree.leaf_regions();
        for (const auto &region : regions) {
            const auto &leaf = *comp.tree.nodes()[region.node].leaf;
            DeterministicLhv lhv = leaf;
            for (int i = 0; i < n; i++) {
                for (int v = 0; v < k; v++) {
                    if (!region.allowed[i][v]) {
                        lhv.tables[i][v] = kNoClick;
                    }
                }
            }
            out.components.push_back(WeightedLhv{std::move(lhv), comp.weight * guess});
        }
        BigInt unused = slots - static_cast<unsigned long>(regions.size());
        silent += comp.weight * guess * Rational(unused);
    }
    silent.canonicalize();
    if (silent > 0) {
        out.components.push_back(WeightedLhv{DeterministicLhv::constant(n, k, kNoClick), silent});
    }
    for (auto &comp : out.components) {
        comp.weight.canonicalize();
    }
    return out;
}

}  // namespace nonlocal
