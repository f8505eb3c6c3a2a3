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

#ifndef NONLOCAL_SEARCH_H
#define NONLOCAL_SEARCH_H

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nonlocal/ghz.h"
#include "nonlocal/model.h"
#include "nonlocal/protocol.h"
#include "nonlocal/rect.h"

namespace nonlocal {

struct SearchOptions {
    /// Maximum number of deterministic strategies to enumerate.
    std::uint64_t budget = 10'000'000;
    int threads = 1;
    /// Replace "all-click probability equals q on every input" by ">= q".
    /// Not the model class of the detector-model conversion; off by default.
    bool relaxed_click_constraint = false;
};

struct SearchReport {
    int n = 0;
    int k = 0;
    int l = 0;
    Rational optimum;
    /// Re-evaluates to `optimum` under the model metrics.
    MixedLhv witness;
    /// Lexicographic index of the first optimal strategy (vertex search only).
    std::uint64_t witness_index = 0;
    std::uint64_t enumerated = 0;
    double seconds = 0;

    // LP runs only.
    Rational eps_budget;
    /// Witness figures recomputed through the model metrics.
    Rational witness_eta_n;
    std::optional<Rational> witness_eps;
    std::uint64_t lp_columns = 0;
    std::uint64_t lp_pivots = 0;
    /// Dual certificate of the LP optimum, rows in the order
    /// [normalization, one click row per support point, error row].
    std::vector<Rational> dual;
};

/// Decodes strategy `index` over `alphabet` symbols per table entry, tables
/// laid out party-major and compared lexicographically. Symbol l (when the
/// alphabet is l + 1) is the no-click output.
DeterministicLhv decode_strategy(std::uint64_t index, int n, int k, int l, int alphabet);

/// Minimum error over click-only deterministic models; ties go to the first
/// strategy in lexicographic order. Throws BudgetExceeded.
SearchReport best_deterministic_error(const CorrelationProblem &problem, const SearchOptions &options = {});

/// Largest all-click probability q of a mixture of no-click-allowed
/// deterministic models whose click probability is q on every support point
/// and whose click-conditioned error is at most eps_budget. Exact simplex.
/// Throws BudgetExceeded, and Infeasible for a negative budget.
SearchReport eta_star_lp(const CorrelationProblem &problem, const Rational &eps_budget,
                         const SearchOptions &options = {});

/// Protocol in which parties 0..j-1 announce their inputs and the remaining
/// n - j parties answer locally. The leaf model depends only on the announced
/// sum mod 2k: the first silent party uses `first[sigma]`, the others
/// `rest[sigma]`, both bit tables over {0..k-1}; each pair is the exact
/// error minimizer within this family.
struct BroadcastPrefix {
    GhzInstance instance;
    int broadcasters = 0;
    unsigned cost = 0;
    Rational eps;
    Rational eta_n;
    std::vector<std::vector<int>> first;
    std::vector<std::vector<int>> rest;
};

/// Builds the family member with j broadcasters and computes its error by
/// exact counting over residues, without enumerating inputs.
BroadcastPrefix broadcast_prefix(const GhzInstance &inst, int broadcasters);

/// The same protocol as an explicit tree (k^j leaves).
ProtocolTree broadcast_prefix_tree(const BroadcastPrefix &family);

struct TradeoffOptions {
    SearchOptions search;
    ScanOptions scan;
    /// Run eta_star_lp for the no-communication column when within budget.
    bool use_lp = true;
};

struct TradeoffRow {
    unsigned c = 0;
    Rational eps;
    /// Best eta^n among constructed models with cost <= c and error <= eps.
    std::optional<Rational> achievable;
    std::string achieved_by;
    /// Infimum of the rectangle-inequality bound on eta^n over delta in [0, 1):
    /// attained as delta decreases to `bound_delta`, a scanned advantage
    /// threshold, with cap `bound_r_cap` on rectangles of larger advantage.
    /// Empty when no delta constrains eta^n.
    std::optional<Rational> bound;
    Rational bound_delta;
    Rational bound_r_cap;
};

struct TradeoffTable {
    GhzInstance instance;
    std::vector<BroadcastPrefix> families;
    /// (eps, eta*^n) for each eps on the grid, when the LP ran.
    std::vector<std::pair<Rational, Rational>> lp_points;
    ScanMode scan_mode = ScanMode::kExhaustive;
    std::vector<TradeoffRow> rows;
};

TradeoffTable tradeoff_table(const GhzInstance &inst, std::span<const unsigned> c_grid,
                             std::span<const Rational> eps_grid, const TradeoffOptions &options = {});

std::string tradeoff_csv(const TradeoffTable &table);

}  // namespace nonlocal

#endif
