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

#include "nonlocal/search.h"

#include <algorithm>
#include <chrono>
#include <iomanip>
#include <map>
#include <numeric>
#include <sstream>
#include <thread>

#include "nonlocal/error.h"
#include "nonlocal/lp.h"

namespace nonlocal {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::uint64_t strategy_count(int n, int k, int alphabet, std::uint64_t budget) {
    BigInt total = ipow(BigInt(alphabet), static_cast<unsigned>(n * k));
    require(total.fits_ulong_p() && total.get_ui() <= budget, ErrorKind::kBudgetExceeded,
            to_string(total) + " strategies exceed the search budget of " + std::to_string(budget));
    return total.get_ui();
}

/// The problem flattened for fast strategy scoring: integer weights over a
/// common denominator and, per support point, which click outcomes the
/// target allows (outcomes coded base l, party 0 most significant).
struct CompiledProblem {
    int n;
    int k;
    int l;
    std::vector<InputVector> inputs;
    std::vector<std::uint64_t> weights;
    std::uint64_t denominator = 1;
    std::vector<std::vector<char>> admissible;
    std::uint64_t outcome_codes = 1;
};

CompiledProblem compile(const CorrelationProblem &problem) {
    problem.validate();
    CompiledProblem cp{problem.n, problem.k, problem.l, {}, {}, 1, {}, 1};
    BigInt codes = ipow(BigInt(problem.l), static_cast<unsigned>(problem.n));
    require(codes.fits_ulong_p() && codes.get_ui() <= (1u << 24), ErrorKind::kResourceLimit,
            "output alphabet too large for the strategy search");
    cp.outcome_codes = codes.get_ui();
    BigInt lcm = 1;
    for (const auto &entry : problem.mu) {
        mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), entry.second.get_den_mpz_t());
    }
    require(lcm.fits_ulong_p() && lcm.get_ui() < (std::uint64_t{1} << 62), ErrorKind::kResourceLimit,
            "input weights need a common denominator below 2^62");
    cp.denominator = lcm.get_ui();
    for (const auto &[x, w] : problem.mu) {
        cp.inputs.push_back(x);
        BigInt scaled = w.get_num() * (lcm / w.get_den());
        cp.weights.push_back(scaled.get_ui());
        std::vector<char> ok(cp.outcome_codes, 0);
        auto row = problem.target.find(x);
        if (row != problem.target.end()) {
            for (const auto &[a, p] : row->second) {
                if (!a.all_click() || p == 0) {
                    continue;
                }
                std::uint64_t code = 0;
                for (int v : a.values) {
                    code = code * problem.l + v;
                }
                ok[code] = 1;
            }
        }
        cp.admissible.push_back(std::move(ok));
    }
    return cp;
}

/// Odometer over strategy digits (party-major, last entry fastest).
struct Odometer {
    std::vector<int> digits;
    int alphabet;

    Odometer(std::uint64_t index, std::size_t length, int alphabet) : digits(length, 0), alphabet(alphabet) {
        for (std::size_t p = length; p-- > 0;) {
            digits[p] = static_cast<int>(index % alphabet);
            index /= alphabet;
        }
    }

    void advance() {
        for (std::size_t p = digits.size(); p-- > 0;) {
            if (++digits[p] < alphabet) {
                return;
            }
            digits[p] = 0;
        }
    }
};

template <typename Fn>
void parallel_chunks(std::uint64_t total, int threads, Fn &&fn) {
    int workers = static_cast<int>(std::max<std::uint64_t>(1, std::min<std::uint64_t>(threads, total)));
    if (workers == 1) {
        fn(0, std::uint64_t{0}, total);
        return;
    }
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; w++) {
        std::uint64_t begin = total * w / workers;
        std::uint64_t end = total * (w + 1) / workers;
        pool.emplace_back([&fn, w, begin, end] {
            fn(w, begin, end);
        });
    }
    for (auto &t : pool) {
        t.join();
    }
}

}  // namespace

DeterministicLhv decode_strategy(std::uint64_t index, int n, int k, int l, int alphabet) {
    Odometer o(index, static_cast<std::size_t>(n) * k, alphabet);
    DeterministicLhv lhv;
    lhv.tables.assign(n, std::vector<int>(k));
    for (int i = 0; i < n; i++) {
        for (int v = 0; v < k; v++) {
            int d = o.digits[i * k + v];
            lhv.tables[i][v] = d == l ? kNoClick : d;
        }
    }
    return lhv;
}

SearchReport best_deterministic_error(const CorrelationProblem &problem, const SearchOptions &options) {
    auto start = Clock::now();
    CompiledProblem cp = compile(problem);
    std::uint64_t total = strategy_count(cp.n, cp.k, cp.l, options.budget);

    struct Best {
        std::uint64_t wrong = ~std::uint64_t{0};
        std::uint64_t index = 0;
    };
    std::vector<Best> best(std::max(1, options.threads));
    parallel_chunks(total, options.threads, [&](int w, std::uint64_t begin, std::uint64_t end) {
        Odometer o(begin, static_cast<std::size_t>(cp.n) * cp.k, cp.l);
        Best local;
        for (std::uint64_t idx = begin; idx < end; idx++, o.advance()) {
            std::uint64_t wrong = 0;
            for (std::size_t t = 0; t < cp.inputs.size(); t++) {
                std::uint64_t code = 0;
                for (int i = 0; i < cp.n; i++) {
                    code = code * cp.l + o.digits[i * cp.k + cp.inputs[t][i]];
                }
                if (!cp.admissible[t][code]) {
                    wrong += cp.weights[t];
                }
            }
            if (wrong < local.wrong) {
                local = Best{wrong, idx};
            }
        }
        best[w] = local;
    });
    Best overall;
    for (const auto &b : best) {
        if (b.wrong < overall.wrong || (b.wrong == overall.wrong && b.index < overall.index)) {
            overall = b;
        }
    }

    SearchReport report;
    report.n = cp.n;
    report.k = cp.k;
    report.l = cp.l;
    report.optimum = make_rational(BigInt(static_cast<unsigned long>(overall.wrong)),
                                   BigInt(static_cast<unsigned long>(cp.denominator)));
    report.witness_index = overall.index;
    report.witness.components.push_back(
        WeightedLhv{decode_strategy(overall.index, cp.n, cp.k, cp.l, cp.l), Rational(1)});
    report.enumerated = total;
    ModelDistribution d = evaluate_mixed_lhv(report.witness, problem);
    report.witness_eta_n = detection_efficiency(d, problem).eta_n;
    report.witness_eps = error_probability(d, problem);
    require(*report.witness_eps == report.optimum, ErrorKind::kInvalidArgument,
            "witness does not re-evaluate to the optimum");
    report.seconds = seconds_since(start);
    return report;
}

SearchReport eta_star_lp(const CorrelationProblem &problem, const Rational &eps_budget, const SearchOptions &options) {
    auto start = Clock::now();
    require(eps_budget >= 0, ErrorKind::kInfeasible, "negative error budget");
    CompiledProblem cp = compile(problem);
    const int alphabet = cp.l + 1;
    std::uint64_t total = strategy_count(cp.n, cp.k, alphabet, options.budget);
    const std::size_t m = cp.inputs.size();

    // Identical (click pattern, error mass) columns are interchangeable; keep
    // the first strategy of each class.
    std::map<std::string, std::uint64_t> columns;
    {
        Odometer o(0, static_cast<std::size_t>(cp.n) * cp.k, alphabet);
        std::string key(m + 8, '\0');
        for (std::uint64_t idx = 0; idx < total; idx++, o.advance()) {
            std::uint64_t wrong = 0;
            for (std::size_t t = 0; t < m; t++) {
                std::uint64_t code = 0;
                bool click = true;
                for (int i = 0; i < cp.n && click; i++) {
                    int d = o.digits[i * cp.k + cp.inputs[t][i]];
                    click = d != cp.l;
                    code = code * cp.l + d;
                }
                key[t] = click ? '1' : '0';
                if (click && !cp.admissible[t][code]) {
                    wrong += cp.weights[t];
                }
            }
            for (int b = 0; b < 8; b++) {
                key[m + b] = static_cast<char>((wrong >> (8 * b)) & 0xff);
            }
            columns.emplace(key, idx);
        }
    }

    std::vector<std::uint64_t> reps;
    std::vector<std::string> keys;
    for (const auto &[key, idx] : columns) {
        keys.push_back(key);
        reps.push_back(idx);
    }
    const std::size_t u = reps.size();
    const std::size_t q = u;
    const std::size_t slack = u + 1;
    const std::size_t vars = u + 2 + (options.relaxed_click_constraint ? m : 0);
    const std::size_t rows = 2 + m;

    LinearProgram lp;
    lp.a.assign(rows, std::vector<Rational>(vars, 0));
    lp.b.assign(rows, 0);
    lp.c.assign(vars, 0);
    lp.c[q] = 1;
    lp.b[0] = 1;
    Rational denominator(BigInt(static_cast<unsigned long>(cp.denominator)));
    for (std::size_t j = 0; j < u; j++) {
        lp.a[0][j] = 1;
        for (std::size_t t = 0; t < m; t++) {
            lp.a[1 + t][j] = keys[j][t] == '1' ? 1 : 0;
        }
        std::uint64_t wrong = 0;
        for (int b = 0; b < 8; b++) {
            wrong |= static_cast<std::uint64_t>(static_cast<unsigned char>(keys[j][m + b])) << (8 * b);
        }
        lp.a[rows - 1][j] = Rational(BigInt(static_cast<unsigned long>(wrong))) / denominator;
    }
    for (std::size_t t = 0; t < m; t++) {
        lp.a[1 + t][q] = -1;
        if (options.relaxed_click_constraint) {
            lp.a[1 + t][u + 2 + t] = -1;
        }
    }
    lp.a[rows - 1][q] = -eps_budget;
    lp.a[rows - 1][slack] = 1;

    LpSolution sol = solve_lp(lp);
    require(sol.status == LpStatus::kOptimal, ErrorKind::kInfeasible, "detector-efficiency LP has no optimum");

    SearchReport report;
    report.n = cp.n;
    report.k = cp.k;
    report.l = cp.l;
    report.eps_budget = eps_budget;
    report.optimum = sol.objective;
    report.enumerated = total;
    report.lp_columns = u;
    report.lp_pivots = sol.pivots;
    report.dual = sol.dual;
    for (std::size_t j = 0; j < u; j++) {
        if (sol.x[j] > 0) {
            report.witness.components.push_back(
                WeightedLhv{decode_strategy(reps[j], cp.n, cp.k, cp.l, alphabet), sol.x[j]});
        }
    }
    ModelDistribution d = evaluate_mixed_lhv(report.witness, problem);
    report.witness_eta_n = detection_efficiency(d, problem).eta_n;
    if (report.witness_eta_n > 0) {
        report.witness_eps = error_probability(d, problem);
    }
    report.seconds = seconds_since(start);
    return report;
}

namespace {

/// Counts over (sum mod 2k, output parity), indexed r * 2 + b.
using Joint = std::vector<BigInt>;

Joint convolve(const Joint &a, const Joint &b, int modulus) {
    Joint out(2 * modulus, 0);
    for (int r1 = 0; r1 < modulus; r1++) {
        for (int b1 = 0; b1 < 2; b1++) {
            const BigInt &x = a[r1 * 2 + b1];
            if (x == 0) {
                continue;
            }
            for (int r2 = 0; r2 < modulus; r2++) {
                for (int b2 = 0; b2 < 2; b2++) {
                    const BigInt &y = b[r2 * 2 + b2];
                    if (y != 0) {
                        out[((r1 + r2) % modulus) * 2 + (b1 ^ b2)] += x * y;
                    }
                }
            }
        }
    }
    return out;
}

Joint party_joint(int k, std::uint32_t table) {
    Joint j(4 * k, 0);
    for (int v = 0; v < k; v++) {
        j[v * 2 + (table >> v & 1)] += 1;
    }
    return j;
}

std::vector<int> table_bits(int k, std::uint32_t table) {
    std::vector<int> out(k);
    for (int v = 0; v < k; v++) {
        out[v] = table >> v & 1;
    }
    return out;
}

}  // namespace

BroadcastPrefix broadcast_prefix(const GhzInstance &inst, int broadcasters) {
    GhzInstance checked = GhzInstance::create(inst.n, inst.k);
    require(broadcasters >= 0 && broadcasters <= checked.n, ErrorKind::kInvalidArgument,
            "broadcaster count out of range");
    require(checked.k <= 16, ErrorKind::kResourceLimit, "leaf-table family needs k <= 16");
    const int k = checked.k;
    const int modulus = 2 * k;
    const int silent = checked.n - broadcasters;

    BroadcastPrefix out;
    out.instance = checked;
    out.broadcasters = broadcasters;
    out.cost = static_cast<unsigned>(broadcasters) * ceil_log2(static_cast<std::uint64_t>(k));
    out.eta_n = inverse_power_of_two(out.cost);
    if (silent == 0) {
        out.eps = 0;
        return out;
    }

    // Number of announced prefixes per residue of their sum.
    Joint uniform = party_joint(k, 0);
    Joint prefix(2 * modulus, 0);
    prefix[0] = 1;
    for (int i = 0; i < broadcasters; i++) {
        prefix = convolve(prefix, uniform, modulus);
    }

    std::vector<BigInt> best_wrong(modulus, -1);
    out.first.assign(modulus, std::vector<int>(k, 0));
    out.rest.assign(modulus, std::vector<int>(k, 0));
    const std::uint32_t tables = 1u << k;
    for (std::uint32_t rest = 0; rest < (silent > 1 ? tables : 1u); rest++) {
        Joint others(2 * modulus, 0);
        others[0] = 1;
        Joint single = party_joint(k, rest);
        for (int i = 1; i < silent; i++) {
            others = convolve(others, single, modulus);
        }
        for (std::uint32_t first = 0; first < tables; first++) {
            Joint joint = convolve(others, party_joint(k, first), modulus);
            for (int sigma = 0; sigma < modulus; sigma++) {
                if (prefix[sigma * 2] == 0) {
                    continue;
                }
                BigInt wrong = 0;
                for (int r = 0; r < modulus; r++) {
                    int total = (sigma + r) % modulus;
                    if (total % k != 0) {
                        continue;
                    }
                    wrong += joint[r * 2 + (1 - total / k)];
                }
                if (best_wrong[sigma] < 0 || wrong < best_wrong[sigma]) {
                    best_wrong[sigma] = wrong;
                    out.first[sigma] = table_bits(k, first);
                    out.rest[sigma] = table_bits(k, rest);
                }
            }
        }
    }
    BigInt wrong = 0;
    for (int sigma = 0; sigma < modulus; sigma++) {
        if (prefix[sigma * 2] != 0) {
            wrong += prefix[sigma * 2] * best_wrong[sigma];
        }
    }
    out.eps = make_rational(wrong, checked.valid_input_count());
    return out;
}

namespace {

ProtocolTree prefix_subtree(const BroadcastPrefix &family, InputVector &prefix) {
    const GhzInstance &inst = family.instance;
    int depth = static_cast<int>(prefix.size());
    if (depth == family.broadcasters) {
        int sum = std::accumulate(prefix.begin(), prefix.end(), 0);
        DeterministicLhv lhv = DeterministicLhv::constant(inst.n, inst.k, 0);
        if (depth == inst.n) {
            int f = sum % inst.k == 0 ? (sum % (2 * inst.k)) / inst.k : 0;
            std::fill(lhv.tables[inst.n - 1].begin(), lhv.tables[inst.n - 1].end(), f);
        } else {
            int sigma = sum % (2 * inst.k);
            lhv.tables[depth] = family.first[sigma];
            for (int i = depth + 1; i < inst.n; i++) {
                lhv.tables[i] = family.rest[sigma];
            }
        }
        return ProtocolTree::make_leaf(inst.k, std::move(lhv));
    }
    std::vector<std::pair<std::vector<int>, ProtocolTree>> children;
    for (int v = 0; v < inst.k; v++) {
        prefix.push_back(v);
        children.emplace_back(std::vector<int>{v}, prefix_subtree(family, prefix));
        prefix.pop_back();
    }
    return ProtocolTree::make_node(depth, std::move(children));
}

}  // namespace

ProtocolTree broadcast_prefix_tree(const BroadcastPrefix &family) {
    InputVector prefix;
    return prefix_subtree(family, prefix);
}

TradeoffTable tradeoff_table(const GhzInstance &inst, std::span<const unsigned> c_grid,
                             std::span<const Rational> eps_grid, const TradeoffOptions &options) {
    GhzInstance checked = GhzInstance::create(inst.n, inst.k);
    TradeoffTable table;
    table.instance = checked;
    if (c_grid.empty() || eps_grid.empty()) {
        return table;
    }
    RectangleProfile profile = profile_rectangles(checked, options.scan);
    table.scan_mode = profile.mode;
    for (int j = 0; j <= checked.n; j++) {
        table.families.push_back(broadcast_prefix(checked, j));
    }

    BigInt lp_size = ipow(BigInt(3), static_cast<unsigned>(checked.n * checked.k));
    if (options.use_lp && lp_size <= BigInt(std::to_string(options.search.budget))) {
        CorrelationProblem problem = ghz_problem(checked);
        for (const auto &eps : eps_grid) {
            table.lp_points.emplace_back(eps, eta_star_lp(problem, eps, options.search).optimum);
        }
    }

    std::vector<Rational> deltas{Rational(0)};
    for (const auto &t : profile.thresholds()) {
        if (t > 0 && t < 1) {
            deltas.push_back(t);
        }
    }

    for (unsigned c : c_grid) {
        for (std::size_t e = 0; e < eps_grid.size(); e++) {
            const Rational &eps = eps_grid[e];
            TradeoffRow row;
            row.c = c;
            row.eps = eps;
            for (const auto &family : table.families) {
                if (family.cost <= c && family.eps <= eps && (!row.achievable || family.eta_n > *row.achievable)) {
                    row.achievable = family.eta_n;
                    row.achieved_by = "broadcast-prefix:" + std::to_string(family.broadcasters);
                }
            }
            if (!table.lp_points.empty()) {
                const Rational &lp_value = table.lp_points[e].second;
                if (!row.achievable || lp_value > *row.achievable) {
                    row.achievable = lp_value;
                    row.achieved_by = "lp";
                }
            }
            for (const auto &delta : deltas) {
                Rational r_cap = profile.r_cap_above(delta);
                auto bound = theorem2_eta_bound(delta, r_cap, c, eps, 2, checked.n);
                if (bound && (!row.bound || *bound < *row.bound)) {
                    row.bound = bound;
                    row.bound_delta = delta;
                    row.bound_r_cap = r_cap;
                }
            }
            table.rows.push_back(std::move(row));
        }
    }
    return table;
}

std::string tradeoff_csv(const TradeoffTable &table) {
    std::ostringstream out;
    out << "n,k,c,eps,achievable,achievable_decimal,achieved_by,bound,bound_decimal,bound_delta,bound_r_cap,"
           "scan_mode\n";
    out << std::setprecision(12);
    for (const auto &row : table.rows) {
        out << table.instance.n << ',' << table.instance.k << ',' << row.c << ',' << to_string(row.eps) << ',';
        if (row.achievable) {
            out << to_string(*row.achievable) << ',' << row.achievable->get_d();
        } else {
            out << "none,";
        }
        out << ',' << (row.achieved_by.empty() ? "none" : row.achieved_by) << ',';
        if (row.bound) {
            out << to_string(*row.bound) << ',' << row.bound->get_d() << ',' << to_string(row.bound_delta) << ','
                << to_string(row.bound_r_cap);
        } else {
            out << "none,,,";
        }
        out << ',' << scan_mode_name(table.scan_mode) << '\n';
    }
    return out.str();
}

}  // namespace nonlocal
