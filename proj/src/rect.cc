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

#include "nonlocal/rect.h"

#include <algorithm>
#include <limits>
#include <sstream>
#include <thread>

#include "nonlocal/error.h"
#include "nonlocal/random.h"

namespace nonlocal {

BigInt Rectangle::size() const {
    BigInt s = 1;
    for (const auto &set : sets) {
        s *= static_cast<unsigned long>(set.size());
    }
    return s;
}

bool Rectangle::contains(std::span<const int> x) const {
    if (x.size() != sets.size()) {
        return false;
    }
    for (std::size_t i = 0; i < x.size(); i++) {
        if (!std::binary_search(sets[i].begin(), sets[i].end(), x[i])) {
            return false;
        }
    }
    return true;
}

void Rectangle::validate(int k) const {
    require(!sets.empty(), ErrorKind::kInvalidArgument, "rectangle needs at least one party");
    for (const auto &set : sets) {
        require(!set.empty(), ErrorKind::kInvalidArgument, "rectangle side is empty");
        for (std::size_t j = 0; j < set.size(); j++) {
            require(set[j] >= 0 && set[j] < k, ErrorKind::kInvalidArgument, "rectangle entry out of range");
            require(j == 0 || set[j - 1] < set[j], ErrorKind::kInvalidArgument, "rectangle side not sorted/distinct");
        }
    }
}

Rectangle Rectangle::full(int n, int k) {
    std::vector<int> all(k);
    for (int v = 0; v < k; v++) {
        all[v] = v;
    }
    return Rectangle{std::vector<std::vector<int>>(n, all)};
}

Rectangle Rectangle::from_masks(std::span<const std::uint32_t> masks, int k) {
    Rectangle r;
    for (auto mask : masks) {
        std::vector<int> set;
        for (int v = 0; v < k; v++) {
            if (mask >> v & 1) {
                set.push_back(v);
            }
        }
        r.sets.push_back(std::move(set));
    }
    return r;
}

std::optional<Rectangle> preimage(const DeterministicLhv &lhv, const Outcome &a) {
    require(a.size() == static_cast<std::size_t>(lhv.parties()), ErrorKind::kLengthMismatch,
            "outcome length != party count");
    Rectangle r;
    for (int i = 0; i < lhv.parties(); i++) {
        std::vector<int> set;
        for (int v = 0; v < lhv.inputs(); v++) {
            if (lhv.tables[i][v] == a.values[i]) {
                set.push_back(v);
            }
        }
        if (set.empty()) {
            return std::nullopt;
        }
        r.sets.push_back(std::move(set));
    }
    return r;
}

namespace {

void convolve_into(const std::vector<BigInt> &counts, std::uint32_t mask, int modulus, std::vector<BigInt> &out) {
    for (auto &c : out) {
        c = 0;
    }
    for (int v = 0; mask >> v; v++) {
        if (!(mask >> v & 1)) {
            continue;
        }
        int shift = v % modulus;
        for (int r = 0; r < modulus; r++) {
            if (counts[r] != 0) {
                out[(r + shift) % modulus] += counts[r];
            }
        }
    }
}

}  // namespace

std::vector<BigInt> residue_counts(const Rectangle &r, int modulus) {
    require(modulus >= 1, ErrorKind::kInvalidArgument, "modulus must be >= 1");
    std::vector<BigInt> counts(modulus, 0);
    counts[0] = 1;
    std::vector<BigInt> next(modulus);
    for (const auto &set : r.sets) {
        for (auto &c : next) {
            c = 0;
        }
        for (int v : set) {
            int shift = ((v % modulus) + modulus) % modulus;
            for (int res = 0; res < modulus; res++) {
                next[(res + shift) % modulus] += counts[res];
            }
        }
        std::swap(counts, next);
    }
    return counts;
}

Rational advantage(const Rectangle &r, const Outcome &a, const CorrelationProblem &problem) {
    require(a.all_click(), ErrorKind::kInvalidInput, "advantage is defined for click-only outcomes");
    require(r.parties() == problem.n && static_cast<int>(a.size()) == problem.n, ErrorKind::kLengthMismatch,
            "rectangle/outcome arity != n");
    Rational weight = 0;
    Rational admissible = 0;
    for (const auto &[x, w] : problem.mu) {
        if (!r.contains(x)) {
            continue;
        }
        weight += w;
        if (problem.target_probability(x, a) > 0) {
            admissible += w;
        }
    }
    require(weight != 0, ErrorKind::kEmptyWeight, "rectangle has zero weight");
    Rational adv = admissible / weight;
    adv.canonicalize();
    return adv;
}

RectangleStats rectangle_stats(const Rectangle &r, const GhzInstance &inst) {
    require(r.parties() == inst.n, ErrorKind::kLengthMismatch, "rectangle arity != n");
    r.validate(inst.k);
    RectangleStats s;
    s.size = r.size();
    s.involvement = involvement(r);
    s.counts = residue_counts(r, 2 * inst.k);
    s.n0 = s.counts[0];
    s.n1 = s.counts[inst.k];
    s.bias = ratio_bias(s.n0, s.n1);
    BigInt valid = s.n0 + s.n1;
    if (valid != 0) {
        s.advantage_even = make_rational(s.n0, valid);
        s.advantage_odd = make_rational(s.n1, valid);
    }
    return s;
}

BiasValue bias(const Rectangle &r, const GhzInstance &inst) {
    RectangleStats s = rectangle_stats(r, inst);
    require(s.n0 + s.n1 != 0, ErrorKind::kEmptyIntersection, "rectangle contains no valid input");
    return s.bias;
}

AdvantageBiasReport advantage_bias_relation(const Rectangle &r, const GhzInstance &inst,
                                            const CorrelationProblem &problem) {
    AdvantageBiasReport report;
    report.bias = bias(r, inst);
    report.predicted_max_advantage =
        report.bias.infinite ? Rational(1) : Rational((1 + report.bias.value) / (2 + report.bias.value));
    report.predicted_max_advantage.canonicalize();
    Outcome a{std::vector<int>(problem.n, 0)};
    while (true) {
        report.max_advantage = std::max(report.max_advantage, advantage(r, a, problem));
        std::size_t i = a.values.size();
        while (i-- > 0 && ++a.values[i] == problem.l) {
            a.values[i] = 0;
        }
        if (i == static_cast<std::size_t>(-1)) {
            break;
        }
    }
    report.pass = report.max_advantage == report.predicted_max_advantage;
    return report;
}

int involvement(const Rectangle &r) {
    int m = 0;
    for (const auto &set : r.sets) {
        m += set.size() >= 2;
    }
    return m;
}

bool satisfies_size_bound(const Rectangle &r, int k) {
    return r.size() <= ipow(BigInt(k), static_cast<unsigned>(involvement(r)));
}

bool theorem2_check(const Rational &delta, const Rational &r_cap, unsigned c, const Rational &eta_n,
                    const Rational &eps, int l, int n) {
    require(delta >= 0 && delta < 1, ErrorKind::kDeltaOutOfRange, "delta must lie in [0, 1)");
    Rational lhs = inverse_power_of_two(c) * eta_n * (1 - eps / (1 - delta));
    Rational rhs = Rational(ipow(BigInt(l), static_cast<unsigned>(n))) * r_cap;
    return lhs <= rhs;
}

std::optional<Rational> theorem2_eta_bound(const Rational &delta, const Rational &r_cap, unsigned c,
                                           const Rational &eps, int l, int n) {
    require(delta >= 0 && delta < 1, ErrorKind::kDeltaOutOfRange, "delta must lie in [0, 1)");
    Rational factor = 1 - eps / (1 - delta);
    if (factor <= 0) {
        return std::nullopt;
    }
    Rational bound = Rational(ipow(BigInt(2), c) * ipow(BigInt(l), static_cast<unsigned>(n))) * r_cap / factor;
    bound.canonicalize();
    return bound;
}

std::string scan_mode_name(ScanMode mode) {
    switch (mode) {
        case ScanMode::kExhaustive:
            return "exhaustive";
        case ScanMode::kSymmetryReduced:
            return "symmetry-reduced";
        case ScanMode::kSampled:
            return "sampled";
    }
    return "?";
}

Rational RectangleProfile::r_cap(const Rational &delta) const {
    BigInt best = 0;
    for (auto it = best_count.lower_bound(delta); it != best_count.end(); ++it) {
        best = std::max(best, it->second);
    }
    return make_rational(best, instance.valid_input_count());
}

Rational RectangleProfile::r_cap_above(const Rational &delta) const {
    BigInt best = 0;
    for (auto it = best_count.upper_bound(delta); it != best_count.end(); ++it) {
        best = std::max(best, it->second);
    }
    return make_rational(best, instance.valid_input_count());
}

std::vector<Rational> RectangleProfile::thresholds() const {
    std::vector<Rational> out;
    for (const auto &entry : best_count) {
        out.push_back(entry.first);
    }
    return out;
}

namespace {

constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
    if (a != 0 && b > kSaturated / a) {
        return kSaturated;
    }
    return a * b;
}

/// Collects the envelope for one worker.
struct EnvelopeSink {
    int k;
    std::map<Rational, BigInt> best_count;
    std::uint64_t visited = 0;

    void record(const std::vector<BigInt> &counts) {
        visited++;
        const BigInt &n0 = counts[0];
        const BigInt &n1 = counts[k];
        BigInt valid = n0 + n1;
        if (valid == 0) {
            return;
        }
        Rational adv = make_rational(n0 < n1 ? n1 : n0, valid);
        auto [it, inserted] = best_count.emplace(adv, valid);
        if (!inserted && it->second < valid) {
            it->second = valid;
        }
    }

    void merge(const EnvelopeSink &other) {
        visited += other.visited;
        for (const auto &[adv, count] : other.best_count) {
            auto [it, inserted] = best_count.emplace(adv, count);
            if (!inserted && it->second < count) {
                it->second = count;
            }
        }
    }
};

/// Depth-first enumeration sharing prefix convolutions. With ordered = false
/// the masks are nondecreasing along the parties (one tuple per multiset).
void enumerate(int n, int k, bool ordered, int depth, std::uint32_t min_mask, std::vector<std::vector<BigInt>> &stack,
               EnvelopeSink &sink) {
    const std::uint32_t full = (1u << k) - 1;
    if (depth == n) {
        sink.record(stack[depth]);
        return;
    }
    for (std::uint32_t mask = ordered ? 1 : min_mask; mask <= full; mask++) {
        convolve_into(stack[depth], mask, 2 * k, stack[depth + 1]);
        enumerate(n, k, ordered, depth + 1, mask, stack, sink);
    }
}

EnvelopeSink run_enumeration(int n, int k, bool ordered, int threads) {
    const std::uint32_t full = (1u << k) - 1;
    int workers = std::max(1, std::min<int>(threads, static_cast<int>(full)));
    std::vector<EnvelopeSink> sinks(workers, EnvelopeSink{k, {}, 0});
    auto work = [&](int w) {
        std::vector<std::vector<BigInt>> stack(n + 1, std::vector<BigInt>(2 * k, 0));
        stack[0][0] = 1;
        for (std::uint32_t mask = 1 + w; mask <= full; mask += workers) {
            convolve_into(stack[0], mask, 2 * k, stack[1]);
            enumerate(n, k, ordered, 1, mask, stack, sinks[w]);
        }
    };
    if (workers == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; w++) {
            pool.emplace_back(work, w);
        }
        for (auto &t : pool) {
            t.join();
        }
    }
    for (int w = 1; w < workers; w++) {
        sinks[0].merge(sinks[w]);
    }
    return std::move(sinks[0]);
}

}  // namespace

std::uint64_t exhaustive_rectangle_count(int n, int k) {
    std::uint64_t sides = (k >= 64) ? kSaturated : (std::uint64_t{1} << k) - 1;
    std::uint64_t total = 1;
    for (int i = 0; i < n; i++) {
        total = saturating_mul(total, sides);
    }
    return total;
}

std::uint64_t reduced_rectangle_count(int n, int k) {
    // Multisets of size n drawn from 2^k - 1 sides: C(n + sides - 1, n).
    BigInt sides = ipow(BigInt(2), static_cast<unsigned>(k)) - 1;
    BigInt total;
    BigInt top = sides + n - 1;
    if (!top.fits_ulong_p()) {
        return kSaturated;
    }
    mpz_bin_uiui(total.get_mpz_t(), top.get_ui(), static_cast<unsigned long>(n));
    return total.fits_ulong_p() ? total.get_ui() : kSaturated;
}

RectangleProfile profile_rectangles(const GhzInstance &inst, const ScanOptions &options) {
    GhzInstance checked = GhzInstance::create(inst.n, inst.k);
    require(checked.k <= 20, ErrorKind::kBudgetExceeded, "per-party subset lattice too large");
    RectangleProfile profile{checked, ScanMode::kExhaustive, 0, {}};
    std::uint64_t needed = options.use_symmetry ? reduced_rectangle_count(checked.n, checked.k)
                                                : exhaustive_rectangle_count(checked.n, checked.k);
    if (needed <= options.budget) {
        profile.mode = options.use_symmetry ? ScanMode::kSymmetryReduced : ScanMode::kExhaustive;
        EnvelopeSink sink = run_enumeration(checked.n, checked.k, !options.use_symmetry, options.threads);
        profile.visited = sink.visited;
        profile.best_count = std::move(sink.best_count);
        return profile;
    }
    require(options.allow_sampling, ErrorKind::kBudgetExceeded,
            std::to_string(needed) + " rectangles exceed the scan budget of " + std::to_string(options.budget));
    profile.mode = ScanMode::kSampled;
    Rng rng(options.seed);
    EnvelopeSink sink{checked.k, {}, 0};
    std::uint64_t sides = (std::uint64_t{1} << checked.k) - 1;
    std::uint64_t samples = std::min(options.samples, options.budget);
    std::vector<BigInt> counts(2 * checked.k), next(2 * checked.k);
    for (std::uint64_t s = 0; s < samples; s++) {
        std::fill(counts.begin(), counts.end(), BigInt(0));
        counts[0] = 1;
        for (int i = 0; i < checked.n; i++) {
            convolve_into(counts, static_cast<std::uint32_t>(1 + rng.below(sides)), 2 * checked.k, next);
            std::swap(counts, next);
        }
        sink.record(counts);
    }
    profile.visited = sink.visited;
    profile.best_count = std::move(sink.best_count);
    return profile;
}

ScanResult scan_rectangles(const GhzInstance &inst, const Rational &delta, const ScanOptions &options) {
    RectangleProfile profile = profile_rectangles(inst, options);
    return ScanResult{delta, profile.r_cap(delta), profile.mode, profile.visited};
}

void for_each_rectangle(int n, int k, const std::function<void(const Rectangle &)> &visit) {
    require(n >= 1 && k >= 1 && k <= 20, ErrorKind::kInvalidArgument, "bad rectangle lattice shape");
    const std::uint32_t full = (1u << k) - 1;
    std::vector<std::uint32_t> masks(n, 1);
    while (true) {
        visit(Rectangle::from_masks(masks, k));
        int i = n - 1;
        while (i >= 0 && masks[i] == full) {
            masks[i] = 1;
            i--;
        }
        if (i < 0) {
            return;
        }
        masks[i]++;
    }
}

std::string stats_csv_header() {
    return "sets,size,involvement,n0,n1,bias,advantage_even,advantage_odd,counts";
}

std::string stats_csv_row(const Rectangle &r, const RectangleStats &s) {
    std::ostringstream out;
    for (std::size_t i = 0; i < r.sets.size(); i++) {
        if (i) {
            out << '|';
        }
        for (std::size_t j = 0; j < r.sets[i].size(); j++) {
            out << (j ? " " : "") << r.sets[i][j];
        }
    }
    out << ',' << s.size << ',' << s.involvement << ',' << s.n0 << ',' << s.n1 << ',' << s.bias.str() << ','
        << (s.advantage_even ? to_string(*s.advantage_even) : "") << ','
        << (s.advantage_odd ? to_string(*s.advantage_odd) : "") << ',';
    for (std::size_t i = 0; i < s.counts.size(); i++) {
        out << (i ? " " : "") << s.counts[i];
    }
    return out.str();
}

}  // namespace nonlocal
