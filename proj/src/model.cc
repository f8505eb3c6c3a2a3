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

#include "nonlocal/model.h"

#include <cmath>
#include <sstream>

#include "nonlocal/error.h"

namespace nonlocal {

bool Outcome::all_click() const {
    for (int v : values) {
        if (v == kNoClick) {
            return false;
        }
    }
    return true;
}

std::string Outcome::str() const {
    std::ostringstream out;
    out << '(';
    for (std::size_t i = 0; i < values.size(); i++) {
        if (i) {
            out << ',';
        }
        if (values[i] == kNoClick) {
            out << '_';
        } else {
            out << values[i];
        }
    }
    out << ')';
    return out.str();
}

Rational CorrelationProblem::target_probability(const InputVector &x, const Outcome &a) const {
    auto row = target.find(x);
    if (row == target.end()) {
        return 0;
    }
    auto it = row->second.find(a);
    return it == row->second.end() ? Rational(0) : it->second;
}

Rational CorrelationProblem::weight(const InputVector &x) const {
    auto it = mu.find(x);
    return it == mu.end() ? Rational(0) : it->second;
}

void CorrelationProblem::validate() const {
    require(n >= 1 && k >= 1 && l >= 1, ErrorKind::kInvalidArgument, "n, k, l must be positive");
    Rational total = 0;
    for (const auto &[x, w] : mu) {
        require(static_cast<int>(x.size()) == n, ErrorKind::kLengthMismatch, "input vector length != n");
        for (int xi : x) {
            require(xi >= 0 && xi < k, ErrorKind::kInvalidArgument, "input entry out of range");
        }
        require(w > 0, ErrorKind::kInvalidArgument, "mu must be positive on its stored support");
        total += w;
        auto row = target.find(x);
        require(row != target.end(), ErrorKind::kInvalidArgument, "missing target row for a support point");
        Rational row_total = 0;
        for (const auto &[a, p] : row->second) {
            require(static_cast<int>(a.size()) == n, ErrorKind::kLengthMismatch, "outcome length != n");
            for (int ai : a.values) {
                require(ai == kNoClick || (ai >= 0 && ai < l), ErrorKind::kInvalidArgument,
                        "outcome entry out of range");
            }
            require(p >= 0, ErrorKind::kInvalidArgument, "negative target probability");
            row_total += p;
        }
        require(row_total == 1, ErrorKind::kInvalidArgument, "target row does not sum to 1");
    }
    require(total == 1, ErrorKind::kInvalidArgument, "mu does not sum to 1");
    for (const auto &entry : target) {
        require(mu.count(entry.first) != 0, ErrorKind::kInvalidArgument, "target row outside the support of mu");
    }
}

Outcome DeterministicLhv::apply(std::span<const int> x) const {
    require(x.size() == tables.size(), ErrorKind::kLengthMismatch, "input length != party count");
    Outcome out;
    out.values.resize(x.size());
    for (std::size_t i = 0; i < x.size(); i++) {
        out.values[i] = tables[i][x[i]];
    }
    return out;
}

void DeterministicLhv::validate(int n, int k, int l) const {
    require(parties() == n, ErrorKind::kArityMismatch, "lhv party count != n");
    for (const auto &table : tables) {
        require(static_cast<int>(table.size()) == k, ErrorKind::kArityMismatch, "lhv table is not total on {0..k-1}");
        for (int v : table) {
            require(v == kNoClick || (v >= 0 && v < l), ErrorKind::kArityMismatch, "lhv output out of range");
        }
    }
}

DeterministicLhv DeterministicLhv::constant(int n, int k, int value) {
    return DeterministicLhv{std::vector<std::vector<int>>(n, std::vector<int>(k, value))};
}

void MixedLhv::validate(int n, int k, int l) const {
    require(!components.empty(), ErrorKind::kInvalidArgument, "empty mixture");
    Rational total = 0;
    for (const auto &c : components) {
        c.lhv.validate(n, k, l);
        require(c.weight > 0, ErrorKind::kInvalidArgument, "mixture weights must be positive");
        total += c.weight;
    }
    require(total == 1, ErrorKind::kInvalidArgument, "mixture weights do not sum to 1");
}

Rational ModelDistribution::probability(const InputVector &x, const Outcome &a) const {
    auto row = probs.find(x);
    if (row == probs.end()) {
        return 0;
    }
    auto it = row->second.find(a);
    return it == row->second.end() ? Rational(0) : it->second;
}

ModelDistribution evaluate_mixed_lhv(const MixedLhv &m, const CorrelationProblem &problem) {
    m.validate(problem.n, problem.k, problem.l);
    ModelDistribution d;
    for (const auto &entry : problem.mu) {
        const InputVector &x = entry.first;
        auto &row = d.probs[x];
        for (const auto &c : m.components) {
            row[c.lhv.apply(x)] += c.weight;
        }
    }
    return d;
}

namespace {

const OutcomeDistribution &row_for(const ModelDistribution &d, const InputVector &x) {
    auto it = d.probs.find(x);
    require(it != d.probs.end(), ErrorKind::kInvalidInput, "model distribution undefined on a support point");
    return it->second;
}

Rational click_mass(const ModelDistribution &d, const CorrelationProblem &problem) {
    Rational eta_n = 0;
    for (const auto &[x, w] : problem.mu) {
        Rational clicked = 0;
        for (const auto &[a, p] : row_for(d, x)) {
            if (a.all_click()) {
                clicked += p;
            }
        }
        eta_n += w * clicked;
    }
    return eta_n;
}

}  // namespace

Efficiency detection_efficiency(const ModelDistribution &d, const CorrelationProblem &problem) {
    Efficiency e;
    e.eta_n = click_mass(d, problem);
    e.eta = std::pow(e.eta_n.get_d(), 1.0 / problem.n);
    return e;
}

Rational error_probability(const ModelDistribution &d, const CorrelationProblem &problem) {
    Rational eta_n = click_mass(d, problem);
    require(eta_n != 0, ErrorKind::kDivisionByZeroEfficiency, "all-click probability is zero");
    Rational wrong = 0;
    for (const auto &[x, w] : problem.mu) {
        Rational row_wrong = 0;
        for (const auto &[a, p] : row_for(d, x)) {
            if (a.all_click() && p != 0 && problem.target_probability(x, a) == 0) {
                row_wrong += p;
            }
        }
        wrong += w * row_wrong;
    }
    Rational eps = wrong / eta_n;
    eps.canonicalize();
    return eps;
}

Rational total_variation_error(const ModelDistribution &d, const CorrelationProblem &problem) {
    Rational eta_n = click_mass(d, problem);
    require(eta_n != 0, ErrorKind::kDivisionByZeroEfficiency, "all-click probability is zero");
    // Click outcomes compared at weight eta^n * target.
    Rational total = 0;
    for (const auto &[x, w] : problem.mu) {
        const auto &model_row = row_for(d, x);
        Rational l1 = 0;
        for (const auto &[a, p] : model_row) {
            if (a.all_click()) {
                l1 += abs(eta_n * problem.target_probability(x, a) - p);
            }
        }
        auto target_row = problem.target.find(x);
        if (target_row != problem.target.end()) {
            for (const auto &[a, q] : target_row->second) {
                if (a.all_click() && model_row.count(a) == 0) {
                    l1 += eta_n * q;
                }
            }
        }
        total += w * l1;
    }
    Rational eps_var = total / eta_n;
    eps_var.canonicalize();
    return eps_var;
}

}  // namespace nonlocal
