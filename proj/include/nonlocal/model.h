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

#ifndef NONLOCAL_MODEL_H
#define NONLOCAL_MODEL_H

#include <compare>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "nonlocal/numeric.h"

namespace nonlocal {

/// Output symbol of a detector that did not fire.
inline constexpr int kNoClick = -1;

/// Input vector x, one setting in {0..k-1} per party.
using InputVector = std::vector<int>;

/// Joint output a; each entry is in {0..l-1} or kNoClick.
struct Outcome {
    std::vector<int> values;

    /// The all-click predicate C(a).
    bool all_click() const;
    std::size_t size() const {
        return values.size();
    }
    std::string str() const;

    friend auto operator<=>(const Outcome &, const Outcome &) = default;
};

using OutcomeDistribution = std::map<Outcome, Rational>;

/// An (n, k, l) correlation problem with input distribution mu.
///
/// mu is stored sparsely on its support D. target holds only the nonzero
/// entries of P(a|x); every absent (x, a) pair has target probability zero,
/// which is what the forbidden-event indicator F keys on.
struct CorrelationProblem {
    int n = 0;
    int k = 0;
    int l = 0;
    std::map<InputVector, Rational> mu;
    std::map<InputVector, OutcomeDistribution> target;

    Rational target_probability(const InputVector &x, const Outcome &a) const;
    Rational weight(const InputVector &x) const;
    bool in_support(const InputVector &x) const {
        return mu.count(x) != 0;
    }

    /// Throws InvalidArgument unless mu sums to 1, every weight is positive and
    /// every row of target sums to exactly 1.
    void validate() const;
};

struct DeterministicLhv {
    /// tables[i][x_i] is party i's output on input x_i.
    std::vector<std::vector<int>> tables;

    int parties() const {
        return static_cast<int>(tables.size());
    }
    int inputs() const {
        return tables.empty() ? 0 : static_cast<int>(tables.front().size());
    }
    Outcome apply(std::span<const int> x) const;
    void validate(int n, int k, int l) const;

    static DeterministicLhv constant(int n, int k, int value);
};

struct WeightedLhv {
    DeterministicLhv lhv;
    Rational weight;
};

struct MixedLhv {
    std::vector<WeightedLhv> components;

    void validate(int n, int k, int l) const;
};

/// P(a|x) of some classical model, for every x in the support of a problem.
struct ModelDistribution {
    std::map<InputVector, OutcomeDistribution> probs;

    Rational probability(const InputVector &x, const Outcome &a) const;
};

struct Efficiency {
    /// Exact all-click probability E_mu[sum_a P(a|x) C(a)].
    Rational eta_n;
    /// Its n-th root.
    double eta = 0;
};

ModelDistribution evaluate_mixed_lhv(const MixedLhv &m, const CorrelationProblem &problem);

Efficiency detection_efficiency(const ModelDistribution &d, const CorrelationProblem &problem);

/// Click-conditioned probability of an outcome the target forbids.
/// Throws DivisionByZeroEfficiency when no run ends with all detectors firing.
Rational error_probability(const ModelDistribution &d, const CorrelationProblem &problem);

/// Click-conditioned L1 distance to the target.
Rational total_variation_error(const ModelDistribution &d, const CorrelationProblem &problem);

}  // namespace nonlocal

#endif
