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

#ifndef NONLOCAL_GHZ_H
#define NONLOCAL_GHZ_H

#include <cstdint>
#include <span>

#include "nonlocal/model.h"
#include "nonlocal/protocol.h"

namespace nonlocal {

inline constexpr std::uint64_t kDefaultEnumerationCap = 10'000'000;

/// n parties share (|0^n> + |1^n>)/sqrt(2); each measures with one of k phase
/// settings.
struct GhzInstance {
    int n = 0;
    int k = 0;

    /// Throws InvalidArgument unless n >= 2 and k >= 2.
    static GhzInstance create(int n, int k);

    /// k = ceil(n^(1/6)) rounded up to a power of two (at least 2).
    static GhzInstance with_default_settings(int n);

    /// k^(n-1), the number of valid inputs.
    BigInt valid_input_count() const;
};

/// Basis (|0> +- e^{i pi setting / k} |1>)/sqrt(2); outcome 0 is the '+' vector.
struct PhaseMeasurement {
    int setting = 0;
    int k = 2;

    double phase() const;
};

bool is_valid(const GhzInstance &inst, std::span<const int> x);

/// F(x) = ((sum x_i) mod 2k) / k on valid inputs. Throws InvalidInput otherwise.
int f_bit(const GhzInstance &inst, std::span<const int> x);

/// 1/2^(n-1) when the outcome parity equals F(x), else 0.
Rational target_probability(const GhzInstance &inst, std::span<const int> x, const Outcome &a);

/// <psi| (x) proj_i |psi> from the two nonzero amplitudes of the GHZ state.
double quantum_probability(const GhzInstance &inst, std::span<const int> x, const Outcome &a);

/// (1 + cos(pi (sum a - sum x / k))) / 2^n.
double quantum_probability_closed_form(const GhzInstance &inst, std::span<const int> x, const Outcome &a);

/// Uniform mu on the valid inputs with the promise-problem target. Throws
/// ResourceLimit when k^(n-1) exceeds the cap.
CorrelationProblem ghz_problem(const GhzInstance &inst, std::uint64_t enumeration_cap = kDefaultEnumerationCap);

/// Every valid input in lexicographic order.
std::vector<InputVector> valid_inputs(const GhzInstance &inst, std::uint64_t enumeration_cap = kDefaultEnumerationCap);

/// Each party in turn announces its input; at the leaf the last party outputs
/// F(x) (0 on invalid inputs) and everyone else outputs 0.
ProtocolTree broadcast_strategy(const GhzInstance &inst);

/// Uniform mixture over the 2^(n-1) leaf output patterns whose parity is
/// F(x); reproduces the target exactly.
MixedProtocol broadcast_mixture(const GhzInstance &inst);

}  // namespace nonlocal

#endif
