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

#ifndef NONLOCAL_NUMERIC_H
#define NONLOCAL_NUMERIC_H

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace nonlocal {

using BigInt = mpz_class;
using Rational = mpq_class;

/// Tolerance for every real-valued comparison (quantum amplitudes, n-th roots).
inline constexpr double kRealTolerance = 1e-12;

Rational make_rational(long num, long den = 1);
Rational make_rational(const BigInt &num, const BigInt &den);

/// 2^-c as an exact rational.
Rational inverse_power_of_two(unsigned c);
BigInt ipow(const BigInt &base, unsigned exponent);
Rational ipow(const Rational &base, unsigned exponent);

/// Exact "p/q" rendering ("p" when q = 1).
std::string to_string(const Rational &q);
std::string to_string(const BigInt &z);
double to_double(const Rational &q);

bool is_power_of_two(std::uint64_t v);
unsigned ceil_log2(std::uint64_t v);

/// Nonnegative rational extended with +infinity. Bias-type quantities
/// ("smallest d with p <= (1+d) q") are infinite when q can be zero.
struct BiasValue {
    bool infinite = false;
    Rational value = 0;

    static BiasValue finite(const Rational &v) {
        return BiasValue{false, v};
    }
    static BiasValue infinity() {
        return BiasValue{true, 0};
    }

    bool operator==(const BiasValue &other) const;
    bool operator<(const BiasValue &other) const;
    bool operator<=(const BiasValue &other) const {
        return !(other < *this);
    }
    bool le(const Rational &bound) const {
        return !infinite && value <= bound;
    }
    std::string str() const;
    double to_double() const;
};

/// Smallest d >= 0 with max(p, q) <= (1 + d) min(p, q), i.e. max/min - 1.
/// Infinite when the smaller side is zero and the larger one is not.
BiasValue ratio_bias(const BigInt &p, const BigInt &q);

}  // namespace nonlocal

#endif
