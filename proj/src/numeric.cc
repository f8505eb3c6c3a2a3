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

#include "nonlocal/numeric.h"

#include <bit>
#include <limits>

#include "nonlocal/error.h"

namespace nonlocal {

Rational make_rational(long num, long den) {
    require(den != 0, ErrorKind::kInvalidArgument, "zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

Rational make_rational(const BigInt &num, const BigInt &den) {
    require(den != 0, ErrorKind::kInvalidArgument, "zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

Rational inverse_power_of_two(unsigned c) {
    BigInt den;
    mpz_ui_pow_ui(den.get_mpz_t(), 2, c);
    return Rational(BigInt(1), den);
}

BigInt ipow(const BigInt &base, unsigned exponent) {
    BigInt out;
    mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exponent);
    return out;
}

Rational ipow(const Rational &base, unsigned exponent) {
    Rational out(ipow(BigInt(base.get_num()), exponent), ipow(BigInt(base.get_den()), exponent));
    out.canonicalize();
    return out;
}

std::string to_string(const Rational &q) {
    return q.get_str();
}

std::string to_string(const BigInt &z) {
    return z.get_str();
}

double to_double(const Rational &q) {
    return q.get_d();
}

bool is_power_of_two(std::uint64_t v) {
    return v != 0 && std::has_single_bit(v);
}

unsigned ceil_log2(std::uint64_t v) {
    if (v <= 1) {
        return 0;
    }
    return static_cast<unsigned>(std::bit_width(v - 1));
}

bool BiasValue::operator==(const BiasValue &other) const {
    if (infinite || other.infinite) {
        return infinite == other.infinite;
    }
    return value == other.value;
}

bool BiasValue::operator<(const BiasValue &other) const {
    if (infinite) {
        return false;
    }
    if (other.infinite) {
        return true;
    }
    return value < other.value;
}

std::string BiasValue::str() const {
    return infinite ? "inf" : to_string(value);
}

double BiasValue::to_double() const {
    return infinite ? std::numeric_limits<double>::infinity() : value.get_d();
}

BiasValue ratio_bias(const BigInt &p, const BigInt &q) {
    const BigInt &hi = p < q ? q : p;
    const BigInt &lo = p < q ? p : q;
    if (lo == 0) {
        return hi == 0 ? BiasValue::finite(0) : BiasValue::infinity();
    }
    Rational r(hi - lo, lo);
    r.canonicalize();
    return BiasValue::finite(r);
}

}  // namespace nonlocal
