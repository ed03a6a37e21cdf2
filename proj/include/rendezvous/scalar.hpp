// Copyright 2026-present The rendezvous Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace rdv {

/// Exact rational. Every position, duration and threshold in the library is
/// one of these; gmp keeps values canonical (lowest terms, positive
/// denominator) after every arithmetic operation.
using Scalar = mpq_class;

/// Parses "p/q" (q > 0) or a finite decimal such as "-12.375".
/// Throws InputError on anything else, including a zero denominator.
Scalar parse_scalar(std::string_view text);

/// Canonical "p/q" text, or "p" for integers. Round-trips through parse_scalar.
std::string to_string(const Scalar& value);

/// Decimal rendering rounded half away from zero to `digits` fractional digits.
std::string to_decimal(const Scalar& value, int digits = 12);

/// Decimal rendering of sqrt(value), truncated to `digits` fractional digits.
/// value must be non-negative.
std::string sqrt_to_decimal(const Scalar& value, int digits = 12);

/// 2^exponent, exact for negative exponents too.
Scalar pow2(int exponent);

/// Exact square root when value is the square of a rational.
bool exact_sqrt(const Scalar& value, Scalar& root);

inline Scalar min(const Scalar& a, const Scalar& b) { return a < b ? a : b; }
inline Scalar max(const Scalar& a, const Scalar& b) { return a < b ? b : a; }
inline Scalar abs(const Scalar& a) { return a < 0 ? Scalar(-a) : a; }

/// Smallest integer >= value.
mpz_class ceil(const Scalar& value);
/// Largest integer <= value.
mpz_class floor(const Scalar& value);

}  // namespace rdv
