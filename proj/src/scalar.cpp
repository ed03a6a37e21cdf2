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

#include "rendezvous/scalar.hpp"

#include <algorithm>
#include <cctype>
#include <string>

#include "rendezvous/errors.hpp"

namespace rdv {
namespace {

bool all_digits(std::string_view s) {
  return !s.empty() &&
         std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c) != 0; });
}

mpz_class pow10(int n) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10, static_cast<unsigned long>(n));
  return r;
}

[[noreturn]] void reject(std::string_view text, const char* why) {
  throw InputError("invalid rational literal \"" + std::string(text) + "\": " + why);
}

}  // namespace

Scalar parse_scalar(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  if (body.empty()) reject(text, "empty");

  Scalar out;
  if (auto slash = body.find('/'); slash != std::string_view::npos) {
    auto num = body.substr(0, slash);
    auto den = body.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) reject(text, "expected p/q with integer p and q");
    mpz_class n(std::string(num), 10);
    mpz_class d(std::string(den), 10);
    if (d == 0) reject(text, "zero denominator");
    out = Scalar(n, d);
    out.canonicalize();
  } else {
    auto dot = body.find('.');
    std::string_view whole = body.substr(0, dot);
    std::string_view frac = dot == std::string_view::npos ? std::string_view{} : body.substr(dot + 1);
    if (whole.empty() && frac.empty()) reject(text, "no digits");
    if (!whole.empty() && !all_digits(whole)) reject(text, "not a decimal number");
    if (dot != std::string_view::npos && !all_digits(frac)) reject(text, "not a decimal number");
    mpz_class n(std::string(whole.empty() ? "0" : whole) + std::string(frac), 10);
    out = Scalar(n, pow10(static_cast<int>(frac.size())));
    out.canonicalize();
  }
  if (negative) out = -out;
  return out;
}

std::string to_string(const Scalar& value) {
  if (value.get_den() == 1) return value.get_num().get_str();
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

std::string to_decimal(const Scalar& value, int digits) {
  const mpz_class scale = pow10(digits);
  Scalar scaled = abs(value) * scale + Scalar(1, 2);
  mpz_class units = floor(scaled);
  std::string s = units.get_str();
  if (digits > 0) {
    if (s.size() <= static_cast<std::size_t>(digits)) s.insert(0, digits + 1 - s.size(), '0');
    s.insert(s.size() - digits, ".");
  }
  if (value < 0 && units != 0) s.insert(0, "-");
  return s;
}

std::string sqrt_to_decimal(const Scalar& value, int digits) {
  if (value < 0) throw InputError("sqrt of negative value");
  const mpz_class scale = pow10(digits);
  mpz_class scaled = floor(value * scale * scale);
  mpz_class root;
  mpz_sqrt(root.get_mpz_t(), scaled.get_mpz_t());
  std::string s = root.get_str();
  if (digits > 0) {
    if (s.size() <= static_cast<std::size_t>(digits)) s.insert(0, digits + 1 - s.size(), '0');
    s.insert(s.size() - digits, ".");
  }
  return s;
}

Scalar pow2(int exponent) {
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), 2, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
  if (exponent >= 0) return Scalar(p);
  Scalar r(mpz_class(1), p);
  r.canonicalize();
  return r;
}

bool exact_sqrt(const Scalar& value, Scalar& root) {
  if (value < 0) return false;
  // num and den are coprime, so the square root is rational iff both are squares.
  if (mpz_perfect_square_p(value.get_num_mpz_t()) == 0 ||
      mpz_perfect_square_p(value.get_den_mpz_t()) == 0) {
    return false;
  }
  mpz_class n, d;
  mpz_sqrt(n.get_mpz_t(), value.get_num_mpz_t());
  mpz_sqrt(d.get_mpz_t(), value.get_den_mpz_t());
  root = Scalar(n, d);
  root.canonicalize();
  return true;
}

mpz_class ceil(const Scalar& value) {
  mpz_class r;
  mpz_cdiv_q(r.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
  return r;
}

mpz_class floor(const Scalar& value) {
  mpz_class r;
  mpz_fdiv_q(r.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
  return r;
}

}  // namespace rdv
