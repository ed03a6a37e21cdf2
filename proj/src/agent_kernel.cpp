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

#include "rendezvous/agent_kernel.hpp"

#include <string>

#include "rendezvous/errors.hpp"

namespace rdv {

namespace detail {
struct LevelAccess {
  static Level make(Scalar hidden) { return Level(std::move(hidden)); }
};
}  // namespace detail

Move::Move(Direction d, Scalar length) : direction(d), duration(std::move(length)) {
  if (duration <= 0) throw ProtocolViolation("move duration must be positive");
}

Wait::Wait(Scalar length) : duration(std::move(length)) {
  if (duration <= 0) throw ProtocolViolation("wait duration must be positive");
}

std::string describe(const Action& action) {
  if (const auto* m = std::get_if<Move>(&action)) {
    return std::string("move(") + to_char(m->direction) + "," + to_string(m->duration) + ")";
  }
  if (const auto* w = std::get_if<Wait>(&action)) return "wait(" + to_string(w->duration) + ")";
  return "halt";
}

std::string_view to_string(Comparison c) {
  switch (c) {
    case Comparison::Smaller: return "smaller";
    case Comparison::Equal: return "equal";
    case Comparison::Larger: return "larger";
  }
  return "?";
}

Comparison compare_levels(const Level& previous, const Level& current) {
  if (previous.hidden_ < current.hidden_) return Comparison::Larger;
  if (previous.hidden_ == current.hidden_) return Comparison::Equal;
  return Comparison::Smaller;
}

std::string_view to_string(BinaryReading r) { return r == BinaryReading::Near ? "near" : "far"; }

std::string_view to_string(Distortion d) {
  switch (d) {
    case Distortion::Identity: return "identity";
    case Distortion::Affine: return "affine";
    case Distortion::Cubic: return "cubic";
    case Distortion::Exp2: return "exp2";
  }
  return "?";
}

Distortion parse_distortion(std::string_view text) {
  if (text == "identity") return Distortion::Identity;
  if (text == "affine") return Distortion::Affine;
  if (text == "cubic") return Distortion::Cubic;
  if (text == "exp2") return Distortion::Exp2;
  throw InputError("unknown distortion \"" + std::string(text) + "\"");
}

Scalar apply_distortion(Distortion d, const Scalar& x) {
  switch (d) {
    case Distortion::Identity: return x;
    case Distortion::Affine: return x + 7;
    case Distortion::Cubic: return x * x * x;
    case Distortion::Exp2: {
      const mpz_class whole = floor(x);
      const Scalar frac = x - Scalar(whole);
      const Scalar base = pow2(static_cast<int>(whole.get_si()));
      return base * (1 + frac);
    }
  }
  return x;
}

MonotoneReading sense_monotone(bool partner_present, const Scalar& squared_distance,
                               Distortion distortion) {
  if (!partner_present) return MonotoneReading::absent();
  return MonotoneReading::present(
      detail::LevelAccess::make(apply_distortion(distortion, squared_distance)));
}

BinaryReading sense_binary(bool partner_present, const Scalar& squared_distance,
                           const Scalar& rho) {
  return partner_present && squared_distance < rho * rho ? BinaryReading::Near
                                                         : BinaryReading::Far;
}

}  // namespace rdv
