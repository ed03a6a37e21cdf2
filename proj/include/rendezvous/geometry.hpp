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

#include <optional>
#include <string_view>

#include "rendezvous/scalar.hpp"

namespace rdv {

/// Plane coordinates: x grows East, y grows North.
struct Point {
  Scalar x;
  Scalar y;

  friend bool operator==(const Point&, const Point&) = default;
};

enum class Direction { North, East, South, West };

char to_char(Direction d);
Direction opposite(Direction d);
/// Accepts "N", "E", "S", "W".
Direction parse_direction(std::string_view text);

/// Velocity of an agent: at rest or a unit cardinal vector.
class Velocity {
 public:
  constexpr Velocity() = default;
  constexpr explicit Velocity(Direction d)
      : dx_(d == Direction::East ? 1 : d == Direction::West ? -1 : 0),
        dy_(d == Direction::North ? 1 : d == Direction::South ? -1 : 0) {}

  constexpr int dx() const { return dx_; }
  constexpr int dy() const { return dy_; }
  constexpr bool at_rest() const { return dx_ == 0 && dy_ == 0; }

  friend constexpr bool operator==(Velocity, Velocity) = default;

 private:
  int dx_ = 0;
  int dy_ = 0;
};

/// One agent's position as a linear function of time over [start_time, end_time].
struct MotionSegment {
  Scalar start_time;
  Scalar end_time;
  Point start_point;
  Velocity velocity;

  static MotionSegment resting(const Point& at, const Scalar& from, const Scalar& to);
  static MotionSegment moving(const Point& from_point, Direction d, const Scalar& from,
                              const Scalar& to);

  /// Position at t; t is not clamped to the segment's interval.
  Point position_at(const Scalar& t) const;
  Point end_point() const { return position_at(end_time); }
  bool covers(const Scalar& t0, const Scalar& t1) const {
    return start_time <= t0 && t0 <= t1 && t1 <= end_time;
  }
};

Scalar squared_distance(const Point& p, const Point& q);

/// a*t^2 + b*t + c in absolute time t.
struct Quadratic {
  Scalar a;
  Scalar b;
  Scalar c;

  Scalar operator()(const Scalar& t) const { return (a * t + b) * t + c; }
  friend bool operator==(const Quadratic&, const Quadratic&) = default;
};

/// Squared distance between the two moving points on [t0, t1], as a
/// polynomial in absolute time. Throws std::invalid_argument when either
/// segment does not cover [t0, t1].
Quadratic squared_distance_polynomial(const MotionSegment& a, const MotionSegment& b,
                                      const Scalar& t0, const Scalar& t1);

/// Earliest instant t* at which a distance polynomial reaches a threshold.
///
/// t* is the smaller root of poly(t) = threshold_sq. It is rational only when
/// the discriminant is a rational square; otherwise it is carried exactly as
/// (poly, threshold_sq, search region) and printed through the bracket
/// [lo, hi], obtained by exact sign bisection.
struct TouchTime {
  Quadratic poly;
  Scalar threshold_sq;
  /// poly - threshold_sq is non-negative at region_begin, non-positive at
  /// region_end and strictly decreasing in between; t* lies in that region.
  Scalar region_begin;
  Scalar region_end;
  std::optional<Scalar> exact;
  Scalar lo;
  Scalar hi;

  /// Exact test of t* <= t.
  bool at_or_before(const Scalar& t) const;
  Scalar midpoint() const { return (lo + hi) / 2; }
  Scalar width() const { return hi - lo; }
};

inline constexpr unsigned kDefaultBracketBits = 40;

/// First instant in [t0, t1] where the squared distance between the two
/// segments drops to threshold_sq, or nullopt if it stays above it.
/// Preconditions: both segments cover [t0, t1] and the squared distance at t0
/// is >= threshold_sq; violations throw std::invalid_argument.
std::optional<TouchTime> first_touch_time(const MotionSegment& a, const MotionSegment& b,
                                          const Scalar& t0, const Scalar& t1,
                                          const Scalar& threshold_sq,
                                          unsigned bracket_bits = kDefaultBracketBits);

}  // namespace rdv
