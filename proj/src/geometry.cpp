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

#include "rendezvous/geometry.hpp"

#include <stdexcept>
#include <string>

#include "rendezvous/errors.hpp"

namespace rdv {

char to_char(Direction d) {
  switch (d) {
    case Direction::North: return 'N';
    case Direction::East: return 'E';
    case Direction::South: return 'S';
    case Direction::West: return 'W';
  }
  return '?';
}

Direction opposite(Direction d) {
  switch (d) {
    case Direction::North: return Direction::South;
    case Direction::East: return Direction::West;
    case Direction::South: return Direction::North;
    case Direction::West: return Direction::East;
  }
  return d;
}

Direction parse_direction(std::string_view text) {
  if (text == "N") return Direction::North;
  if (text == "E") return Direction::East;
  if (text == "S") return Direction::South;
  if (text == "W") return Direction::West;
  throw InputError("invalid direction \"" + std::string(text) + "\"");
}

MotionSegment MotionSegment::resting(const Point& at, const Scalar& from, const Scalar& to) {
  return MotionSegment{from, to, at, Velocity{}};
}

MotionSegment MotionSegment::moving(const Point& from_point, Direction d, const Scalar& from,
                                    const Scalar& to) {
  return MotionSegment{from, to, from_point, Velocity{d}};
}

Point MotionSegment::position_at(const Scalar& t) const {
  if (velocity.at_rest()) return start_point;
  const Scalar elapsed = t - start_time;
  return Point{start_point.x + velocity.dx() * elapsed, start_point.y + velocity.dy() * elapsed};
}

Scalar squared_distance(const Point& p, const Point& q) {
  const Scalar dx = p.x - q.x;
  const Scalar dy = p.y - q.y;
  return dx * dx + dy * dy;
}

Quadratic squared_distance_polynomial(const MotionSegment& a, const MotionSegment& b,
                                      const Scalar& t0, const Scalar& t1) {
  if (!a.covers(t0, t1) || !b.covers(t0, t1)) {
    throw std::invalid_argument("squared_distance_polynomial: interval not covered by both segments");
  }
  // Relative position a(t) - b(t) = r0 + v*t.
  const int vx = a.velocity.dx() - b.velocity.dx();
  const int vy = a.velocity.dy() - b.velocity.dy();
  const Scalar rx = (a.start_point.x - a.velocity.dx() * a.start_time) -
                    (b.start_point.x - b.velocity.dx() * b.start_time);
  const Scalar ry = (a.start_point.y - a.velocity.dy() * a.start_time) -
                    (b.start_point.y - b.velocity.dy() * b.start_time);
  Quadratic q;
  q.a = vx * vx + vy * vy;
  q.b = 2 * (rx * vx + ry * vy);
  q.c = rx * rx + ry * ry;
  return q;
}

bool TouchTime::at_or_before(const Scalar& t) const {
  if (exact) return *exact <= t;
  if (t < region_begin) return false;
  if (t >= region_end) return true;
  return poly(t) - threshold_sq <= 0;
}

std::optional<TouchTime> first_touch_time(const MotionSegment& a, const MotionSegment& b,
                                          const Scalar& t0, const Scalar& t1,
                                          const Scalar& threshold_sq, unsigned bracket_bits) {
  const Quadratic q = squared_distance_polynomial(a, b, t0, t1);
  auto excess = [&](const Scalar& t) { return Scalar(q(t) - threshold_sq); };

  const Scalar start_excess = excess(t0);
  if (start_excess < 0) {
    throw std::invalid_argument("first_touch_time: already inside threshold at interval start");
  }
  TouchTime touch{q, threshold_sq, t0, t0, std::nullopt, t0, t0};
  if (start_excess == 0) {
    touch.exact = t0;
    return touch;
  }
  // a == 0 forces b == 0: constant distance, and it is above the threshold.
  if (q.a == 0) return std::nullopt;

  const Scalar vertex = -q.b / (2 * q.a);
  if (vertex <= t0) return std::nullopt;
  const Scalar region_end = min(vertex, t1);
  if (excess(region_end) > 0) return std::nullopt;

  touch.region_end = region_end;
  const Scalar disc = q.b * q.b - 4 * q.a * (q.c - threshold_sq);
  Scalar root_disc;
  if (exact_sqrt(disc, root_disc)) {
    const Scalar root = (-q.b - root_disc) / (2 * q.a);
    touch.exact = root;
    touch.lo = root;
    touch.hi = root;
    return touch;
  }

  // Irrational root: excess is strictly decreasing on [t0, region_end],
  // positive at lo and non-positive at hi throughout the bisection.
  const Scalar target_width = pow2(-static_cast<int>(bracket_bits));
  Scalar lo = t0;
  Scalar hi = region_end;
  while (hi - lo > target_width) {
    Scalar mid = (lo + hi) / 2;
    if (excess(mid) > 0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  touch.lo = lo;
  touch.hi = hi;
  return touch;
}

}  // namespace rdv
