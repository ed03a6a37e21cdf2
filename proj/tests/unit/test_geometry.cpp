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

#include <doctest.h>

#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>

#include "rendezvous/geometry.hpp"

using rdv::Direction;
using rdv::MotionSegment;
using rdv::Point;
using rdv::Scalar;

namespace {

Point P(const Scalar& x, const Scalar& y) { return Point{x, y}; }

// Squared distance scaled by 4^k at time s = n / 2^k, for endpoints and times
// on the 1/16 grid; everything stays in int64.
class ScaledDistance {
 public:
  ScaledDistance(const MotionSegment& a, const MotionSegment& b, int k)
      : x0_(base(a.start_point.x, a.velocity.dx(), a.start_time, k) -
            base(b.start_point.x, b.velocity.dx(), b.start_time, k)),
        y0_(base(a.start_point.y, a.velocity.dy(), a.start_time, k) -
            base(b.start_point.y, b.velocity.dy(), b.start_time, k)),
        vx_(a.velocity.dx() - b.velocity.dx()),
        vy_(a.velocity.dy() - b.velocity.dy()) {}

  std::int64_t operator()(std::int64_t n) const {
    const std::int64_t dx = x0_ + vx_ * n;
    const std::int64_t dy = y0_ + vy_ * n;
    return dx * dx + dy * dy;
  }

 private:
  static std::int64_t base(const Scalar& p0, int v, const Scalar& t0, int k) {
    return Scalar((p0 - v * t0) * rdv::pow2(k)).get_num().get_si();
  }
  std::int64_t x0_, y0_, vx_, vy_;
};

// Minimum of the squared distance over [t0, t1], from the vertex formula.
Scalar min_d2(const MotionSegment& a, const MotionSegment& b, const Scalar& t0, const Scalar& t1) {
  auto d2 = [&](const Scalar& t) { return rdv::squared_distance(a.position_at(t), b.position_at(t)); };
  Scalar best = rdv::min(d2(t0), d2(t1));
  const int vx = a.velocity.dx() - b.velocity.dx();
  const int vy = a.velocity.dy() - b.velocity.dy();
  const int speed2 = vx * vx + vy * vy;
  if (speed2 == 0) return best;
  const Point pa = a.position_at(t0);
  const Point pb = b.position_at(t0);
  // Relative position r(t0) + v*(t - t0) is closest to the origin at t0 + tau.
  const Scalar tau = -((pa.x - pb.x) * vx + (pa.y - pb.y) * vy) / speed2;
  if (tau > 0 && t0 + tau < t1) best = rdv::min(best, d2(t0 + tau));
  return best;
}

}  // namespace

TEST_CASE("segment kinematics are exact") {
  const MotionSegment m = MotionSegment::moving(P(1, 2), Direction::West, 3, Scalar(11, 2));
  CHECK(m.position_at(4) == P(0, 2));
  CHECK(m.end_point() == P(Scalar(-3, 2), 2));
  const MotionSegment r = MotionSegment::resting(P(5, 5), 0, 9);
  CHECK(r.position_at(7) == P(5, 5));
  CHECK(rdv::opposite(Direction::North) == Direction::South);
  CHECK(rdv::opposite(Direction::East) == Direction::West);
  CHECK(rdv::parse_direction("S") == Direction::South);
}

TEST_CASE("inert agent and a West mover touch at t = 2") {
  // b starts 3 East of a and walks West: distance 3 - t reaches 1 at t = 2.
  const MotionSegment a = MotionSegment::resting(P(0, 0), 0, 10);
  const MotionSegment b = MotionSegment::moving(P(3, 0), Direction::West, 0, 10);
  const auto touch = rdv::first_touch_time(a, b, 0, 10, 1);
  REQUIRE(touch);
  REQUIRE(touch->exact);
  CHECK(*touch->exact == 2);
  CHECK(touch->lo == 2);
  CHECK(touch->hi == 2);
}

TEST_CASE("parallel movers never touch") {
  const MotionSegment a = MotionSegment::moving(P(0, 0), Direction::North, 0, 10);
  const MotionSegment b = MotionSegment::moving(P(5, 0), Direction::North, 0, 10);
  CHECK_FALSE(rdv::first_touch_time(a, b, 0, 10, 1));
}

TEST_CASE("tangential pass at distance exactly 1 is a touch") {
  // b passes a at lateral offset 1: the minimum of dist^2 is exactly 1 at t = 4.
  const MotionSegment a = MotionSegment::resting(P(0, 0), 0, 10);
  const MotionSegment b = MotionSegment::moving(P(-4, 1), Direction::East, 0, 10);
  const auto touch = rdv::first_touch_time(a, b, 0, 10, 1);
  REQUIRE(touch);
  REQUIRE(touch->exact);
  CHECK(*touch->exact == 4);
}

TEST_CASE("irrational touch is bracketed tightly") {
  // dist^2 = (3 - t)^2 + 1/4 hits 1 at t = 3 - sqrt(3)/2.
  const MotionSegment a = MotionSegment::resting(P(0, 0), 0, 10);
  const MotionSegment b = MotionSegment::moving(P(3, Scalar(1, 2)), Direction::West, 0, 10);
  const auto touch = rdv::first_touch_time(a, b, 0, 10, 1, 40);
  REQUIRE(touch);
  CHECK_FALSE(touch->exact);
  CHECK(touch->width() <= rdv::pow2(-40));
  // (3 - t)^2 >= 3/4 on the left of the root, <= 3/4 on the right.
  const Scalar l = 3 - touch->lo;
  const Scalar h = 3 - touch->hi;
  CHECK(l * l >= Scalar(3, 4));
  CHECK(h * h <= Scalar(3, 4));
  CHECK(touch->at_or_before(touch->hi));
  CHECK_FALSE(touch->at_or_before(touch->lo - rdv::pow2(-41)));
  CHECK(rdv::to_decimal(touch->midpoint(), 9) == "2.133974596");
}

TEST_CASE("start inside the threshold is a precondition violation") {
  const MotionSegment a = MotionSegment::resting(P(0, 0), 0, 1);
  const MotionSegment b = MotionSegment::resting(P(Scalar(1, 2), 0), 0, 1);
  CHECK_THROWS_AS(rdv::first_touch_time(a, b, 0, 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(rdv::first_touch_time(a, b, 0, 2, 1), std::invalid_argument);
}

TEST_CASE("touch detection agrees with dense integer sampling on random segments") {
  std::mt19937_64 rng(20260117);
  auto grid = [&](int lo, int hi) {  // multiple of 1/16 in [lo, hi]
    std::uniform_int_distribution<int> u(lo * 16, hi * 16);
    Scalar v(u(rng), 16);
    v.canonicalize();
    return v;
  };
  auto velocity = [&](const Point& p, const Scalar& t0, const Scalar& t1) {
    const int k = std::uniform_int_distribution<int>(0, 4)(rng);
    if (k == 4) return MotionSegment::resting(p, t0, t1);
    return MotionSegment::moving(p, static_cast<Direction>(k), t0, t1);
  };
  constexpr int kBits = 12;
  const std::int64_t one = std::int64_t{1} << (2 * kBits);
  int touches = 0;
  int checked = 0;
  while (checked < 10000) {
    const Scalar t0 = grid(0, 4);
    const Scalar t1 = t0 + Scalar(std::uniform_int_distribution<int>(1, 64)(rng)) / 16;
    const MotionSegment a = velocity(P(grid(-4, 4), grid(-4, 4)), t0, t1);
    const MotionSegment b = velocity(P(grid(-4, 4), grid(-4, 4)), t0, t1);
    if (rdv::squared_distance(a.position_at(t0), b.position_at(t0)) < 1) continue;
    ++checked;
    const auto touch = rdv::first_touch_time(a, b, t0, t1, 1);
    const Scalar lowest = min_d2(a, b, t0, t1);
    CHECK_EQ(touch.has_value(), lowest <= 1);

    // No sample strictly before the touch (or anywhere, without one) is within 1.
    const std::int64_t n0 = Scalar(t0 * rdv::pow2(kBits)).get_num().get_si();
    const std::int64_t n1 = Scalar(t1 * rdv::pow2(kBits)).get_num().get_si();
    std::optional<std::int64_t> first_within;
    const ScaledDistance scaled(a, b, kBits);
    for (std::int64_t n = n0; n <= n1 && !first_within; ++n) {
      if (scaled(n) <= one) first_within = n;
    }
    if (first_within) {
      REQUIRE(touch);
      Scalar s(*first_within, std::int64_t{1} << kBits);
      s.canonicalize();
      CHECK(touch->at_or_before(s));
    }
    if (touch) {
      ++touches;
      const Scalar g = rdv::squared_distance(a.position_at(touch->lo), b.position_at(touch->lo));
      const Scalar h = rdv::squared_distance(a.position_at(touch->hi), b.position_at(touch->hi));
      CHECK(g >= 1);
      CHECK(h <= 1);
      if (touch->exact) {
        CHECK(rdv::squared_distance(a.position_at(*touch->exact), b.position_at(*touch->exact)) == 1);
      }
    }
  }
  CHECK(touches > 300);
}
