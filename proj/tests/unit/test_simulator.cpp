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

#include <algorithm>
#include <random>
#include <set>

#include "rendezvous/oracle.hpp"
#include "support.hpp"

using rdv::EventKind;
using rdv::Point;
using rdv::Scalar;
using namespace rdv::testing;

namespace {

Scalar uniform(std::mt19937_64& rng, int lo, int hi, int den) {
  std::uniform_int_distribution<int> u(lo * den, hi * den);
  Scalar v(u(rng), den);
  v.canonicalize();
  return v;
}

// Minimum squared distance of the two recorded trajectories over [t0, t1],
// on which both agents move uniformly.
Scalar min_d2(const rdv::RunResult& run, const Scalar& t0, const Scalar& t1) {
  const Point a0 = *rdv::trajectory_position(run.trajectories[0], t0);
  const Point b0 = *rdv::trajectory_position(run.trajectories[1], t0);
  const Point a1 = *rdv::trajectory_position(run.trajectories[0], t1);
  const Point b1 = *rdv::trajectory_position(run.trajectories[1], t1);
  const Scalar rx = a0.x - b0.x;
  const Scalar ry = a0.y - b0.y;
  const Scalar vx = (a1.x - b1.x - rx) / (t1 - t0);
  const Scalar vy = (a1.y - b1.y - ry) / (t1 - t0);
  Scalar best = rdv::min(rx * rx + ry * ry, rdv::squared_distance(a1, b1));
  const Scalar speed2 = vx * vx + vy * vy;
  if (speed2 == 0) return best;
  const Scalar tau = -(rx * vx + ry * vy) / speed2;
  if (tau > 0 && t0 + tau < t1) {
    const Scalar cx = rx + vx * tau;
    const Scalar cy = ry + vy * tau;
    best = rdv::min(best, cx * cx + cy * cy);
  }
  return best;
}

std::vector<rdv::Scenario> mixed_batch(std::uint64_t seed, int count) {
  std::mt19937_64 rng(seed);
  std::vector<rdv::Scenario> out;
  while (static_cast<int>(out.size()) < count) {
    const std::uint64_t L = std::uint64_t{1} << (1 + rng() % 10);
    const std::uint64_t la = rng() % L;
    const std::uint64_t lb = (la + 1 + rng() % (L - 1)) % L;
    const Point a{uniform(rng, -8, 8, 64), uniform(rng, -8, 8, 64)};
    const Point b{uniform(rng, -8, 8, 64), uniform(rng, -8, 8, 64)};
    const Scalar d2 = rdv::squared_distance(a, b);
    if (d2 <= 1) continue;
    const Scalar later = rng() % 2 == 0 ? Scalar(0) : uniform(rng, 0, 6, 64);
    rdv::Scenario s = rng() % 2 == 0 ? monotone(L, la, lb, a, b, 0, later)
                                     : binary(L, la, lb, a, b, 8, later, 0);
    if (s.model == rdv::SensingModel::Binary && d2 >= 64) continue;
    out.push_back(s);
  }
  return out;
}

}  // namespace

TEST_CASE("staggered monotone example: b walks South half steps and touches at t = 16") {
  const rdv::RunResult run = rdv::run_scenario(monotone(2, 0, 1, Point{0, 0}, Point{0, 10}, 0, 5));
  REQUIRE(run.report.met());
  // N 1 (larger), S 1 back, then 18 half steps South close 9 of the 10 units.
  REQUIRE(run.report.touch->exact);
  CHECK(*run.report.touch->exact == 16);
  CHECK(run.report.time_hi() == 11);
  CHECK(run.report.time_hi() <= 10 + 0 + 8);
  CHECK(run.report.agents[0].halted);
  CHECK(run.report.agents[0].final_phase == "inert");
  // a halts at 0 and the clock jumps to b's appearance.
  REQUIRE(run.trace.size() >= 4);
  CHECK(run.trace[2].kind == EventKind::Halt);
  CHECK(run.trace[3].kind == EventKind::Appear);
  CHECK(run.trace[3].time == 5);
}

TEST_CASE("simultaneous monotone example meets within x+y+5") {
  const rdv::Scenario s = monotone(4, 2, 3, Point{0, 0}, Point{3, 4});
  const rdv::RunResult run = rdv::run_scenario(s);
  REQUIRE(run.report.met());
  CHECK(run.report.time_hi() < 4 + 3 + 5);
  const rdv::OracleResult oracle = rdv::oracle_run({s});
  REQUIRE(oracle.met);
  CHECK(run.report.touch->at_or_before(*oracle.time));
  CHECK_FALSE(run.report.touch->at_or_before(*oracle.time - rdv::pow2(-10)));
}

TEST_CASE("binary example meets and the oracle confirms the instant") {
  const rdv::Scenario s = binary(4, 1, 2, Point{0, 0}, Point{0, 3}, 8);
  const rdv::RunResult run = rdv::run_scenario(s);
  REQUIRE(run.report.met());
  const rdv::OracleResult oracle = rdv::oracle_run({s});
  REQUIRE(oracle.met);
  CHECK(run.report.touch->at_or_before(*oracle.time));
  CHECK_FALSE(run.report.touch->at_or_before(*oracle.time - rdv::pow2(-10)));
}

TEST_CASE("equal action ends form one instant: ends, readings, then begins") {
  const rdv::RunResult run = rdv::run_scenario(monotone(4, 2, 3, Point{0, 0}, Point{3, 4}));
  std::vector<std::pair<EventKind, int>> at_one;
  for (const rdv::TraceEvent& e : run.trace) {
    if (e.time == 1) at_one.emplace_back(e.kind, *e.agent);
  }
  const std::vector<std::pair<EventKind, int>> expected{
      {EventKind::ActionEnd, 0}, {EventKind::ActionEnd, 1}, {EventKind::Reading, 0},
      {EventKind::Reading, 1},   {EventKind::ActionBegin, 0}, {EventKind::ActionBegin, 1}};
  CHECK(at_one == expected);
}

TEST_CASE("a touch inside a move ends the run before the move's end") {
  // b walks South from 10 above a with a horizontal offset, so the touch
  // falls strictly inside a half step.
  const rdv::RunResult run =
      rdv::run_scenario(monotone(2, 0, 1, Point{0, 0}, Point{Scalar(1, 2), Scalar(31, 3)}, 0, 5));
  REQUIRE(run.report.met());
  CHECK(run.trace.back().kind == EventKind::Meeting);
  const rdv::TraceEvent& before = run.trace[run.trace.size() - 2];
  CHECK(before.kind == EventKind::ActionBegin);
  REQUIRE(run.interrupted[1]);
  CHECK(run.interrupted[1]->end_time > run.report.touch->hi);
  CHECK(run.report.touch->lo > before.time);
}

TEST_CASE("initial distance at most 1 meets at the later appearance") {
  const rdv::RunResult run = rdv::run_scenario(monotone(2, 0, 1, Point{0, 0}, Point{Scalar(3, 5), Scalar(4, 5)}, 2, 7));
  REQUIRE(run.report.met());
  CHECK(run.report.touch->lo == 7);
  CHECK(run.report.time_hi() == 0);
}

TEST_CASE("protocol violations surface with the agent and the trace prefix") {
  rdv::Scenario s = binary(2, 0, 1, Point{0, 0}, Point{0, 3}, 8);
  s.strict_paper_loop = true;
  try {
    rdv::run_scenario(s);
    FAIL("expected a RunError");
  } catch (const rdv::RunError& e) {
    CHECK(e.agent() == 0);
    CHECK(std::string(e.what()).starts_with("agent a: "));
    CHECK_FALSE(e.trace_prefix().empty());
  }
}

TEST_CASE("runs are deterministic, kinematically exact and never miss a touch") {
  for (const rdv::Scenario& s : mixed_batch(5, 120)) {
    const rdv::RunResult run = rdv::run_scenario(s);
    CHECK(trace_text(run) == trace_text(rdv::run_scenario(s)));

    // Action ends land where velocity times duration says.
    std::array<std::optional<rdv::TraceEvent>, 2> open;
    for (const rdv::TraceEvent& e : run.trace) {
      if (!e.agent) continue;
      const int k = *e.agent;
      if (e.kind == EventKind::ActionBegin) open[k] = e;
      if (e.kind == EventKind::ActionEnd) {
        REQUIRE(open[k]);
        const Scalar d = duration_of(*open[k]->action);
        CHECK(e.time == open[k]->time + d);
        Point expected = *open[k]->position;
        if (const auto* m = std::get_if<rdv::Move>(&*open[k]->action)) {
          const rdv::Velocity v(m->direction);
          expected = Point{expected.x + v.dx() * d, expected.y + v.dy() * d};
        }
        CHECK(*e.position == expected);
        open[k].reset();
      }
      // Readings follow an appearance or an action end of the same agent.
      if (e.kind == EventKind::Reading) CHECK_FALSE(open[k]);
    }

    // Between consecutive instants before the end the distance stays >= 1.
    std::set<Scalar> instants;
    for (const rdv::TraceEvent& e : run.trace) {
      if (e.time >= run.report.later_start) instants.insert(e.time);
    }
    instants.insert(run.report.end_time);
    const Scalar stop = run.report.met() ? run.report.touch->lo : run.report.end_time;
    for (auto it = instants.begin(); it != instants.end() && std::next(it) != instants.end(); ++it) {
      const Scalar t1 = rdv::min(*std::next(it), stop);
      if (t1 <= *it) break;
      CHECK(min_d2(run, *it, t1) >= 1);
    }
    if (run.report.met() && run.report.touch->exact) {
      const auto pos = positions(run, *run.report.touch->exact);
      REQUIRE(pos);
      CHECK(rdv::squared_distance(pos->first, pos->second) == 1);
    }
  }
}

TEST_CASE("beyond rho both binary agents halt without meeting") {
  const rdv::Scenario s = binary(16, 3, 9, Point{0, 0}, Point{8, 0}, 8);
  CHECK(s.out_of_contract());
  const rdv::RunResult run = rdv::run_scenario(s);
  CHECK(run.report.outcome == rdv::Outcome::BothHalted);
  CHECK(run.report.agents[0].halted);
  CHECK(run.report.agents[1].halted);
}

TEST_CASE("a last-bit trap pair overruns x+y+5 but not x+y+6") {
  // Labels differ only at bit 20 and the 1-bit agent is 2^-20 South, so every
  // Dance bit takes two moves and Dance lasts almost 2 time units.
  const rdv::Scenario s = monotone(
      1048576, 689635, 689634, Point{rdv::parse_scalar("-124357/2048"), rdv::parse_scalar("1503639/65536")},
      Point{rdv::parse_scalar("-4083701/65536"), rdv::parse_scalar("24058225/1048576")});
  const rdv::RunResult run = rdv::run_scenario(s);
  REQUIRE(run.report.met());
  const Scalar xy = run.report.vertical_separation + run.report.horizontal_separation;
  CHECK(run.report.agents[0].phase_durations.at("dance") == 2 - rdv::pow2(-19));
  CHECK_FALSE(run.report.touch->at_or_before(xy + 5));
  CHECK(run.report.touch->at_or_before(xy + 6));
}
