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

#include <random>

#include "rendezvous/binary_agent.hpp"
#include "rendezvous/errors.hpp"
#include "support.hpp"

using rdv::Action;
using rdv::BinaryReading;
using rdv::Direction;
using rdv::Move;
using rdv::Point;
using rdv::Scalar;
using rdv::Wait;
using namespace rdv::testing;

namespace {

Scalar uniform(std::mt19937_64& rng, int lo, int hi, int den) {
  std::uniform_int_distribution<int> u(lo * den, hi * den);
  Scalar v(u(rng), den);
  v.canonicalize();
  return v;
}

Scalar smallest_power_of_two_above(const Scalar& v) {
  Scalar p = 1;
  while (p <= v) p *= 2;
  return p;
}

// Random in-contract binary scenarios: distance below rho, optional stagger.
std::vector<rdv::Scenario> binary_batch(std::uint64_t seed, int count, bool staggered) {
  std::mt19937_64 rng(seed);
  std::vector<rdv::Scenario> out;
  const std::uint64_t spaces[] = {4, 16, 256};
  const int rhos[] = {4, 8, 16};
  while (static_cast<int>(out.size()) < count) {
    const std::uint64_t L = spaces[out.size() % 3];
    const int rho = rhos[(out.size() / 3) % 3];
    const std::uint64_t la = rng() % L;
    const std::uint64_t lb = (la + 1 + rng() % (L - 1)) % L;
    const Point a{uniform(rng, -20, 20, 256), uniform(rng, -20, 20, 256)};
    const Point b{a.x + uniform(rng, -rho, rho, 256), a.y + uniform(rng, -rho, rho, 256)};
    const Scalar d2 = rdv::squared_distance(a, b);
    if (d2 <= 1 || d2 >= rho * rho) continue;
    const Scalar later = staggered ? uniform(rng, 1, 3 * rho, 256) : Scalar(0);
    const bool a_later = rng() % 2 == 0;
    out.push_back(binary(L, la, lb, a, b, rho, a_later ? later : Scalar(0), a_later ? Scalar(0) : later));
  }
  return out;
}

}  // namespace

TEST_CASE("first reading: Far halts, Near starts with bit 1") {
  rdv::BinaryProgram far(2, rdv::LabelSpace(4));
  CHECK(std::holds_alternative<rdv::HaltForever>(far.step(BinaryReading::Far)));
  CHECK(far.phase() == rdv::BinaryPhase::InertForever);
  CHECK_THROWS_AS(far.step(BinaryReading::Near), rdv::ProtocolViolation);

  rdv::BinaryProgram one(2, rdv::LabelSpace(4));  // 10
  CHECK(one.step(BinaryReading::Near) == Action{Move(Direction::North, 1)});
  rdv::BinaryProgram zero(1, rdv::LabelSpace(4));  // 01
  CHECK(zero.step(BinaryReading::Near) == Action{Wait(1)});
}

TEST_CASE("LoseContact passes: label bits then the shared 1-bit, doubling each pass") {
  rdv::BinaryProgram p(2, rdv::LabelSpace(4));  // 10
  std::vector<Action> got;
  for (int i = 0; i < 6; ++i) got.push_back(p.step(BinaryReading::Near));
  const std::vector<Action> expected{Move(Direction::North, 1), Wait(1), Move(Direction::North, 1),
                                     Move(Direction::North, 2), Wait(2), Move(Direction::North, 2)};
  CHECK(got == expected);
  CHECK(p.bits_per_pass() == 3);

  rdv::BinaryProgram strict(2, rdv::LabelSpace(4), rdv::LoopGuard::StrictPaper);
  got.clear();
  for (int i = 0; i < 3; ++i) got.push_back(strict.step(BinaryReading::Near));
  CHECK(got == std::vector<Action>{Move(Direction::North, 1), Move(Direction::North, 2), Move(Direction::North, 4)});
}

TEST_CASE("losing contact on the agent's own move makes it lead; on a wait it halts") {
  rdv::BinaryProgram mover(2, rdv::LabelSpace(4));
  mover.step(BinaryReading::Near);  // N 1 for bit 1
  CHECK(mover.step(BinaryReading::Far) == Action{Move(Direction::South, Scalar(1, 2))});
  CHECK(mover.leading());
  CHECK(mover.contact_bit() == 1);
  CHECK(mover.phase() == rdv::BinaryPhase::ReturnSouth);

  rdv::BinaryProgram waiter(1, rdv::LabelSpace(4));
  waiter.step(BinaryReading::Near);  // wait 1 for bit 1
  CHECK(std::holds_alternative<rdv::HaltForever>(waiter.step(BinaryReading::Far)));
  CHECK_FALSE(waiter.leading());
  CHECK(waiter.lose_contact_finished());
}

TEST_CASE("TriangleSearch moves first, returns ceil(t/2)/2 North, then leaps") {
  rdv::BinaryProgram p(2, rdv::LabelSpace(4));
  p.step(BinaryReading::Near);
  p.step(BinaryReading::Far);
  CHECK(p.step(BinaryReading::Far) == Action{Move(Direction::South, Scalar(1, 2))});
  // First Near: descent starts with a move, t = 1.
  CHECK(p.step(BinaryReading::Near) == Action{Move(Direction::South, Scalar(1, 2))});
  for (int i = 0; i < 4; ++i) p.step(BinaryReading::Near);
  CHECK(p.descent_steps() == 5);
  CHECK(p.step(BinaryReading::Far) == Action{Move(Direction::North, Scalar(3, 2))});
  const std::vector<Action> leaps{Move(Direction::East, 1), Move(Direction::West, 2), Move(Direction::East, 1),
                                  Move(Direction::East, 2), Move(Direction::West, 4), Move(Direction::East, 2),
                                  Move(Direction::East, 4)};
  for (const Action& expected : leaps) CHECK(p.step(BinaryReading::Far) == expected);
}

TEST_CASE("strict loop guard with lambda = 1 has no bit to process") {
  rdv::BinaryProgram p(1, rdv::LabelSpace(2), rdv::LoopGuard::StrictPaper);
  CHECK_THROWS_AS(p.step(BinaryReading::Near), rdv::ProtocolViolation);
}

TEST_CASE("staggered label 0 never moves under the strict guard") {
  // The earlier agent halts on its Far first reading; the later one, label 0,
  // only waits under the strict guard, so contact is never lost.
  rdv::Scenario s = binary(4, 1, 0, Point{0, 0}, Point{0, 3}, 8, 0, 2);
  s.strict_paper_loop = true;
  s.time_budget = 2048;
  const rdv::RunResult strict = rdv::run_scenario(s);
  CHECK(strict.report.outcome == rdv::Outcome::BudgetExhausted);
  s.strict_paper_loop = false;
  s.time_budget.reset();
  const rdv::RunResult all_bits = rdv::run_scenario(s);
  CHECK(all_bits.report.met());
  CHECK(all_bits.report.agents[1].leading == true);
}

TEST_CASE("exactly one leading agent and the TriangleSearch geometry hold") {
  int finished = 0;
  for (bool staggered : {false, true}) {
    for (const rdv::Scenario& s : binary_batch(staggered ? 21 : 20, 150, staggered)) {
      const rdv::RunResult run = rdv::run_scenario(s);
      REQUIRE(run.report.met());
      const auto& ag = run.report.agents;
      const bool done = ag[0].lose_contact_finished == true || ag[1].lose_contact_finished == true;
      if (!done) continue;
      ++finished;
      const int leaders = (ag[0].leading == true ? 1 : 0) + (ag[1].leading == true ? 1 : 0);
      REQUIRE(leaders == 1);
      const int leader = ag[0].leading == true ? 0 : 1;
      const Scalar rho = *s.rho;

      // Contact is lost no later than the pass of the smallest d above 2 rho.
      if (!staggered) {
        for (const auto& [phase, action] : actions_of(run, leader)) {
          if (phase == "lose_contact") CHECK(duration_of(action) <= smallest_power_of_two_above(2 * rho));
        }
      }
      // The partner X is at rest from here on; track the leader against it.
      bool descending = false;
      for (const rdv::TraceEvent& e : run.trace) {
        if (e.agent != leader || e.kind != rdv::EventKind::ActionBegin) continue;
        if (e.phase == "triangle_descent" && !descending) {
          descending = true;
          const auto pos = positions(run, e.time);
          REQUIRE(pos);
          const Point& l = leader == 0 ? pos->first : pos->second;
          const Point& x = leader == 0 ? pos->second : pos->first;
          // A is the point of the leader's line at distance rho North of X.
          auto excess = [&](const Scalar& y) -> Scalar {
            return (l.x - x.x) * (l.x - x.x) + (y - x.y) * (y - x.y) - rho * rho;
          };
          CHECK(l.y - Scalar(1, 2) >= x.y);
          CHECK(excess(l.y) < 0);
          CHECK(excess(l.y + Scalar(1, 2)) >= 0);
        }
        if (e.phase == "horizontal_leaps") {
          const auto pos = positions(run, e.time);
          REQUIRE(pos);
          CHECK(rdv::abs(pos->first.y - pos->second.y) < 1);
          break;
        }
      }
    }
  }
  CHECK(finished > 200);
}

TEST_CASE("the spec example: rho 8, labels 1 and 2 at distance 3 meet in the descent") {
  const rdv::RunResult run = rdv::run_scenario(binary(4, 1, 2, Point{0, 0}, Point{0, 3}, 8));
  REQUIRE(run.report.met());
  CHECK(run.report.agents[1].leading == true);
  CHECK(run.report.agents[0].final_phase == "finished");
}
