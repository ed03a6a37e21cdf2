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

#include "rendezvous/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "rendezvous/errors.hpp"

namespace rdv {
namespace {

struct Agent {
  AnyProgram program;
  Scalar start;
  bool present = false;
  bool halted = false;
  Point position;
  std::optional<MotionSegment> current;

  Point at(const Scalar& t) const { return current ? current->position_at(t) : position; }
};

// Number of grid steps that can be skipped from a sample at squared distance
// d2 > 1: the largest m with (1 + 2*m*dt)^2 < d2. Each agent moves at speed
// at most 1, so the distance shrinks by at most 2*m*dt over m steps.
mpz_class safe_steps(const Scalar& d2, const Scalar& dt) {
  const double guess = (std::sqrt(d2.get_d()) - 1) / (2 * dt.get_d());
  mpz_class m = guess > 1e15 ? mpz_class(1000000000000000L)
                             : mpz_class(static_cast<long>(std::max(0.0, guess)));
  auto ok = [&](const mpz_class& k) {
    const Scalar reach = 1 + 2 * Scalar(k) * dt;
    return reach * reach < d2;
  };
  while (m > 0 && !ok(m)) m /= 2;
  while (ok(m + 1)) m += 1;
  return m;
}

}  // namespace

OracleResult oracle_run(const OracleConfig& cfg) {
  const Scenario& s = cfg.scenario;
  s.validate();
  if (cfg.dt <= 0) throw InputError("dt: must be positive");

  OracleResult out;
  const Scalar origin = s.later_start();
  out.budget_end = origin + s.effective_budget();

  std::array<Agent, 2> ag{Agent{make_program(s, 0), s.start_a, false, false, s.pos_a, std::nullopt},
                          Agent{make_program(s, 1), s.start_b, false, false, s.pos_b, std::nullopt}};

  // Next grid index to inspect; grid instant k is origin + k*dt.
  mpz_class k = 0;
  auto grid = [&](const mpz_class& i) -> Scalar { return origin + Scalar(i) * cfg.dt; };

  // Inspects grid instants in [from, until) (or up to and including `until`
  // when closed). Positions in that window are fixed by the current actions.
  auto scan = [&](const Scalar& until, bool closed) -> bool {
    const bool frozen = std::all_of(ag.begin(), ag.end(), [](const Agent& a) {
      return !a.current || a.current->velocity.at_rest();
    });
    while (true) {
      const Scalar g = grid(k);
      if (closed ? g > until : g >= until) return false;
      const Point pa = ag[0].at(g);
      const Point pb = ag[1].at(g);
      const Scalar d2 = squared_distance(pa, pb);
      ++out.evaluated;
      if (cfg.record_samples) out.samples.push_back(OracleSample{g, pa, pb, d2});
      if (d2 <= 1) {
        out.met = true;
        out.time = g;
        out.outcome = Outcome::Met;
        return true;
      }
      if (cfg.record_samples) {
        k += 1;
      } else if (frozen) {
        // Constant distance: nothing can happen before the window closes.
        const Scalar steps = (until - origin) / cfg.dt;
        k = closed ? floor(steps) + 1 : ceil(steps);
        return false;
      } else {
        k += safe_steps(d2, cfg.dt) + 1;
      }
    }
  };

  Scalar t = min(s.start_a, s.start_b);
  while (true) {
    std::optional<Scalar> next;
    for (const Agent& a : ag) {
      std::optional<Scalar> candidate;
      if (!a.present) candidate = a.start;
      if (a.current) candidate = a.current->end_time;
      if (candidate && (!next || *candidate < *next)) next = candidate;
    }
    const bool both = ag[0].present && ag[1].present;
    if (!next) {
      // Both halted: the distance is constant from here on.
      if (both && scan(out.budget_end, true)) return out;
      out.outcome = Outcome::BothHalted;
      return out;
    }
    if (both && scan(min(*next, out.budget_end), *next > out.budget_end)) return out;
    if (*next > out.budget_end) {
      out.outcome = Outcome::BudgetExhausted;
      return out;
    }
    t = *next;

    std::array<bool, 2> reads{false, false};
    for (int i = 0; i < 2; ++i) {
      Agent& a = ag[i];
      if (a.current && a.current->end_time == t) {
        a.position = a.current->end_point();
        a.current.reset();
        reads[i] = true;
      } else if (!a.present && a.start == t) {
        a.present = true;
        reads[i] = true;
      }
    }
    const Scalar d2 = squared_distance(ag[0].at(t), ag[1].at(t));
    for (int i = 0; i < 2; ++i) {
      if (!reads[i]) continue;
      Agent& a = ag[i];
      std::string reading_name;
      std::optional<Action> action;
      try {
        action = deliver_reading(a.program, s, ag[1 - i].present, d2, reading_name);
      } catch (const ProtocolViolation& err) {
        throw RunError(i, std::string("agent ") + (i == 0 ? "a" : "b") + ": " + err.what(), {});
      }
      if (std::holds_alternative<HaltForever>(*action)) {
        a.halted = true;
      } else if (const auto* m = std::get_if<Move>(&*action)) {
        a.current = MotionSegment::moving(a.position, m->direction, t, t + m->duration);
      } else {
        a.current = MotionSegment::resting(a.position, t, t + std::get<Wait>(*action).duration);
      }
    }
  }
}

}  // namespace rdv
