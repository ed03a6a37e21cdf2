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

#include "rendezvous/simulator.hpp"

#include <utility>

namespace rdv {

std::string_view to_string(EventKind k) {
  switch (k) {
    case EventKind::Appear: return "appear";
    case EventKind::ActionEnd: return "action_end";
    case EventKind::Reading: return "reading";
    case EventKind::ActionBegin: return "action_begin";
    case EventKind::Halt: return "halt";
    case EventKind::Meeting: return "meeting";
    case EventKind::BudgetExhausted: return "budget_exhausted";
  }
  return "?";
}

std::string_view to_string(Outcome o) {
  switch (o) {
    case Outcome::Met: return "met";
    case Outcome::BothHalted: return "both_halted";
    case Outcome::BudgetExhausted: return "budget_exhausted";
  }
  return "?";
}

AnyProgram make_program(const Scenario& s, int agent) {
  const std::uint64_t label = agent == 0 ? s.label_a : s.label_b;
  if (s.model == SensingModel::Monotone) return MonotoneProgram(label, s.space());
  return BinaryProgram(label, s.space(),
                       s.strict_paper_loop ? LoopGuard::StrictPaper : LoopGuard::AllBits);
}

Action deliver_reading(AnyProgram& program, const Scenario& s, bool partner_present,
                       const Scalar& squared_distance, std::string& reading_name) {
  if (auto* mono = std::get_if<MonotoneProgram>(&program)) {
    reading_name = partner_present ? "present" : "absent";
    return mono->step(sense_monotone(partner_present, squared_distance, s.distortion));
  }
  auto& bin = std::get<BinaryProgram>(program);
  const BinaryReading r = sense_binary(partner_present, squared_distance, *s.rho);
  reading_name = std::string(to_string(r));
  return bin.step(r);
}

std::string phase_name(const AnyProgram& program) {
  return std::visit([](const auto& p) { return std::string(to_string(p.phase())); }, program);
}

namespace {

enum class AgentState { Pending, Idle, Acting, Halted };

struct Runtime {
  AnyProgram program;
  AgentState state = AgentState::Pending;
  Scalar start;
  Point position;
  Scalar halted_at;
  std::optional<MotionSegment> current;
  std::string phase;
  AgentSummary summary;

  Point position_at(const Scalar& t) const {
    return state == AgentState::Acting ? current->position_at(t) : position;
  }
  MotionSegment segment(const Scalar& t0, const Scalar& t1) const {
    return state == AgentState::Acting ? *current : MotionSegment::resting(position, t0, t1);
  }
};

Scalar action_duration(const Action& a) {
  if (const auto* m = std::get_if<Move>(&a)) return m->duration;
  return std::get<Wait>(a).duration;
}

}  // namespace

RunResult run_scenario(const Scenario& s, const RunOptions& options) {
  s.validate();

  RunResult out;
  MeetingReport& report = out.report;
  report.model = s.model;
  report.later_start = s.later_start();
  report.budget_end = report.later_start + s.effective_budget();
  report.initial_squared_distance = s.initial_squared_distance();
  report.vertical_separation = s.vertical_separation();
  report.horizontal_separation = s.horizontal_separation();
  report.out_of_contract = s.out_of_contract();

  std::array<Runtime, 2> rt{Runtime{make_program(s, 0)}, Runtime{make_program(s, 1)}};
  rt[0].start = s.start_a;
  rt[0].position = s.pos_a;
  rt[0].summary.label = s.label_a;
  rt[1].start = s.start_b;
  rt[1].position = s.pos_b;
  rt[1].summary.label = s.label_b;

  auto emit = [&](TraceEvent e) {
    if (options.record_trace) out.trace.push_back(std::move(e));
  };
  auto present = [&](int k, const Scalar& at) { return rt[k].start <= at; };

  Scalar t = min(s.start_a, s.start_b);
  std::optional<TouchTime> touch;

  while (true) {
    std::optional<Scalar> next;
    for (const Runtime& r : rt) {
      std::optional<Scalar> candidate;
      if (r.state == AgentState::Pending) candidate = r.start;
      if (r.state == AgentState::Acting) candidate = r.current->end_time;
      if (candidate && (!next || *candidate < *next)) next = candidate;
    }
    if (!next) {
      report.outcome = Outcome::BothHalted;
      report.end_time = t;
      break;
    }

    const Scalar stop = min(*next, report.budget_end);
    if (stop > t && present(0, t) && present(1, t)) {
      touch = first_touch_time(rt[0].segment(t, stop), rt[1].segment(t, stop), t, stop, 1,
                               options.bracket_bits);
      if (touch) break;
    }
    if (*next > report.budget_end) {
      report.outcome = Outcome::BudgetExhausted;
      report.end_time = report.budget_end;
      emit(TraceEvent{report.budget_end, std::nullopt, EventKind::BudgetExhausted});
      break;
    }
    t = *next;

    std::array<bool, 2> needs_reading{false, false};
    bool appeared = false;
    for (int k = 0; k < 2; ++k) {
      Runtime& r = rt[k];
      if (r.state == AgentState::Acting && r.current->end_time == t) {
        r.position = r.current->end_point();
        r.summary.phase_durations[r.phase] += r.current->end_time - r.current->start_time;
        out.trajectories[k].push_back(*r.current);
        r.current.reset();
        r.state = AgentState::Idle;
        needs_reading[k] = true;
        TraceEvent e{t, k, EventKind::ActionEnd};
        e.position = r.position;
        emit(std::move(e));
      } else if (r.state == AgentState::Pending && r.start == t) {
        r.state = AgentState::Idle;
        needs_reading[k] = true;
        appeared = true;
        TraceEvent e{t, k, EventKind::Appear};
        e.position = r.position;
        emit(std::move(e));
      }
    }

    const Scalar d2 = squared_distance(rt[0].position_at(t), rt[1].position_at(t));
    if (appeared && present(0, t) && present(1, t) && d2 <= 1) {
      touch = TouchTime{Quadratic{0, 0, d2}, 1, t, t, t, t, t};
      break;
    }

    for (int k = 0; k < 2; ++k) {
      if (!needs_reading[k]) continue;
      TraceEvent e{t, k, EventKind::Reading};
      if (s.model == SensingModel::Monotone) {
        e.reading = present(1 - k, t) ? "present" : "absent";
      } else {
        e.reading = std::string(to_string(sense_binary(present(1 - k, t), d2, *s.rho)));
      }
      e.squared_distance = d2;
      emit(std::move(e));
    }

    for (int k = 0; k < 2; ++k) {
      if (!needs_reading[k]) continue;
      Runtime& r = rt[k];
      std::string reading_name;
      std::optional<Action> action;
      try {
        action = deliver_reading(r.program, s, present(1 - k, t), d2, reading_name);
      } catch (const ProtocolViolation& err) {
        throw RunError(k, std::string("agent ") + (k == 0 ? "a" : "b") + ": " + err.what(),
                       out.trace);
      }
      r.phase = phase_name(r.program);
      TraceEvent e{t, k, std::holds_alternative<HaltForever>(*action) ? EventKind::Halt
                                                                      : EventKind::ActionBegin};
      e.action = *action;
      e.phase = r.phase;
      e.position = r.position;
      emit(std::move(e));
      if (std::holds_alternative<HaltForever>(*action)) {
        r.state = AgentState::Halted;
        r.halted_at = t;
        continue;
      }
      ++r.summary.actions;
      const Scalar end = t + action_duration(*action);
      if (const auto* m = std::get_if<Move>(&*action)) {
        r.current = MotionSegment::moving(r.position, m->direction, t, end);
      } else {
        r.current = MotionSegment::resting(r.position, t, end);
      }
      r.state = AgentState::Acting;
    }
  }

  if (touch) {
    report.outcome = Outcome::Met;
    report.end_time = touch->hi;
    TraceEvent e{touch->hi, std::nullopt, EventKind::Meeting};
    e.touch = touch;
    emit(std::move(e));
    report.touch = std::move(touch);
  }

  const Scalar& end = report.end_time;
  for (int k = 0; k < 2; ++k) {
    Runtime& r = rt[k];
    if (r.state == AgentState::Acting) {
      MotionSegment cut = *r.current;
      out.interrupted[k] = *r.current;
      cut.end_time = max(end, cut.start_time);
      r.summary.phase_durations[r.phase] += cut.end_time - cut.start_time;
      out.trajectories[k].push_back(cut);
    } else if (r.state == AgentState::Halted && r.halted_at < end) {
      out.trajectories[k].push_back(MotionSegment::resting(r.position, r.halted_at, end));
    }
    r.summary.start = r.start;
    r.summary.halted = r.state == AgentState::Halted;
    r.summary.final_phase = phase_name(r.program);
    if (const auto* bin = std::get_if<BinaryProgram>(&r.program)) {
      r.summary.leading = bin->leading();
      r.summary.lose_contact_finished = bin->lose_contact_finished();
    } else {
      r.summary.simultaneous = std::get<MonotoneProgram>(r.program).simultaneous();
    }
    report.agents[k] = r.summary;
  }
  return out;
}

}  // namespace rdv
