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

// Event-driven executor for two agents on an exact global timeline.
//
// The clock jumps from one instant to the next at which something happens:
// an appearance or the end of an action. Before committing a jump the
// interval just traversed is scanned with first_touch_time, so a touch in the
// middle of a move ends the run and the pending action ends never fire.
// Within one instant, events are ordered by kind (end/appear, then reading,
// then begin/halt) and then by agent id.

#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "rendezvous/agent_kernel.hpp"
#include "rendezvous/binary_agent.hpp"
#include "rendezvous/errors.hpp"
#include "rendezvous/geometry.hpp"
#include "rendezvous/monotone_agent.hpp"
#include "rendezvous/scenario.hpp"

namespace rdv {

enum class EventKind { Appear, ActionEnd, Reading, ActionBegin, Halt, Meeting, BudgetExhausted };

std::string_view to_string(EventKind k);

struct TraceEvent {
  Scalar time;
  /// 0 for agent a, 1 for agent b; empty for run-level events.
  std::optional<int> agent;
  EventKind kind = EventKind::Appear;
  /// "absent" / "present" / "near" / "far" for readings.
  std::string reading;
  /// Observer-side squared distance at a reading (never shown to programs).
  std::optional<Scalar> squared_distance;
  std::optional<Action> action;
  /// Program phase that emitted an action.
  std::string phase;
  /// Agent position at appear / action_begin / action_end / halt.
  std::optional<Point> position;
  std::optional<TouchTime> touch;
};

enum class Outcome { Met, BothHalted, BudgetExhausted };

std::string_view to_string(Outcome o);

struct AgentSummary {
  std::uint64_t label = 0;
  Scalar start;
  std::string final_phase;
  /// Time spent in actions (moves and waits), keyed by the emitting phase.
  std::map<std::string, Scalar> phase_durations;
  std::size_t actions = 0;
  /// The program returned HaltForever before the run ended.
  bool halted = false;
  /// Binary model only.
  std::optional<bool> leading;
  std::optional<bool> lose_contact_finished;
  /// Monotone model only.
  std::optional<bool> simultaneous;
};

struct MeetingReport {
  SensingModel model = SensingModel::Monotone;
  Outcome outcome = Outcome::BothHalted;
  bool met() const { return outcome == Outcome::Met; }
  std::optional<TouchTime> touch;
  Scalar later_start;
  /// Run end: touch bracket hi, last event time, or budget end.
  Scalar end_time;
  Scalar budget_end;
  Scalar initial_squared_distance;
  Scalar vertical_separation;
  Scalar horizontal_separation;
  bool out_of_contract = false;
  std::array<AgentSummary, 2> agents;

  /// Touch instant minus the later start, as a bracket. Requires met().
  Scalar time_lo() const { return touch->lo - later_start; }
  Scalar time_hi() const { return touch->hi - later_start; }
};

struct RunOptions {
  bool record_trace = true;
  unsigned bracket_bits = kDefaultBracketBits;
};

struct RunResult {
  MeetingReport report;
  std::vector<TraceEvent> trace;
  /// Executed motion per agent, truncated at the run end.
  std::array<std::vector<MotionSegment>, 2> trajectories;
  /// The action each agent was executing when the run ended, untruncated.
  std::array<std::optional<MotionSegment>, 2> interrupted;
};

/// A program violated its contract mid-run. Carries the offending agent and
/// the trace up to and including the last delivered reading.
class RunError : public ProtocolViolation {
 public:
  RunError(int agent, const std::string& what, std::vector<TraceEvent> prefix)
      : ProtocolViolation(what), agent_(agent), prefix_(std::move(prefix)) {}
  int agent() const { return agent_; }
  const std::vector<TraceEvent>& trace_prefix() const { return prefix_; }

 private:
  int agent_;
  std::vector<TraceEvent> prefix_;
};

/// Either program kind, as a value.
using AnyProgram = std::variant<MonotoneProgram, BinaryProgram>;

AnyProgram make_program(const Scenario& s, int agent);

/// Delivers the reading for `s.model` built from the observer state and
/// returns the program's next action.
Action deliver_reading(AnyProgram& program, const Scenario& s, bool partner_present,
                       const Scalar& squared_distance, std::string& reading_name);

std::string phase_name(const AnyProgram& program);

/// Validates the scenario, then simulates until touch, both agents halted,
/// or the budget end (later start + effective budget).
RunResult run_scenario(const Scenario& s, const RunOptions& options = {});

}  // namespace rdv
