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

#include "rendezvous/bounds.hpp"

namespace rdv {

BoundCheck check_bounds(const Scenario& s, const MeetingReport& report) {
  BoundCheck check;
  const Scalar xy = report.vertical_separation + report.horizontal_separation;

  if (s.model == SensingModel::Monotone) {
    const bool sim = s.simultaneous();
    check.name = sim ? "x+y+5" : "x+y+8";
    check.value = xy + (sim ? 5 : 8);
    if (!report.met()) {
      check.violation = true;
      check.reason = std::string("no meeting (") + std::string(to_string(report.outcome)) + ")";
      return check;
    }
    if (xy > 0) check.ratio = report.time_hi() / xy;
    if (!report.touch->at_or_before(report.later_start + check.value)) {
      check.violation = true;
      check.reason = "meeting later than " + check.name;
    }
    return check;
  }

  check.name = "rho*lambda";
  check.value = *s.rho * s.space().lambda();
  check.in_contract = !s.out_of_contract();
  if (report.met()) check.ratio = report.time_hi() / check.value;

  if (!check.in_contract) {
    if (report.outcome != Outcome::BothHalted) {
      check.violation = true;
      check.reason = "out-of-contract run did not end with both agents halted";
    }
    return check;
  }
  if (!report.met()) {
    check.violation = true;
    check.reason = std::string("no meeting (") + std::string(to_string(report.outcome)) + ")";
    return check;
  }
  int finished = 0;
  int leading = 0;
  for (const AgentSummary& a : report.agents) {
    finished += a.lose_contact_finished.value_or(false) ? 1 : 0;
    leading += a.leading.value_or(false) ? 1 : 0;
  }
  if (leading > 1 || (finished > 0 && leading != 1)) {
    check.violation = true;
    check.reason = "expected exactly one leading agent after LoseContact";
  }
  return check;
}

}  // namespace rdv
