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

// File formats.
//
// Scenario (JSON object):
//   model              "monotone" | "binary"
//   L                  integer >= 2
//   label_a, label_b   integers in [0, L), distinct
//   pos_a, pos_b       ["x", "y"] or {"x": "..", "y": ".."}
//   start_a, start_b   rational, >= 0 (default "0")
//   rho                rational > 1, binary only
//   time_budget        rational, measured from the later start (optional)
//   distortion         "identity" | "affine" | "cubic" | "exp2" (default identity)
//   strict_paper_loop  bool (default false)
// Rationals are strings "p/q" or finite decimals; plain JSON integers are
// accepted too, JSON floats are rejected.
//
// Trace (JSONL, schema "rdv-trace/1"): one event per line with keys
//   v (=1), seq, t, t_dec, kind, and when relevant agent ("a"|"b"), reading,
//   dist2, action {type, dir, duration}, phase, pos [x, y],
//   touch {lo, hi, exact?, decimal, width}.
//
// Report (JSON object, schema "rdv-report/1"): MeetingReport fields plus the
// bound check for the scenario.

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "rendezvous/scalar.hpp"
#include "rendezvous/scenario.hpp"
#include "rendezvous/simulator.hpp"

namespace rdv {

using nlohmann::json;

inline constexpr const char* kTraceSchema = "rdv-trace/1";
inline constexpr const char* kReportSchema = "rdv-report/1";

/// Reads a rational from a JSON string or integer; `path` names the field in
/// error messages.
Scalar scalar_from_json(const json& value, const std::string& path);
json scalar_to_json(const Scalar& value);

/// Parses JSON text, reporting syntax errors with line and column.
json parse_json_text(const std::string& text, const std::string& source_name);
json load_json_file(const std::string& path);

Scenario scenario_from_json(const json& doc);
json scenario_to_json(const Scenario& s);

json touch_to_json(const TouchTime& touch);
json trace_event_to_json(const TraceEvent& e, std::size_t seq);
void write_trace_jsonl(std::ostream& out, const std::vector<TraceEvent>& trace);

json report_to_json(const Scenario& s, const MeetingReport& report);

/// Samples both trajectories every `step` from the earlier start to the run
/// end: time, x_a, y_a, x_b, y_b, dist. Fields of an agent not yet in the
/// plane are left empty. Decimal output is for plotting only.
void write_positions_csv(std::ostream& out, const RunResult& run, const Scalar& from,
                         const Scalar& step);

/// Position of agent k at t along its recorded trajectory, if it is in the
/// plane and t is within the recorded span.
std::optional<Point> trajectory_position(const std::vector<MotionSegment>& segments,
                                         const Scalar& t);

}  // namespace rdv
