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

#include "rendezvous/io.hpp"

#include <cmath>
#include <fstream>
#include <ostream>
#include <set>
#include <sstream>

#include "rendezvous/bounds.hpp"
#include "rendezvous/errors.hpp"

namespace rdv {
namespace {

const std::set<std::string> kScenarioKeys = {
    "model", "L",           "label_a",    "label_b",           "pos_a",  "pos_b",
    "start_a", "start_b",   "rho",        "time_budget",       "distortion",
    "strict_paper_loop",    "schema"};

std::uint64_t label_from_json(const json& doc, const char* key) {
  if (!doc.contains(key)) throw InputError(std::string(key) + ": required");
  const json& v = doc.at(key);
  if (!v.is_number_integer() || (v.is_number_integer() && !v.is_number_unsigned() && v.get<std::int64_t>() < 0)) {
    throw InputError(std::string(key) + ": expected a non-negative integer");
  }
  return v.get<std::uint64_t>();
}

Point point_from_json(const json& v, const std::string& path) {
  if (v.is_array()) {
    if (v.size() != 2) throw InputError(path + ": expected [x, y]");
    return Point{scalar_from_json(v[0], path + "[0]"), scalar_from_json(v[1], path + "[1]")};
  }
  if (v.is_object()) {
    if (!v.contains("x") || !v.contains("y")) throw InputError(path + ": expected {x, y}");
    return Point{scalar_from_json(v.at("x"), path + ".x"), scalar_from_json(v.at("y"), path + ".y")};
  }
  throw InputError(path + ": expected [x, y]");
}

json point_to_json(const Point& p) { return json::array({to_string(p.x), to_string(p.y)}); }

json action_to_json(const Action& a) {
  if (const auto* m = std::get_if<Move>(&a)) {
    return {{"type", "move"}, {"dir", std::string(1, to_char(m->direction))},
            {"duration", to_string(m->duration)}};
  }
  if (const auto* w = std::get_if<Wait>(&a)) {
    return {{"type", "wait"}, {"duration", to_string(w->duration)}};
  }
  return {{"type", "halt"}};
}

}  // namespace

Scalar scalar_from_json(const json& value, const std::string& path) {
  try {
    if (value.is_string()) return parse_scalar(value.get<std::string>());
    if (value.is_number_integer()) {
      return value.is_number_unsigned() ? Scalar(mpz_class(std::to_string(value.get<std::uint64_t>())))
                                        : Scalar(mpz_class(std::to_string(value.get<std::int64_t>())));
    }
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
  throw InputError(path + ": expected a rational string such as \"3/4\" or \"0.25\"");
}

json scalar_to_json(const Scalar& value) { return to_string(value); }

json parse_json_text(const std::string& text, const std::string& source_name) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1;
    std::size_t column = 1;
    const std::size_t limit = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < limit; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw InputError(source_name + ":" + std::to_string(line) + ":" + std::to_string(column) +
                     ": JSON syntax error");
  }
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError(path + ": cannot open file");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_json_text(buffer.str(), path);
}

Scenario scenario_from_json(const json& doc) {
  if (!doc.is_object()) throw InputError("scenario: expected a JSON object");
  for (const auto& item : doc.items()) {
    if (!kScenarioKeys.contains(item.key())) throw InputError(item.key() + ": unknown field");
  }
  Scenario s;
  if (!doc.contains("model") || !doc.at("model").is_string()) {
    throw InputError("model: required string");
  }
  try {
    s.model = parse_model(doc.at("model").get<std::string>());
  } catch (const InputError& e) {
    throw InputError(std::string("model: ") + e.what());
  }
  s.label_space = label_from_json(doc, "L");
  s.label_a = label_from_json(doc, "label_a");
  s.label_b = label_from_json(doc, "label_b");
  if (!doc.contains("pos_a")) throw InputError("pos_a: required");
  if (!doc.contains("pos_b")) throw InputError("pos_b: required");
  s.pos_a = point_from_json(doc.at("pos_a"), "pos_a");
  s.pos_b = point_from_json(doc.at("pos_b"), "pos_b");
  if (doc.contains("start_a")) s.start_a = scalar_from_json(doc.at("start_a"), "start_a");
  if (doc.contains("start_b")) s.start_b = scalar_from_json(doc.at("start_b"), "start_b");
  if (doc.contains("rho") && !doc.at("rho").is_null()) s.rho = scalar_from_json(doc.at("rho"), "rho");
  if (doc.contains("time_budget") && !doc.at("time_budget").is_null()) {
    s.time_budget = scalar_from_json(doc.at("time_budget"), "time_budget");
  }
  if (doc.contains("distortion")) {
    if (!doc.at("distortion").is_string()) throw InputError("distortion: expected a string");
    try {
      s.distortion = parse_distortion(doc.at("distortion").get<std::string>());
    } catch (const InputError& e) {
      throw InputError(std::string("distortion: ") + e.what());
    }
  }
  if (doc.contains("strict_paper_loop")) {
    if (!doc.at("strict_paper_loop").is_boolean()) {
      throw InputError("strict_paper_loop: expected true or false");
    }
    s.strict_paper_loop = doc.at("strict_paper_loop").get<bool>();
  }
  s.validate();
  return s;
}

json scenario_to_json(const Scenario& s) {
  json doc = {
      {"model", to_string(s.model)},
      {"L", s.label_space},
      {"label_a", s.label_a},
      {"label_b", s.label_b},
      {"pos_a", point_to_json(s.pos_a)},
      {"pos_b", point_to_json(s.pos_b)},
      {"start_a", to_string(s.start_a)},
      {"start_b", to_string(s.start_b)},
      {"distortion", to_string(s.distortion)},
      {"strict_paper_loop", s.strict_paper_loop},
  };
  doc["rho"] = s.rho ? json(to_string(*s.rho)) : json(nullptr);
  doc["time_budget"] = s.time_budget ? json(to_string(*s.time_budget)) : json(nullptr);
  return doc;
}

json touch_to_json(const TouchTime& touch) {
  json j = {{"lo", to_string(touch.lo)},
            {"hi", to_string(touch.hi)},
            {"decimal", to_decimal(touch.midpoint())},
            {"width", to_string(touch.width())}};
  if (touch.exact) j["exact"] = to_string(*touch.exact);
  return j;
}

json trace_event_to_json(const TraceEvent& e, std::size_t seq) {
  json j = {{"v", 1},
            {"seq", seq},
            {"t", to_string(e.time)},
            {"t_dec", to_decimal(e.time)},
            {"kind", to_string(e.kind)}};
  if (e.agent) j["agent"] = *e.agent == 0 ? "a" : "b";
  if (!e.reading.empty()) j["reading"] = e.reading;
  if (e.squared_distance) j["dist2"] = to_string(*e.squared_distance);
  if (e.action) j["action"] = action_to_json(*e.action);
  if (!e.phase.empty()) j["phase"] = e.phase;
  if (e.position) j["pos"] = point_to_json(*e.position);
  if (e.touch) j["touch"] = touch_to_json(*e.touch);
  return j;
}

void write_trace_jsonl(std::ostream& out, const std::vector<TraceEvent>& trace) {
  for (std::size_t i = 0; i < trace.size(); ++i) out << trace_event_to_json(trace[i], i).dump() << '\n';
}

json report_to_json(const Scenario& s, const MeetingReport& report) {
  json j = {{"schema", kReportSchema},
            {"model", to_string(report.model)},
            {"met", report.met()},
            {"outcome", to_string(report.outcome)},
            {"out_of_contract", report.out_of_contract},
            {"simultaneous", s.simultaneous()},
            {"later_start", to_string(report.later_start)},
            {"end_time", to_string(report.end_time)},
            {"budget_end", to_string(report.budget_end)},
            {"D", sqrt_to_decimal(report.initial_squared_distance)},
            {"D2", to_string(report.initial_squared_distance)},
            {"x", to_string(report.vertical_separation)},
            {"y", to_string(report.horizontal_separation)}};
  if (report.touch) {
    j["touch"] = touch_to_json(*report.touch);
    j["time_from_later_start"] = {{"lo", to_string(report.time_lo())},
                                  {"hi", to_string(report.time_hi())},
                                  {"decimal", to_decimal((report.time_lo() + report.time_hi()) / 2)}};
  }
  if (s.model == SensingModel::Binary) {
    j["rho"] = to_string(*s.rho);
    j["lambda"] = s.space().lambda();
  }
  const BoundCheck check = check_bounds(s, report);
  json bound = {{"name", check.name},
                {"value", to_string(check.value)},
                {"in_contract", check.in_contract},
                {"violation", check.violation}};
  if (!check.reason.empty()) bound["reason"] = check.reason;
  if (check.ratio) bound["ratio"] = to_decimal(*check.ratio, 6);
  j["bound"] = bound;

  json agents = json::array();
  json phases_at_end = json::array();
  for (const AgentSummary& a : report.agents) {
    json durations = json::object();
    for (const auto& [phase, d] : a.phase_durations) durations[phase] = to_string(d);
    json agent = {{"label", a.label},
                  {"start", to_string(a.start)},
                  {"final_phase", a.final_phase},
                  {"actions", a.actions},
                  {"phase_durations", durations}};
    if (a.leading) agent["leading"] = *a.leading;
    if (a.lose_contact_finished) agent["lose_contact_finished"] = *a.lose_contact_finished;
    if (a.simultaneous) agent["sim"] = *a.simultaneous;
    agents.push_back(agent);
    phases_at_end.push_back(a.final_phase);
  }
  j["agents"] = agents;
  j["phase_at_end"] = phases_at_end;
  return j;
}

std::optional<Point> trajectory_position(const std::vector<MotionSegment>& segments,
                                         const Scalar& t) {
  // Segments are contiguous and sorted; find the last one starting at or before t.
  auto it = std::upper_bound(segments.begin(), segments.end(), t,
                             [](const Scalar& time, const MotionSegment& seg) {
                               return time < seg.start_time;
                             });
  if (it == segments.begin()) return std::nullopt;
  --it;
  if (t > it->end_time) return std::nullopt;
  return it->position_at(t);
}

void write_positions_csv(std::ostream& out, const RunResult& run, const Scalar& from,
                         const Scalar& step) {
  if (step <= 0) throw InputError("csv step must be positive");
  out << "time,x_a,y_a,x_b,y_b,dist\n";
  const Scalar& end = run.report.end_time;
  for (Scalar t = from; t <= end; t += step) {
    const auto a = trajectory_position(run.trajectories[0], t);
    const auto b = trajectory_position(run.trajectories[1], t);
    out << to_decimal(t, 6) << ',';
    if (a) out << to_decimal(a->x, 6) << ',' << to_decimal(a->y, 6) << ',';
    else out << ",,";
    if (b) out << to_decimal(b->x, 6) << ',' << to_decimal(b->y, 6) << ',';
    else out << ",,";
    if (a && b) out << sqrt_to_decimal(squared_distance(*a, *b), 6);
    out << '\n';
  }
}

}  // namespace rdv
