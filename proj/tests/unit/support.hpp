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

// Shared helpers for the unit tests.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rendezvous/io.hpp"
#include "rendezvous/scenario.hpp"
#include "rendezvous/simulator.hpp"

namespace rdv::testing {

inline Scenario monotone(std::uint64_t L, std::uint64_t la, std::uint64_t lb, Point a, Point b,
                         Scalar start_a = 0, Scalar start_b = 0) {
  Scenario s;
  s.model = SensingModel::Monotone;
  s.label_space = L;
  s.label_a = la;
  s.label_b = lb;
  s.pos_a = std::move(a);
  s.pos_b = std::move(b);
  s.start_a = std::move(start_a);
  s.start_b = std::move(start_b);
  return s;
}

inline Scenario binary(std::uint64_t L, std::uint64_t la, std::uint64_t lb, Point a, Point b,
                       Scalar rho, Scalar start_a = 0, Scalar start_b = 0) {
  Scenario s = monotone(L, la, lb, std::move(a), std::move(b), std::move(start_a), std::move(start_b));
  s.model = SensingModel::Binary;
  s.rho = std::move(rho);
  return s;
}

inline std::string trace_text(const RunResult& run) {
  std::string out;
  for (std::size_t i = 0; i < run.trace.size(); ++i) {
    out += trace_event_to_json(run.trace[i], i).dump();
    out += '\n';
  }
  return out;
}

/// Both agents' positions at t, from the recorded trajectories.
inline std::optional<std::pair<Point, Point>> positions(const RunResult& run, const Scalar& t) {
  auto a = trajectory_position(run.trajectories[0], t);
  auto b = trajectory_position(run.trajectories[1], t);
  if (!a || !b) return std::nullopt;
  return std::pair{*a, *b};
}

/// Actions agent k started, in order, with the phase that emitted them.
inline std::vector<std::pair<std::string, Action>> actions_of(const RunResult& run, int k) {
  std::vector<std::pair<std::string, Action>> out;
  for (const TraceEvent& e : run.trace) {
    if (e.agent == k && e.kind == EventKind::ActionBegin) out.emplace_back(e.phase, *e.action);
  }
  return out;
}

inline Scalar duration_of(const Action& a) {
  if (const auto* m = std::get_if<Move>(&a)) return m->duration;
  if (const auto* w = std::get_if<Wait>(&a)) return w->duration;
  return 0;
}

}  // namespace rdv::testing
