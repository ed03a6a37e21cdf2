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

// Dense-sampling replay of a scenario.
//
// Runs the same agent programs as the executor, but detects the meeting only
// by looking at positions on the grid later_start + k*dt. Nothing here calls
// first_touch_time, so a bug in the quadratic solver shows up as a
// disagreement instead of being reproduced.

#pragma once

#include <optional>
#include <vector>

#include "rendezvous/scenario.hpp"
#include "rendezvous/simulator.hpp"

namespace rdv {

struct OracleConfig {
  Scenario scenario;
  Scalar dt = pow2(-10);
  /// Keep every inspected sample. Disables skipping, so only use it on
  /// short runs.
  bool record_samples = false;
};

struct OracleSample {
  Scalar time;
  Point a;
  Point b;
  Scalar squared_distance;
};

struct OracleResult {
  bool met = false;
  /// First sample instant with squared distance <= 1.
  std::optional<Scalar> time;
  Outcome outcome = Outcome::BothHalted;
  Scalar budget_end;
  /// Number of grid instants whose distance was evaluated.
  std::size_t evaluated = 0;
  std::vector<OracleSample> samples;
};

/// Throws InputError for dt <= 0 or an invalid scenario, and RunError when a
/// program violates its contract.
OracleResult oracle_run(const OracleConfig& cfg);

}  // namespace rdv
