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

#pragma once

#include <optional>
#include <string>

#include "rendezvous/scenario.hpp"
#include "rendezvous/simulator.hpp"

namespace rdv {

/// Proven time guarantee applied to one finished run.
///
/// Monotone: meeting within x+y+8 of the later start (staggered) or x+y+5
/// (simultaneous), x and y the initial vertical and horizontal separations.
/// Binary: meeting whenever the initial distance is below rho; the time is
/// reported against rho*lambda since only its order is guaranteed. Runs that
/// start at distance >= rho are out of contract and must end with both
/// agents halted.
struct BoundCheck {
  std::string name;
  Scalar value;
  bool in_contract = true;
  bool violation = false;
  std::string reason;
  /// Monotone: time / (x+y). Binary: time / (rho*lambda). Uses the upper end
  /// of the touch bracket.
  std::optional<Scalar> ratio;
};

BoundCheck check_bounds(const Scenario& s, const MeetingReport& report);

}  // namespace rdv
