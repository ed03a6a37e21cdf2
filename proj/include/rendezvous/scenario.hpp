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

#include <cstdint>
#include <optional>
#include <string_view>

#include "rendezvous/agent_kernel.hpp"
#include "rendezvous/geometry.hpp"
#include "rendezvous/labels.hpp"

namespace rdv {

enum class SensingModel { Monotone, Binary };

std::string_view to_string(SensingModel m);
SensingModel parse_model(std::string_view text);

/// Everything the adversary chooses for one run.
struct Scenario {
  SensingModel model = SensingModel::Monotone;
  std::uint64_t label_space = 2;
  std::uint64_t label_a = 0;
  std::uint64_t label_b = 1;
  Point pos_a;
  Point pos_b;
  Scalar start_a = 0;
  Scalar start_b = 0;
  /// Sensing radius; binary model only.
  std::optional<Scalar> rho;
  /// Level map; monotone model only.
  Distortion distortion = Distortion::Identity;
  /// Measured from the later start; defaults per model when absent.
  std::optional<Scalar> time_budget;
  bool strict_paper_loop = false;

  /// Throws InputError naming the offending field.
  void validate() const;

  LabelSpace space() const { return LabelSpace(label_space); }
  Scalar later_start() const { return max(start_a, start_b); }
  bool simultaneous() const { return start_a == start_b; }
  Scalar initial_squared_distance() const { return squared_distance(pos_a, pos_b); }
  /// |dy| and |dx| of the initial positions.
  Scalar vertical_separation() const { return abs(pos_a.y - pos_b.y); }
  Scalar horizontal_separation() const { return abs(pos_a.x - pos_b.x); }
  /// 4(x+y)+64 for monotone runs, 512*rho*lambda for binary runs.
  Scalar default_budget() const;
  Scalar effective_budget() const { return time_budget ? *time_budget : default_budget(); }
  /// Binary runs starting at distance >= rho are outside the meeting guarantee.
  bool out_of_contract() const;

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

}  // namespace rdv
