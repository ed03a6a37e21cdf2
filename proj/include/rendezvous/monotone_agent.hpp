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
#include "rendezvous/labels.hpp"

namespace rdv {

enum class MonotonePhase {
  AwaitingAppearance,
  VerticalApproach,
  Dance,
  HorizontalApproach,
  InertForever,
  Finished,
};

std::string_view to_string(MonotonePhase p);

/// Meeting program for the monotone sensing model.
///
/// An agent that finds itself alone stays inert forever. Otherwise it first
/// probes North twice to tell whether the partner is inert or started at the
/// same instant, then closes the vertical gap (breaking symmetry on the
/// transformed label bits with shrinking North/South moves when the start was
/// simultaneous), then closes the horizontal gap. Approach loops step until a
/// move stops shrinking the distance.
///
/// The previous level is always the reading taken at the start of the latest
/// move, since the sensor is read at the end of every move.
class MonotoneProgram {
 public:
  MonotoneProgram(std::uint64_t label, const LabelSpace& space);

  /// Throws ProtocolViolation on a reading after HaltForever, on a partner
  /// that disappears, or when Dance runs past the last label bit.
  Action step(const MonotoneReading& reading);

  /// Phase of the most recently emitted action.
  MonotonePhase phase() const { return phase_; }
  bool simultaneous() const { return sim_; }
  /// Index j of the label bit that broke symmetry, once Dance has exited.
  std::optional<std::size_t> symmetry_bit() const {
    return j_ == 0 ? std::nullopt : std::optional<std::size_t>(j_);
  }
  std::optional<Comparison> last_comparison() const { return compare_; }

 private:
  enum class Resume {
    Appearance,
    FirstProbe,
    SecondProbe,
    ProbeBacktrack,
    DanceFirst,
    DanceSecond,
    DanceBacktrack,
    Closer,
    HorizontalProbe,
    HorizontalBacktrack,
    Halted,
  };

  Action move(Direction d, const Scalar& length, Resume next);
  Action get_closer(Direction d, const Scalar& length, bool vertical);
  Action dance_bit();
  Action after_dance();
  Action horizontal_approach();
  Action halt(MonotonePhase final_phase);

  TransformedLabel label_;
  Resume resume_ = Resume::Appearance;
  MonotonePhase phase_ = MonotonePhase::AwaitingAppearance;
  std::optional<Level> current_;
  std::optional<Comparison> compare_;
  bool sim_ = false;
  std::size_t i_ = 1;
  std::size_t j_ = 0;
  Direction dance_direction_ = Direction::North;
  Direction closer_direction_ = Direction::North;
  Scalar closer_step_;
  bool closer_vertical_ = true;
  Direction horizontal_direction_ = Direction::East;
};

}  // namespace rdv
