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

#include "rendezvous/monotone_agent.hpp"

#include "rendezvous/errors.hpp"

namespace rdv {

std::string_view to_string(MonotonePhase p) {
  switch (p) {
    case MonotonePhase::AwaitingAppearance: return "awaiting_appearance";
    case MonotonePhase::VerticalApproach: return "vertical_approach";
    case MonotonePhase::Dance: return "dance";
    case MonotonePhase::HorizontalApproach: return "horizontal_approach";
    case MonotonePhase::InertForever: return "inert";
    case MonotonePhase::Finished: return "finished";
  }
  return "?";
}

MonotoneProgram::MonotoneProgram(std::uint64_t label, const LabelSpace& space)
    : label_(transform(label, space)) {}

Action MonotoneProgram::move(Direction d, const Scalar& length, Resume next) {
  resume_ = next;
  return Move(d, length);
}

Action MonotoneProgram::halt(MonotonePhase final_phase) {
  phase_ = final_phase;
  resume_ = Resume::Halted;
  return HaltForever{};
}

// Move first, then keep stepping while the last move made the distance smaller.
Action MonotoneProgram::get_closer(Direction d, const Scalar& length, bool vertical) {
  closer_direction_ = d;
  closer_step_ = length;
  closer_vertical_ = vertical;
  return move(d, length, Resume::Closer);
}

Action MonotoneProgram::dance_bit() {
  if (i_ > label_.length()) {
    throw ProtocolViolation("Dance passed the last label bit with the distance unchanged; "
                            "the two labels must be equal");
  }
  dance_direction_ = label_.bit(i_) ? Direction::North : Direction::South;
  return move(dance_direction_, pow2(-static_cast<int>(i_)), Resume::DanceFirst);
}

Action MonotoneProgram::after_dance() {
  j_ = i_ - 1;
  phase_ = MonotonePhase::VerticalApproach;
  const bool one = label_.bit(j_);
  if (compare_ == Comparison::Smaller) {
    // The 1-agent was South before the last move: undo it, then converge.
    closer_direction_ = one ? Direction::North : Direction::South;
    return move(one ? Direction::South : Direction::North, pow2(-static_cast<int>(j_)),
                Resume::DanceBacktrack);
  }
  // Larger: the 1-agent is North after the last move.
  return get_closer(one ? Direction::South : Direction::North, Scalar(1, 4), true);
}

Action MonotoneProgram::horizontal_approach() {
  phase_ = MonotonePhase::HorizontalApproach;
  horizontal_direction_ = !sim_ || label_.bit(j_) ? Direction::East : Direction::West;
  return move(horizontal_direction_, 1, Resume::HorizontalProbe);
}

Action MonotoneProgram::step(const MonotoneReading& reading) {
  if (resume_ == Resume::Halted) {
    throw ProtocolViolation("reading delivered to a halted monotone agent");
  }
  if (resume_ == Resume::Appearance) {
    if (!reading.is_present()) return halt(MonotonePhase::InertForever);
    current_ = reading.level();
    sim_ = false;
    phase_ = MonotonePhase::VerticalApproach;
    return move(Direction::North, 1, Resume::FirstProbe);
  }
  if (!reading.is_present()) {
    throw ProtocolViolation("partner reported absent after having been present");
  }
  compare_ = compare_levels(*current_, reading.level());
  current_ = reading.level();
  const Comparison cmp = *compare_;

  switch (resume_) {
    case Resume::FirstProbe:
      if (cmp == Comparison::Smaller) return get_closer(Direction::North, Scalar(1, 2), true);
      if (cmp == Comparison::Larger) return move(Direction::South, 1, Resume::ProbeBacktrack);
      return move(Direction::North, 1, Resume::SecondProbe);

    case Resume::SecondProbe:
      if (cmp == Comparison::Larger) return move(Direction::South, 1, Resume::ProbeBacktrack);
      if (cmp == Comparison::Smaller) {
        throw ProtocolViolation("distance shrank on the second probing move");
      }
      sim_ = true;
      phase_ = MonotonePhase::Dance;
      i_ = 1;
      return dance_bit();

    case Resume::ProbeBacktrack:
      return get_closer(Direction::South, Scalar(1, 2), true);

    case Resume::DanceFirst:
      if (cmp == Comparison::Equal) {
        return move(dance_direction_, pow2(-static_cast<int>(i_)), Resume::DanceSecond);
      }
      ++i_;
      return after_dance();

    case Resume::DanceSecond:
      ++i_;
      if (cmp == Comparison::Equal) return dance_bit();
      return after_dance();

    case Resume::DanceBacktrack:
      return get_closer(closer_direction_, Scalar(1, 4), true);

    case Resume::Closer:
      if (cmp == Comparison::Smaller) return move(closer_direction_, closer_step_, Resume::Closer);
      if (closer_vertical_) return horizontal_approach();
      return halt(MonotonePhase::Finished);

    case Resume::HorizontalProbe:
      if (cmp == Comparison::Smaller) return get_closer(horizontal_direction_, 1, false);
      return move(opposite(horizontal_direction_), 1, Resume::HorizontalBacktrack);

    case Resume::HorizontalBacktrack:
      return get_closer(opposite(horizontal_direction_), 1, false);

    case Resume::Appearance:
    case Resume::Halted:
      break;
  }
  throw ProtocolViolation("monotone program in an unreachable state");
}

}  // namespace rdv
