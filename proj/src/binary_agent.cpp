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

#include "rendezvous/binary_agent.hpp"

#include "rendezvous/errors.hpp"

namespace rdv {

std::string_view to_string(BinaryPhase p) {
  switch (p) {
    case BinaryPhase::AwaitingAppearance: return "awaiting_appearance";
    case BinaryPhase::LoseContact: return "lose_contact";
    case BinaryPhase::ReturnSouth: return "return_south";
    case BinaryPhase::TriangleDescent: return "triangle_descent";
    case BinaryPhase::MidpointReturn: return "midpoint_return";
    case BinaryPhase::HorizontalLeaps: return "horizontal_leaps";
    case BinaryPhase::InertForever: return "inert";
    case BinaryPhase::Finished: return "finished";
  }
  return "?";
}

BinaryProgram::BinaryProgram(std::uint64_t label, const LabelSpace& space, LoopGuard guard) {
  const TransformedLabel t = transform(label, space);
  for (std::size_t k = 1; k <= t.length(); ++k) bits_.push_back(t.bit(k));
  if (guard == LoopGuard::AllBits) {
    bits_.push_back(true);
    bits_per_pass_ = bits_.size();
  } else {
    bits_per_pass_ = bits_.size() - 1;
  }
}

Action BinaryProgram::halt(BinaryPhase final_phase) {
  phase_ = final_phase;
  halted_ = true;
  return HaltForever{};
}

Action BinaryProgram::lose_contact_bit() {
  const bool one = bits_[i_ - 1];
  ++i_;
  if (one) return Move(Direction::North, d_);
  return Wait(d_);
}

Action BinaryProgram::step(BinaryReading reading) {
  if (halted_) throw ProtocolViolation("reading delivered to a halted binary agent");
  const bool near = reading == BinaryReading::Near;

  switch (phase_) {
    case BinaryPhase::AwaitingAppearance:
      if (!near) return halt(BinaryPhase::InertForever);
      if (bits_per_pass_ == 0) {
        throw ProtocolViolation("strict loop guard processes no label bit when lambda = 1");
      }
      phase_ = BinaryPhase::LoseContact;
      d_ = 1;
      i_ = 1;
      leading_ = false;
      return lose_contact_bit();

    case BinaryPhase::LoseContact:
      if (near) {
        if (i_ > bits_per_pass_) {
          d_ *= 2;
          i_ = 1;
        }
        return lose_contact_bit();
      }
      d_ *= 2;
      j_ = i_ - 1;
      lose_contact_done_ = true;
      if (!bits_[j_ - 1]) return halt(BinaryPhase::Finished);
      leading_ = true;
      phase_ = BinaryPhase::ReturnSouth;
      return Move(Direction::South, Scalar(1, 2));

    case BinaryPhase::ReturnSouth:
      if (!near) return Move(Direction::South, Scalar(1, 2));
      phase_ = BinaryPhase::TriangleDescent;
      t_ = 1;
      return Move(Direction::South, Scalar(1, 2));

    case BinaryPhase::TriangleDescent:
      if (near) {
        ++t_;
        return Move(Direction::South, Scalar(1, 2));
      }
      phase_ = BinaryPhase::MidpointReturn;
      return Move(Direction::North, Scalar((t_ + 1) / 2) / 2);

    case BinaryPhase::MidpointReturn:
      phase_ = BinaryPhase::HorizontalLeaps;
      leap_ = 1;
      leap_stage_ = 1;
      return Move(Direction::East, leap_);

    case BinaryPhase::HorizontalLeaps:
      // Readings are ignored here; only the meeting interrupt ends the search.
      if (leap_stage_ == 1) {
        leap_stage_ = 2;
        return Move(Direction::West, 2 * leap_);
      }
      if (leap_stage_ == 2) {
        leap_stage_ = 3;
        return Move(Direction::East, leap_);
      }
      leap_ *= 2;
      leap_stage_ = 1;
      return Move(Direction::East, leap_);

    case BinaryPhase::InertForever:
    case BinaryPhase::Finished:
      break;
  }
  throw ProtocolViolation("binary program in an unreachable state");
}

}  // namespace rdv
