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
#include <string_view>
#include <vector>

#include "rendezvous/agent_kernel.hpp"
#include "rendezvous/labels.hpp"

namespace rdv {

/// Which label bits a LoseContact pass processes.
enum class LoopGuard {
  /// Bits 1..lambda followed by one extra 1-bit shared by every label, so a
  /// lone agent with label 0 still moves.
  AllBits,
  /// Bits 1..lambda-1, exactly as the published inner-loop guard i < lambda.
  StrictPaper,
};

enum class BinaryPhase {
  AwaitingAppearance,
  LoseContact,
  ReturnSouth,
  TriangleDescent,
  MidpointReturn,
  HorizontalLeaps,
  InertForever,
  Finished,
};

std::string_view to_string(BinaryPhase p);

/// Meeting program for the binary (Near/Far) sensing model.
///
/// An agent that starts alone stays inert forever. Otherwise it walks North
/// or waits, one label bit at a time, for doubling periods d until contact is
/// lost. The agent whose own move lost contact becomes leading: it steps
/// South by 1/2 until contact returns, descends by 1/2-steps through the
/// sensing disc of the inert partner counting t steps, climbs back
/// ceil(t/2)/2 to the partner's horizontal line, then leaps E d, W 2d, E d
/// with doubling d until the meeting interrupts it. The other agent halts.
class BinaryProgram {
 public:
  BinaryProgram(std::uint64_t label, const LabelSpace& space,
                LoopGuard guard = LoopGuard::AllBits);

  /// Throws ProtocolViolation on a reading after HaltForever, or when the
  /// strict guard leaves no bit to process (lambda = 1).
  Action step(BinaryReading reading);

  BinaryPhase phase() const { return phase_; }
  bool leading() const { return leading_; }
  bool lose_contact_finished() const { return lose_contact_done_; }
  /// Bit index j whose processing lost contact (0 until then).
  std::size_t contact_bit() const { return j_; }
  std::size_t bits_per_pass() const { return bits_per_pass_; }
  unsigned descent_steps() const { return t_; }

 private:
  Action lose_contact_bit();
  Action halt(BinaryPhase final_phase);

  std::vector<bool> bits_;
  std::size_t bits_per_pass_;
  BinaryPhase phase_ = BinaryPhase::AwaitingAppearance;
  bool halted_ = false;
  bool leading_ = false;
  bool lose_contact_done_ = false;
  Scalar d_ = 1;
  std::size_t i_ = 1;
  std::size_t j_ = 0;
  unsigned t_ = 0;
  int leap_stage_ = 0;
  Scalar leap_ = 1;
};

}  // namespace rdv
