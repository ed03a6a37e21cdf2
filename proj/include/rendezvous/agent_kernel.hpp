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

// The contract between agent programs and the executor.
//
// A program is a deterministic value: it receives one sensor reading at its
// appearance and one at the end of every non-terminal action, and answers
// each reading with the next action. Computation takes no simulated time.
// Programs see only what the sensing model grants: in the monotone model an
// opaque level that can be ordered against other levels, in the binary model
// a single Near/Far bit.

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "rendezvous/geometry.hpp"
#include "rendezvous/scalar.hpp"

namespace rdv {

struct Move {
  Move(Direction d, Scalar length);
  Direction direction;
  Scalar duration;
  friend bool operator==(const Move&, const Move&) = default;
};

struct Wait {
  explicit Wait(Scalar length);
  Scalar duration;
  friend bool operator==(const Wait&, const Wait&) = default;
};

/// Terminal: the agent stays where it is and receives no further readings.
struct HaltForever {
  friend bool operator==(const HaltForever&, const HaltForever&) = default;
};

using Action = std::variant<Move, Wait, HaltForever>;

std::string describe(const Action& action);

/// How the current distance relates to the previous one.
enum class Comparison { Smaller, Equal, Larger };

std::string_view to_string(Comparison c);

namespace detail {
struct LevelAccess;
}

/// Sensor level in the monotone model. Increases strictly with distance;
/// exposes nothing but ordering against another level.
class Level {
 public:
  friend Comparison compare_levels(const Level& previous, const Level& current);

 private:
  friend struct detail::LevelAccess;
  explicit Level(Scalar hidden) : hidden_(std::move(hidden)) {}
  Scalar hidden_;
};

/// larger if previous < current, equal if they match, smaller otherwise.
Comparison compare_levels(const Level& previous, const Level& current);

class MonotoneReading {
 public:
  static MonotoneReading absent() { return MonotoneReading(std::nullopt); }
  static MonotoneReading present(Level level) { return MonotoneReading(std::move(level)); }

  bool is_present() const { return level_.has_value(); }
  /// Requires is_present().
  const Level& level() const { return *level_; }

 private:
  explicit MonotoneReading(std::optional<Level> level) : level_(std::move(level)) {}
  std::optional<Level> level_;
};

/// Near iff the partner is present and strictly closer than rho. Far does not
/// record why.
enum class BinaryReading { Near, Far };

std::string_view to_string(BinaryReading r);

/// Strictly increasing maps applied to the squared distance before it becomes
/// a hidden level. Programs must behave identically under all of them.
enum class Distortion { Identity, Affine, Cubic, Exp2 };

std::string_view to_string(Distortion d);
Distortion parse_distortion(std::string_view text);
/// Exp2 is 2^x on integers, linearly interpolated in between, so it stays
/// rational and strictly increasing.
Scalar apply_distortion(Distortion d, const Scalar& squared_distance);

/// Sensor construction. Only the executor and the oracle call these.
MonotoneReading sense_monotone(bool partner_present, const Scalar& squared_distance,
                               Distortion distortion);
BinaryReading sense_binary(bool partner_present, const Scalar& squared_distance,
                           const Scalar& rho);

}  // namespace rdv
