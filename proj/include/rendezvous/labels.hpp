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

#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace rdv {

/// Labels are integers in [0, size). lambda = ceil(log2(size)) is the common
/// length of every transformed label.
class LabelSpace {
 public:
  /// Throws InputError for size < 2.
  explicit LabelSpace(std::uint64_t size);

  std::uint64_t size() const { return size_; }
  unsigned lambda() const { return lambda_; }

  friend bool operator==(const LabelSpace&, const LabelSpace&) = default;

 private:
  std::uint64_t size_;
  unsigned lambda_;
};

/// Binary representation of a label, left-padded with zeroes to lambda bits.
class TransformedLabel {
 public:
  explicit TransformedLabel(std::vector<bool> bits) : bits_(std::move(bits)) {}

  std::size_t length() const { return bits_.size(); }
  /// 1-based; bit(1) is the most significant.
  bool bit(std::size_t index) const { return bits_.at(index - 1); }
  std::string to_string() const;

  friend bool operator==(const TransformedLabel&, const TransformedLabel&) = default;
  friend std::strong_ordering operator<=>(const TransformedLabel& a, const TransformedLabel& b) {
    return a.bits_ <=> b.bits_;
  }

 private:
  std::vector<bool> bits_;
};

TransformedLabel transform(std::uint64_t label, const LabelSpace& space);

/// Smallest 1-based index where the labels differ. Harness-side only: agents
/// never learn the other label.
std::size_t first_differing_index(const TransformedLabel& a, const TransformedLabel& b);

}  // namespace rdv
