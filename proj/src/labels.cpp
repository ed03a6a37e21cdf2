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

#include "rendezvous/labels.hpp"

#include <bit>

#include "rendezvous/errors.hpp"

namespace rdv {

LabelSpace::LabelSpace(std::uint64_t size) : size_(size), lambda_(0) {
  if (size < 2) {
    throw InputError("label space size must be at least 2 (got " + std::to_string(size) + ")");
  }
  lambda_ = static_cast<unsigned>(std::bit_width(size - 1));
}

std::string TransformedLabel::to_string() const {
  std::string s;
  s.reserve(bits_.size());
  for (bool b : bits_) s.push_back(b ? '1' : '0');
  return s;
}

TransformedLabel transform(std::uint64_t label, const LabelSpace& space) {
  if (label >= space.size()) {
    throw InputError("label " + std::to_string(label) + " outside [0, " +
                     std::to_string(space.size()) + ")");
  }
  std::vector<bool> bits(space.lambda());
  for (unsigned i = 0; i < space.lambda(); ++i) {
    bits[space.lambda() - 1 - i] = ((label >> i) & 1U) != 0;
  }
  return TransformedLabel(std::move(bits));
}

std::size_t first_differing_index(const TransformedLabel& a, const TransformedLabel& b) {
  if (a.length() != b.length()) throw InputError("transformed labels differ in length");
  for (std::size_t i = 1; i <= a.length(); ++i) {
    if (a.bit(i) != b.bit(i)) return i;
  }
  throw InputError("labels are equal");
}

}  // namespace rdv
