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

#include <doctest.h>

#include <set>
#include <string>

#include "rendezvous/errors.hpp"
#include "rendezvous/labels.hpp"

TEST_CASE("lambda is ceil(log2 L)") {
  CHECK(rdv::LabelSpace(2).lambda() == 1);
  CHECK(rdv::LabelSpace(3).lambda() == 2);
  CHECK(rdv::LabelSpace(4).lambda() == 2);
  CHECK(rdv::LabelSpace(5).lambda() == 3);
  CHECK(rdv::LabelSpace(1024).lambda() == 10);
  CHECK(rdv::LabelSpace(1025).lambda() == 11);
  CHECK(rdv::LabelSpace(std::uint64_t{1} << 20).lambda() == 20);
  CHECK_THROWS_AS(rdv::LabelSpace(1), rdv::InputError);
  CHECK_THROWS_AS(rdv::LabelSpace(0), rdv::InputError);
}

TEST_CASE("transform pads to lambda bits, most significant first") {
  const rdv::LabelSpace space(8);
  CHECK(rdv::transform(0, space).to_string() == "000");
  CHECK(rdv::transform(5, space).to_string() == "101");
  CHECK(rdv::transform(1, space).bit(3));
  CHECK_FALSE(rdv::transform(1, space).bit(1));
  CHECK(rdv::transform(3, rdv::LabelSpace(5)).to_string() == "011");
}

TEST_CASE("transformed labels are distinct, fixed-length and order-preserving for every L <= 2^10") {
  for (std::uint64_t L = 2; L <= 1024; ++L) {
    const rdv::LabelSpace space(L);
    std::set<std::string> seen;
    rdv::TransformedLabel previous = rdv::transform(0, space);
    for (std::uint64_t l = 0; l < L; ++l) {
      const rdv::TransformedLabel t = rdv::transform(l, space);
      REQUIRE(t.length() == space.lambda());
      // Reading the bits back gives the label.
      std::uint64_t value = 0;
      for (std::size_t i = 1; i <= t.length(); ++i) value = 2 * value + (t.bit(i) ? 1 : 0);
      REQUIRE(value == l);
      REQUIRE(seen.insert(t.to_string()).second);
      if (l > 0) REQUIRE(previous < t);
      previous = t;
    }
  }
}

TEST_CASE("first_differing_index") {
  const rdv::LabelSpace space(16);
  CHECK(rdv::first_differing_index(rdv::transform(0, space), rdv::transform(8, space)) == 1);
  CHECK(rdv::first_differing_index(rdv::transform(6, space), rdv::transform(7, space)) == 4);
  CHECK(rdv::first_differing_index(rdv::transform(4, space), rdv::transform(6, space)) == 3);
  CHECK_THROWS(rdv::first_differing_index(rdv::transform(3, space), rdv::transform(3, space)));
  for (std::uint64_t a = 0; a < 64; ++a) {
    for (std::uint64_t b = 0; b < 64; ++b) {
      if (a == b) continue;
      const rdv::LabelSpace s(64);
      const std::size_t j = rdv::first_differing_index(rdv::transform(a, s), rdv::transform(b, s));
      // Bits before j agree, bit j differs.
      REQUIRE((a >> (6 - j + 1)) == (b >> (6 - j + 1)));
      REQUIRE(((a >> (6 - j)) & 1) != ((b >> (6 - j)) & 1));
    }
  }
}
