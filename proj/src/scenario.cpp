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

#include "rendezvous/scenario.hpp"

#include <string>

#include "rendezvous/errors.hpp"

namespace rdv {

std::string_view to_string(SensingModel m) {
  return m == SensingModel::Monotone ? "monotone" : "binary";
}

SensingModel parse_model(std::string_view text) {
  if (text == "monotone") return SensingModel::Monotone;
  if (text == "binary") return SensingModel::Binary;
  throw InputError("unknown model \"" + std::string(text) + "\" (expected monotone or binary)");
}

void Scenario::validate() const {
  if (label_space < 2) throw InputError("L: label space must contain at least 2 labels");
  if (label_a >= label_space) throw InputError("label_a: must be below L");
  if (label_b >= label_space) throw InputError("label_b: must be below L");
  if (label_a == label_b) throw InputError("label_b: agents must have different labels");
  if (start_a < 0) throw InputError("start_a: must be non-negative");
  if (start_b < 0) throw InputError("start_b: must be non-negative");
  if (model == SensingModel::Binary) {
    if (!rho) throw InputError("rho: required for the binary model");
    if (*rho <= 1) throw InputError("rho: must be greater than 1");
  }
  if (time_budget && *time_budget < 0) throw InputError("time_budget: must be non-negative");
}

Scalar Scenario::default_budget() const {
  if (model == SensingModel::Monotone) {
    return 4 * (vertical_separation() + horizontal_separation()) + 64;
  }
  return 512 * *rho * space().lambda();
}

bool Scenario::out_of_contract() const {
  return model == SensingModel::Binary && rho && initial_squared_distance() >= *rho * *rho;
}

}  // namespace rdv
