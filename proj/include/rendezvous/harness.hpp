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

// Seeded sweeps, bound aggregation and executor/oracle verification.
//
// Sweep spec (JSON object):
//   seed               unsigned 64-bit integer
//   count              number of generated scenarios
//   model              "monotone" | "binary"
//   L                  array of label-space sizes, cycled by scenario index
//   D                  [min, max] initial distance (rationals)
//   rho                array of sensing radii (binary), crossed with L
//   start              {"mode": "simultaneous" | "fixed" | "random" | "mixed",
//                       "offset": rational (fixed) or maximum (random/mixed)}
//   placement          "within_rho" | "beyond_rho" (binary, default within)
//   worst_pairs        every n-th scenario uses labels 2m, 2m+1, which first
//                      differ at the last bit (default 4, 0 disables)
//   trap_pairs         extra monotone scenarios whose labels differ in one
//                      bit j, 2^-j apart vertically, 1-bit agent South
//   distortion         monotone level map for every scenario
//   strict_paper_loop  bool
//   probe              {"lambdas": [..], "rho": r, "count": n, "D": [min, max]}
//   dt                 oracle step used by verify when none is given
//
// Every random draw comes from one std::mt19937_64 seeded with `seed`
// (generator name "rdv-sweep/1"); positions are multiples of 2^-16.

#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "rendezvous/io.hpp"
#include "rendezvous/scenario.hpp"

namespace rdv {

inline constexpr const char* kGeneratorName = "rdv-sweep/1";
inline constexpr const char* kBoundReportSchema = "rdv-bound-report/1";
inline constexpr const char* kVerifyReportSchema = "rdv-verify-report/1";
inline constexpr int kPositionDenominatorBits = 16;

/// Deterministic draws on top of mt19937_64. Integer draws use rejection so
/// results do not depend on the standard library's distributions.
class SweepRng {
 public:
  explicit SweepRng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, n); n > 0.
  std::uint64_t below(std::uint64_t n);
  /// Uniform in [lo, hi].
  std::int64_t between(std::int64_t lo, std::int64_t hi);
  bool coin() { return below(2) == 1; }
  /// Uniform multiple of 2^-bits in [lo, hi]; throws InputError if there is none.
  Scalar dyadic(const Scalar& lo, const Scalar& hi, int bits = kPositionDenominatorBits);

 private:
  std::mt19937_64 engine_;
};

enum class StartMode { Simultaneous, Fixed, Random, Mixed };
enum class Placement { WithinRho, BeyondRho };

struct ProbeSpec {
  std::vector<unsigned> lambdas;
  Scalar rho;
  std::size_t count = 0;
  Scalar d_min = 2;
  Scalar d_max;
};

struct SweepSpec {
  std::uint64_t seed = 0;
  std::size_t count = 0;
  SensingModel model = SensingModel::Monotone;
  std::vector<std::uint64_t> label_spaces;
  std::optional<Scalar> d_min;
  std::optional<Scalar> d_max;
  std::vector<Scalar> rhos;
  StartMode start_mode = StartMode::Simultaneous;
  Scalar offset = 0;
  Placement placement = Placement::WithinRho;
  std::size_t worst_pair_every = 4;
  std::size_t trap_pairs = 0;
  Distortion distortion = Distortion::Identity;
  bool strict_paper_loop = false;
  std::optional<ProbeSpec> probe;
  std::optional<Scalar> dt;
};

/// Throws InputError naming the offending field.
SweepSpec sweep_spec_from_json(const json& doc);

/// The scenarios of a sweep, in index order: `count` random ones followed by
/// the trap pairs. Same spec, same list.
std::vector<Scenario> generate_scenarios(const SweepSpec& spec);

/// Labels differing only at bit lambda, placed within rho, simultaneous or
/// staggered. Same geometry for every lambda so curves are comparable.
std::vector<Scenario> probe_scenarios(const ProbeSpec& probe, std::uint64_t seed,
                                      bool strict_paper_loop, unsigned lambda);

/// The per-run summary written to runs.jsonl; identical to the report the
/// `run` command prints for the same scenario.
json run_summary(const Scenario& s);

struct SweepOutcome {
  json report;
  bool ok = true;
};

/// Runs every scenario, writes runs.jsonl and bound_report.json into
/// `out_dir` when given, and returns the bound report.
SweepOutcome run_sweep(const SweepSpec& spec, const std::optional<std::string>& out_dir);

struct VerifyOutcome {
  json report;
  /// False when executor and oracle disagree on any compared scenario.
  bool agreed = true;
};

VerifyOutcome run_verify(const SweepSpec& spec, const Scalar& dt);

/// Verification of a single scenario; exposed for tests.
struct VerifyCase {
  enum class Status { Agreed, Excluded, Disagreed } status = Status::Agreed;
  std::string note;
  /// Oracle instant minus the executor touch (bracket midpoint), when both met.
  std::optional<Scalar> gap;
};

VerifyCase verify_scenario(const Scenario& s, const Scalar& dt);

}  // namespace rdv
