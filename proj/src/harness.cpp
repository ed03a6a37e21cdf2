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

#include "rendezvous/harness.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <set>

#include "rendezvous/bounds.hpp"
#include "rendezvous/errors.hpp"
#include "rendezvous/oracle.hpp"
#include "rendezvous/simulator.hpp"

namespace rdv {

std::uint64_t SweepRng::below(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("SweepRng::below: empty range");
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % n;
  while (true) {
    const std::uint64_t v = engine_();
    if (v < limit) return v % n;
  }
}

std::int64_t SweepRng::between(std::int64_t lo, std::int64_t hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<std::int64_t>(below(span));
}

Scalar SweepRng::dyadic(const Scalar& lo, const Scalar& hi, int bits) {
  const Scalar scale = pow2(bits);
  const mpz_class a = ceil(lo * scale);
  const mpz_class b = floor(hi * scale);
  if (a > b) throw InputError("empty sampling range");
  const mpz_class span = b - a + 1;
  if (!span.fits_slong_p()) throw InputError("sampling range too large");
  Scalar v(mpz_class(a + between(0, span.get_si() - 1)));
  return v / scale;
}

namespace {

const std::set<std::string> kSpecKeys = {
    "seed",   "count",      "model",      "L",          "D",
    "rho",    "start",      "placement",  "worst_pairs", "trap_pairs",
    "distortion", "strict_paper_loop", "probe", "dt", "schema"};

std::uint64_t uint_field(const json& v, const std::string& path) {
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
    throw InputError(path + ": expected a non-negative integer");
  }
  return v.get<std::uint64_t>();
}

std::pair<Scalar, Scalar> range_field(const json& v, const std::string& path) {
  if (!v.is_array() || v.size() != 2) throw InputError(path + ": expected [min, max]");
  Scalar lo = scalar_from_json(v[0], path + "[0]");
  Scalar hi = scalar_from_json(v[1], path + "[1]");
  if (lo > hi) throw InputError(path + ": min exceeds max");
  if (lo < 0) throw InputError(path + ": distances must be non-negative");
  return {lo, hi};
}

Point add(const Point& p, const Scalar& dx, const Scalar& dy) { return Point{p.x + dx, p.y + dy}; }

// Two distinct labels; every `worst_every`-th index gets 2m, 2m+1.
std::pair<std::uint64_t, std::uint64_t> draw_labels(SweepRng& rng, std::uint64_t L,
                                                    bool worst) {
  if (worst) {
    const std::uint64_t m = rng.below(L / 2);
    return rng.coin() ? std::pair{2 * m, 2 * m + 1} : std::pair{2 * m + 1, 2 * m};
  }
  const std::uint64_t a = rng.below(L);
  std::uint64_t b = rng.below(L - 1);
  if (b >= a) ++b;
  return {a, b};
}

void draw_starts(SweepRng& rng, const SweepSpec& spec, std::size_t index, Scenario& s) {
  StartMode mode = spec.start_mode;
  if (mode == StartMode::Mixed) mode = index % 2 == 0 ? StartMode::Simultaneous : StartMode::Random;
  Scalar later = 0;
  if (mode == StartMode::Fixed) later = spec.offset;
  if (mode == StartMode::Random) {
    const Scalar unit = pow2(-kPositionDenominatorBits);
    later = rng.dyadic(unit, max(spec.offset, unit));
  }
  const bool b_later = rng.coin();
  s.start_a = b_later ? Scalar(0) : later;
  s.start_b = b_later ? later : Scalar(0);
}

// Offset of b from a, uniform over the square and rejected into the annulus
// d_min <= |offset| <= d_max, with the extra strict/non-strict rho condition.
std::pair<Scalar, Scalar> draw_offset(SweepRng& rng, const Scalar& d_min, const Scalar& d_max,
                                      const std::optional<Scalar>& below_rho,
                                      const std::optional<Scalar>& from_rho) {
  for (int attempt = 0; attempt < 100000; ++attempt) {
    const Scalar dx = rng.dyadic(-d_max, d_max);
    const Scalar dy = rng.dyadic(-d_max, d_max);
    const Scalar d2 = dx * dx + dy * dy;
    if (d2 <= 1 || d2 < d_min * d_min || d2 > d_max * d_max) continue;
    if (below_rho && d2 >= *below_rho * *below_rho) continue;
    if (from_rho && d2 < *from_rho * *from_rho) continue;
    return {dx, dy};
  }
  throw InputError("D: no admissible offset in the requested range");
}

Scenario trap_scenario(SweepRng& rng, const SweepSpec& spec, std::size_t index) {
  Scenario s;
  s.model = SensingModel::Monotone;
  s.label_space = spec.label_spaces[index % spec.label_spaces.size()];
  s.distortion = spec.distortion;
  const LabelSpace space(s.label_space);
  // Find two labels below L differing in exactly one transformed bit j.
  std::uint64_t one = 0;
  std::uint64_t zero = 0;
  unsigned j = 0;
  while (true) {
    j = static_cast<unsigned>(rng.between(1, space.lambda()));
    const std::uint64_t mask = std::uint64_t{1} << (space.lambda() - j);
    zero = rng.below(s.label_space) & ~mask;
    one = zero | mask;
    if (one < s.label_space) break;
  }
  const Point south{rng.dyadic(-64, 64), rng.dyadic(-64, 64)};
  const Scalar dx = rng.dyadic(Scalar(3, 2), 8) * (rng.coin() ? 1 : -1);
  const Point north = add(south, dx, pow2(-static_cast<int>(j)));
  const bool one_is_a = rng.coin();
  s.label_a = one_is_a ? one : zero;
  s.label_b = one_is_a ? zero : one;
  s.pos_a = one_is_a ? south : north;
  s.pos_b = one_is_a ? north : south;
  draw_starts(rng, spec, index, s);
  s.strict_paper_loop = spec.strict_paper_loop;
  return s;
}

}  // namespace

SweepSpec sweep_spec_from_json(const json& doc) {
  if (!doc.is_object()) throw InputError("spec: expected a JSON object");
  for (const auto& item : doc.items()) {
    if (!kSpecKeys.contains(item.key())) throw InputError(item.key() + ": unknown field");
  }
  SweepSpec spec;
  if (!doc.contains("seed")) throw InputError("seed: required");
  spec.seed = uint_field(doc.at("seed"), "seed");
  if (!doc.contains("count")) throw InputError("count: required");
  spec.count = uint_field(doc.at("count"), "count");
  if (!doc.contains("model") || !doc.at("model").is_string()) throw InputError("model: required string");
  try {
    spec.model = parse_model(doc.at("model").get<std::string>());
  } catch (const InputError& e) {
    throw InputError(std::string("model: ") + e.what());
  }
  if (!doc.contains("L") || !doc.at("L").is_array() || doc.at("L").empty()) {
    throw InputError("L: expected a non-empty array of label-space sizes");
  }
  for (std::size_t i = 0; i < doc.at("L").size(); ++i) {
    const std::string path = "L[" + std::to_string(i) + "]";
    const std::uint64_t L = uint_field(doc.at("L")[i], path);
    if (L < 2) throw InputError(path + ": label space must contain at least 2 labels");
    spec.label_spaces.push_back(L);
  }
  if (doc.contains("D")) {
    auto [lo, hi] = range_field(doc.at("D"), "D");
    spec.d_min = lo;
    spec.d_max = hi;
  }
  if (doc.contains("rho")) {
    const json& r = doc.at("rho");
    if (!r.is_array() || r.empty()) throw InputError("rho: expected a non-empty array");
    for (std::size_t i = 0; i < r.size(); ++i) {
      const std::string path = "rho[" + std::to_string(i) + "]";
      const Scalar rho = scalar_from_json(r[i], path);
      if (rho <= 1) throw InputError(path + ": must be greater than 1");
      spec.rhos.push_back(rho);
    }
  }
  if (spec.model == SensingModel::Binary && spec.rhos.empty()) {
    throw InputError("rho: required for the binary model");
  }
  if (spec.model == SensingModel::Monotone && !spec.d_max) {
    throw InputError("D: required for the monotone model");
  }
  if (doc.contains("start")) {
    const json& st = doc.at("start");
    if (!st.is_object() || !st.contains("mode") || !st.at("mode").is_string()) {
      throw InputError("start.mode: required string");
    }
    const std::string mode = st.at("mode").get<std::string>();
    if (mode == "simultaneous") spec.start_mode = StartMode::Simultaneous;
    else if (mode == "fixed") spec.start_mode = StartMode::Fixed;
    else if (mode == "random") spec.start_mode = StartMode::Random;
    else if (mode == "mixed") spec.start_mode = StartMode::Mixed;
    else throw InputError("start.mode: expected simultaneous, fixed, random or mixed");
    for (const auto& item : st.items()) {
      if (item.key() != "mode" && item.key() != "offset") {
        throw InputError("start." + item.key() + ": unknown field");
      }
    }
    if (spec.start_mode != StartMode::Simultaneous) {
      if (!st.contains("offset")) throw InputError("start.offset: required for mode " + mode);
      spec.offset = scalar_from_json(st.at("offset"), "start.offset");
      if (spec.offset <= 0) throw InputError("start.offset: must be positive");
    }
  }
  if (doc.contains("placement")) {
    const json& p = doc.at("placement");
    if (p == "within_rho") spec.placement = Placement::WithinRho;
    else if (p == "beyond_rho") spec.placement = Placement::BeyondRho;
    else throw InputError("placement: expected within_rho or beyond_rho");
  }
  if (doc.contains("worst_pairs")) spec.worst_pair_every = uint_field(doc.at("worst_pairs"), "worst_pairs");
  if (doc.contains("trap_pairs")) {
    spec.trap_pairs = uint_field(doc.at("trap_pairs"), "trap_pairs");
    if (spec.trap_pairs > 0 && spec.model != SensingModel::Monotone) {
      throw InputError("trap_pairs: only meaningful for the monotone model");
    }
  }
  if (doc.contains("distortion")) {
    if (!doc.at("distortion").is_string()) throw InputError("distortion: expected a string");
    try {
      spec.distortion = parse_distortion(doc.at("distortion").get<std::string>());
    } catch (const InputError& e) {
      throw InputError(std::string("distortion: ") + e.what());
    }
  }
  if (doc.contains("strict_paper_loop")) {
    if (!doc.at("strict_paper_loop").is_boolean()) {
      throw InputError("strict_paper_loop: expected true or false");
    }
    spec.strict_paper_loop = doc.at("strict_paper_loop").get<bool>();
  }
  if (doc.contains("probe")) {
    const json& p = doc.at("probe");
    if (!p.is_object()) throw InputError("probe: expected an object");
    ProbeSpec probe;
    if (!p.contains("lambdas") || !p.at("lambdas").is_array() || p.at("lambdas").empty()) {
      throw InputError("probe.lambdas: expected a non-empty array");
    }
    for (std::size_t i = 0; i < p.at("lambdas").size(); ++i) {
      const std::string path = "probe.lambdas[" + std::to_string(i) + "]";
      const std::uint64_t lambda = uint_field(p.at("lambdas")[i], path);
      if (lambda < 1 || lambda > 62) throw InputError(path + ": must be in [1, 62]");
      probe.lambdas.push_back(static_cast<unsigned>(lambda));
    }
    if (!p.contains("rho")) throw InputError("probe.rho: required");
    probe.rho = scalar_from_json(p.at("rho"), "probe.rho");
    if (probe.rho <= 1) throw InputError("probe.rho: must be greater than 1");
    probe.count = p.contains("count") ? uint_field(p.at("count"), "probe.count") : 16;
    if (probe.count == 0) throw InputError("probe.count: must be positive");
    probe.d_max = probe.rho;
    if (p.contains("D")) {
      auto [lo, hi] = range_field(p.at("D"), "probe.D");
      probe.d_min = lo;
      probe.d_max = min(hi, probe.rho);
    }
    spec.probe = probe;
  }
  if (doc.contains("dt")) {
    spec.dt = scalar_from_json(doc.at("dt"), "dt");
    if (*spec.dt <= 0) throw InputError("dt: must be positive");
  }
  return spec;
}

std::vector<Scenario> generate_scenarios(const SweepSpec& spec) {
  SweepRng rng(spec.seed);
  std::vector<Scenario> out;
  out.reserve(spec.count + spec.trap_pairs);

  // Binary cells: every (rho, L) combination, cycled by index.
  const std::size_t cells = spec.model == SensingModel::Binary
                                ? spec.rhos.size() * spec.label_spaces.size()
                                : spec.label_spaces.size();
  for (std::size_t i = 0; i < spec.count; ++i) {
    Scenario s;
    s.model = spec.model;
    s.strict_paper_loop = spec.strict_paper_loop;
    const std::size_t cell = i % cells;
    std::optional<Scalar> below_rho;
    std::optional<Scalar> from_rho;
    Scalar d_min = spec.d_min.value_or(1);
    Scalar d_max;
    if (spec.model == SensingModel::Binary) {
      s.rho = spec.rhos[cell / spec.label_spaces.size()];
      s.label_space = spec.label_spaces[cell % spec.label_spaces.size()];
      if (spec.placement == Placement::WithinRho) {
        below_rho = s.rho;
        d_max = spec.d_max ? min(*spec.d_max, *s.rho) : *s.rho;
      } else {
        from_rho = s.rho;
        d_max = spec.d_max ? *spec.d_max : 2 * *s.rho;
        d_min = max(d_min, *s.rho);
      }
    } else {
      s.label_space = spec.label_spaces[cell];
      s.distortion = spec.distortion;
      d_max = *spec.d_max;
    }
    const bool worst = spec.worst_pair_every > 0 && i % spec.worst_pair_every == spec.worst_pair_every - 1;
    std::tie(s.label_a, s.label_b) = draw_labels(rng, s.label_space, worst);
    s.pos_a = Point{rng.dyadic(-64, 64), rng.dyadic(-64, 64)};
    const auto [dx, dy] = draw_offset(rng, d_min, d_max, below_rho, from_rho);
    s.pos_b = add(s.pos_a, dx, dy);
    draw_starts(rng, spec, i, s);
    out.push_back(std::move(s));
  }
  for (std::size_t i = 0; i < spec.trap_pairs; ++i) {
    out.push_back(trap_scenario(rng, spec, spec.count + i));
  }
  return out;
}

std::vector<Scenario> probe_scenarios(const ProbeSpec& probe, std::uint64_t seed,
                                      bool strict_paper_loop, unsigned lambda) {
  // The geometry stream is the same for every lambda; label prefixes come
  // from a second stream so that changing lambda does not shift geometry.
  SweepRng geometry(seed ^ 0x9e3779b97f4a7c15ULL);
  SweepRng labels(seed + lambda);
  std::vector<Scenario> out;
  const std::uint64_t L = std::uint64_t{1} << lambda;
  for (std::size_t i = 0; i < probe.count; ++i) {
    Scenario s;
    s.model = SensingModel::Binary;
    s.rho = probe.rho;
    s.label_space = L;
    s.strict_paper_loop = strict_paper_loop;
    const std::uint64_t m = labels.below(L / 2);
    const bool one_is_a = geometry.coin();
    s.label_a = one_is_a ? 2 * m + 1 : 2 * m;
    s.label_b = one_is_a ? 2 * m : 2 * m + 1;
    s.pos_a = Point{geometry.dyadic(-64, 64), geometry.dyadic(-64, 64)};
    const auto [dx, dy] = draw_offset(geometry, probe.d_min, probe.d_max, probe.rho, std::nullopt);
    s.pos_b = add(s.pos_a, dx, dy);
    if (i % 2 == 1) {
      const Scalar later = geometry.dyadic(pow2(-kPositionDenominatorBits), probe.rho);
      (geometry.coin() ? s.start_a : s.start_b) = later;
    }
    out.push_back(std::move(s));
  }
  return out;
}

json run_summary(const Scenario& s) {
  RunOptions options;
  options.record_trace = false;
  const RunResult run = run_scenario(s, options);
  return report_to_json(s, run.report);
}

namespace {

struct RatioStats {
  std::size_t runs = 0;
  std::size_t met = 0;
  std::optional<Scalar> max_ratio;
  Scalar sum_ratio = 0;
  std::size_t ratios = 0;

  void add(const std::optional<Scalar>& ratio, bool did_meet) {
    ++runs;
    met += did_meet ? 1 : 0;
    if (!ratio) return;
    if (!max_ratio || *ratio > *max_ratio) max_ratio = *ratio;
    sum_ratio += *ratio;
    ++ratios;
  }
  json to_json() const {
    json j = {{"runs", runs}, {"met", met}};
    j["max_ratio"] = max_ratio ? json(to_decimal(*max_ratio, 6)) : json(nullptr);
    j["mean_ratio"] = ratios ? json(to_decimal(sum_ratio / Scalar(static_cast<long>(ratios)), 6))
                             : json(nullptr);
    return j;
  }
};

}  // namespace

SweepOutcome run_sweep(const SweepSpec& spec, const std::optional<std::string>& out_dir) {
  const std::vector<Scenario> scenarios = generate_scenarios(spec);
  std::ofstream runs_out;
  if (out_dir) {
    std::error_code ec;
    std::filesystem::create_directories(*out_dir, ec);
    if (ec) throw std::runtime_error(*out_dir + ": cannot create directory: " + ec.message());
    runs_out.open(std::filesystem::path(*out_dir) / "runs.jsonl");
    if (!runs_out) throw std::runtime_error(*out_dir + "/runs.jsonl: cannot open for writing");
  }

  SweepOutcome outcome;
  json violations = json::array();
  RatioStats overall;
  RatioStats simultaneous;
  RatioStats staggered;
  RatioStats worst_pairs;
  RatioStats traps;
  std::map<std::pair<Scalar, std::uint64_t>, RatioStats> cells;
  std::size_t out_of_contract = 0;
  std::size_t out_of_contract_halted = 0;
  std::size_t leading_ok = 0;
  std::size_t leading_checked = 0;

  for (std::size_t i = 0; i < scenarios.size(); ++i) {
    const Scenario& s = scenarios[i];
    json summary;
    BoundCheck check;
    bool met = false;
    try {
      RunOptions options;
      options.record_trace = false;
      const RunResult run = run_scenario(s, options);
      summary = report_to_json(s, run.report);
      check = check_bounds(s, run.report);
      met = run.report.met();
      if (s.model == SensingModel::Binary && run.report.agents[0].lose_contact_finished) {
        int finished = 0;
        int leading = 0;
        for (const AgentSummary& a : run.report.agents) {
          finished += a.lose_contact_finished.value_or(false) ? 1 : 0;
          leading += a.leading.value_or(false) ? 1 : 0;
        }
        if (finished > 0) {
          ++leading_checked;
          leading_ok += leading == 1 ? 1 : 0;
        }
      }
    } catch (const ProtocolViolation& e) {
      summary = {{"error", e.what()}};
      check.violation = true;
      check.reason = std::string("protocol violation: ") + e.what();
    }
    if (check.violation) {
      violations.push_back({{"index", i}, {"reason", check.reason}, {"scenario", scenario_to_json(s)}});
    }
    if (runs_out.is_open()) {
      runs_out << json{{"index", i}, {"scenario", scenario_to_json(s)}, {"summary", summary}}.dump()
               << '\n';
    }

    const bool is_trap = i >= spec.count;
    if (s.model == SensingModel::Binary && !check.in_contract) {
      ++out_of_contract;
      out_of_contract_halted += summary.value("outcome", "") == "both_halted" ? 1 : 0;
      continue;
    }
    overall.add(check.ratio, met);
    (s.simultaneous() ? simultaneous : staggered).add(check.ratio, met);
    if (is_trap) traps.add(check.ratio, met);
    const LabelSpace space = s.space();
    if (!is_trap && first_differing_index(transform(s.label_a, space), transform(s.label_b, space)) ==
                        space.lambda()) {
      worst_pairs.add(check.ratio, met);
    }
    if (s.model == SensingModel::Binary) cells[{*s.rho, s.label_space}].add(check.ratio, met);
  }

  json report = {{"schema", kBoundReportSchema},
                 {"generator", kGeneratorName},
                 {"seed", spec.seed},
                 {"model", to_string(spec.model)},
                 {"scenarios", scenarios.size()},
                 {"strict_paper_loop", spec.strict_paper_loop}};
  report["overall"] = overall.to_json();
  report["worst_pairs"] = worst_pairs.to_json();

  if (spec.model == SensingModel::Monotone) {
    report["bound"] = "time from later start <= x+y+5 (simultaneous) or x+y+8 (staggered)";
    report["ratio"] = "time / (x+y)";
    report["simultaneous"] = simultaneous.to_json();
    report["staggered"] = staggered.to_json();
    if (spec.trap_pairs > 0) report["trap_pairs"] = traps.to_json();
  } else {
    report["ratio"] = "time / (rho*lambda)";
    json cell_list = json::array();
    for (const auto& [key, stats] : cells) {
      json c = stats.to_json();
      c["rho"] = to_string(key.first);
      c["L"] = key.second;
      c["lambda"] = LabelSpace(key.second).lambda();
      cell_list.push_back(c);
    }
    report["cells"] = cell_list;
    if (!cells.empty()) {
      // Drift guard: the (largest rho, largest L) cell against the smallest.
      const RatioStats& small = cells.begin()->second;
      const RatioStats& large = cells.rbegin()->second;
      json drift = {{"smallest_cell_max_ratio", small.max_ratio ? json(to_decimal(*small.max_ratio, 6)) : json(nullptr)},
                    {"largest_cell_max_ratio", large.max_ratio ? json(to_decimal(*large.max_ratio, 6)) : json(nullptr)},
                    {"limit_factor", 4}};
      bool drift_ok = true;
      if (small.max_ratio && large.max_ratio) {
        drift_ok = *large.max_ratio <= 4 * *small.max_ratio;
        drift["factor"] = to_decimal(*large.max_ratio / *small.max_ratio, 6);
      }
      drift["ok"] = drift_ok;
      report["drift"] = drift;
      if (!drift_ok) violations.push_back({{"reason", "ratio drift across the rho x L grid exceeds 4x"}});
    }
    report["leading"] = {{"checked", leading_checked}, {"exactly_one", leading_ok}};
    report["out_of_contract"] = {{"runs", out_of_contract}, {"both_halted", out_of_contract_halted}};
  }

  if (spec.probe) {
    json points = json::array();
    std::optional<Scalar> previous;
    bool nondecreasing = true;
    for (unsigned lambda : spec.probe->lambdas) {
      std::optional<Scalar> worst;
      std::size_t met_count = 0;
      const auto probe_runs = probe_scenarios(*spec.probe, spec.seed, spec.strict_paper_loop, lambda);
      for (const Scenario& s : probe_runs) {
        RunOptions options;
        options.record_trace = false;
        try {
          const RunResult run = run_scenario(s, options);
          if (!run.report.met()) continue;
          ++met_count;
          const Scalar t = run.report.time_hi();
          if (!worst || t > *worst) worst = t;
        } catch (const ProtocolViolation&) {
        }
      }
      const Scalar reference = spec.probe->rho * lambda;
      json p = {{"lambda", lambda}, {"runs", probe_runs.size()}, {"met", met_count},
                {"rho_lambda", to_string(reference)}};
      p["max_time"] = worst ? json(to_decimal(*worst, 6)) : json(nullptr);
      p["max_time_over_rho_lambda"] = worst ? json(to_decimal(*worst / reference, 6)) : json(nullptr);
      if (met_count != probe_runs.size()) {
        nondecreasing = false;
        violations.push_back({{"reason", "probe run without meeting at lambda " + std::to_string(lambda)}});
      }
      if (worst && previous && *worst < *previous) nondecreasing = false;
      if (worst) previous = worst;
      points.push_back(p);
    }
    report["probe"] = {{"rho", to_string(spec.probe->rho)}, {"points", points},
                       {"nondecreasing", nondecreasing}};
    if (!nondecreasing) violations.push_back({{"reason", "probe worst-case time decreased with lambda"}});
  }

  report["violations"] = violations;
  outcome.ok = violations.empty();
  report["ok"] = outcome.ok;
  outcome.report = report;

  if (out_dir) {
    std::ofstream rep(std::filesystem::path(*out_dir) / "bound_report.json");
    if (!rep) throw std::runtime_error(*out_dir + "/bound_report.json: cannot open for writing");
    rep << report.dump(2) << '\n';
  }
  return outcome;
}

namespace {

// Where agent k is at t on the executor's run, extending past the run end
// along the action it was executing. Empty when t is past the end of that
// action, since the next action was never chosen.
std::optional<Point> executor_position(const RunResult& run, int k, const Scalar& t) {
  if (t <= run.report.end_time) return trajectory_position(run.trajectories[k], t);
  if (const auto& seg = run.interrupted[k]) {
    if (t <= seg->end_time) return seg->position_at(t);
    return std::nullopt;
  }
  if (run.report.agents[k].halted && !run.trajectories[k].empty()) {
    return run.trajectories[k].back().end_point();
  }
  return std::nullopt;
}

}  // namespace

VerifyCase verify_scenario(const Scenario& s, const Scalar& dt) {
  RunOptions options;
  options.record_trace = false;
  const RunResult run = run_scenario(s, options);
  OracleConfig cfg;
  cfg.scenario = s;
  cfg.dt = dt;
  const OracleResult oracle = oracle_run(cfg);

  VerifyCase c;
  const MeetingReport& rep = run.report;
  if (!rep.met()) {
    if (oracle.met) {
      c.status = VerifyCase::Status::Disagreed;
      c.note = "oracle met at " + to_decimal(*oracle.time) + " but the executor reported " +
               std::string(to_string(rep.outcome));
    }
    return c;
  }

  const TouchTime& touch = *rep.touch;
  if (oracle.met) {
    const Scalar& og = *oracle.time;
    if (!touch.at_or_before(og)) {
      c.status = VerifyCase::Status::Disagreed;
      c.note = "oracle met at " + to_decimal(og) + " before the executor touch " +
               to_decimal(touch.midpoint());
      return c;
    }
    if (!touch.at_or_before(og - dt)) {
      c.gap = og - (touch.exact ? *touch.exact : touch.midpoint());
      return c;
    }
  }

  // The oracle met late or not at all. That is legitimate only if the
  // distance at the first grid instant s1 >= t* is above 1 again: the touch
  // grazes or crosses in less than dt and sampling cannot see it.
  const Scalar origin = rep.later_start;
  mpz_class k = ceil((touch.lo - origin) / dt);
  Scalar s1 = origin + Scalar(k) * dt;
  if (!touch.at_or_before(s1)) s1 += dt;
  if (s1 > oracle.budget_end) {
    c.status = VerifyCase::Status::Excluded;
    c.note = "first sample after the touch lies beyond the budget";
    return c;
  }
  const auto pa = executor_position(run, 0, s1);
  const auto pb = executor_position(run, 1, s1);
  if (!pa || !pb) {
    c.status = VerifyCase::Status::Excluded;
    c.note = "first sample after the touch lies past the interrupted actions";
    return c;
  }
  if (squared_distance(*pa, *pb) > 1) {
    c.status = VerifyCase::Status::Excluded;
    c.note = "tangential or sub-dt touch at " + to_decimal(touch.midpoint());
    return c;
  }
  c.status = VerifyCase::Status::Disagreed;
  c.note = "executor touch at " + to_decimal(touch.midpoint()) + " but oracle " +
           (oracle.met ? "met only at " + to_decimal(*oracle.time) : std::string("never met"));
  return c;
}

VerifyOutcome run_verify(const SweepSpec& spec, const Scalar& dt) {
  if (dt <= 0) throw InputError("dt: must be positive");
  const std::vector<Scenario> scenarios = generate_scenarios(spec);
  VerifyOutcome outcome;
  json excluded = json::array();
  json disagreements = json::array();
  std::size_t agreed = 0;
  std::size_t met_both = 0;
  std::optional<Scalar> max_gap;
  for (std::size_t i = 0; i < scenarios.size(); ++i) {
    VerifyCase c;
    try {
      c = verify_scenario(scenarios[i], dt);
    } catch (const ProtocolViolation& e) {
      c.status = VerifyCase::Status::Disagreed;
      c.note = std::string("protocol violation: ") + e.what();
    }
    switch (c.status) {
      case VerifyCase::Status::Agreed:
        ++agreed;
        if (c.gap) {
          ++met_both;
          if (!max_gap || *c.gap > *max_gap) max_gap = *c.gap;
        }
        break;
      case VerifyCase::Status::Excluded:
        excluded.push_back({{"index", i}, {"note", c.note}});
        break;
      case VerifyCase::Status::Disagreed:
        disagreements.push_back({{"index", i}, {"note", c.note}, {"scenario", scenario_to_json(scenarios[i])}});
        break;
    }
  }
  outcome.agreed = disagreements.empty();
  json report = {{"schema", kVerifyReportSchema},
                 {"generator", kGeneratorName},
                 {"seed", spec.seed},
                 {"model", to_string(spec.model)},
                 {"dt", to_string(dt)},
                 {"scenarios", scenarios.size()},
                 {"compared", scenarios.size() - excluded.size()},
                 {"agreed", agreed},
                 {"met_both", met_both},
                 {"excluded", excluded},
                 {"disagreements", disagreements},
                 {"ok", outcome.agreed}};
  report["max_gap"] = max_gap ? json(to_string(*max_gap)) : json(nullptr);
  report["max_gap_decimal"] = max_gap ? json(to_decimal(*max_gap)) : json(nullptr);
  report["max_gap_over_dt"] = max_gap ? json(to_decimal(*max_gap / dt, 6)) : json(nullptr);
  outcome.report = report;
  return outcome;
}

}  // namespace rdv
