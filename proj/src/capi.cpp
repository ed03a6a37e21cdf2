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

#include "rendezvous/rendezvous.h"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <memory>
#include <new>
#include <string>

#include "rendezvous/bounds.hpp"
#include "rendezvous/errors.hpp"
#include "rendezvous/harness.hpp"
#include "rendezvous/io.hpp"
#include "rendezvous/simulator.hpp"

struct rdv_scenario {
  rdv::Scenario value;
};

struct rdv_run {
  rdv::Scenario scenario;
  rdv::RunResult result;
};

namespace {

thread_local std::string last_error;

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

rdv_status fail(rdv_status code, const std::string& what) {
  last_error = what;
  return code;
}

// Runs `body`, translating exceptions into status codes.
template <typename F>
rdv_status guarded(F&& body) {
  try {
    last_error.clear();
    body();
    return RDV_OK;
  } catch (const rdv::InputError& e) {
    return fail(RDV_ERR_INPUT, e.what());
  } catch (const rdv::ProtocolViolation& e) {
    return fail(RDV_ERR_PROTOCOL, e.what());
  } catch (const IoError& e) {
    return fail(RDV_ERR_IO, e.what());
  } catch (const std::bad_alloc&) {
    return fail(RDV_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(RDV_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(RDV_ERR_INTERNAL, "unknown error");
  }
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

std::ofstream open_output(const char* path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError(std::string(path) + ": cannot open for writing");
  return out;
}

}  // namespace

extern "C" {

const char* rdv_version(void) { return "1.0.0"; }

const char* rdv_last_error(void) { return last_error.c_str(); }

void rdv_string_free(char* s) { std::free(s); }

rdv_status rdv_scenario_parse(const char* json_text, const char* source_name, rdv_scenario** out) {
  if (json_text == nullptr || out == nullptr) return fail(RDV_ERR_NULL, "null argument");
  *out = nullptr;
  return guarded([&] {
    const rdv::json doc =
        rdv::parse_json_text(json_text, source_name != nullptr ? source_name : "<scenario>");
    *out = new rdv_scenario{rdv::scenario_from_json(doc)};
  });
}

rdv_status rdv_scenario_load(const char* path, rdv_scenario** out) {
  if (path == nullptr || out == nullptr) return fail(RDV_ERR_NULL, "null argument");
  *out = nullptr;
  return guarded([&] {
    const rdv::json doc = rdv::load_json_file(path);
    try {
      *out = new rdv_scenario{rdv::scenario_from_json(doc)};
    } catch (const rdv::InputError& e) {
      throw rdv::InputError(std::string(path) + ": " + e.what());
    }
  });
}

rdv_status rdv_scenario_to_json(const rdv_scenario* s, char** out) {
  if (s == nullptr || out == nullptr) return fail(RDV_ERR_NULL, "null argument");
  return guarded([&] { *out = copy_string(rdv::scenario_to_json(s->value).dump()); });
}

rdv_status rdv_scenario_set_strict_paper_loop(rdv_scenario* s, int strict) {
  if (s == nullptr) return fail(RDV_ERR_NULL, "null argument");
  s->value.strict_paper_loop = strict != 0;
  return RDV_OK;
}

void rdv_scenario_free(rdv_scenario* s) { delete s; }

rdv_status rdv_run_scenario(const rdv_scenario* s, rdv_run** out) {
  if (s == nullptr || out == nullptr) return fail(RDV_ERR_NULL, "null argument");
  *out = nullptr;
  return guarded([&] {
    auto run = std::make_unique<rdv_run>();
    run->scenario = s->value;
    run->result = rdv::run_scenario(s->value);
    *out = run.release();
  });
}

rdv_status rdv_run_met(const rdv_run* run, int* met) {
  if (run == nullptr || met == nullptr) return fail(RDV_ERR_NULL, "null argument");
  *met = run->result.report.met() ? 1 : 0;
  return RDV_OK;
}

rdv_status rdv_run_violation(const rdv_run* run, int* violation) {
  if (run == nullptr || violation == nullptr) return fail(RDV_ERR_NULL, "null argument");
  return guarded([&] {
    *violation = rdv::check_bounds(run->scenario, run->result.report).violation ? 1 : 0;
  });
}

rdv_status rdv_run_report_json(const rdv_run* run, char** out) {
  if (run == nullptr || out == nullptr) return fail(RDV_ERR_NULL, "null argument");
  return guarded([&] {
    *out = copy_string(rdv::report_to_json(run->scenario, run->result.report).dump(2));
  });
}

rdv_status rdv_run_write_trace(const rdv_run* run, const char* path) {
  if (run == nullptr || path == nullptr) return fail(RDV_ERR_NULL, "null argument");
  return guarded([&] {
    std::ofstream out = open_output(path);
    rdv::write_trace_jsonl(out, run->result.trace);
    if (!out.flush()) throw IoError(std::string(path) + ": write failed");
  });
}

rdv_status rdv_run_write_csv(const rdv_run* run, const char* path, const char* step) {
  if (run == nullptr || path == nullptr) return fail(RDV_ERR_NULL, "null argument");
  return guarded([&] {
    const rdv::MeetingReport& rep = run->result.report;
    rdv::Scalar dt = (rep.vertical_separation + rep.horizontal_separation) / 1024;
    if (step != nullptr) {
      try {
        dt = rdv::parse_scalar(step);
      } catch (const rdv::InputError& e) {
        throw rdv::InputError(std::string("csv step: ") + e.what());
      }
    }
    if (dt <= 0) {
      if (step != nullptr) throw rdv::InputError("csv step: must be positive");
      dt = rdv::pow2(-10);
    }
    std::ofstream out = open_output(path);
    rdv::write_positions_csv(out, run->result,
                             rdv::min(run->scenario.start_a, run->scenario.start_b), dt);
    if (!out.flush()) throw IoError(std::string(path) + ": write failed");
  });
}

void rdv_run_free(rdv_run* run) { delete run; }

rdv_status rdv_sweep(const char* spec_json, const char* source_name, const char* out_dir,
                     int strict, char** report, int* verdict) {
  if (spec_json == nullptr || report == nullptr || verdict == nullptr) {
    return fail(RDV_ERR_NULL, "null argument");
  }
  return guarded([&] {
    const char* name = source_name != nullptr ? source_name : "<spec>";
    rdv::SweepSpec spec = rdv::sweep_spec_from_json(rdv::parse_json_text(spec_json, name));
    if (strict != 0) spec.strict_paper_loop = true;
    std::optional<std::string> dir;
    if (out_dir != nullptr) dir = out_dir;
    rdv::SweepOutcome outcome;
    try {
      outcome = rdv::run_sweep(spec, dir);
    } catch (const std::runtime_error& e) {
      throw IoError(e.what());
    }
    *verdict = outcome.ok ? 1 : 0;
    *report = copy_string(outcome.report.dump(2));
  });
}

rdv_status rdv_verify(const char* spec_json, const char* source_name, const char* dt, int strict,
                      char** report, int* verdict) {
  if (spec_json == nullptr || report == nullptr || verdict == nullptr) {
    return fail(RDV_ERR_NULL, "null argument");
  }
  return guarded([&] {
    const char* name = source_name != nullptr ? source_name : "<spec>";
    rdv::SweepSpec spec = rdv::sweep_spec_from_json(rdv::parse_json_text(spec_json, name));
    if (strict != 0) spec.strict_paper_loop = true;
    rdv::Scalar step = spec.dt.value_or(rdv::pow2(-10));
    if (dt != nullptr) {
      try {
        step = rdv::parse_scalar(dt);
      } catch (const rdv::InputError& e) {
        throw rdv::InputError(std::string("dt: ") + e.what());
      }
    }
    const rdv::VerifyOutcome outcome = rdv::run_verify(spec, step);
    *verdict = outcome.agreed ? 1 : 0;
    *report = copy_string(outcome.report.dump(2));
  });
}

}  // extern "C"
