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

// rdv: command-line front end over the C API.
//
//   rdv run --scenario <file> [--trace <path>] [--csv <path>] [--csv-step <q>]
//           [--report <path>]
//   rdv sweep --spec <file> --out <dir>
//   rdv verify --spec <file> [--dt <rational>] [--report <path>]
//
// Exit status: 0 success, 1 bound violation, 2 oracle disagreement,
// 3 input error. I/O and internal failures also exit with 3.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "rendezvous/rendezvous.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitDisagreement = 2;
constexpr int kExitInput = 3;

int report_failure(rdv_status status, const std::string& context) {
  std::cerr << "rdv: " << context << ": " << rdv_last_error() << '\n';
  return status == RDV_ERR_PROTOCOL ? kExitViolation : kExitInput;
}

bool read_file(const std::string& path, std::string& text) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::ostringstream buffer;
  buffer << in.rdbuf();
  text = buffer.str();
  return true;
}

bool write_text(const std::string& path, const char* text) {
  std::ofstream out(path, std::ios::binary);
  out << text << '\n';
  return static_cast<bool>(out.flush());
}

// Prints to stdout, or writes to `path` when it is set.
int emit(const std::string& path, char* text) {
  int code = kExitOk;
  if (path.empty()) {
    std::cout << text << '\n';
  } else if (!write_text(path, text)) {
    std::cerr << "rdv: " << path << ": cannot write\n";
    code = kExitInput;
  }
  rdv_string_free(text);
  return code;
}

struct RunArgs {
  std::string scenario;
  std::string trace;
  std::string csv;
  std::string csv_step;
  std::string report;
};

int cmd_run(const RunArgs& args, bool strict) {
  rdv_scenario* scenario = nullptr;
  rdv_status st = rdv_scenario_load(args.scenario.c_str(), &scenario);
  if (st != RDV_OK) return report_failure(st, "scenario");
  if (strict) rdv_scenario_set_strict_paper_loop(scenario, 1);

  rdv_run* run = nullptr;
  st = rdv_run_scenario(scenario, &run);
  rdv_scenario_free(scenario);
  if (st != RDV_OK) return report_failure(st, "run");

  int code = kExitOk;
  if (!args.trace.empty() && (st = rdv_run_write_trace(run, args.trace.c_str())) != RDV_OK) {
    code = report_failure(st, "trace");
  }
  if (code == kExitOk && !args.csv.empty()) {
    const char* step = args.csv_step.empty() ? nullptr : args.csv_step.c_str();
    if ((st = rdv_run_write_csv(run, args.csv.c_str(), step)) != RDV_OK) code = report_failure(st, "csv");
  }
  char* report = nullptr;
  int violation = 0;
  if (code == kExitOk) {
    if ((st = rdv_run_report_json(run, &report)) != RDV_OK) code = report_failure(st, "report");
  }
  if (code == kExitOk) {
    rdv_run_violation(run, &violation);
    code = emit(args.report, report);
    if (code == kExitOk && violation != 0) {
      std::cerr << "rdv: bound violated\n";
      code = kExitViolation;
    }
  }
  rdv_run_free(run);
  return code;
}

int cmd_sweep(const std::string& spec_path, const std::string& out_dir, bool strict) {
  std::string text;
  if (!read_file(spec_path, text)) {
    std::cerr << "rdv: " << spec_path << ": cannot open file\n";
    return kExitInput;
  }
  char* report = nullptr;
  int verdict = 0;
  const rdv_status st =
      rdv_sweep(text.c_str(), spec_path.c_str(), out_dir.c_str(), strict ? 1 : 0, &report, &verdict);
  if (st != RDV_OK) return report_failure(st, "sweep");
  std::cout << report << '\n';
  rdv_string_free(report);
  if (verdict == 0) {
    std::cerr << "rdv: bound violations found (see " << out_dir << "/bound_report.json)\n";
    return kExitViolation;
  }
  return kExitOk;
}

int cmd_verify(const std::string& spec_path, const std::string& dt, const std::string& report_path,
               bool strict) {
  std::string text;
  if (!read_file(spec_path, text)) {
    std::cerr << "rdv: " << spec_path << ": cannot open file\n";
    return kExitInput;
  }
  char* report = nullptr;
  int verdict = 0;
  const rdv_status st = rdv_verify(text.c_str(), spec_path.c_str(), dt.empty() ? nullptr : dt.c_str(),
                                   strict ? 1 : 0, &report, &verdict);
  if (st != RDV_OK) return report_failure(st, "verify");
  const int code = emit(report_path, report);
  if (code != kExitOk) return code;
  if (verdict == 0) {
    std::cerr << "rdv: executor and oracle disagree (offending scenarios are in the report)\n";
    return kExitDisagreement;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Deterministic rendezvous of two sniffing agents in the plane"};
  app.set_version_flag("--version", std::string(rdv_version()));
  app.require_subcommand(1);
  bool strict = false;
  app.add_flag("--strict-paper-loop", strict,
               "Process label bits 1..lambda-1 only in the binary LoseContact loop");

  RunArgs run_args;
  CLI::App* run = app.add_subcommand("run", "Simulate one scenario and print its report");
  run->add_option("--scenario", run_args.scenario, "Scenario JSON file")->required();
  run->add_option("--trace", run_args.trace, "Write the event trace (JSONL) here");
  run->add_option("--csv", run_args.csv, "Write sampled positions (CSV) here");
  run->add_option("--csv-step", run_args.csv_step, "CSV sampling step (default (x+y)/1024)");
  run->add_option("--report", run_args.report, "Write the report here instead of stdout");
  run->add_flag("--strict-paper-loop", strict, "Same as the global flag");

  std::string spec_path;
  std::string out_dir;
  CLI::App* sweep = app.add_subcommand("sweep", "Run a seeded sweep and check the time bounds");
  sweep->add_option("--spec", spec_path, "Sweep spec JSON file")->required();
  sweep->add_option("--out", out_dir, "Output directory for bound_report.json and runs.jsonl")
      ->required();
  sweep->add_flag("--strict-paper-loop", strict, "Same as the global flag");

  std::string dt;
  std::string verify_report;
  CLI::App* verify = app.add_subcommand("verify", "Compare the executor with the sampling oracle");
  verify->add_option("--spec", spec_path, "Sweep spec JSON file")->required();
  verify->add_option("--dt", dt, "Oracle sampling step, e.g. 1/1024");
  verify->add_option("--report", verify_report, "Write the report here instead of stdout");
  verify->add_flag("--strict-paper-loop", strict, "Same as the global flag");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  if (run->parsed()) return cmd_run(run_args, strict);
  if (sweep->parsed()) return cmd_sweep(spec_path, out_dir, strict);
  return cmd_verify(spec_path, dt, verify_report, strict);
}
