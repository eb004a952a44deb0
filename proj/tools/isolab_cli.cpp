// Copyright 2026 The isolab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "isolab/isolab.h"

namespace {

const char* const kTasks[] = {"decompose", "gap",    "fixpoint", "cobound", "induce",
                              "split",     "superrigid", "mazur", "schoenberg", "modulus",
                              "klee",      "displacement", "mautner"};

struct Flags {
  std::optional<std::uint64_t> seed;
  std::optional<double> tol;
  std::optional<std::size_t> budget;
  std::string out;
  std::string trace;
  std::string format = "json";
};

isolab_run_options options(const Flags& f, const std::string& task) {
  isolab_run_options o{};
  if (f.seed) {
    o.has_seed = 1;
    o.seed = *f.seed;
  }
  if (f.tol) {
    o.has_tol = 1;
    o.tol = *f.tol;
  }
  if (f.budget) {
    o.has_budget = 1;
    o.budget = *f.budget;
  }
  o.task = task.empty() ? nullptr : task.c_str();
  return o;
}

bool emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return static_cast<bool>(std::cout);
  }
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) std::cerr << "isolab: cannot write '" << path << "'\n";
  return static_cast<bool>(out);
}

std::optional<std::string> slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run(const std::string& file, const std::string& task, const Flags& f) {
  const isolab_run_options o = options(f, task);
  isolab_report* r = nullptr;
  if (isolab_run_file(file.c_str(), &o, &r) != ISOLAB_OK) {
    std::cerr << "isolab: " << isolab_last_error() << "\n";
    return 2;
  }
  int code = isolab_report_exit_code(r);
  const std::string msg = isolab_report_message(r);
  if (!msg.empty()) std::cerr << "isolab: " << isolab_report_status(r) << ": " << msg << "\n";
  if (!emit(f.out, f.format == "csv" ? isolab_report_csv(r) : isolab_report_json(r))) code = 2;
  if (!f.trace.empty() && !emit(f.trace, isolab_report_trace_csv(r))) code = 2;
  isolab_report_free(r);
  return code;
}

int sweep(const std::string& file, const std::vector<double>& ps, const Flags& f) {
  const auto text = slurp(file);
  if (!text) {
    std::cerr << "isolab: cannot open scenario file '" << file << "'\n";
    return 2;
  }
  const isolab_run_options o = options(f, "");
  isolab_sweep* s = nullptr;
  if (isolab_sweep_run(text->c_str(), ps.data(), ps.size(), &o, &s) != ISOLAB_OK) {
    std::cerr << "isolab: " << isolab_last_error() << "\n";
    return 2;
  }
  std::string body;
  if (f.format == "csv") {
    body = isolab_sweep_csv(s);
  } else {
    body = "[";
    for (std::size_t i = 0; i < isolab_sweep_size(s); ++i) {
      std::string one = isolab_report_json(isolab_sweep_report(s, i));
      while (!one.empty() && one.back() == '\n') one.pop_back();
      body += (i ? ",\n" : "\n") + one;
    }
    body += isolab_sweep_size(s) ? "\n]\n" : "]\n";
  }
  int code = 0;
  for (std::size_t i = 0; i < isolab_sweep_size(s); ++i)
    code = std::max(code, isolab_report_exit_code(isolab_sweep_report(s, i)));
  if (!emit(f.out, body)) code = 2;
  isolab_sweep_free(s);
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Isometric actions on weighted lp spaces: scenario runner"};
  app.set_version_flag("--version", std::string(isolab_version()));
  app.require_subcommand(1);
  Flags f;
  auto common = [&f](CLI::App* sub) {
    sub->add_option("--seed", f.seed, "RNG seed (overrides scenario and ISOLAB_SEED)");
    sub->add_option("--tol", f.tol, "override the task tolerance");
    sub->add_option("--budget", f.budget, "override the task search budget");
    sub->add_option("--out", f.out, "output file (default stdout)");
    sub->add_option("--format", f.format, "report format")->check(CLI::IsMember({"json", "csv"}));
  };

  std::string file;
  auto* run_cmd = app.add_subcommand("run", "run the task named in the scenario");
  run_cmd->add_option("file", file, "scenario file")->required();
  run_cmd->add_option("--trace", f.trace, "write the iteration trace as CSV");
  common(run_cmd);

  std::vector<double> ps;
  auto* sweep_cmd = app.add_subcommand("sweep", "run the scenario once per exponent p");
  sweep_cmd->add_option("file", file, "scenario file")->required();
  sweep_cmd->add_option("--p", ps, "exponents, comma separated")->delimiter(',')->required();
  common(sweep_cmd);

  std::string task;
  for (const char* t : kTasks) {
    auto* sub = app.add_subcommand(t, std::string("run the scenario as a '") + t + "' task");
    sub->add_option("file", file, "scenario file")->required();
    sub->add_option("--trace", f.trace, "write the iteration trace as CSV");
    common(sub);
    sub->callback([&task, t] { task = t; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  if (sweep_cmd->parsed()) return sweep(file, ps, f);
  return run(file, task, f);
}
