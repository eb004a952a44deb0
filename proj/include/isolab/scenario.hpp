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
#ifndef ISOLAB_SCENARIO_HPP
#define ISOLAB_SCENARIO_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "isolab/representation.hpp"

namespace isolab {

inline constexpr const char* kScenarioSchema = "isolab/scenario@1";
inline constexpr const char* kReportSchema = "isolab/report@1";
inline constexpr std::uint64_t kDefaultSeed = 20260101;

const char* version() noexcept;

struct RunOptions {
  std::optional<std::uint64_t> seed;
  std::optional<double> tol;
  std::optional<std::size_t> budget;
  std::optional<std::string> task;  ///< replaces task.kind
  std::optional<double> p;          ///< replaces space.p
};

enum class Status { pass, fail, refused, not_applicable };
const char* to_string(Status s) noexcept;

struct Check {
  std::string name;
  double value = 0.0;
  double bound = 0.0;
  std::string relation;  ///< one of <=, <, >=, >, ==
  bool pass = false;
};

struct Report {
  std::string scenario;
  std::string task;
  Status status = Status::fail;
  std::string message;
  std::vector<Check> checks;
  nlohmann::json payload = nlohmann::json::object();
  nlohmann::json provenance = nlohmann::json::object();
  std::vector<std::string> trace_header;
  std::vector<std::vector<double>> trace;
};

/// Parses and runs one scenario. Invalid input and refusals come back as
/// reports with status `refused`; nothing is thrown for scenario problems.
Report run_scenario(const std::string& text, const RunOptions& options = {});
Report run_scenario_file(const std::string& path, const RunOptions& options = {});

/// 0 for pass / not-applicable, 1 for fail, 2 for refused.
/// The scenario's validated representation (over the task subgroup for
/// induce and superrigid), or nullopt when it has none. Throws Error.
std::optional<Representation> scenario_representation(const std::string& text,
                                                       const RunOptions& options = {});

int exit_code(const Report& r) noexcept;

std::string report_json(const Report& r);
/// Columns: scenario,task,status,check,value,bound,relation,pass
std::string report_csv(const Report& r);
std::string trace_csv(const Report& r);

struct SweepRow {
  double p = 0.0;
  std::optional<double> gap_upper;
  std::optional<double> witness_norm;
  double runtime = 0.0;  ///< seconds
  Status status = Status::fail;
  Report report;
};

std::vector<SweepRow> sweep(const std::string& text, const std::vector<double>& ps,
                            const RunOptions& options = {});
/// Columns: p,gap_upper,witness_norm,runtime,status
std::string sweep_csv(const std::vector<SweepRow>& rows);

/// Locale-independent shortest form with 17 significant digits; "+inf",
/// "-inf" and "nan" for non-finite values.
std::string format_number(double x);

/// Seed precedence: explicit option, scenario value, ISOLAB_SEED, default.
std::uint64_t resolve_seed(const std::optional<std::uint64_t>& option,
                           const std::optional<std::uint64_t>& scenario);

}  // namespace isolab

#endif  // ISOLAB_SCENARIO_HPP
