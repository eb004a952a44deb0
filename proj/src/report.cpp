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
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <sstream>

#include "isolab/error.hpp"
#include "isolab/scenario.hpp"

#ifndef ISOLAB_VERSION
#define ISOLAB_VERSION "0.0.0"
#endif

namespace isolab {

const char* version() noexcept { return ISOLAB_VERSION; }

const char* to_string(Status s) noexcept {
  switch (s) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    case Status::refused: return "refused";
    case Status::not_applicable: return "not-applicable";
  }
  return "unknown";
}

int exit_code(const Report& r) noexcept {
  switch (r.status) {
    case Status::pass:
    case Status::not_applicable: return 0;
    case Status::fail: return 1;
    case Status::refused: return 2;
  }
  return 2;
}

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "+inf" : "-inf";
  if (x == 0.0) return std::signbit(x) ? "-0" : "0";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& option,
                           const std::optional<std::uint64_t>& scenario) {
  if (option) return *option;
  if (scenario) return *scenario;
  if (const char* env = std::getenv("ISOLAB_SEED")) {
    std::uint64_t v = 0;
    const char* end = env + std::char_traits<char>::length(env);
    const auto res = std::from_chars(env, end, v);
    if (res.ec == std::errc() && res.ptr == end && res.ptr != env) return v;
    fail(ErrorCode::invalid_argument, std::string("ISOLAB_SEED is not an unsigned integer: ") + env);
  }
  return kDefaultSeed;
}

namespace {

void emit(std::ostringstream& os, const nlohmann::json& j, int indent) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  const std::string inner(static_cast<std::size_t>(indent + 1) * 2, ' ');
  switch (j.type()) {
    case nlohmann::json::value_t::object: {
      if (j.empty()) {
        os << "{}";
        return;
      }
      os << "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) os << ",\n";
        first = false;
        os << inner << nlohmann::json(it.key()).dump() << ": ";
        emit(os, it.value(), indent + 1);
      }
      os << "\n" << pad << "}";
      return;
    }
    case nlohmann::json::value_t::array: {
      if (j.empty()) {
        os << "[]";
        return;
      }
      bool scalar = true;
      for (const auto& e : j)
        if (e.is_structured()) scalar = false;
      if (scalar) {
        os << "[";
        for (std::size_t i = 0; i < j.size(); ++i) {
          if (i) os << ", ";
          emit(os, j[i], indent + 1);
        }
        os << "]";
        return;
      }
      os << "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) os << ",\n";
        os << inner;
        emit(os, j[i], indent + 1);
      }
      os << "\n" << pad << "]";
      return;
    }
    case nlohmann::json::value_t::number_float: {
      const double x = j.get<double>();
      if (std::isfinite(x)) {
        os << format_number(x);
      } else {
        os << '"' << format_number(x) << '"';
      }
      return;
    }
    default:
      os << j.dump();
  }
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string report_json(const Report& r) {
  nlohmann::json j;
  j["schema"] = kReportSchema;
  j["scenario"] = r.scenario;
  j["task"] = r.task;
  j["status"] = to_string(r.status);
  if (!r.message.empty()) j["message"] = r.message;
  j["checks"] = nlohmann::json::array();
  for (const Check& c : r.checks)
    j["checks"].push_back({{"name", c.name}, {"value", c.value}, {"bound", c.bound},
                           {"relation", c.relation}, {"pass", c.pass}});
  j["payload"] = r.payload;
  j["provenance"] = r.provenance;
  std::ostringstream os;
  emit(os, j, 0);
  os << "\n";
  return os.str();
}

std::string report_csv(const Report& r) {
  std::ostringstream os;
  os << "scenario,task,status,check,value,bound,relation,pass\n";
  const std::string head = csv_field(r.scenario) + "," + csv_field(r.task) + "," + to_string(r.status);
  if (r.checks.empty()) os << head << ",,,,,\n";
  for (const Check& c : r.checks)
    os << head << "," << csv_field(c.name) << "," << format_number(c.value) << ","
       << format_number(c.bound) << "," << csv_field(c.relation) << "," << (c.pass ? "true" : "false")
       << "\n";
  return os.str();
}

std::string trace_csv(const Report& r) {
  std::ostringstream os;
  for (std::size_t i = 0; i < r.trace_header.size(); ++i) os << (i ? "," : "") << r.trace_header[i];
  os << "\n";
  for (const auto& row : r.trace) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << format_number(row[i]);
    os << "\n";
  }
  return os.str();
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream os;
  os << "p,gap_upper,witness_norm,runtime,status\n";
  for (const auto& r : rows) {
    os << format_number(r.p) << "," << (r.gap_upper ? format_number(*r.gap_upper) : "") << ","
       << (r.witness_norm ? format_number(*r.witness_norm) : "") << "," << format_number(r.runtime)
       << "," << to_string(r.status) << "\n";
  }
  return os.str();
}

}  // namespace isolab
