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
#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <map>

#include <json.hpp>

#include "isolab/scenario.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace isolab;
using support::code_of;

namespace {

const char* kSwap = R"({
  "schema": "isolab/scenario@1",
  "name": "mini",
  "space": {"dim": 2, "p": 3},
  "group": {"kind": "cyclic", "n": 2, "name": "s"},
  "representation": {"s": {"permutation": [1, 0]}},
  "task": {"kind": "decompose"}
})";

std::string corpus(const std::string& name) {
  return oracle::read_file(std::string(ISOLAB_SCENARIO_DIR) + "/" + name + ".json");
}

std::string replace(std::string s, const std::string& from, const std::string& to) {
  const auto at = s.find(from);
  REQUIRE(at != std::string::npos);
  return s.replace(at, from.size(), to);
}

}  // namespace

TEST_CASE("minimal decompose scenario") {
  const Report r = run_scenario(kSwap);
  CHECK(r.status == Status::pass);
  CHECK(r.scenario == "mini");
  CHECK(r.task == "decompose");
  CHECK(r.payload["dim_fixed"] == 1);
  CHECK(r.payload["dim_complement"] == 1);
  CHECK(exit_code(r) == 0);
  CHECK(r.provenance["p"] == 3.0);
  CHECK(r.provenance["seed"] == kDefaultSeed);
  const auto j = nlohmann::json::parse(report_json(r));
  CHECK(j["schema"] == kReportSchema);
  CHECK(j["status"] == "pass");
  CHECK(report_csv(r).rfind("scenario,task,status,check,value,bound,relation,pass\n", 0) == 0);
}

TEST_CASE("malformed input is refused with a location") {
  const Report w = run_scenario(replace(kSwap, R"("p": 3})", R"("p": 3, "weights": [1, -2]})"));
  CHECK(w.status == Status::refused);
  CHECK(w.message.find("$.space.weights[1]") != std::string::npos);
  CHECK(exit_code(w) == 2);

  const Report syntax = run_scenario("{\n  \"name\": \"x\",\n  \"space\": }\n");
  CHECK(syntax.status == Status::refused);
  CHECK(syntax.message.find("line 3, column 12") != std::string::npos);

  const Report unknown = run_scenario(replace(kSwap, R"("name": "mini",)", R"("name": "mini", "colour": 1,)"));
  CHECK(unknown.status == Status::refused);
  CHECK(unknown.message.find("$.colour: unknown field") != std::string::npos);

  const Report task = run_scenario(replace(kSwap, R"("kind": "decompose")", R"("kind": "juggle")"));
  CHECK(task.status == Status::refused);
  CHECK(task.message.find("$.task.kind") != std::string::npos);

  const Report schema = run_scenario(replace(kSwap, "isolab/scenario@1", "isolab/scenario@9"));
  CHECK(schema.status == Status::refused);

  const Report missing = run_scenario(replace(kSwap, R"("group": {"kind": "cyclic", "n": 2, "name": "s"},)", ""));
  CHECK(missing.status == Status::refused);

  const Report gens = run_scenario(replace(kSwap, R"({"s": {"permutation": [1, 0]}})", R"({"t": "identity"})"));
  CHECK(gens.status == Status::refused);

  const Report file = run_scenario_file("/nonexistent/scenario.json");
  CHECK(file.status == Status::refused);
}

TEST_CASE("run options override the scenario") {
  RunOptions o;
  o.p = 1.5;
  o.seed = 99;
  const Report r = run_scenario(kSwap, o);
  CHECK(r.status == Status::pass);
  CHECK(r.provenance["p"] == 1.5);
  CHECK(r.provenance["seed"] == 99);

  RunOptions t;
  t.task = "gap";
  const Report g = run_scenario(kSwap, t);
  CHECK(g.task == "gap");
  CHECK(g.status == Status::pass);
  CHECK(g.payload["upper"].get<double>() == doctest::Approx(2.0).epsilon(1e-12));

  // expectations of the original task kind are dropped
  const std::string decompose = oracle::read_file(ISOLAB_SCENARIO_DIR "/swap-decompose.json");
  const Report d = run_scenario(decompose, t);
  CHECK(d.status == Status::pass);
  CHECK(d.payload["upper"].get<double>() == doctest::Approx(2.0).epsilon(1e-12));
  RunOptions same;
  same.task = "decompose";
  CHECK(run_scenario(decompose, same).checks.size() == run_scenario(decompose).checks.size());
}

TEST_CASE("seed precedence") {
  CHECK(resolve_seed(5, 6) == 5);
  CHECK(resolve_seed(std::nullopt, 6) == 6);
  ::setenv("ISOLAB_SEED", "17", 1);
  CHECK(resolve_seed(std::nullopt, std::nullopt) == 17);
  CHECK(resolve_seed(std::nullopt, 6) == 6);
  ::setenv("ISOLAB_SEED", "seventeen", 1);
  CHECK(code_of([] { resolve_seed(std::nullopt, std::nullopt); }) == ErrorCode::invalid_argument);
  ::unsetenv("ISOLAB_SEED");
  CHECK(resolve_seed(std::nullopt, std::nullopt) == kDefaultSeed);
}

TEST_CASE("number formatting") {
  CHECK(format_number(0.0) == "0");
  CHECK(format_number(-0.0) == "-0");
  CHECK(format_number(1e-6) == "9.9999999999999995e-07");
  CHECK(format_number(0.1) == "0.10000000000000001");
  CHECK(format_number(0.5) == "0.5");
  CHECK(format_number(2.0) == "2");
  CHECK(format_number(std::numeric_limits<double>::infinity()) == "+inf");
  CHECK(format_number(-std::numeric_limits<double>::infinity()) == "-inf");
  CHECK(format_number(std::nan("")) == "nan");
  const double x = std::sqrt(3.0);
  CHECK(std::stod(format_number(x)) == x);
}

TEST_CASE("exit codes") {
  Report r;
  r.status = Status::pass;
  CHECK(exit_code(r) == 0);
  r.status = Status::not_applicable;
  CHECK(exit_code(r) == 0);
  r.status = Status::fail;
  CHECK(exit_code(r) == 1);
  r.status = Status::refused;
  CHECK(exit_code(r) == 2);
  CHECK(std::string(to_string(Status::not_applicable)) == "not-applicable");
}

TEST_CASE("sweeps") {
  CHECK(sweep(corpus("z3-regular-gap"), {}).empty());
  const auto rows = sweep(corpus("z3-regular-gap"), {1.5, 2.0, 3.0});
  REQUIRE(rows.size() == 3);
  for (const auto& row : rows) {
    CHECK(row.status == Status::pass);
    REQUIRE(row.gap_upper);
    CHECK(*row.gap_upper > 0.01);
    REQUIRE(row.witness_norm);
    CHECK(*row.witness_norm == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(row.runtime >= 0.0);
  }
  CHECK(rows[1].p == 2.0);
  CHECK(*rows[1].gap_upper == doctest::Approx(std::sqrt(3.0)).epsilon(1e-9));
  const std::string csv = sweep_csv(rows);
  CHECK(csv.rfind("p,gap_upper,witness_norm,runtime,status\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);

  const auto bad = sweep(corpus("z3-regular-gap"), {0.5});
  REQUIRE(bad.size() == 1);
  CHECK(bad[0].status == Status::refused);
  CHECK_FALSE(bad[0].gap_upper);
}

TEST_CASE("reports are reproducible") {
  for (const char* name : {"d3-regular-gap", "z3-coboundary-fm", "schoenberg", "grid-z2xz2-split"}) {
    CAPTURE(name);
    RunOptions o;
    o.seed = 7;
    const Report a = run_scenario(corpus(name), o);
    const Report b = run_scenario(corpus(name), o);
    CHECK(report_json(a) == report_json(b));
    CHECK(report_csv(a) == report_csv(b));
    CHECK(trace_csv(a) == trace_csv(b));
  }
}

TEST_CASE("solver traces") {
  const Report r = run_scenario(corpus("z3-coboundary-fm"));
  CHECK(r.status == Status::pass);
  const std::string csv = trace_csv(r);
  CHECK(csv.rfind("iteration,R_n,step_norm,objective\n", 0) == 0);
  REQUIRE(r.trace.size() >= 2);
  for (std::size_t i = 1; i < r.trace.size(); ++i) CHECK(r.trace[i][1] < 0.5 * r.trace[i - 1][1]);
}

TEST_CASE("every corpus scenario reaches its expected status") {
  const std::map<std::string, Status> refused{{"below-threshold-split", Status::refused},
                                              {"malformed-weights", Status::refused}};
  std::size_t count = 0;
  for (const auto& entry : std::filesystem::directory_iterator(ISOLAB_SCENARIO_DIR)) {
    if (entry.path().extension() != ".json") continue;
    const std::string name = entry.path().stem().string();
    CAPTURE(name);
    const Report r = run_scenario_file(entry.path().string());
    const auto it = refused.find(name);
    CHECK(r.status == (it == refused.end() ? Status::pass : it->second));
    CHECK(r.scenario == name);
    ++count;
  }
  CHECK(count >= 30);
}

TEST_CASE("scenario representations") {
  const auto rep = scenario_representation(corpus("d4-natural-gap"));
  REQUIRE(rep);
  CHECK(rep->group().order() == 8);
  CHECK(rep->relation_residual() <= 1e-9);
  RunOptions o;
  o.p = 1.5;
  CHECK(scenario_representation(corpus("d4-natural-gap"), o)->space().p() == 1.5);
  CHECK_FALSE(scenario_representation(corpus("modulus-p2")));
  const auto sub = scenario_representation(corpus("overlap-superrigid"));
  REQUIRE(sub);
  // generated by r_1, r_2 and s_1 s_2 inside D3 x D3
  CHECK(sub->group().order() == 18);
}
