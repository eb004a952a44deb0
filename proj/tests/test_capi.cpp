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
#include <cstring>
#include <string>
#include <vector>

#include "isolab/isolab.h"

namespace {

const char* kSwap = R"({
  "schema": "isolab/scenario@1",
  "name": "mini",
  "space": {"dim": 2, "p": 3},
  "group": {"kind": "cyclic", "n": 2, "name": "s"},
  "representation": "regular",
  "task": {"kind": "gap"}
})";

bool contains(const char* hay, const char* needle) { return std::strstr(hay, needle) != nullptr; }

}  // namespace

TEST_CASE("version and status strings") {
  CHECK(std::strlen(isolab_version()) > 0);
  CHECK(std::string(isolab_status_string(ISOLAB_OK)) == "ok");
  CHECK(std::string(isolab_status_string(ISOLAB_REFUSED)) == "refused");
  CHECK(std::strlen(isolab_status_string(static_cast<isolab_status>(42))) > 0);
}

TEST_CASE("spaces") {
  isolab_space* s = nullptr;
  const double w[3] = {1.0, 2.0, 0.5};
  REQUIRE(isolab_space_create(3, 3.0, w, &s) == ISOLAB_OK);
  CHECK(isolab_space_dim(s) == 3);
  CHECK(isolab_space_p(s) == 3.0);
  const double v[3] = {1.0, -1.0, 2.0};
  double n = 0.0;
  REQUIRE(isolab_space_norm(s, v, &n) == ISOLAB_OK);
  CHECK(n == doctest::Approx(std::cbrt(1.0 + 2.0 + 4.0)).epsilon(1e-15));
  double j[3];
  REQUIRE(isolab_space_duality_map(s, v, j) == ISOLAB_OK);
  double pairing = 0.0;
  for (int i = 0; i < 3; ++i) pairing += w[i] * v[i] * j[i];
  CHECK(pairing == doctest::Approx(n).epsilon(1e-14));
  double m[3];
  REQUIRE(isolab_space_mazur_map(s, v, 1.5, m) == ISOLAB_OK);
  isolab_space_free(s);

  isolab_space* bad = nullptr;
  const double neg[2] = {1.0, -1.0};
  CHECK(isolab_space_create(2, 2.0, neg, &bad) == ISOLAB_INVALID_ARGUMENT);
  CHECK(bad == nullptr);
  CHECK(contains(isolab_last_error(), "weight"));
  CHECK(isolab_space_create(2, 0.5, nullptr, &bad) == ISOLAB_INVALID_ARGUMENT);
  CHECK(isolab_space_create(2, 2.0, nullptr, nullptr) == ISOLAB_INVALID_ARGUMENT);

  isolab_space* one = nullptr;
  REQUIRE(isolab_space_create(2, 1.0, nullptr, &one) == ISOLAB_OK);
  CHECK(isolab_space_duality_map(one, v, j) == ISOLAB_REFUSED);
  isolab_space_free(one);
  isolab_space_free(nullptr);
}

TEST_CASE("isometries") {
  isolab_space *a = nullptr, *b = nullptr;
  const double wa[3] = {1.0, 2.0, 3.0}, wb[3] = {0.5, 1.0, 4.0};
  REQUIRE(isolab_space_create(3, 1.5, wa, &a) == ISOLAB_OK);
  REQUIRE(isolab_space_create(3, 1.5, wb, &b) == ISOLAB_OK);
  const size_t sigma[3] = {2, 0, 1};
  const int signs[3] = {1, -1, 1};
  isolab_isometry* u = nullptr;
  REQUIRE(isolab_isometry_create(sigma, signs, a, b, &u) == ISOLAB_OK);
  CHECK(isolab_isometry_dim(u) == 3);

  const double v[3] = {0.3, -1.0, 2.0};
  double uv[3], nv = 0, nuv = 0;
  REQUIRE(isolab_isometry_apply(u, v, uv) == ISOLAB_OK);
  isolab_space_norm(a, v, &nv);
  isolab_space_norm(b, uv, &nuv);
  CHECK(nuv == doctest::Approx(nv).epsilon(1e-14));

  isolab_isometry *inv = nullptr, *id = nullptr, *conj = nullptr;
  REQUIRE(isolab_isometry_inverse(u, &inv) == ISOLAB_OK);
  REQUIRE(isolab_isometry_compose(inv, u, &id) == ISOLAB_OK);
  double m[9];
  REQUIRE(isolab_isometry_matrix(id, m) == ISOLAB_OK);
  for (int i = 0; i < 3; ++i)
    for (int k = 0; k < 3; ++k) CHECK(m[3 * i + k] == doctest::Approx(i == k ? 1.0 : 0.0).epsilon(1e-14));
  CHECK(isolab_isometry_compose(u, u, &conj) == ISOLAB_INVALID_ARGUMENT);
  CHECK(contains(isolab_last_error(), "compose"));
  REQUIRE(isolab_isometry_mazur_conjugate(u, &conj) == ISOLAB_OK);
  isolab_isometry_free(conj);
  isolab_isometry_free(id);
  isolab_isometry_free(inv);
  isolab_isometry_free(u);

  const size_t dup[3] = {0, 0, 1};
  isolab_isometry* bad = nullptr;
  CHECK(isolab_isometry_create(dup, signs, a, b, &bad) == ISOLAB_INVALID_ARGUMENT);
  const int zero_sign[3] = {1, 0, 1};
  CHECK(isolab_isometry_create(sigma, zero_sign, a, b, &bad) == ISOLAB_INVALID_ARGUMENT);
  CHECK(bad == nullptr);
  isolab_space_free(a);
  isolab_space_free(b);
}

TEST_CASE("scenario runs") {
  isolab_report* r = nullptr;
  REQUIRE(isolab_run(kSwap, nullptr, &r) == ISOLAB_OK);
  CHECK(std::string(isolab_report_status(r)) == "pass");
  CHECK(isolab_report_exit_code(r) == 0);
  CHECK(contains(isolab_report_json(r), "\"upper\": 2"));
  CHECK(contains(isolab_report_csv(r), "scenario,task,status"));
  CHECK(std::string(isolab_report_message(r)).empty());
  isolab_report_free(r);

  isolab_run_options o{};
  o.has_p = 1;
  o.p = 1.5;
  o.has_seed = 1;
  o.seed = 3;
  o.task = "decompose";
  REQUIRE(isolab_run(kSwap, &o, &r) == ISOLAB_OK);
  CHECK(contains(isolab_report_json(r), "\"task\": \"decompose\""));
  CHECK(contains(isolab_report_json(r), "\"seed\": 3"));
  CHECK(contains(isolab_report_json(r), "\"p\": 1.5"));
  isolab_report_free(r);

  REQUIRE(isolab_run("{", nullptr, &r) == ISOLAB_OK);
  CHECK(std::string(isolab_report_status(r)) == "refused");
  CHECK(isolab_report_exit_code(r) == 2);
  CHECK(contains(isolab_report_message(r), "line 1"));
  isolab_report_free(r);

  REQUIRE(isolab_run_file(ISOLAB_SCENARIO_DIR "/z3-coboundary-fm.json", nullptr, &r) == ISOLAB_OK);
  CHECK(contains(isolab_report_trace_csv(r), "iteration,R_n,step_norm,objective"));
  isolab_report_free(r);

  CHECK(isolab_run(nullptr, nullptr, &r) == ISOLAB_INVALID_ARGUMENT);
  CHECK(isolab_run(kSwap, nullptr, nullptr) == ISOLAB_INVALID_ARGUMENT);
  isolab_report_free(nullptr);
}

TEST_CASE("sweeps") {
  const double ps[3] = {1.5, 2.0, 3.0};
  isolab_sweep* s = nullptr;
  REQUIRE(isolab_sweep_run(kSwap, ps, 3, nullptr, &s) == ISOLAB_OK);
  CHECK(isolab_sweep_size(s) == 3);
  CHECK(contains(isolab_sweep_csv(s), "p,gap_upper,witness_norm,runtime,status"));
  const isolab_report* r = isolab_sweep_report(s, 1);
  REQUIRE(r != nullptr);
  CHECK(contains(isolab_report_json(r), "\"p\": 2"));
  CHECK(isolab_sweep_report(s, 3) == nullptr);
  isolab_sweep_free(s);

  REQUIRE(isolab_sweep_run(kSwap, nullptr, 0, nullptr, &s) == ISOLAB_OK);
  CHECK(isolab_sweep_size(s) == 0);
  isolab_sweep_free(s);
  CHECK(isolab_sweep_run(kSwap, nullptr, 2, nullptr, &s) == ISOLAB_INVALID_ARGUMENT);
}
