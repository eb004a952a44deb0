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

#include "isolab/modulus.hpp"

using namespace isolab;

TEST_CASE("antipodal pair attains the modulus at epsilon 2") {
  const ModulusEstimate m = convexity_modulus(LpSpace(2, 2.0), 2.0, 200, 1);
  CHECK(m.delta == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("euclidean modulus matches the parallelogram law") {
  for (double eps : {0.5, 1.0, 1.5}) {
    const ModulusEstimate m = convexity_modulus(LpSpace(2, 2.0), eps, 2000, 7);
    const double exact = 1.0 - std::sqrt(1.0 - eps * eps / 4.0);
    CHECK(std::abs(m.delta - exact) <= 1e-3);
    CHECK(m.delta >= exact - 1e-12);
    CHECK(LpSpace(2, 2.0).norm(m.x - m.y) >= eps - 1e-9);
  }
}

TEST_CASE("witness pairs are admissible") {
  for (double p : {1.5, 3.0, 4.0}) {
    const LpSpace s(3, p);
    const ModulusEstimate m = convexity_modulus(s, 0.7, 500, 3);
    CHECK(s.norm(m.x) <= 1.0 + 1e-12);
    CHECK(s.norm(m.y) <= 1.0 + 1e-12);
    CHECK(s.norm(m.x - m.y) >= 0.7 - 1e-9);
    CHECK(m.delta == doctest::Approx(1.0 - s.norm(m.x + m.y) / 2.0).epsilon(1e-12));
  }
}

TEST_CASE("modulus input validation") {
  CHECK_THROWS_AS(convexity_modulus(LpSpace(2, 1.0), 1.0, 10, 1), Error);
  CHECK_THROWS_AS(convexity_modulus(LpSpace(2, 2.0), 0.0, 10, 1), Error);
  CHECK_THROWS_AS(convexity_modulus(LpSpace(2, 2.0), 2.5, 10, 1), Error);
}

TEST_CASE("envelope and inverse modulus") {
  const std::vector<double> eps{0.25, 0.5, 0.75, 1.0, 1.25, 1.5, 1.75, 2.0};
  const ModulusTable t = modulus_table(LpSpace(2, 2.0), eps, 1000, 5);
  for (std::size_t i = 1; i < eps.size(); ++i) CHECK(t.envelope[i] >= t.envelope[i - 1]);
  for (std::size_t i = 0; i < eps.size(); ++i) {
    CHECK(t.envelope[i] <= t.raw[i]);
    CHECK(inverse_modulus(t, t.envelope[i]) >= eps[i]);
  }
  CHECK(inverse_modulus(t, 1.0) == 2.0);
  CHECK(inverse_modulus(t, 5.0) == 2.0);
  CHECK(inverse_modulus(t, 0.5 * t.envelope[0]) == eps[0]);
  double last = 0.0;
  for (double x = 0.0; x <= 1.0; x += 0.01) {
    const double v = inverse_modulus(t, x);
    CHECK(v >= last);
    last = v;
  }
  CHECK_THROWS_AS(inverse_modulus(ModulusTable{}, 0.1), Error);
}

TEST_CASE("modulus of a custom norm") {
  const NormFn sup = [](const Vec& v) { return v.cwiseAbs().maxCoeff(); };
  const ModulusEstimate m = convexity_modulus(sup, 2, 1.0, 500, 9);
  CHECK(m.delta <= 1e-9);
}
