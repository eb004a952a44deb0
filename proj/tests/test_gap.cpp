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
#include <limits>
#include <random>

#include "isolab/representation.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace isolab;
using support::code_of;
using support::vec;

namespace {

std::vector<std::size_t> inverse_perm(const std::vector<int>& perm) {
  std::vector<std::size_t> sigma(perm.size());
  for (std::size_t x = 0; x < perm.size(); ++x) sigma[static_cast<std::size_t>(perm[x])] = x;
  return sigma;
}

Representation perm_rep(const std::vector<std::vector<int>>& perms, const LpSpace& space) {
  std::vector<std::string> names;
  std::vector<LampertiIsometry> images;
  for (std::size_t i = 0; i < perms.size(); ++i) {
    names.push_back("g" + std::to_string(i));
    images.emplace_back(inverse_perm(perms[i]), std::vector<int>(perms[i].size(), 1), space, space);
  }
  return Representation(Group::from_permutations(names, perms), images);
}

std::vector<Word> generators(std::size_t k) {
  std::vector<Word> out;
  for (std::size_t i = 0; i < k; ++i) out.push_back(Word{static_cast<int>(i) + 1});
  return out;
}

std::vector<int> random_perm(std::mt19937_64& rng, std::size_t n) {
  std::vector<int> p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = static_cast<int>(i);
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

}  // namespace

TEST_CASE("swap gap is two") {
  for (double p : {1.5, 2.0, 3.0, 4.0}) {
    const GapEstimate g = kazhdan_gap(perm_rep({{1, 0}}, LpSpace(2, p)), generators(1));
    CHECK(g.complement_dim == 1);
    CHECK(g.upper == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(g.heuristic_lower <= g.upper);
    CHECK(LpSpace(2, p).norm(g.witness) == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("regular Z/3 gap at p = 2") {
  const Representation rep = perm_rep({{1, 2, 0}}, LpSpace(3, 2.0));
  const GapEstimate g = kazhdan_gap(rep, generators(1));
  CHECK(g.complement_dim == 2);
  CHECK(g.upper == doctest::Approx(std::sqrt(3.0)).epsilon(1e-9));
  CHECK(displacement_ratio(rep.space(), {rep.image(0)}, g.witness) == doctest::Approx(g.upper).epsilon(1e-12));
}

TEST_CASE("trivial representation gives the sentinel") {
  const Representation rep(Group::cyclic(2), LpSpace(3, 3.0), {Mat::Identity(3, 3)});
  const GapEstimate g = kazhdan_gap(rep, generators(1));
  CHECK(g.complement_dim == 0);
  CHECK(g.upper == std::numeric_limits<double>::infinity());
  CHECK(g.witness.size() == 0);
}

TEST_CASE("gap matches the eigenvalue oracle at p = 2") {
  std::mt19937_64 rng(404);
  std::uniform_real_distribution<double> u(0.5, 2.0);
  for (int trial = 0; trial < 24; ++trial) {
    const std::size_t n = 3 + static_cast<std::size_t>(trial % 3);
    Vec w(static_cast<Eigen::Index>(n));
    for (Eigen::Index i = 0; i < w.size(); ++i) w[i] = u(rng);
    const std::size_t k = 1 + static_cast<std::size_t>(trial % 2);
    std::vector<std::vector<int>> perms;
    for (std::size_t i = 0; i < k; ++i) perms.push_back(random_perm(rng, n));
    const Representation rep = perm_rep(perms, LpSpace(2.0, w));
    const GapEstimate g = kazhdan_gap(rep, generators(k), 64, 1);
    if (g.complement_dim == 0) continue;
    const double expected = oracle::hilbert_gap(rep.images(), w);
    CAPTURE(trial);
    CHECK(g.upper >= expected - 1e-9);
    CHECK(g.upper <= expected + 1e-4);
  }
}

TEST_CASE("the upper bound is attained by the witness") {
  std::mt19937_64 rng(9);
  for (double p : {1.5, 3.0, 4.0}) {
    const Representation rep = perm_rep({random_perm(rng, 5), random_perm(rng, 5)}, LpSpace(p, vec({1, 2, 1, 0.5, 3})));
    const GapEstimate g = kazhdan_gap(rep, generators(2), 32, 3);
    if (g.complement_dim == 0) continue;
    CHECK(rep.space().norm(g.witness) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(displacement_ratio(rep.space(), rep.images(), g.witness) == doctest::Approx(g.upper).epsilon(1e-10));
    const Complement c = canonical_complement(rep);
    CHECK(quotient_norm(LpSpace(2.0, Vec::Ones(5)), c.complement, g.witness).value == doctest::Approx(0.0));
  }
}

TEST_CASE("gap estimation is deterministic") {
  const Representation rep = perm_rep({{1, 2, 3, 0}, {1, 0, 2, 3}}, LpSpace(3.0, vec({1, 2, 3, 4})));
  const GapEstimate a = kazhdan_gap(rep, generators(2), 16, 42);
  const GapEstimate b = kazhdan_gap(rep, generators(2), 16, 42);
  CHECK(a.upper == b.upper);
  CHECK(a.witness == b.witness);
}

TEST_CASE("gap errors") {
  const Representation rep = perm_rep({{1, 0}}, LpSpace(2, 2.0));
  CHECK(code_of([&] { kazhdan_gap(rep, {}); }) == ErrorCode::invalid_argument);
  CHECK(code_of([&] { displacement_ratio(rep.space(), {rep.image(0)}, Vec::Zero(2)); }) == ErrorCode::invalid_argument);
}
