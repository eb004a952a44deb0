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
#include <random>

#include "isolab/cocycle.hpp"
#include "support.hpp"

using namespace isolab;
using support::code_of;
using support::mat;
using support::vec;

namespace {

Representation swap_rep(double p) {
  const LpSpace s(2, p);
  return Representation(Group::cyclic(2, "s"), s, {mat({{0, 1}, {1, 0}})});
}

Representation translation_rep(std::size_t dim, double p) {
  const LpSpace s(dim, p);
  const auto n = static_cast<Eigen::Index>(dim);
  return Representation(Group::presentation({"t"}, {}), s, {Mat::Identity(n, n)});
}

Word random_word(std::mt19937_64& rng, std::size_t gens, std::size_t len) {
  std::uniform_int_distribution<int> g(1, static_cast<int>(gens));
  std::bernoulli_distribution sign(0.5);
  Word w;
  for (std::size_t i = 0; i < len; ++i) w.push_back(sign(rng) ? g(rng) : -g(rng));
  return w;
}

// D4 on l^p(4) by its natural square action with a generic coboundary plus signs
Cocycle d4_cocycle(double p, const Vec& v) {
  const LpSpace s(4, p);
  const Mat r = LampertiIsometry({3, 0, 1, 2}, {1, 1, 1, 1}, s, s).matrix();
  const Mat f = LampertiIsometry({0, 3, 2, 1}, {1, 1, 1, 1}, s, s).matrix();
  return Cocycle::coboundary(Representation(Group::dihedral(4), s, {r, f}), v);
}

}  // namespace

TEST_CASE("cocycle extension") {
  const Cocycle c = d4_cocycle(3.0, vec({1, -2, 0.5, 3}));
  CHECK(c.extend({}) == Vec::Zero(4));
  CHECK(c.relator_residual() <= 1e-9);
  std::mt19937_64 rng(1);
  const Vec v = vec({1, -2, 0.5, 3});
  for (int t = 0; t < 50; ++t) {
    const Word w1 = random_word(rng, 2, 3), w2 = random_word(rng, 2, 3);
    const Vec whole = c.extend(concat(w1, w2));
    // two bracketings of the same length-6 word
    CHECK((whole - (c.rep().act(w1, c.extend(w2)) + c.extend(w1))).cwiseAbs().maxCoeff() <= 1e-12);
    // telescoping for a coboundary
    CHECK((whole - (v - c.rep().act(concat(w1, w2), v))).cwiseAbs().maxCoeff() <= 1e-12);
  }
  CHECK(code_of([&] { c.extend(Word{3}); }) == ErrorCode::invalid_argument);
}

TEST_CASE("cocycle validation") {
  // c(s^2) = rho(s) c(s) + c(s) must vanish
  CHECK(code_of([] { Cocycle(swap_rep(2.0), {vec({1, 1})}); }) == ErrorCode::validation);
  CHECK(code_of([] { Cocycle(swap_rep(2.0), {vec({1, 1, 1})}); }) == ErrorCode::dimension_mismatch);
  CHECK(code_of([] { Cocycle(swap_rep(2.0), {}); }) == ErrorCode::validation);
  CHECK_NOTHROW(Cocycle(swap_rep(2.0), {vec({1, -1})}));
}

TEST_CASE("affine action is isometric") {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> n01;
  for (double p : {1.5, 2.0, 4.0}) {
    const Cocycle c = d4_cocycle(p, vec({0.3, 1, -1, 2}));
    for (int t = 0; t < 30; ++t) {
      Vec x(4), y(4);
      for (int i = 0; i < 4; ++i) x[i] = n01(rng), y[i] = n01(rng);
      const Word w = random_word(rng, 2, 5);
      CHECK(std::abs(c.space().distance(c.act(w, x), c.act(w, y)) - c.space().distance(x, y)) <= 1e-12);
    }
  }
}

TEST_CASE("coboundary solve") {
  const Cocycle zero = Cocycle::zero(swap_rep(3.0));
  const CoboundarySolution z = coboundary_solve(zero);
  CHECK(z.is_coboundary);
  CHECK(z.residual == 0.0);
  CHECK(z.v == Vec::Zero(2));

  for (double p : {1.5, 2.0, 3.0}) {
    const Cocycle c(swap_rep(p), {vec({1, -1})});
    const CoboundarySolution s = coboundary_solve(c);
    CHECK(s.is_coboundary);
    CHECK(s.residual <= 1e-12);
    CHECK(s.v[0] == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(s.v[1] == doctest::Approx(-0.5).epsilon(1e-14));
    CHECK((c.act(Word{1}, s.v) - s.v).cwiseAbs().maxCoeff() <= 1e-14);

    const Cocycle t(translation_rep(2, p), {vec({1, 1})});
    const CoboundarySolution u = coboundary_solve(t);
    CHECK_FALSE(u.is_coboundary);
    CHECK(u.residual == doctest::Approx(std::pow(2.0, 1.0 / p)).epsilon(1e-14));
  }

  std::mt19937_64 rng(8);
  std::normal_distribution<double> n01;
  for (int t = 0; t < 20; ++t) {
    Vec v(4);
    for (int i = 0; i < 4; ++i) v[i] = n01(rng);
    const Cocycle c = d4_cocycle(t % 2 ? 1.5 : 3.0, v);
    const CoboundarySolution s = coboundary_solve(c);
    CHECK(s.residual <= 1e-10);
    for (std::size_t g = 0; g < 2; ++g)
      CHECK((c.act(Word{static_cast<int>(g) + 1}, s.v) - s.v).cwiseAbs().maxCoeff() <= 1e-10);
  }
}

TEST_CASE("cocycle seminorm") {
  CHECK(cocycle_seminorm(Cocycle::zero(swap_rep(2.0)), {Word{1}}) == 0.0);
  const Cocycle c(swap_rep(3.0), {vec({2, -2})});
  CHECK(cocycle_seminorm(c, {Word{1}}) == doctest::Approx(2.0 * std::cbrt(2.0)).epsilon(1e-14));
  CHECK(code_of([&] { cocycle_seminorm(c, {}); }) == ErrorCode::invalid_argument);

  const Vec v = vec({1, 0, -2, 0.5});
  const Cocycle d = d4_cocycle(3.0, v);
  std::vector<Word> all;
  double expected = 0.0;
  for (std::size_t e = 0; e < d.rep().group().order(); ++e) {
    all.push_back(d.rep().group().element_word(static_cast<int>(e)));
    expected = std::max(expected, d.space().norm(v - d.rep().act(all.back(), v)));
  }
  const double s = cocycle_seminorm(d, all);
  CHECK(s == doctest::Approx(expected).epsilon(1e-12));
  CHECK(s <= 2.0 * d.space().norm(v) + 1e-12);
}

TEST_CASE("word balls") {
  CHECK(word_ball({0}, 3).size() == 7);
  CHECK(word_ball({0, 1}, 2).size() == 1 + 4 + 12);
  CHECK(code_of([] { word_ball({0, 1}, 10, 1000); }) == ErrorCode::limit_exceeded);
}

TEST_CASE("orbit balls") {
  for (double p : {1.5, 3.0}) {
    const Cocycle t(translation_rep(1, p), {vec({0.7})});
    for (std::size_t r : {1u, 3u, 5u}) {
      const OrbitBall b = orbit_ball(t, vec({0}), r);
      CHECK(b.points.size() == 2 * r + 1);
      CHECK(b.diameter == doctest::Approx(2.0 * static_cast<double>(r) * 0.7).epsilon(1e-14));
      CHECK_FALSE(b.closed);
    }
    const Cocycle s(swap_rep(p), {vec({1, -1})});
    const OrbitBall b = orbit_ball(s, vec({0, 0}), 1);
    CHECK(b.points.size() == 2);
    CHECK(b.diameter == doctest::Approx(std::pow(2.0, 1.0 / p)).epsilon(1e-14));
    const OrbitBall f = orbit_ball(s, vec({0.5, -0.5}), 4);
    CHECK(f.points.size() == 1);
    CHECK(f.diameter == 0.0);
    CHECK(f.closed);
  }
}

TEST_CASE("almost invariant vectors make coboundaries non-closed") {
  // ||v_n|| / ||v_n - rho(s) v_n|| = (n/2)^{1/p} / 2 for the half indicator on Z/n
  for (double p : {1.5, 2.0, 3.0}) {
    double last = 0.0;
    for (int n : {4, 8, 16, 32}) {
      std::vector<int> shift(static_cast<std::size_t>(n));
      for (int i = 0; i < n; ++i) shift[static_cast<std::size_t>(i)] = (i + 1) % n;
      const ZeroMeanRep z = zero_mean_rep({shift}, Vec::Ones(n), p);
      Vec v(n);
      for (int i = 0; i < n; ++i) v[i] = i < n / 2 ? 1.0 : -1.0;
      const Cocycle tau = Cocycle::coboundary(z.rep, v);
      const double ratio = z.rep.space().norm(v) / cocycle_seminorm(tau, {Word{1}});
      CHECK(ratio == doctest::Approx(0.5 * std::pow(n / 2.0, 1.0 / p)).epsilon(1e-12));
      CHECK(ratio > last);
      last = ratio;
    }
  }
}

TEST_CASE("displacement bound") {
  const Group g = Group::product(Group::presentation({"a"}, {}), Group::cyclic(2, "h"));
  for (double p : {1.5, 3.0}) {
    const LpSpace s(2, p);
    const Mat sw = mat({{0, 1}, {1, 0}});
    const Representation rep(g, s, {Mat::Identity(2, 2), sw});

    const DisplacementReport zero = displacement_bound_check(Cocycle(rep, {vec({0, 0}), vec({1, -1})}), {});
    CHECK(zero.pass);
    CHECK(zero.max_norm == 0.0);
    CHECK(zero.epsilon == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(zero.bound == doctest::Approx(std::pow(2.0, 1.0 / p)).epsilon(1e-12));

    // c(a) is h-fixed, so its component in the H complement vanishes while ||c(a^n)|| grows
    const DisplacementReport drift = displacement_bound_check(Cocycle(rep, {vec({1, 1}), vec({1, -1})}), {});
    CHECK(drift.pass);
    CHECK(drift.identity_residual == 0.0);
    CHECK(drift.max_component <= 1e-12);
    CHECK(drift.max_norm == doctest::Approx(6.0 * std::pow(2.0, 1.0 / p)).epsilon(1e-12));

    const Representation trivial(g, s, {Mat::Identity(2, 2), Mat::Identity(2, 2)});
    const DisplacementReport vac = displacement_bound_check(Cocycle(trivial, {vec({1, 1}), vec({0, 0})}), {});
    CHECK(vac.vacuous);
    CHECK(vac.pass);
  }
  CHECK(code_of([] { displacement_bound_check(Cocycle::zero(swap_rep(2.0)), {}); }) == ErrorCode::invalid_argument);
}

TEST_CASE("Mautner propagation") {
  const LpSpace s(2, 3.0);
  const Group bs = Group::presentation({"g", "h"}, {Word{1, 2, -1, -2, -2, -2, -2}});
  const Representation rep(bs, s, {mat({{0, 1}, {1, 0}}), Mat::Identity(2, 2)});
  const Cocycle c(rep, {vec({1, -1}), vec({0, 0})});

  const MautnerReport m = mautner_check(c, Word{1}, Word{2}, 30, 1e-9,
                                        std::make_pair(mat({{2, 0}, {0, 0.5}}), mat({{1, 1}, {0, 1}})));
  CHECK(m.applicable);
  CHECK(m.pass);
  CHECK(m.contraction.size() == 31);
  CHECK(m.contraction[1] == doctest::Approx(0.25));
  CHECK(m.h_displacement <= 1e-12);

  const MautnerReport id = mautner_check(c, Word{1}, Word{}, 5, 1e-9, std::nullopt);
  CHECK(id.applicable);
  CHECK(id.pass);

  const MautnerReport periodic = mautner_check(c, Word{1}, Word{2}, 10, 1e-9,
                                               std::make_pair(mat({{0, 1}, {1, 0}}), mat({{1, 1}, {0, 1}})));
  CHECK_FALSE(periodic.applicable);
  CHECK_FALSE(periodic.reason.empty());

  CHECK(code_of([&] {
          mautner_check(c, Word{1}, Word{2}, 5, 1e-9, std::make_pair(mat({{1, 0}, {0, 0}}), mat({{1, 1}, {0, 1}})));
        }) == ErrorCode::invalid_argument);
}
