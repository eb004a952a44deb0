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

#include <json.hpp>

#include "isolab/convex.hpp"
#include "isolab/lamperti.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace isolab;
using support::code_of;
using support::mat;
using support::vec;

namespace {

struct Rng {
  std::mt19937_64 eng;
  explicit Rng(std::uint64_t seed) : eng(seed) {}
  Vec normal(Eigen::Index n) {
    std::normal_distribution<double> d;
    Vec v(n);
    for (Eigen::Index i = 0; i < n; ++i) v[i] = d(eng);
    return v;
  }
  Vec weights(Eigen::Index n) {
    std::uniform_real_distribution<double> d(0.5, 2.0);
    Vec v(n);
    for (Eigen::Index i = 0; i < n; ++i) v[i] = d(eng);
    return v;
  }
  std::vector<Vec> cloud(std::size_t count, Eigen::Index n) {
    std::vector<Vec> out;
    for (std::size_t i = 0; i < count; ++i) out.push_back(normal(n));
    return out;
  }
};

Representation swap_rep(double p) {
  return Representation(Group::cyclic(2, "s"), LpSpace(2, p), {mat({{0, 1}, {1, 0}})});
}

Mat columns(const std::vector<Vec>& pts) {
  Mat m(pts.front().size(), static_cast<Eigen::Index>(pts.size()));
  for (std::size_t j = 0; j < pts.size(); ++j) m.col(static_cast<Eigen::Index>(j)) = pts[j];
  return m;
}

}  // namespace

TEST_CASE("circumcenter examples") {
  for (double p : {1.5, 2.0, 3.0, 4.0}) {
    const LpSpace s(2, p);
    const Circumcenter one = circumcenter({vec({0.3, -2})}, s);
    CHECK(one.radius == 0.0);
    CHECK(one.center == vec({0.3, -2}));
    const Circumcenter pair = circumcenter({vec({1, 0}), vec({-1, 0})}, s);
    CHECK(pair.center.cwiseAbs().maxCoeff() <= 1e-9);
    CHECK(pair.radius == doctest::Approx(1.0).epsilon(1e-9));
  }
  CHECK(code_of([] { circumcenter({}, LpSpace(2, 2.0)); }) == ErrorCode::invalid_argument);
  CHECK(code_of([] { circumcenter({vec({1, 0})}, LpSpace(2, 1.0)); }) == ErrorCode::refused);
}

TEST_CASE("circumcenter against the grid oracle") {
  Rng rng(31);
  for (double p : {1.5, 3.0}) {
    for (int t = 0; t < 6; ++t) {
      const Vec w = t % 2 ? rng.weights(3) : Vec::Ones(3);
      const std::vector<Vec> pts = rng.cloud(5, 3);
      const Circumcenter c = circumcenter(pts, LpSpace(p, w));
      const oracle::Bracket expected = oracle::grid_circumradius(pts, w, p);
      CHECK(std::abs(c.radius - expected.upper) <= 1e-3);
      CHECK(c.radius >= expected.lower - 1e-12);
      CHECK(c.radius <= expected.upper + 1e-9);
      double far = 0.0;
      for (const Vec& q : pts) far = std::max(far, oracle::norm(w, p, c.center - q));
      CHECK(far == doctest::Approx(c.radius).epsilon(1e-12));
    }
  }
}

TEST_CASE("circumcenter is Lamperti equivariant") {
  Rng rng(7);
  for (double p : {1.5, 3.0}) {
    const LpSpace s(p, rng.weights(4));
    const LampertiIsometry u({2, 0, 3, 1}, {1, -1, -1, 1}, s, s);
    for (int t = 0; t < 5; ++t) {
      std::vector<Vec> pts = rng.cloud(4, 4), moved;
      for (const Vec& q : pts) moved.push_back(u.apply(q));
      const Circumcenter a = circumcenter(pts, s);
      const Circumcenter b = circumcenter(moved, s);
      CHECK((u.apply(a.center) - b.center).cwiseAbs().maxCoeff() <= 1e-6);
      CHECK(a.radius == doctest::Approx(b.radius).epsilon(1e-9));
    }
  }
}

TEST_CASE("nearest point examples") {
  Rng rng(12);
  for (double p : {1.5, 3.0}) {
    const LpSpace s(3, p);
    const Vec inside = vec({0.2, 0.3, 0.5});
    const Hull hull{mat({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}})};
    CHECK((nearest_point(hull, inside, s).point - inside).cwiseAbs().maxCoeff() <= 1e-12);
    const AffineSubspace plane{vec({1, 0, 0}), mat({{-1, -1}, {1, 0}, {0, 1}})};
    CHECK((nearest_point(plane, inside, s).point - inside).cwiseAbs().maxCoeff() <= 1e-12);

    const Ball ball{Vec::Zero(3), 1.0};
    for (int t = 0; t < 10; ++t) {
      const Vec x = rng.normal(3) * 3.0;
      const double nx = s.norm(x);
      const Projection pr = nearest_point(ball, x, s);
      if (nx > 1.0) {
        CHECK((pr.point - x / nx).cwiseAbs().maxCoeff() <= 1e-9);
        CHECK(pr.distance == doctest::Approx(nx - 1.0).epsilon(1e-9));
      } else {
        CHECK(pr.point == x);
      }
    }
  }
  CHECK(code_of([] { nearest_point(Ball{Vec::Zero(2), 1.0}, vec({2, 0}), LpSpace(2, 1.0)); }) == ErrorCode::refused);
  CHECK(code_of([] { nearest_point(Ball{Vec::Zero(2), -1.0}, vec({2, 0}), LpSpace(2, 2.0)); }) ==
        ErrorCode::invalid_argument);
  CHECK(code_of([] { nearest_point(Hull{Mat(2, 0)}, vec({2, 0}), LpSpace(2, 2.0)); }) == ErrorCode::invalid_argument);
  CHECK(code_of([] {
          nearest_point(AffineSubspace{Vec::Zero(3), mat({{1, 2}, {1, 2}, {0, 0}})}, vec({2, 0, 1}), LpSpace(3, 2.0));
        }) == ErrorCode::invalid_argument);
}

TEST_CASE("nearest point on affine subspaces matches the Hilbert projection") {
  Rng rng(99);
  for (int t = 0; t < 30; ++t) {
    const Eigen::Index n = 3 + t % 4;
    const Vec w = rng.weights(n);
    const AffineSubspace a{rng.normal(n), Mat(n, 1 + t % 2)};
    Mat basis(n, 1 + t % 2);
    for (Eigen::Index j = 0; j < basis.cols(); ++j) basis.col(j) = rng.normal(n);
    const AffineSubspace sub{a.base, basis};
    const Vec x = rng.normal(n);
    const Projection pr = nearest_point(sub, x, LpSpace(2.0, w));
    CHECK((pr.point - oracle::hilbert_projection(sub.base, basis, x, w)).cwiseAbs().maxCoeff() <= 1e-10);
  }
}

TEST_CASE("projection optimality and the Lipschitz property") {
  Rng rng(5);
  for (double p : {1.5, 3.0, 4.0}) {
    const LpSpace s(3, p);
    const Hull hull{columns(rng.cloud(5, 3))};
    std::vector<std::pair<Vec, Vec>> pairs;
    for (int t = 0; t < 60; ++t) {
      const Vec x = rng.normal(3) * 2.0;
      const Projection pr = nearest_point(hull, x, s);
      CHECK(pr.optimality_residual <= 1e-6);
      CHECK(optimality_residual(hull, x, pr.point, s) <= 1e-6);
      pairs.emplace_back(x, rng.normal(3) * 2.0);
    }
    pairs.emplace_back(vec({1, 1, 1}), vec({1, 1, 1}));
    const LipschitzProbe probe = lipschitz_probe(hull, pairs, s);
    CHECK(probe.max_ratio <= 1.0 + 1e-6);
    CHECK(probe.pairs_used == pairs.size() - 1);

    const LipschitzProbe flat = lipschitz_probe(
        AffineSubspace{Vec::Zero(3), mat({{1, 0}, {0, 1}, {0, 0}})}, {{vec({0.1, 0.2, 0}), vec({-1, 3, 0})}}, s);
    CHECK(flat.max_ratio <= 1e-9);
  }
}

TEST_CASE("bounded orbit fixed points") {
  for (double p : {1.5, 3.0}) {
    const Cocycle c(swap_rep(p), {vec({1, -1})});
    const OrbitFixedPoint f = fixed_point_circumcenter(c, vec({0, 0}));
    CHECK(f.status == OrbitFixedPoint::Status::fixed);
    CHECK(f.orbit_size == 2);
    CHECK((f.center - vec({0.5, -0.5})).cwiseAbs().maxCoeff() <= 1e-9);
    CHECK(f.fixed_residual <= 1e-6);

    const OrbitFixedPoint already = fixed_point_circumcenter(c, vec({0.5, -0.5}));
    CHECK(already.status == OrbitFixedPoint::Status::fixed);
    CHECK(already.center == vec({0.5, -0.5}));

    const Representation t(Group::presentation({"t"}, {}), LpSpace(2, p), {Mat::Identity(2, 2)});
    const OrbitFixedPoint u = fixed_point_circumcenter(Cocycle(t, {vec({1, 1})}), vec({0, 0}), 12);
    CHECK(u.status == OrbitFixedPoint::Status::unbounded);
    CHECK(std::string(to_string(u.status)) == "unbounded");
  }
}

TEST_CASE("Fisher-Margulis iteration") {
  for (double p : {1.5, 2.0, 3.0}) {
    const Cocycle c(swap_rep(p), {vec({1, -1})});
    const FmTrace fixed = fisher_margulis_iterate(c, {Word{1}}, vec({0.5, -0.5}));
    CHECK(fixed.status == FmTrace::Status::converged);
    CHECK(fixed.steps.size() == 1);

    const FmTrace run = fisher_margulis_iterate(c, {Word{1}}, vec({3, 1}));
    REQUIRE(run.status == FmTrace::Status::converged);
    CHECK(run.steps.size() <= 41);
    CHECK(run.terminal_displacement <= 1e-6);
    // the fixed set is the line x1 - x2 = 1
    CHECK(std::abs(run.terminal[0] - run.terminal[1] - 1.0) <= 1e-6);
    for (std::size_t i = 1; i < run.steps.size(); ++i) {
      CHECK(run.steps[i].diameter < 0.5 * run.steps[i - 1].diameter + 1e-15);
      CHECK(run.steps[i].step_norm <= 2.0 * run.steps[i - 1].diameter + 1e-12);
    }

    const Representation t(Group::presentation({"t"}, {}), LpSpace(2, p), {Mat::Identity(2, 2)});
    const FmTrace fail = fisher_margulis_iterate(Cocycle(t, {vec({1, 1})}), {Word{1}}, vec({0, 0}));
    CHECK(fail.status == FmTrace::Status::step_failed);
    CHECK(fail.steps.size() == 1);
    CHECK(std::string(to_string(fail.status)) == "step_failed");
  }
  const Cocycle c(swap_rep(2.0), {vec({1, -1})});
  CHECK(code_of([&] { fisher_margulis_iterate(c, {}, vec({0, 0})); }) == ErrorCode::invalid_argument);
  FmOptions bad;
  bad.multiplier = 0.0;
  CHECK(code_of([&] { fisher_margulis_iterate(c, {Word{1}}, vec({0, 0}), bad); }) == ErrorCode::invalid_argument);
}

TEST_CASE("orbit diameter") {
  const Cocycle c(swap_rep(3.0), {vec({1, -1})});
  CHECK(orbit_diameter(c, {Word{1}}, vec({0, 0})) == doctest::Approx(std::cbrt(2.0)).epsilon(1e-14));
  CHECK(orbit_diameter(c, {Word{1}}, vec({0.5, -0.5})) == 0.0);
}

TEST_CASE("Klee configurations") {
  CHECK(code_of([] { klee_search(LpSpace(3, 2.0), 10, 1); }) == ErrorCode::refused);
  CHECK(code_of([] { klee_search(LpSpace(2, 4.0), 10, 1); }) == ErrorCode::refused);

  const auto fx = nlohmann::json::parse(oracle::read_file(ISOLAB_FIXTURE_DIR "/klee_p4.json"));
  const LpSpace s(fx["dim"].get<std::size_t>(), fx["p"].get<double>());
  std::vector<Vec> pts;
  for (const auto& q : fx["points"]) pts.push_back(vec({q[0], q[1], q[2]}));
  const Circumcenter c = circumcenter(pts, s);
  const Vec center = vec({fx["center"][0], fx["center"][1], fx["center"][2]});
  CHECK((c.center - center).cwiseAbs().maxCoeff() <= 1e-6);
  CHECK(c.radius == doctest::Approx(fx["radius"].get<double>()).epsilon(1e-8));
  const Projection pr = nearest_point(Hull{columns(pts)}, c.center, s);
  CHECK(pr.distance == doctest::Approx(fx["hull_distance"].get<double>()).epsilon(1e-4));
  CHECK(pr.distance > 1e-6);

  const KleeWitness w = klee_search(s, 2000, 1);
  if (w.found) {
    CHECK(w.hull_distance > 1e-6);
    CHECK(w.points.size() <= 6);
  }
}
