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
#include "isolab/convex.hpp"

#include <algorithm>
#include <cmath>

#include "detail.hpp"
#include "isolab/lp_minimize.hpp"

namespace isolab {

namespace {

void require_strictly_convex(const LpSpace& space, const char* what) {
  if (space.p() == 1.0) fail(ErrorCode::refused, std::string(what) + " is not unique at p = 1");
}

Mat as_columns(const std::vector<Vec>& pts) {
  Mat m(pts.front().size(), static_cast<Eigen::Index>(pts.size()));
  for (std::size_t j = 0; j < pts.size(); ++j) m.col(static_cast<Eigen::Index>(j)) = pts[j];
  return m;
}

}  // namespace

const char* to_string(OrbitFixedPoint::Status s) noexcept {
  switch (s) {
    case OrbitFixedPoint::Status::fixed: return "fixed";
    case OrbitFixedPoint::Status::not_fixed: return "not_fixed";
    case OrbitFixedPoint::Status::unbounded: return "unbounded";
  }
  return "unknown";
}

const char* to_string(FmTrace::Status s) noexcept {
  switch (s) {
    case FmTrace::Status::converged: return "converged";
    case FmTrace::Status::step_failed: return "step_failed";
    case FmTrace::Status::max_iter: return "max_iter";
  }
  return "unknown";
}

Circumcenter circumcenter(const std::vector<Vec>& points, const LpSpace& space) {
  if (points.empty()) fail(ErrorCode::invalid_argument, "circumcenter of an empty set");
  require_strictly_convex(space, "circumcenter");
  for (const Vec& x : points) space.check(x);
  const auto n = static_cast<Eigen::Index>(space.dim());
  std::vector<solve::AffineTerm> terms;
  Vec centroid = Vec::Zero(n);
  for (const Vec& x : points) {
    terms.push_back({Mat::Identity(n, n), -x});
    centroid += x;
  }
  centroid /= static_cast<double>(points.size());
  const auto r = solve::minimize_max_norm(space.weights(), space.p(), terms, centroid);
  return Circumcenter{r.y, r.value, r.iterations};
}

double optimality_residual(const ConvexSet& set, const Vec& x, const Vec& pi, const LpSpace& space) {
  const Vec r = x - pi;
  if (r.cwiseAbs().maxCoeff() <= 1e-13 * (1.0 + x.cwiseAbs().maxCoeff())) return 0.0;
  const Vec J = duality_map(space, r);
  if (const auto* h = std::get_if<Hull>(&set)) {
    double worst = 0.0;
    for (Eigen::Index j = 0; j < h->points.cols(); ++j)
      worst = std::max(worst, space.pairing(h->points.col(j) - pi, J));
    return worst;
  }
  if (const auto* a = std::get_if<AffineSubspace>(&set)) {
    double worst = 0.0;
    for (Eigen::Index j = 0; j < a->basis.cols(); ++j) {
      const Vec w = a->basis.col(j);
      worst = std::max(worst, std::abs(space.pairing(w, J)) / space.norm(w));
    }
    return worst;
  }
  const auto& b = std::get<Ball>(set);
  return std::max(0.0, space.pairing(b.center - pi, J) + b.radius);
}

Projection nearest_point(const ConvexSet& set, const Vec& x, const LpSpace& space) {
  require_strictly_convex(space, "nearest point");
  space.check(x);
  Projection out;
  if (const auto* h = std::get_if<Hull>(&set)) {
    if (h->points.cols() == 0) fail(ErrorCode::invalid_argument, "hull of no points");
    if (static_cast<std::size_t>(h->points.rows()) != space.dim())
      fail(ErrorCode::dimension_mismatch, "hull points have the wrong dimension");
    out.point = solve::nearest_in_hull(space.weights(), space.p(), x, h->points).point;
  } else if (const auto* a = std::get_if<AffineSubspace>(&set)) {
    space.check(a->base);
    if (a->basis.cols() > 0) {
      if (static_cast<std::size_t>(a->basis.rows()) != space.dim())
        fail(ErrorCode::dimension_mismatch, "subspace basis has the wrong dimension");
      if (numerical_rank(a->basis) < static_cast<std::size_t>(a->basis.cols()))
        fail(ErrorCode::invalid_argument, "subspace basis is linearly dependent");
    }
    const auto r = solve::minimize_affine_norm(space.weights(), space.p(), x - a->base, -a->basis);
    out.point = a->base + a->basis * r.t;
  } else {
    const auto& b = std::get<Ball>(set);
    space.check(b.center);
    if (!(b.radius >= 0.0)) fail(ErrorCode::invalid_argument, "ball radius must be nonnegative");
    const double d = space.distance(x, b.center);
    out.point = d <= b.radius ? x : Vec(b.center + (b.radius / d) * (x - b.center));
  }
  out.distance = space.distance(x, out.point);
  out.optimality_residual = optimality_residual(set, x, out.point, space);
  return out;
}

LipschitzProbe lipschitz_probe(const ConvexSet& set, const std::vector<std::pair<Vec, Vec>>& pairs,
                               const LpSpace& space) {
  LipschitzProbe out;
  for (const auto& [x, y] : pairs) {
    const double dxy = space.distance(x, y);
    if (dxy == 0.0) continue;
    const double dx = nearest_point(set, x, space).distance;
    const double dy = nearest_point(set, y, space).distance;
    out.max_ratio = std::max(out.max_ratio, std::abs(dx - dy) / dxy);
    ++out.pairs_used;
  }
  return out;
}

OrbitFixedPoint fixed_point_circumcenter(const Cocycle& c, const Vec& x0, std::size_t max_radius,
                                         std::size_t stagnant, std::size_t cap, double tol) {
  require_strictly_convex(c.space(), "circumcenter");
  OrbitFixedPoint out;
  double last = -1.0;
  std::size_t same = 0;
  OrbitBall ball;
  bool bounded = false;
  for (std::size_t r = 1; r <= max_radius; ++r) {
    try {
      ball = orbit_ball(c, x0, r, cap);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::limit_exceeded) throw;
      break;
    }
    out.radius_reached = r;
    if (ball.closed) {
      bounded = true;
      break;
    }
    const double scale = 1.0 + ball.diameter;
    if (last >= 0.0 && std::abs(ball.diameter - last) <= 1e-12 * scale) {
      if (++same >= stagnant) {
        bounded = true;
        break;
      }
    } else {
      same = 0;
    }
    last = ball.diameter;
  }
  out.orbit_size = ball.points.size();
  out.diameter = ball.diameter;
  if (!bounded) return out;

  const Circumcenter cc = circumcenter(ball.points, c.space());
  out.center = cc.center;
  out.radius = cc.radius;
  for (std::size_t g = 0; g < c.rep().group().generator_count(); ++g) {
    const Word w{static_cast<int>(g) + 1};
    out.fixed_residual = std::max(out.fixed_residual, c.space().distance(c.act(w, cc.center), cc.center));
  }
  out.status = out.fixed_residual <= tol ? OrbitFixedPoint::Status::fixed
                                         : OrbitFixedPoint::Status::not_fixed;
  return out;
}

namespace {

// Affine terms (rho(a) - rho(b)) y + c(a) - c(b) for all pairs of K + {e}.
std::vector<solve::AffineTerm> diameter_terms(const Cocycle& c, const std::vector<Word>& k) {
  const auto n = static_cast<Eigen::Index>(c.rep().dim());
  std::vector<Mat> lin{Mat::Identity(n, n)};
  std::vector<Vec> trans{Vec::Zero(n)};
  for (const Word& w : k) {
    lin.push_back(c.rep().word_matrix(w));
    trans.push_back(c.extend(w));
  }
  std::vector<solve::AffineTerm> terms;
  for (std::size_t i = 0; i < lin.size(); ++i)
    for (std::size_t j = i + 1; j < lin.size(); ++j)
      terms.push_back({lin[i] - lin[j], trans[i] - trans[j]});
  return terms;
}

}  // namespace

double orbit_diameter(const Cocycle& c, const std::vector<Word>& k, const Vec& x) {
  const auto terms = diameter_terms(c, k);
  return solve::max_norm_value(c.space().weights(), c.space().p(), terms, x);
}

FmTrace fisher_margulis_iterate(const Cocycle& c, const std::vector<Word>& k, const Vec& x0,
                                const FmOptions& options) {
  if (k.empty()) fail(ErrorCode::invalid_argument, "K must be nonempty");
  if (!(options.multiplier > 0.0)) fail(ErrorCode::invalid_argument, "search multiplier must be positive");
  require_strictly_convex(c.space(), "the halving step");
  c.space().check(x0);
  const LpSpace& space = c.space();
  const auto terms = diameter_terms(c, k);
  const auto n = static_cast<Eigen::Index>(space.dim());
  detail::Rng rng(options.seed);

  auto displacement = [&](const Vec& x) {
    double d = 0.0;
    for (const Word& w : k) d = std::max(d, space.distance(c.act(w, x), x));
    return d;
  };

  FmTrace out;
  Vec x = x0;
  double R = solve::max_norm_value(space.weights(), space.p(), terms, x);
  out.steps.push_back({0, x, R, 0.0});
  for (std::size_t it = 1;; ++it) {
    if (displacement(x) <= options.tol) {
      out.status = FmTrace::Status::converged;
      break;
    }
    if (it > options.max_iter) {
      out.status = FmTrace::Status::max_iter;
      break;
    }
    const double reach = options.multiplier * R;
    auto retract = [&](const Vec& y) -> Vec {
      const double d = space.distance(y, x);
      return d <= reach ? y : Vec(x + (reach / d) * (y - x));
    };
    Vec best = x;
    double best_val = R;
    for (std::size_t s = 0; s < std::max<std::size_t>(1, options.restarts); ++s) {
      Vec start = x;
      if (s > 0) {
        Vec dir = rng.normal_vector(n);
        dir /= space.norm(dir);
        start = x + reach * rng.uniform(0.0, 1.0) * dir;
      }
      const auto r = solve::minimize_max_norm(space.weights(), space.p(), terms, start);
      const Vec y = retract(r.y);
      const double v = solve::max_norm_value(space.weights(), space.p(), terms, y);
      if (v < best_val) {
        best_val = v;
        best = y;
      }
      if (best_val < 1e-3 * R) break;
    }
    if (!(best_val < R / 2.0)) {
      out.status = FmTrace::Status::step_failed;
      break;
    }
    out.steps.push_back({it, best, best_val, space.distance(best, x)});
    x = best;
    R = best_val;
  }
  out.terminal = x;
  out.terminal_displacement = displacement(x);
  return out;
}

KleeWitness klee_search(const LpSpace& space, std::size_t trials, std::uint64_t seed, double margin) {
  if (space.p() == 2.0) fail(ErrorCode::refused, "circumcenters lie in the closed convex hull in Hilbert space");
  if (space.dim() < 3) fail(ErrorCode::refused, "the search needs dimension at least 3");
  require_strictly_convex(space, "circumcenter");
  detail::Rng rng(seed);
  const auto n = static_cast<Eigen::Index>(space.dim());
  KleeWitness best;
  for (std::size_t t = 0; t < trials; ++t) {
    const std::size_t m = 3 + rng.index(4);
    std::vector<Vec> pts;
    for (std::size_t i = 0; i < m; ++i) pts.push_back(rng.uniform_vector(n, -1.0, 1.0));
    const Circumcenter cc = circumcenter(pts, space);
    const auto h = solve::nearest_in_hull(space.weights(), space.p(), cc.center, as_columns(pts));
    best.trials_used = t + 1;
    if (h.value > best.hull_distance || best.points.empty()) {
      best.points = pts;
      best.center = cc.center;
      best.radius = cc.radius;
      best.hull_distance = h.value;
    }
    if (h.value > margin) {
      best.found = true;
      return best;
    }
  }
  return best;
}

}  // namespace isolab
