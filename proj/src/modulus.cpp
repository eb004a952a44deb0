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
#include "isolab/modulus.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "detail.hpp"

namespace isolab {
namespace {

struct Pair {
  Vec x;
  Vec y;
  double delta;
};

// y on the unit sphere along the normalized segment from x towards d with
// ||x - y|| = eps, found by bisection on the segment parameter.
std::optional<Pair> pair_at_distance(const NormFn& norm, const Vec& x0, const Vec& d, double eps) {
  const double nx = norm(x0);
  if (!(nx > 0.0)) return std::nullopt;
  const Vec x = x0 / nx;
  auto point = [&](double t) -> std::optional<Vec> {
    const Vec z = x + t * d;
    const double nz = norm(z);
    if (!(nz > 1e-14)) return std::nullopt;
    return Vec(z / nz);
  };
  double hi = 1.0;
  for (;;) {
    auto y = point(hi);
    if (!y) return std::nullopt;
    if (norm(x - *y) >= eps) break;
    hi *= 2.0;
    if (hi > 1e12) return std::nullopt;
  }
  double lo = 0.0;
  for (int i = 0; i < 200 && hi - lo > 1e-15 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    auto y = point(mid);
    if (!y) return std::nullopt;
    (norm(x - *y) >= eps ? hi : lo) = mid;
  }
  auto y = point(hi);
  if (!y) return std::nullopt;
  return Pair{x, *y, 1.0 - 0.5 * norm(x + *y)};
}

}  // namespace

ModulusEstimate convexity_modulus(const NormFn& norm, std::size_t dim, double epsilon,
                                  std::size_t budget, std::uint64_t seed) {
  if (!(epsilon > 0.0 && epsilon <= 2.0))
    fail(ErrorCode::invalid_argument, "epsilon must lie in (0, 2], got " + detail::str(epsilon));
  if (dim == 0) fail(ErrorCode::invalid_argument, "dimension must be positive");
  detail::Rng rng(seed);
  const auto n = static_cast<Eigen::Index>(dim);

  ModulusEstimate best;
  best.epsilon = epsilon;
  {
    Vec e = Vec::Zero(n);
    e[0] = 1.0;
    e /= norm(e);
    best.x = e;
    best.y = -e;
    best.delta = 1.0 - 0.5 * norm(best.x + best.y);
  }
  Vec best_d;
  Vec best_seed;
  for (std::size_t s = 0; s < budget; ++s) {
    ++best.samples;
    const Vec x = rng.normal_vector(n);
    const Vec d = rng.normal_vector(n);
    auto pr = pair_at_distance(norm, x, d, epsilon);
    if (pr && pr->delta < best.delta) {
      best.delta = pr->delta;
      best.x = pr->x;
      best.y = pr->y;
      best_seed = x;
      best_d = d;
    }
  }
  if (best_d.size() == 0) return best;

  double sigma = 0.3;
  std::size_t misses = 0;
  for (std::size_t s = 0; s < budget && sigma > 1e-9; ++s) {
    ++best.samples;
    const Vec x = best_seed + sigma * rng.normal_vector(n);
    const Vec d = best_d + sigma * rng.normal_vector(n);
    auto pr = pair_at_distance(norm, x, d, epsilon);
    if (pr && pr->delta < best.delta) {
      best.delta = pr->delta;
      best.x = pr->x;
      best.y = pr->y;
      best_seed = x;
      best_d = d;
      misses = 0;
    } else if (++misses >= 20) {
      sigma *= 0.5;
      misses = 0;
    }
  }
  return best;
}

ModulusEstimate convexity_modulus(const LpSpace& space, double epsilon, std::size_t budget,
                                  std::uint64_t seed) {
  if (space.p() == 1.0) fail(ErrorCode::refused, "l^1 is not uniformly convex");
  return convexity_modulus([&space](const Vec& v) { return space.norm(v); }, space.dim(), epsilon,
                           budget, seed);
}

ModulusTable modulus_table(const NormFn& norm, std::size_t dim, const std::vector<double>& eps,
                           std::size_t budget, std::uint64_t seed) {
  ModulusTable table;
  table.epsilon = eps;
  for (std::size_t i = 0; i < eps.size(); ++i) {
    if (i > 0 && !(eps[i] > eps[i - 1]))
      fail(ErrorCode::invalid_argument, "epsilon grid must be strictly increasing");
    table.raw.push_back(convexity_modulus(norm, dim, eps[i], budget, seed + i).delta);
  }
  table.envelope = table.raw;
  for (std::size_t i = table.envelope.size(); i-- > 1;)
    table.envelope[i - 1] = std::min(table.envelope[i - 1], table.envelope[i]);
  return table;
}

ModulusTable modulus_table(const LpSpace& space, const std::vector<double>& eps,
                           std::size_t budget, std::uint64_t seed) {
  if (space.p() == 1.0) fail(ErrorCode::refused, "l^1 is not uniformly convex");
  return modulus_table([&space](const Vec& v) { return space.norm(v); }, space.dim(), eps, budget,
                       seed);
}

double inverse_modulus(const ModulusTable& table, double t) {
  if (table.envelope.empty()) fail(ErrorCode::invalid_argument, "empty modulus table");
  if (t >= table.envelope.back()) return 2.0;
  double out = table.epsilon.front();
  for (std::size_t i = 0; i < table.envelope.size(); ++i)
    if (table.envelope[i] <= t) out = table.epsilon[i];
  return out;
}

}  // namespace isolab
