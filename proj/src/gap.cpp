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
#include <algorithm>
#include <cmath>

#include "detail.hpp"
#include "isolab/lp_minimize.hpp"
#include "isolab/representation.hpp"

namespace isolab {

namespace {

struct Candidate {
  Vec t;
  double value;
};

bool lex_less(const Vec& a, const Vec& b) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a[i] < b[i]) return true;
    if (a[i] > b[i]) return false;
  }
  return false;
}

// Points on the boundary of [-1,1]^d with the given resolution; their
// normalizations cover the sphere.
std::vector<Vec> cube_boundary_grid(Eigen::Index d, int resolution) {
  std::vector<Vec> out;
  std::vector<int> idx(static_cast<std::size_t>(d), 0);
  for (;;) {
    bool boundary = false;
    Vec t(d);
    for (Eigen::Index i = 0; i < d; ++i) {
      const int j = idx[static_cast<std::size_t>(i)];
      if (j == 0 || j == resolution) boundary = true;
      t[i] = -1.0 + 2.0 * j / resolution;
    }
    // t and -t give the same value; keep one of each pair.
    if (boundary) {
      const Vec neg = -t;
      if (!lex_less(neg, t)) out.push_back(t);
    }
    Eigen::Index i = 0;
    while (i < d && ++idx[static_cast<std::size_t>(i)] > resolution) idx[static_cast<std::size_t>(i++)] = 0;
    if (i == d) break;
  }
  return out;
}

// Repeats: fix the norming functional l of C t, then minimize
// max_k ||D_k s|| over the hyperplane l(s) = 1. Since ||C s|| >= l(s), each
// round can only lower the ratio; it moves along kinks where coordinate
// search stalls.
template <class Objective>
Candidate fractional_descent(const LpSpace& space, const std::vector<Mat>& disp, const Mat& complement,
                             Candidate c, Objective& objective) {
  const Eigen::Index d = complement.cols();
  if (d < 2) return c;
  for (int round = 0; round < 40; ++round) {
    const Vec x = complement * c.t;
    const double nx = space.norm(x);
    const Vec s0 = c.t / nx;
    const Vec g = complement.transpose() * space.weights().cwiseProduct(duality_map(space, x));
    const Mat N = null_space(g.transpose(), 1e-12);
    std::vector<solve::AffineTerm> terms;
    for (const Mat& m : disp) terms.push_back({m * N, m * s0});
    const auto r = solve::minimize_max_norm(space.weights(), space.p(), terms, Vec::Zero(N.cols()));
    Vec t = s0 + N * r.y;
    t.normalize();
    const double v = objective(t);
    if (!(v < c.value - 1e-15 * c.value)) break;
    c = {t, v};
  }
  return c;
}

int grid_resolution(Eigen::Index d) {
  switch (d) {
    case 1: return 1;
    case 2: return 360;
    case 3: return 40;
    case 4: return 12;
    default: return 0;
  }
}

}  // namespace

GapEstimate kazhdan_gap(const LpSpace& space, const std::vector<Mat>& k_images,
                        const Mat& complement, std::size_t budget, std::uint64_t seed) {
  if (k_images.empty()) fail(ErrorCode::invalid_argument, "K must be nonempty");
  GapEstimate out;
  const Eigen::Index d = complement.cols();
  out.complement_dim = static_cast<std::size_t>(d);
  if (d == 0) return out;

  const auto n = static_cast<Eigen::Index>(space.dim());
  std::vector<Mat> disp;
  for (const Mat& a : k_images) disp.push_back((a - Mat::Identity(n, n)) * complement);

  auto objective = [&](const Vec& t) {
    ++out.evaluations;
    const double base = space.norm(complement * t);
    if (!(base > 0.0)) return std::numeric_limits<double>::infinity();
    double worst = 0.0;
    for (const Mat& m : disp) worst = std::max(worst, space.norm(m * t));
    return worst / base;
  };

  std::vector<Candidate> starts;
  if (d <= 4) {
    for (Vec& t : cube_boundary_grid(d, grid_resolution(d))) {
      const double v = objective(t);
      starts.push_back({t.normalized(), v});
    }
  }
  detail::Rng rng(seed);
  for (std::size_t r = 0; r < budget; ++r) {
    Vec t = rng.normal_vector(d);
    if (t.norm() == 0.0) continue;
    t.normalize();
    starts.push_back({t, objective(t)});
  }
  std::stable_sort(starts.begin(), starts.end(),
                   [](const Candidate& a, const Candidate& b) { return a.value < b.value; });
  const double best_start = starts.front().value;

  const std::size_t refine = std::min<std::size_t>(8, starts.size());
  std::vector<Candidate> finals;
  for (std::size_t s = 0; s < refine; ++s) {
    Candidate c = starts[s];
    double sigma = 0.2;
    while (sigma > 1e-10) {
      Candidate best_trial = c;
      auto trial = [&](const Vec& dir) {
        Vec t = c.t + sigma * dir;
        const double nt = t.norm();
        if (nt == 0.0) return;
        t /= nt;
        const double v = objective(t);
        if (v < best_trial.value) best_trial = {t, v};
      };
      for (Eigen::Index i = 0; i < d; ++i) {
        trial(Vec::Unit(d, i));
        trial(-Vec::Unit(d, i));
      }
      for (Eigen::Index i = 0; i < 2 * d; ++i) trial(rng.normal_vector(d).normalized());
      if (best_trial.value < c.value) {
        c = best_trial;
      } else {
        sigma *= 0.5;
      }
    }
    finals.push_back(fractional_descent(space, disp, complement, c, objective));
  }

  double best = std::numeric_limits<double>::infinity();
  for (const auto& c : finals) best = std::min(best, c.value);
  const double tie = 1e-12 * std::max(1.0, best);
  Vec witness;
  for (const auto& c : finals) {
    if (c.value > best + tie) continue;
    Vec x = complement * c.t;
    x /= space.norm(x);
    const Vec neg = -x;
    if (lex_less(neg, x)) x = neg;
    if (witness.size() == 0 || lex_less(x, witness)) witness = x;
  }
  out.upper = best;
  out.witness = witness;
  out.heuristic_lower = std::max(0.0, best - std::max(0.0, best_start - best));
  return out;
}

GapEstimate kazhdan_gap(const Representation& rep, const std::vector<Word>& k, std::size_t budget,
                        std::uint64_t seed) {
  if (k.empty()) fail(ErrorCode::invalid_argument, "K must be nonempty");
  std::vector<Mat> images;
  for (const Word& w : k) images.push_back(rep.word_matrix(w));
  const Complement c = canonical_complement(rep);
  return kazhdan_gap(rep.space(), images, c.complement, budget, seed);
}

}  // namespace isolab
