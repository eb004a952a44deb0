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
#ifndef ISOLAB_CONVEX_HPP
#define ISOLAB_CONVEX_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "isolab/cocycle.hpp"
#include "isolab/lp_space.hpp"

namespace isolab {

struct AffineSubspace {
  Vec base;
  Mat basis;  ///< independent columns
};

struct Hull {
  Mat points;  ///< one point per column
};

struct Ball {
  Vec center;
  double radius = 0.0;
};

using ConvexSet = std::variant<AffineSubspace, Hull, Ball>;

struct Circumcenter {
  Vec center;
  double radius = 0.0;
  std::size_t iterations = 0;
};

/// Chebyshev center: the minimizer of max_i ||x - p_i||. Refuses p = 1.
Circumcenter circumcenter(const std::vector<Vec>& points, const LpSpace& space);

struct Projection {
  Vec point;
  double distance = 0.0;
  double optimality_residual = 0.0;  ///< sup_{y in C} <y - pi, J(x - pi)>, clipped at 0
};

Projection nearest_point(const ConvexSet& set, const Vec& x, const LpSpace& space);

/// First-order optimality residual of a candidate projection pi of x.
double optimality_residual(const ConvexSet& set, const Vec& x, const Vec& pi, const LpSpace& space);

struct LipschitzProbe {
  double max_ratio = 0.0;
  std::size_t pairs_used = 0;
};

LipschitzProbe lipschitz_probe(const ConvexSet& set, const std::vector<std::pair<Vec, Vec>>& pairs,
                               const LpSpace& space);

struct OrbitFixedPoint {
  enum class Status { fixed, not_fixed, unbounded };
  Status status = Status::unbounded;
  Vec center;
  double radius = 0.0;
  double fixed_residual = 0.0;  ///< max_g ||g.z - z||
  std::size_t orbit_size = 0;
  std::size_t radius_reached = 0;
  double diameter = 0.0;
};

/// Circumcenter of the orbit of x0; word balls grow until the orbit closes or
/// its diameter is unchanged for `stagnant` consecutive radii.
OrbitFixedPoint fixed_point_circumcenter(const Cocycle& c, const Vec& x0, std::size_t max_radius = 50,
                                         std::size_t stagnant = 3, std::size_t cap = 100000,
                                         double tol = 1e-6);

struct FmStep {
  std::size_t iteration = 0;
  Vec x;
  double diameter = 0.0;  ///< R_n = diam((K + e) x_n)
  double step_norm = 0.0; ///< ||x_n - x_{n-1}||
};

struct FmTrace {
  enum class Status { converged, step_failed, max_iter };
  Status status = Status::max_iter;
  std::vector<FmStep> steps;
  Vec terminal;
  double terminal_displacement = 0.0;  ///< max_{k in K} ||k.x - x||
};

struct FmOptions {
  double multiplier = 2.0;  ///< search radius C R_n around x_n
  std::size_t max_iter = 40;
  double tol = 1e-6;
  std::size_t restarts = 8;
  std::uint64_t seed = 1;
};

/// Halving iteration: each step looks for y in the ball of radius C R_n around
/// x_n with diam(K y) < R_n / 2.
FmTrace fisher_margulis_iterate(const Cocycle& c, const std::vector<Word>& k, const Vec& x0,
                                const FmOptions& options = {});

double orbit_diameter(const Cocycle& c, const std::vector<Word>& k, const Vec& x);

struct KleeWitness {
  bool found = false;
  std::vector<Vec> points;
  Vec center;
  double radius = 0.0;
  double hull_distance = 0.0;
  std::size_t trials_used = 0;
};

/// Random search for a finite set whose circumcenter lies outside its convex
/// hull (margin 1e-6). Refuses p = 2 and dim < 3.
KleeWitness klee_search(const LpSpace& space, std::size_t trials, std::uint64_t seed,
                        double margin = 1e-6);

const char* to_string(OrbitFixedPoint::Status s) noexcept;
const char* to_string(FmTrace::Status s) noexcept;

}  // namespace isolab

#endif  // ISOLAB_CONVEX_HPP
