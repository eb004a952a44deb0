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
#ifndef ISOLAB_LP_SPACE_HPP
#define ISOLAB_LP_SPACE_HPP

#include <cstddef>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "isolab/error.hpp"

namespace isolab {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// Finite-dimensional weighted l^p space: atoms 0..dim-1 with positive masses
/// mu_i and norm (sum mu_i |v_i|^p)^(1/p), 1 <= p < inf.
///
/// Dual vectors share the coordinate system of primal ones through the
/// weighted pairing <x, l> = sum mu_i x_i l_i; with that pairing the dual of
/// l^p(mu) is l^q(mu) with the same weights, which is what dual() returns.
class LpSpace {
 public:
  LpSpace(std::size_t dim, double p);
  LpSpace(double p, Vec weights);

  std::size_t dim() const noexcept { return static_cast<std::size_t>(weights_.size()); }
  double p() const noexcept { return p_; }
  const Vec& weights() const noexcept { return weights_; }

  /// q = p/(p-1). Throws `refused` at p = 1.
  double conjugate_exponent() const;
  LpSpace dual() const;
  LpSpace with_exponent(double q) const;

  double norm(const Vec& v) const;
  double distance(const Vec& a, const Vec& b) const { return norm(a - b); }
  double pairing(const Vec& x, const Vec& functional) const;

  /// Throws dimension_mismatch unless v has dim() entries.
  void check(const Vec& v) const;

  bool operator==(const LpSpace& other) const;

 private:
  double p_;
  Vec weights_;
};

/// Unique norming functional of v, in the coordinates of dual().
Vec duality_map(const LpSpace& space, const Vec& v);

/// Coordinatewise sign(v_i)|v_i|^(p/q); maps S(l^p(mu)) onto S(l^q(mu)).
Vec mazur_map(const LpSpace& space, const Vec& v, double q);

struct QuotientNorm {
  double value = 0.0;
  Vec coefficients;  ///< c minimizing ||v + W c||
  Vec minimizer;     ///< v + W c
};

/// ||v + W|| = inf_w ||v + w|| over the column span of `subspace`.
QuotientNorm quotient_norm(const LpSpace& space, const Mat& subspace, const Vec& v,
                           double tol = 1e-9);

struct GramReport {
  Mat gram;
  double min_eigenvalue = 0.0;
};

/// G_ij = exp(-s ||x_i - x_j||^p) and its smallest eigenvalue.
GramReport schoenberg_gram(const std::vector<Vec>& points, double s, const LpSpace& space);

struct SchoenbergWitness {
  bool found = false;
  std::vector<Vec> points;
  double s = 0.0;
  double min_eigenvalue = 0.0;
  std::size_t dim = 0;
  std::size_t trials_used = 0;
};

/// Randomized search for a point configuration (<= max_points points in
/// dimension <= max_dim, unit weights) whose Schoenberg Gram matrix has an
/// eigenvalue below -threshold.
SchoenbergWitness schoenberg_search(double p, std::size_t trials, std::uint64_t seed,
                                    double threshold = 1e-6, std::size_t max_points = 6,
                                    std::size_t max_dim = 4);

/// Numerical rank of a matrix (relative singular value cutoff).
std::size_t numerical_rank(const Mat& a, double rel_tol = 1e-10);

/// l2-orthonormal basis of the null space of a (columns).
Mat null_space(const Mat& a, double rel_tol = 1e-10);

/// l2-orthonormal basis of the column space of a.
Mat column_space(const Mat& a, double rel_tol = 1e-10);

}  // namespace isolab

#endif  // ISOLAB_LP_SPACE_HPP
