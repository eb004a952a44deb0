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
#ifndef ISOLAB_LP_MINIMIZE_HPP
#define ISOLAB_LP_MINIMIZE_HPP

// Small dense convex solvers shared by the geometry modules. All of them
// work on the weighted l^p norm of affine expressions and are exact-Newton
// based, so they are meant for desk-scale dimensions (tens, not thousands).

#include <cstddef>
#include <vector>

#include "isolab/lp_space.hpp"

namespace isolab::solve {

struct AffineNormResult {
  Vec t;
  double value = 0.0;  ///< ||a + A t||
  std::size_t iterations = 0;
};

/// min_t ||a + A t||_{p,mu}. A may be rank deficient; any minimizer is
/// returned in that case.
AffineNormResult minimize_affine_norm(const Vec& weights, double p, const Vec& a,
                                      const Mat& A, std::size_t max_iter = 200);

/// Gradient of y -> ||y||_{p,mu}^p, i.e. p mu_i sign(y_i)|y_i|^(p-1).
Vec power_gradient(const Vec& weights, double p, const Vec& y);

struct HullResult {
  Vec lambda;  ///< barycentric weights, on the simplex
  Vec point;   ///< P lambda
  double value = 0.0;
  std::size_t iterations = 0;
};

/// Nearest point of conv(columns of P) to x in l^p(mu), p > 1, by an
/// active-set method over the simplex.
HullResult nearest_in_hull(const Vec& weights, double p, const Vec& x, const Mat& P,
                           double kkt_tol = 1e-13, std::size_t max_iter = 500);

/// y -> A y + b
struct AffineTerm {
  Mat A;
  Vec b;
};

struct MinimaxOptions {
  /// Smoothing temperatures, relative to the objective scale at y0.
  std::vector<double> temperatures{1.0, 0.1, 0.01, 1e-3};
  /// Continued reduction after the main schedule.
  std::vector<double> polish{1e-4, 1e-5, 1e-6, 1e-7, 1e-8, 1e-9, 1e-10, 1e-11};
  std::size_t max_newton = 100;
};

struct MinimaxResult {
  Vec y;
  double value = 0.0;  ///< exact max_j ||A_j y + b_j||
  std::size_t iterations = 0;
};

/// min_y max_j ||A_j y + b_j||_{p,mu} by log-sum-exp smoothing with
/// temperature continuation and damped Newton steps.
MinimaxResult minimize_max_norm(const Vec& weights, double p,
                                const std::vector<AffineTerm>& terms, const Vec& y0,
                                const MinimaxOptions& options = {});

double max_norm_value(const Vec& weights, double p, const std::vector<AffineTerm>& terms,
                      const Vec& y);

}  // namespace isolab::solve

#endif  // ISOLAB_LP_MINIMIZE_HPP
