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
#include "isolab/lp_space.hpp"

#include <algorithm>
#include <cmath>

#include "detail.hpp"
#include "isolab/lp_minimize.hpp"

namespace isolab {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::invalid_argument: return "invalid_argument";
    case ErrorCode::dimension_mismatch: return "dimension_mismatch";
    case ErrorCode::refused: return "refused";
    case ErrorCode::not_closed: return "not_closed";
    case ErrorCode::validation: return "validation";
    case ErrorCode::parse: return "parse";
    case ErrorCode::numerical: return "numerical";
    case ErrorCode::limit_exceeded: return "limit_exceeded";
  }
  return "unknown";
}

namespace {

void check_exponent(double p) {
  if (!(p >= 1.0) || !std::isfinite(p))
    fail(ErrorCode::invalid_argument, "exponent must be a finite real >= 1, got " + detail::str(p));
}

}  // namespace

LpSpace::LpSpace(std::size_t dim, double p) : LpSpace(p, Vec::Ones(static_cast<Eigen::Index>(dim))) {}

LpSpace::LpSpace(double p, Vec weights) : p_(p), weights_(std::move(weights)) {
  check_exponent(p_);
  if (weights_.size() < 1) fail(ErrorCode::invalid_argument, "dimension must be at least 1");
  for (Eigen::Index i = 0; i < weights_.size(); ++i) {
    if (!(weights_[i] > 0.0) || !std::isfinite(weights_[i]))
      fail(ErrorCode::invalid_argument,
           "weight " + std::to_string(i) + " must be positive, got " + detail::str(weights_[i]));
  }
}

double LpSpace::conjugate_exponent() const {
  if (p_ == 1.0) fail(ErrorCode::refused, "p = 1 has no reflexive dual exponent");
  return p_ / (p_ - 1.0);
}

LpSpace LpSpace::dual() const { return LpSpace(conjugate_exponent(), weights_); }

LpSpace LpSpace::with_exponent(double q) const { return LpSpace(q, weights_); }

double LpSpace::norm(const Vec& v) const {
  check(v);
  const double m = v.cwiseAbs().maxCoeff();
  if (m == 0.0) return 0.0;
  if (!std::isfinite(m)) return m;
  double acc = 0.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) acc += weights_[i] * std::pow(std::abs(v[i]) / m, p_);
  return m * std::pow(acc, 1.0 / p_);
}

double LpSpace::pairing(const Vec& x, const Vec& functional) const {
  check(x);
  check(functional);
  return (weights_.array() * x.array() * functional.array()).sum();
}

void LpSpace::check(const Vec& v) const {
  if (static_cast<std::size_t>(v.size()) != dim())
    fail(ErrorCode::dimension_mismatch, "vector has " + std::to_string(v.size()) +
                                            " entries, space has dimension " + std::to_string(dim()));
}

bool LpSpace::operator==(const LpSpace& other) const {
  return p_ == other.p_ && weights_.size() == other.weights_.size() && weights_ == other.weights_;
}

Vec duality_map(const LpSpace& space, const Vec& v) {
  space.check(v);
  if (space.p() == 1.0) fail(ErrorCode::refused, "duality map is not single valued at p = 1");
  const double n = space.norm(v);
  if (n == 0.0) fail(ErrorCode::invalid_argument, "duality map of the zero vector");
  const double p = space.p();
  Vec out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double a = std::abs(v[i]) / n;
    out[i] = a == 0.0 ? 0.0 : std::copysign(std::pow(a, p - 1.0), v[i]);
  }
  return out;
}

Vec mazur_map(const LpSpace& space, const Vec& v, double q) {
  space.check(v);
  check_exponent(q);
  const double e = space.p() / q;
  Vec out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i)
    out[i] = v[i] == 0.0 ? 0.0 : std::copysign(std::pow(std::abs(v[i]), e), v[i]);
  return out;
}

QuotientNorm quotient_norm(const LpSpace& space, const Mat& subspace, const Vec& v, double) {
  space.check(v);
  QuotientNorm out;
  if (subspace.cols() == 0) {
    out.value = space.norm(v);
    out.coefficients = Vec();
    out.minimizer = v;
    return out;
  }
  if (static_cast<std::size_t>(subspace.rows()) != space.dim())
    fail(ErrorCode::dimension_mismatch, "subspace basis has the wrong ambient dimension");
  if (numerical_rank(subspace) < static_cast<std::size_t>(subspace.cols()))
    fail(ErrorCode::invalid_argument, "subspace basis is linearly dependent");
  const auto r = solve::minimize_affine_norm(space.weights(), space.p(), v, subspace);
  out.coefficients = r.t;
  out.minimizer = v + subspace * r.t;
  out.value = std::min(space.norm(out.minimizer), space.norm(v));
  return out;
}

GramReport schoenberg_gram(const std::vector<Vec>& points, double s, const LpSpace& space) {
  if (!(s > 0.0)) fail(ErrorCode::invalid_argument, "kernel scale s must be positive");
  if (points.empty()) fail(ErrorCode::invalid_argument, "at least one point is required");
  const auto m = static_cast<Eigen::Index>(points.size());
  GramReport out;
  out.gram = Mat::Ones(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = i + 1; j < m; ++j) {
      const double d = space.distance(points[i], points[j]);
      out.gram(i, j) = out.gram(j, i) = std::exp(-s * std::pow(d, space.p()));
    }
  }
  Eigen::SelfAdjointEigenSolver<Mat> eig(out.gram, Eigen::EigenvaluesOnly);
  out.min_eigenvalue = eig.eigenvalues().minCoeff();
  return out;
}

SchoenbergWitness schoenberg_search(double p, std::size_t trials, std::uint64_t seed,
                                    double threshold, std::size_t max_points,
                                    std::size_t max_dim) {
  check_exponent(p);
  if (max_points < 2 || max_dim < 1)
    fail(ErrorCode::invalid_argument, "search needs at least two points and one dimension");
  detail::Rng rng(seed);
  SchoenbergWitness best;
  for (std::size_t t = 0; t < trials; ++t) {
    const std::size_t d = 1 + rng.index(max_dim);
    const std::size_t m = 2 + rng.index(max_points - 1);
    const double s = std::pow(10.0, rng.uniform(-1.0, 2.0));
    const LpSpace space(d, p);
    std::vector<Vec> pts;
    for (std::size_t i = 0; i < m; ++i) pts.push_back(rng.uniform_vector(static_cast<Eigen::Index>(d), -1.0, 1.0));
    const double lam = schoenberg_gram(pts, s, space).min_eigenvalue;
    best.trials_used = t + 1;
    if (lam < best.min_eigenvalue || best.points.empty()) {
      best.points = pts;
      best.s = s;
      best.min_eigenvalue = lam;
      best.dim = d;
    }
    if (lam < -threshold) {
      best.found = true;
      return best;
    }
  }
  return best;
}

std::size_t numerical_rank(const Mat& a, double rel_tol) {
  if (a.size() == 0) return 0;
  Eigen::JacobiSVD<Mat> svd(a);
  const Vec& s = svd.singularValues();
  if (s.size() == 0 || s[0] == 0.0) return 0;
  std::size_t r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s[i] > rel_tol * s[0]) ++r;
  return r;
}

Mat null_space(const Mat& a, double rel_tol) {
  const Eigen::Index n = a.cols();
  if (a.rows() == 0) return Mat::Identity(n, n);
  Eigen::JacobiSVD<Mat> svd(a, Eigen::ComputeFullV);
  const Vec& s = svd.singularValues();
  Eigen::Index r = 0;
  if (s.size() > 0 && s[0] > 0.0)
    for (Eigen::Index i = 0; i < s.size(); ++i)
      if (s[i] > rel_tol * s[0]) ++r;
  return svd.matrixV().rightCols(n - r);
}

Mat column_space(const Mat& a, double rel_tol) {
  if (a.cols() == 0) return Mat(a.rows(), 0);
  Eigen::JacobiSVD<Mat> svd(a, Eigen::ComputeFullU);
  const Vec& s = svd.singularValues();
  Eigen::Index r = 0;
  if (s.size() > 0 && s[0] > 0.0)
    for (Eigen::Index i = 0; i < s.size(); ++i)
      if (s[i] > rel_tol * s[0]) ++r;
  return svd.matrixU().leftCols(r);
}

}  // namespace isolab
