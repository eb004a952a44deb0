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
#include "isolab/lamperti.hpp"

#include <algorithm>
#include <cmath>

#include "detail.hpp"

namespace isolab {

LampertiIsometry::LampertiIsometry(std::vector<std::size_t> sigma, std::vector<int> signs,
                                   LpSpace source, LpSpace target)
    : sigma_(std::move(sigma)), signs_(std::move(signs)), source_(std::move(source)),
      target_(std::move(target)) {
  const std::size_t n = sigma_.size();
  if (source_.dim() != n || target_.dim() != n || signs_.size() != n)
    fail(ErrorCode::dimension_mismatch, "permutation, signs and spaces must share one dimension");
  if (source_.p() != target_.p())
    fail(ErrorCode::invalid_argument, "source and target exponents differ");
  std::vector<bool> seen(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    if (sigma_[i] >= n || seen[sigma_[i]])
      fail(ErrorCode::invalid_argument, "sigma is not a permutation of 0.." + std::to_string(n - 1));
    seen[sigma_[i]] = true;
    if (signs_[i] != 1 && signs_[i] != -1)
      fail(ErrorCode::invalid_argument, "signs must be +1 or -1");
  }
}

LampertiIsometry LampertiIsometry::identity(const LpSpace& space) {
  std::vector<std::size_t> sigma(space.dim());
  for (std::size_t i = 0; i < sigma.size(); ++i) sigma[i] = i;
  return LampertiIsometry(sigma, std::vector<int>(space.dim(), 1), space, space);
}

Vec LampertiIsometry::apply(const Vec& v) const {
  source_.check(v);
  const double inv_p = 1.0 / source_.p();
  Vec out(v.size());
  for (std::size_t i = 0; i < sigma_.size(); ++i) {
    const auto j = static_cast<Eigen::Index>(sigma_[i]);
    const auto ii = static_cast<Eigen::Index>(i);
    const double w = source_.weights()[j] == target_.weights()[ii]
                         ? 1.0
                         : std::pow(source_.weights()[j] / target_.weights()[ii], inv_p);
    out[ii] = signs_[i] * w * v[j];
  }
  return out;
}

Mat LampertiIsometry::matrix() const {
  const auto n = static_cast<Eigen::Index>(dim());
  Mat m = Mat::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    Vec e = Vec::Zero(n);
    e[j] = 1.0;
    m.col(j) = apply(e);
  }
  return m;
}

bool LampertiIsometry::operator==(const LampertiIsometry& other) const {
  return sigma_ == other.sigma_ && signs_ == other.signs_ && source_ == other.source_ &&
         target_ == other.target_;
}

LampertiIsometry compose(const LampertiIsometry& u, const LampertiIsometry& v) {
  if (!(v.target() == u.source()))
    fail(ErrorCode::invalid_argument, "cannot compose: target of the inner map is not the source of the outer");
  const std::size_t n = u.dim();
  std::vector<std::size_t> pi(n);
  std::vector<int> signs(n);
  for (std::size_t i = 0; i < n; ++i) {
    pi[i] = v.sigma()[u.sigma()[i]];
    signs[i] = u.signs()[i] * v.signs()[u.sigma()[i]];
  }
  return LampertiIsometry(pi, signs, v.source(), u.target());
}

LampertiIsometry inverse(const LampertiIsometry& u) {
  const std::size_t n = u.dim();
  std::vector<std::size_t> inv(n);
  std::vector<int> signs(n);
  for (std::size_t i = 0; i < n; ++i) inv[u.sigma()[i]] = i;
  for (std::size_t j = 0; j < n; ++j) signs[j] = u.signs()[inv[j]];
  return LampertiIsometry(inv, signs, u.target(), u.source());
}

LampertiIsometry mazur_conjugate(const LampertiIsometry& u) {
  return LampertiIsometry(u.sigma(), u.signs(), u.source().with_exponent(2.0),
                          u.target().with_exponent(2.0));
}

Vec mazur_conjugate_apply(const LampertiIsometry& u, const Vec& v) {
  const LpSpace src2 = u.source().with_exponent(2.0);
  const Vec x = mazur_map(src2, v, u.source().p());
  const Vec ux = u.apply(x);
  return mazur_map(u.target(), ux, 2.0);
}

InvariantNorm::InvariantNorm(std::vector<Mat> maps, LpSpace base, double tol)
    : maps_(std::move(maps)), base_(std::move(base)) {
  const auto n = static_cast<Eigen::Index>(base_.dim());
  if (maps_.empty()) fail(ErrorCode::invalid_argument, "group must contain at least the identity");
  for (const Mat& m : maps_)
    if (m.rows() != n || m.cols() != n)
      fail(ErrorCode::dimension_mismatch, "group element has the wrong shape");
  auto member = [&](const Mat& x) {
    return std::any_of(maps_.begin(), maps_.end(), [&](const Mat& m) {
      return (m - x).cwiseAbs().maxCoeff() <= tol * (1.0 + x.cwiseAbs().maxCoeff());
    });
  };
  if (!member(Mat::Identity(n, n))) fail(ErrorCode::not_closed, "identity is missing from the group");
  for (std::size_t a = 0; a < maps_.size(); ++a)
    for (std::size_t b = 0; b < maps_.size(); ++b)
      if (!member(maps_[a] * maps_[b]))
        fail(ErrorCode::not_closed, "product of elements " + std::to_string(a) + " and " +
                                        std::to_string(b) + " is not in the list");

  detail::Rng rng(0x1505ULL);
  for (const Mat& m : maps_) {
    for (Eigen::Index j = 0; j < n; ++j) {
      Vec e = Vec::Zero(n);
      e[j] = 1.0;
      bound_ = std::max(bound_, base_.norm(m * e) / base_.norm(e));
    }
    for (int s = 0; s < 200; ++s) {
      const Vec x = detail::unit_vector(base_, rng);
      bound_ = std::max(bound_, base_.norm(m * x));
    }
  }
}

double InvariantNorm::operator()(const Vec& v) const {
  base_.check(v);
  double out = 0.0;
  for (const Mat& m : maps_) out = std::max(out, base_.norm(m * v));
  return out;
}

}  // namespace isolab
