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
#ifndef ISOLAB_LAMPERTI_HPP
#define ISOLAB_LAMPERTI_HPP

#include <cstddef>
#include <vector>

#include "isolab/lp_space.hpp"

namespace isolab {

/// Signed weighted permutation (Uv)_i = s_i (mu_{sigma(i)}/nu_i)^{1/p} v_{sigma(i)}
/// from l^p(mu) onto l^p(nu).
class LampertiIsometry {
 public:
  LampertiIsometry(std::vector<std::size_t> sigma, std::vector<int> signs, LpSpace source,
                   LpSpace target);

  static LampertiIsometry identity(const LpSpace& space);

  const std::vector<std::size_t>& sigma() const noexcept { return sigma_; }
  const std::vector<int>& signs() const noexcept { return signs_; }
  const LpSpace& source() const noexcept { return source_; }
  const LpSpace& target() const noexcept { return target_; }
  std::size_t dim() const noexcept { return sigma_.size(); }

  Vec apply(const Vec& v) const;
  Mat matrix() const;

  bool operator==(const LampertiIsometry& other) const;

 private:
  std::vector<std::size_t> sigma_;
  std::vector<int> signs_;
  LpSpace source_;
  LpSpace target_;
};

/// u after v. Requires v.target() == u.source().
LampertiIsometry compose(const LampertiIsometry& u, const LampertiIsometry& v);
LampertiIsometry inverse(const LampertiIsometry& u);

/// Closed form of M_{p,2} o U o M_{2,p}: same permutation and signs, density
/// power 1/2, acting l^2(mu) -> l^2(nu).
LampertiIsometry mazur_conjugate(const LampertiIsometry& u);

/// Evaluates M_{p,2}(U(M_{2,p}(v))) literally, through the nonlinear maps.
Vec mazur_conjugate_apply(const LampertiIsometry& u, const Vec& v);

/// Group-averaged norm ||x||' = max_g ||g x|| over a finite matrix group.
class InvariantNorm {
 public:
  /// Throws not_closed unless `maps` is closed under composition and
  /// contains the identity (entrywise tolerance `tol`).
  InvariantNorm(std::vector<Mat> maps, LpSpace base, double tol = 1e-9);

  double operator()(const Vec& v) const;
  const std::vector<Mat>& maps() const noexcept { return maps_; }
  const LpSpace& base() const noexcept { return base_; }
  /// C = max_g ||g||_{op}, estimated by maximizing over sampled directions.
  double bound() const noexcept { return bound_; }

 private:
  std::vector<Mat> maps_;
  LpSpace base_;
  double bound_ = 1.0;
};

}  // namespace isolab

#endif  // ISOLAB_LAMPERTI_HPP
