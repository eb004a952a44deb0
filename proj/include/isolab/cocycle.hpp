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
#ifndef ISOLAB_COCYCLE_HPP
#define ISOLAB_COCYCLE_HPP

#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "isolab/representation.hpp"

namespace isolab {

/// Cocycle stored on generators; values elsewhere come from
/// c(gh) = rho(g) c(h) + c(g) and c(g^{-1}) = -rho(g^{-1}) c(g).
/// Together with its representation it is the affine action g.x = rho(g)x + c(g).
class Cocycle {
 public:
  Cocycle(Representation rep, std::vector<Vec> values, double tol = 1e-9);

  static Cocycle zero(const Representation& rep);
  /// c(g) = v - rho(g) v.
  static Cocycle coboundary(const Representation& rep, const Vec& v);

  const Representation& rep() const noexcept { return rep_; }
  const std::vector<Vec>& values() const noexcept { return values_; }
  const LpSpace& space() const noexcept { return rep_.space(); }

  Vec extend(const Word& w) const;
  /// w.x = rho(w) x + c(w)
  Vec act(const Word& w, const Vec& x) const;
  double relator_residual() const noexcept { return relator_residual_; }

 private:
  Representation rep_;
  std::vector<Vec> values_;
  double relator_residual_ = 0.0;
};

struct CoboundarySolution {
  Vec v;  ///< least-squares minimal-norm solution of (I - rho(g)) v = c(g)
  double residual = 0.0;  ///< max_g ||c(g) - (v - rho(g) v)||
  bool is_coboundary = false;
};

CoboundarySolution coboundary_solve(const Cocycle& c, double tol = 1e-8);
/// Same, restricted to the listed generator words.
CoboundarySolution coboundary_solve(const Cocycle& c, const std::vector<Word>& words, double tol);

double cocycle_seminorm(const Cocycle& c, const std::vector<Word>& k);

/// Free-reduced words of length <= r over the generators (and inverses) in
/// `generators`, in shortlex order.
std::vector<Word> word_ball(const std::vector<std::size_t>& generators, std::size_t r,
                            std::size_t cap = 100000);

struct OrbitBall {
  std::vector<Vec> points;
  double diameter = 0.0;
  std::size_t words = 0;
  std::size_t radius = 0;
  bool closed = false;  ///< no new points appeared at the last radius
};

/// {w.x0 : |w| <= r}, deduplicated, with exact diameter. Throws
/// limit_exceeded past `cap` enumerated words.
OrbitBall orbit_ball(const Cocycle& c, const Vec& x0, std::size_t r, std::size_t cap = 100000);

struct DisplacementReport {
  double identity_residual = 0.0;  ///< max |(I - rho(h))c(a) - (I - rho(a))c(h)|
  double commutator_residual = 0.0;
  double epsilon = std::numeric_limits<double>::infinity();  ///< gap of H on its complement
  double radius = 0.0;      ///< R = max_{k in K_H} ||c(k)||
  double bound = std::numeric_limits<double>::infinity();  ///< 2R/epsilon
  double max_component = 0.0;  ///< max over A-words of ||p'_H c(a)||
  double max_norm = 0.0;       ///< max over A-words of ||c(a)||
  std::size_t words_checked = 0;
  bool vacuous = false;
  bool pass = false;
};

/// Generators labelled 1 form A, those labelled 2 form H; K_H defaults to
/// the H generators.
DisplacementReport displacement_bound_check(const Cocycle& c, const std::vector<Word>& k_h,
                                            std::size_t max_length = 6, double tol = 1e-6,
                                            std::size_t gap_budget = 64, std::uint64_t seed = 1);

struct MautnerReport {
  std::vector<double> contraction;  ///< ||g^-n h g^n - I|| for n = 0..n_max
  bool applicable = false;
  std::string reason;
  Vec fixed_point;
  double g_residual = 0.0;
  double h_displacement = 0.0;
  bool pass = false;
};

/// Group-side matrices, when given, realize g and h for the contraction
/// test; otherwise the representation itself is used.
MautnerReport mautner_check(const Cocycle& c, const Word& g, const Word& h, std::size_t n_max,
                            double tol, const std::optional<std::pair<Mat, Mat>>& group_side);

}  // namespace isolab

#endif  // ISOLAB_COCYCLE_HPP
