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
#ifndef ISOLAB_REPRESENTATION_HPP
#define ISOLAB_REPRESENTATION_HPP

#include <cstdint>
#include <limits>
#include <vector>

#include "isolab/group.hpp"
#include "isolab/lamperti.hpp"
#include "isolab/lp_space.hpp"

namespace isolab {

/// Linear isometric representation, stored as one matrix per generator.
/// Construction validates isometry on samples and the group relators.
class Representation {
 public:
  Representation(Group group, LpSpace space, std::vector<Mat> images, double tol = 1e-9);
  Representation(Group group, const std::vector<LampertiIsometry>& images, double tol = 1e-9);

  const Group& group() const noexcept { return group_; }
  const LpSpace& space() const noexcept { return space_; }
  const std::vector<Mat>& images() const noexcept { return images_; }
  const Mat& image(std::size_t generator) const { return images_.at(generator); }
  const Mat& inverse_image(std::size_t generator) const { return inverses_.at(generator); }
  std::size_t dim() const noexcept { return space_.dim(); }

  Mat word_matrix(const Word& w) const;
  Vec act(const Word& w, const Vec& v) const;
  /// Matrix of every element of a table group, by element index.
  std::vector<Mat> element_matrices() const;

  double relation_residual() const noexcept { return relation_residual_; }
  double isometry_residual() const noexcept { return isometry_residual_; }

 private:
  Group group_;
  LpSpace space_;
  std::vector<Mat> images_;
  std::vector<Mat> inverses_;
  double relation_residual_ = 0.0;
  double isometry_residual_ = 0.0;
};

/// Common null space of (A_i - I), l2-orthonormal columns.
Mat fixed_subspace(const std::vector<Mat>& images, std::size_t dim);
Mat fixed_subspace(const Representation& rep);

/// Pairing adjoints M^{-1} A^{-T} M, acting on the dual space.
std::vector<Mat> dual_images(const LpSpace& space, const std::vector<Mat>& images);
Representation dual_rep(const Representation& rep);

struct Complement {
  Mat fixed;       ///< basis of the fixed subspace
  Mat dual_fixed;  ///< basis of the dual fixed subspace
  Mat complement;  ///< basis of B', the annihilator of dual_fixed
  Mat proj;        ///< projection onto the fixed subspace along B'
  Mat proj_complement;
};

Complement canonical_complement(const LpSpace& space, const std::vector<Mat>& images);
Complement canonical_complement(const Representation& rep);

struct Functoriality {
  double intertwining = 0.0;  ///< max |phi A1(g) - A2(g) phi|
  double fixed_square = 0.0;  ///< max |phi p1 - p2 phi|
  double complement_square = 0.0;
};

/// phi: rep1.space -> rep2.space, given as a rep2.dim x rep1.dim matrix.
Functoriality functoriality_check(const Mat& phi, const Representation& rep1,
                                  const Representation& rep2, double tol = 1e-9);

struct ProductDecomposition {
  Mat fixed;  ///< fixed by the whole group
  Mat b0;     ///< in the complement of both factors
  Mat b1;     ///< fixed by G1, in the complement of G2
  Mat b2;     ///< fixed by G2, in the complement of G1
  Mat proj1;  ///< projection onto the G1-fixed vectors
  Mat proj2;
  double commutator_residual = 0.0;
  double span_residual = 0.0;  ///< max over i of the span mismatch in B^{G_i} = fixed + b_i
};

/// Uses the factor labels of the group's generators (1 or 2).
ProductDecomposition product_decomposition(const Representation& rep, double tol = 1e-10);

/// Indices of generators with the given factor label.
std::vector<std::size_t> factor_generators(const Group& group, int label);

struct GapEstimate {
  double upper = std::numeric_limits<double>::infinity();
  double heuristic_lower = std::numeric_limits<double>::infinity();
  Vec witness;  ///< unit vector of B' (empty for the +inf sentinel)
  std::size_t complement_dim = 0;
  std::size_t evaluations = 0;
};

/// inf over unit v in B' of max_{k in K} ||rho(k) v - v||, estimated from above.
/// `budget` is the number of random restarts.
GapEstimate kazhdan_gap(const Representation& rep, const std::vector<Word>& k,
                        std::size_t budget = 64, std::uint64_t seed = 1);
GapEstimate kazhdan_gap(const LpSpace& space, const std::vector<Mat>& k_images,
                        const Mat& complement, std::size_t budget, std::uint64_t seed);

/// Max displacement ratio max_k ||rho(k) v - v|| / ||v||.
double displacement_ratio(const LpSpace& space, const std::vector<Mat>& k_images, const Vec& v);

struct ZeroMeanRep {
  Representation rep;  ///< on the full l^p(mu), Radon-Nikodym twisted
  Mat zero_mean;       ///< basis of {f : sum mu_i f_i = 0}
};

/// Permutation action of the group generated by `perms` on atoms with
/// masses `weights`, twisted by the p-th root of the mass ratio.
ZeroMeanRep zero_mean_rep(const std::vector<std::vector<int>>& perms, const Vec& weights, double p);

struct IndicatorDisplacement {
  Vec f;              ///< 2 1_E - 1
  double mean = 0.0;  ///< sum mu_i f_i
  double ratio = 0.0; ///< max_k ||rho(k) f - f|| / ||f||
};

IndicatorDisplacement indicator_displacement(const Representation& rep,
                                             const std::vector<std::size_t>& subset);

}  // namespace isolab

#endif  // ISOLAB_REPRESENTATION_HPP
