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
#include "isolab/representation.hpp"

#include <algorithm>
#include <cmath>

#include "detail.hpp"

namespace isolab {

namespace {

double max_abs(const Mat& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

Mat orthonormal_columns(const Mat& a) { return column_space(a, 1e-8); }

// Largest entry of the difference of the orthogonal projectors onto two spans.
double span_mismatch(const Mat& a, const Mat& b) {
  const Mat qa = orthonormal_columns(a);
  const Mat qb = orthonormal_columns(b);
  if (qa.cols() != qb.cols()) return 1.0;
  if (qa.cols() == 0) return 0.0;
  return max_abs(qa * qa.transpose() - qb * qb.transpose());
}

Mat hcat(const Mat& a, const Mat& b) {
  Mat out(a.rows(), a.cols() + b.cols());
  out << a, b;
  return out;
}

}  // namespace

Representation::Representation(Group group, LpSpace space, std::vector<Mat> images, double tol)
    : group_(std::move(group)), space_(std::move(space)), images_(std::move(images)) {
  const auto n = static_cast<Eigen::Index>(space_.dim());
  if (images_.size() != group_.generator_count())
    fail(ErrorCode::validation, "representation has " + std::to_string(images_.size()) +
                                    " images for " + std::to_string(group_.generator_count()) +
                                    " generators");
  for (std::size_t i = 0; i < images_.size(); ++i) {
    const Mat& a = images_[i];
    if (a.rows() != n || a.cols() != n)
      fail(ErrorCode::dimension_mismatch, "image of '" + group_.names()[i] + "' has the wrong shape");
    Eigen::FullPivLU<Mat> lu(a);
    if (!lu.isInvertible())
      fail(ErrorCode::validation, "image of '" + group_.names()[i] + "' is not invertible");
    inverses_.push_back(lu.inverse());
  }

  detail::Rng rng(0x5eedULL);
  std::vector<Vec> samples;
  for (Eigen::Index j = 0; j < n; ++j) samples.push_back(Vec::Unit(n, j));
  for (int s = 0; s < 16; ++s) samples.push_back(rng.normal_vector(n));
  for (std::size_t i = 0; i < images_.size(); ++i) {
    for (const Vec& x : samples) {
      const double nx = space_.norm(x);
      const double dev = std::abs(space_.norm(images_[i] * x) - nx) / nx;
      isometry_residual_ = std::max(isometry_residual_, dev);
    }
  }
  if (isometry_residual_ > 0.1 * tol)
    fail(ErrorCode::validation,
         "generator images are not isometric (deviation " + detail::str(isometry_residual_) + ")");

  const Mat id = Mat::Identity(n, n);
  for (const Word& r : group_.relators())
    relation_residual_ = std::max(relation_residual_, max_abs(word_matrix(r) - id));
  if (relation_residual_ > tol)
    fail(ErrorCode::validation,
         "relators are not satisfied (residual " + detail::str(relation_residual_) + ")");
}

namespace {

const LpSpace& common_space(const std::vector<LampertiIsometry>& images) {
  if (images.empty()) fail(ErrorCode::validation, "no generator images");
  return images.front().source();
}

std::vector<Mat> lamperti_matrices(const std::vector<LampertiIsometry>& images) {
  std::vector<Mat> out;
  for (const auto& u : images) {
    if (!(u.source() == images.front().source()) || !(u.target() == u.source()))
      fail(ErrorCode::validation, "all images must act on one common space");
    out.push_back(u.matrix());
  }
  return out;
}

}  // namespace

Representation::Representation(Group group, const std::vector<LampertiIsometry>& images, double tol)
    : Representation(std::move(group), common_space(images), lamperti_matrices(images), tol) {}

Mat Representation::word_matrix(const Word& w) const {
  const auto n = static_cast<Eigen::Index>(dim());
  Mat out = Mat::Identity(n, n);
  for (int l : w) {
    const auto g = static_cast<std::size_t>(std::abs(l)) - 1;
    if (g >= images_.size()) fail(ErrorCode::invalid_argument, "word uses an unknown generator");
    out = out * (l > 0 ? images_[g] : inverses_[g]);
  }
  return out;
}

Vec Representation::act(const Word& w, const Vec& v) const {
  space_.check(v);
  Vec out = v;
  for (auto it = w.rbegin(); it != w.rend(); ++it) {
    const auto g = static_cast<std::size_t>(std::abs(*it)) - 1;
    if (g >= images_.size()) fail(ErrorCode::invalid_argument, "word uses an unknown generator");
    out = (*it > 0 ? images_[g] : inverses_[g]) * out;
  }
  return out;
}

std::vector<Mat> Representation::element_matrices() const {
  if (!group_.is_table()) fail(ErrorCode::refused, "element enumeration needs a table-backed group");
  std::vector<Mat> out;
  for (std::size_t e = 0; e < group_.order(); ++e)
    out.push_back(word_matrix(group_.element_word(static_cast<int>(e))));
  return out;
}

Mat fixed_subspace(const std::vector<Mat>& images, std::size_t dim) {
  const auto n = static_cast<Eigen::Index>(dim);
  if (images.empty()) return Mat::Identity(n, n);
  Mat stacked(n * static_cast<Eigen::Index>(images.size()), n);
  for (std::size_t i = 0; i < images.size(); ++i)
    stacked.middleRows(static_cast<Eigen::Index>(i) * n, n) = images[i] - Mat::Identity(n, n);
  if (max_abs(stacked) <= 1e-13) return Mat::Identity(n, n);
  return null_space(stacked, 1e-10);
}

Mat fixed_subspace(const Representation& rep) { return fixed_subspace(rep.images(), rep.dim()); }

std::vector<Mat> dual_images(const LpSpace& space, const std::vector<Mat>& images) {
  if (space.p() == 1.0) fail(ErrorCode::refused, "dual representation needs p > 1");
  const Vec& w = space.weights();
  std::vector<Mat> out;
  for (const Mat& a : images) {
    const Mat inv = Eigen::FullPivLU<Mat>(a).inverse();
    out.push_back(w.cwiseInverse().asDiagonal() * inv.transpose() * w.asDiagonal());
  }
  return out;
}

Representation dual_rep(const Representation& rep) {
  return Representation(rep.group(), rep.space().dual(), dual_images(rep.space(), rep.images()));
}

Complement canonical_complement(const LpSpace& space, const std::vector<Mat>& images) {
  if (space.p() == 1.0) fail(ErrorCode::refused, "canonical complement needs p > 1");
  const auto n = static_cast<Eigen::Index>(space.dim());
  Complement c;
  c.fixed = fixed_subspace(images, space.dim());
  c.dual_fixed = fixed_subspace(dual_images(space, images), space.dim());
  if (c.fixed.cols() != c.dual_fixed.cols())
    fail(ErrorCode::numerical, "fixed and dual fixed subspaces have different dimensions");
  const Mat M = space.weights().asDiagonal();
  if (c.dual_fixed.cols() == 0) {
    c.complement = Mat::Identity(n, n);
    c.proj = Mat::Zero(n, n);
  } else {
    const Mat annihilate = c.dual_fixed.transpose() * M;
    c.complement = null_space(annihilate, 1e-10);
    const Mat pair = annihilate * c.fixed;
    c.proj = c.fixed * pair.fullPivLu().solve(annihilate);
  }
  c.proj_complement = Mat::Identity(n, n) - c.proj;
  return c;
}

Complement canonical_complement(const Representation& rep) {
  return canonical_complement(rep.space(), rep.images());
}

Functoriality functoriality_check(const Mat& phi, const Representation& rep1,
                                  const Representation& rep2, double tol) {
  if (phi.rows() != static_cast<Eigen::Index>(rep2.dim()) ||
      phi.cols() != static_cast<Eigen::Index>(rep1.dim()))
    fail(ErrorCode::dimension_mismatch, "intertwiner has the wrong shape");
  if (rep1.group().generator_count() != rep2.group().generator_count())
    fail(ErrorCode::invalid_argument, "representations are of different groups");
  Functoriality out;
  for (std::size_t i = 0; i < rep1.images().size(); ++i)
    out.intertwining = std::max(out.intertwining, max_abs(phi * rep1.image(i) - rep2.image(i) * phi));
  if (out.intertwining > tol)
    fail(ErrorCode::invalid_argument,
         "map is not an intertwiner (residual " + detail::str(out.intertwining) + ")");
  const Complement c1 = canonical_complement(rep1);
  const Complement c2 = canonical_complement(rep2);
  out.fixed_square = max_abs(phi * c1.proj - c2.proj * phi);
  out.complement_square = max_abs(phi * c1.proj_complement - c2.proj_complement * phi);
  return out;
}

std::vector<std::size_t> factor_generators(const Group& group, int label) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < group.factor().size(); ++i)
    if (group.factor()[i] == label) out.push_back(i);
  return out;
}

ProductDecomposition product_decomposition(const Representation& rep, double tol) {
  const auto g1 = factor_generators(rep.group(), 1);
  const auto g2 = factor_generators(rep.group(), 2);
  if (g1.size() + g2.size() != rep.group().generator_count())
    fail(ErrorCode::invalid_argument, "every generator needs a factor label 1 or 2");
  std::vector<Mat> a1, a2;
  for (auto i : g1) a1.push_back(rep.image(i));
  for (auto i : g2) a2.push_back(rep.image(i));

  ProductDecomposition out;
  for (const Mat& x : a1)
    for (const Mat& y : a2) out.commutator_residual = std::max(out.commutator_residual, max_abs(x * y - y * x));
  if (out.commutator_residual > tol)
    fail(ErrorCode::invalid_argument,
         "factors do not commute (residual " + detail::str(out.commutator_residual) + ")");

  const auto n = static_cast<Eigen::Index>(rep.dim());
  const Mat id = Mat::Identity(n, n);
  out.proj1 = canonical_complement(rep.space(), a1).proj;
  out.proj2 = canonical_complement(rep.space(), a2).proj;
  out.fixed = orthonormal_columns(out.proj1 * out.proj2);
  out.b1 = orthonormal_columns(out.proj1 * (id - out.proj2));
  out.b2 = orthonormal_columns((id - out.proj1) * out.proj2);
  out.b0 = orthonormal_columns((id - out.proj1) * (id - out.proj2));
  out.span_residual = std::max(span_mismatch(hcat(out.fixed, out.b1), out.proj1),
                               span_mismatch(hcat(out.fixed, out.b2), out.proj2));
  return out;
}

ZeroMeanRep zero_mean_rep(const std::vector<std::vector<int>>& perms, const Vec& weights, double p) {
  const LpSpace space(p, weights);
  std::vector<std::string> names;
  for (std::size_t i = 0; i < perms.size(); ++i) names.push_back("g" + std::to_string(i));
  for (const auto& pm : perms)
    if (pm.size() != space.dim())
      fail(ErrorCode::dimension_mismatch, "permutation length differs from the number of atoms");
  Group group = Group::from_permutations(names, perms);
  std::vector<LampertiIsometry> images;
  for (const auto& pm : perms) {
    // (rho(g) f)(x) = f(g^{-1} x) twisted by the mass ratio.
    std::vector<std::size_t> sigma(pm.size());
    for (std::size_t x = 0; x < pm.size(); ++x) sigma[static_cast<std::size_t>(pm[x])] = x;
    images.emplace_back(sigma, std::vector<int>(pm.size(), 1), space, space);
  }
  Representation rep(std::move(group), images);
  Mat zero_mean = null_space(weights.transpose(), 1e-12);
  return ZeroMeanRep{std::move(rep), std::move(zero_mean)};
}

double displacement_ratio(const LpSpace& space, const std::vector<Mat>& k_images, const Vec& v) {
  const double nv = space.norm(v);
  if (nv == 0.0) fail(ErrorCode::invalid_argument, "displacement ratio of the zero vector");
  double worst = 0.0;
  for (const Mat& a : k_images) worst = std::max(worst, space.norm(a * v - v));
  return worst / nv;
}

IndicatorDisplacement indicator_displacement(const Representation& rep,
                                             const std::vector<std::size_t>& subset) {
  const auto n = static_cast<Eigen::Index>(rep.dim());
  std::vector<bool> in(static_cast<std::size_t>(n), false);
  for (auto i : subset) {
    if (i >= static_cast<std::size_t>(n)) fail(ErrorCode::invalid_argument, "subset index out of range");
    in[i] = true;
  }
  const auto count = std::count(in.begin(), in.end(), true);
  if (count == 0 || count == n)
    fail(ErrorCode::invalid_argument, "subset must be nonempty and proper, else 2 1_E - 1 is constant");
  IndicatorDisplacement out;
  out.f = Vec(n);
  for (Eigen::Index i = 0; i < n; ++i) out.f[i] = in[static_cast<std::size_t>(i)] ? 1.0 : -1.0;
  out.mean = rep.space().weights().dot(out.f);
  std::vector<Mat> k;
  for (const Word& w : rep.group().k_set()) k.push_back(rep.word_matrix(w));
  out.ratio = displacement_ratio(rep.space(), k, out.f);
  return out;
}

}  // namespace isolab
