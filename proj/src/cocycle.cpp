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
#include "isolab/cocycle.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "detail.hpp"

namespace isolab {

Cocycle::Cocycle(Representation rep, std::vector<Vec> values, double tol)
    : rep_(std::move(rep)), values_(std::move(values)) {
  if (values_.size() != rep_.group().generator_count())
    fail(ErrorCode::validation, "cocycle has " + std::to_string(values_.size()) + " values for " +
                                    std::to_string(rep_.group().generator_count()) + " generators");
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (static_cast<std::size_t>(values_[i].size()) != rep_.dim())
      fail(ErrorCode::dimension_mismatch,
           "cocycle value of '" + rep_.group().names()[i] + "' has the wrong length");
    if (!values_[i].allFinite()) fail(ErrorCode::validation, "cocycle value is not finite");
  }
  for (const Word& r : rep_.group().relators())
    relator_residual_ = std::max(relator_residual_, space().norm(extend(r)));
  if (relator_residual_ > tol)
    fail(ErrorCode::validation,
         "cocycle identity fails on a relator (residual " + detail::str(relator_residual_) + ")");
}

Cocycle Cocycle::zero(const Representation& rep) {
  return Cocycle(rep, std::vector<Vec>(rep.group().generator_count(),
                                       Vec::Zero(static_cast<Eigen::Index>(rep.dim()))));
}

Cocycle Cocycle::coboundary(const Representation& rep, const Vec& v) {
  rep.space().check(v);
  std::vector<Vec> values;
  for (const Mat& a : rep.images()) values.push_back(v - a * v);
  return Cocycle(rep, std::move(values));
}

Vec Cocycle::extend(const Word& w) const {
  Vec acc = Vec::Zero(static_cast<Eigen::Index>(rep_.dim()));
  for (auto it = w.rbegin(); it != w.rend(); ++it) {
    const auto g = static_cast<std::size_t>(std::abs(*it)) - 1;
    if (g >= values_.size()) fail(ErrorCode::invalid_argument, "word uses an unknown generator");
    if (*it > 0) {
      acc = values_[g] + rep_.image(g) * acc;
    } else {
      const Mat& inv = rep_.inverse_image(g);
      acc = inv * (acc - values_[g]);
    }
  }
  return acc;
}

Vec Cocycle::act(const Word& w, const Vec& x) const { return rep_.act(w, x) + extend(w); }

CoboundarySolution coboundary_solve(const Cocycle& c, const std::vector<Word>& words, double tol) {
  const auto n = static_cast<Eigen::Index>(c.rep().dim());
  CoboundarySolution out;
  out.v = Vec::Zero(n);
  if (words.empty()) {
    out.is_coboundary = true;
    return out;
  }
  const auto m = static_cast<Eigen::Index>(words.size());
  Mat a(n * m, n);
  Vec b(n * m);
  std::vector<Mat> mats;
  std::vector<Vec> vals;
  for (Eigen::Index i = 0; i < m; ++i) {
    mats.push_back(c.rep().word_matrix(words[static_cast<std::size_t>(i)]));
    vals.push_back(c.extend(words[static_cast<std::size_t>(i)]));
    a.middleRows(i * n, n) = Mat::Identity(n, n) - mats.back();
    b.segment(i * n, n) = vals.back();
  }
  out.v = a.completeOrthogonalDecomposition().solve(b);
  for (Eigen::Index i = 0; i < m; ++i) {
    const Vec r = vals[static_cast<std::size_t>(i)] - (out.v - mats[static_cast<std::size_t>(i)] * out.v);
    out.residual = std::max(out.residual, c.space().norm(r));
  }
  out.is_coboundary = out.residual <= tol;
  return out;
}

CoboundarySolution coboundary_solve(const Cocycle& c, double tol) {
  std::vector<Word> gens;
  for (std::size_t i = 0; i < c.rep().group().generator_count(); ++i)
    gens.push_back(Word{static_cast<int>(i) + 1});
  return coboundary_solve(c, gens, tol);
}

double cocycle_seminorm(const Cocycle& c, const std::vector<Word>& k) {
  if (k.empty()) fail(ErrorCode::invalid_argument, "K must be nonempty");
  double out = 0.0;
  for (const Word& w : k) out = std::max(out, c.space().norm(c.extend(w)));
  return out;
}

std::vector<Word> word_ball(const std::vector<std::size_t>& generators, std::size_t r,
                            std::size_t cap) {
  std::vector<int> letters;
  for (auto g : generators) {
    letters.push_back(static_cast<int>(g) + 1);
    letters.push_back(-(static_cast<int>(g) + 1));
  }
  std::vector<Word> out{Word{}};
  std::size_t begin = 0;
  for (std::size_t len = 1; len <= r; ++len) {
    const std::size_t end = out.size();
    for (std::size_t i = begin; i < end; ++i) {
      for (int l : letters) {
        if (!out[i].empty() && out[i].back() == -l) continue;
        if (out.size() >= cap) fail(ErrorCode::limit_exceeded, "word ball exceeds the cap of " + std::to_string(cap));
        Word w = out[i];
        w.push_back(l);
        out.push_back(std::move(w));
      }
    }
    begin = end;
  }
  return out;
}

namespace {

// Point set with approximate deduplication, bucketed by first coordinate.
class PointSet {
 public:
  explicit PointSet(double tol) : tol_(tol) {}

  bool insert(const Vec& x) {
    const auto lo = index_.lower_bound(x[0] - tol_);
    const auto hi = index_.upper_bound(x[0] + tol_);
    for (auto it = lo; it != hi; ++it)
      if ((points_[it->second] - x).cwiseAbs().maxCoeff() <= tol_) return false;
    index_.emplace(x[0], points_.size());
    points_.push_back(x);
    return true;
  }
  const std::vector<Vec>& points() const { return points_; }

 private:
  double tol_;
  std::multimap<double, std::size_t> index_;
  std::vector<Vec> points_;
};

}  // namespace

OrbitBall orbit_ball(const Cocycle& c, const Vec& x0, std::size_t r, std::size_t cap) {
  c.space().check(x0);
  const std::size_t k = c.rep().group().generator_count();
  double scale = 1.0 + x0.cwiseAbs().maxCoeff();
  for (const Vec& v : c.values()) scale = std::max(scale, 1.0 + v.cwiseAbs().maxCoeff());
  PointSet set(1e-12 * scale);
  set.insert(x0);
  OrbitBall out;
  out.words = 1;
  std::vector<Vec> frontier{x0};
  for (std::size_t rad = 1; rad <= r; ++rad) {
    std::vector<Vec> next;
    for (const Vec& x : frontier) {
      for (std::size_t g = 0; g < k; ++g) {
        for (int sgn : {1, -1}) {
          if (++out.words > cap)
            fail(ErrorCode::limit_exceeded, "orbit enumeration exceeds the cap of " + std::to_string(cap) + " words");
          const Vec y = c.act(Word{sgn * (static_cast<int>(g) + 1)}, x);
          if (set.insert(y)) next.push_back(y);
        }
      }
    }
    out.radius = rad;
    frontier = std::move(next);
    if (frontier.empty()) {
      out.closed = true;
      break;
    }
  }
  out.points = set.points();
  for (std::size_t i = 0; i < out.points.size(); ++i)
    for (std::size_t j = i + 1; j < out.points.size(); ++j)
      out.diameter = std::max(out.diameter, c.space().distance(out.points[i], out.points[j]));
  return out;
}

DisplacementReport displacement_bound_check(const Cocycle& c, const std::vector<Word>& k_h,
                                            std::size_t max_length, double tol,
                                            std::size_t gap_budget, std::uint64_t seed) {
  const Representation& rep = c.rep();
  const auto a_gens = factor_generators(rep.group(), 1);
  const auto h_gens = factor_generators(rep.group(), 2);
  if (a_gens.empty() || h_gens.empty())
    fail(ErrorCode::invalid_argument, "label A generators with factor 1 and H generators with factor 2");
  const auto n = static_cast<Eigen::Index>(rep.dim());
  const Mat id = Mat::Identity(n, n);

  DisplacementReport out;
  for (auto a : a_gens) {
    for (auto h : h_gens) {
      const Mat& ra = rep.image(a);
      const Mat& rh = rep.image(h);
      out.commutator_residual =
          std::max(out.commutator_residual, (ra * rh - rh * ra).cwiseAbs().maxCoeff());
      const Vec lhs = (id - rh) * c.values()[a];
      const Vec rhs = (id - ra) * c.values()[h];
      out.identity_residual = std::max(out.identity_residual, (lhs - rhs).cwiseAbs().maxCoeff());
    }
  }
  if (out.commutator_residual > 1e-10)
    fail(ErrorCode::invalid_argument,
         "A and H do not commute (residual " + detail::str(out.commutator_residual) + ")");

  std::vector<Word> kh = k_h;
  if (kh.empty())
    for (auto h : h_gens) kh.push_back(Word{static_cast<int>(h) + 1});
  std::vector<Mat> h_images, k_images;
  for (auto h : h_gens) h_images.push_back(rep.image(h));
  for (const Word& w : kh) k_images.push_back(rep.word_matrix(w));
  const Complement ch = canonical_complement(rep.space(), h_images);
  const GapEstimate gap = kazhdan_gap(rep.space(), k_images, ch.complement, gap_budget, seed);
  out.epsilon = gap.upper;
  out.radius = cocycle_seminorm(c, kh);

  const auto words = word_ball(a_gens, max_length);
  out.words_checked = words.size();
  for (const Word& w : words) {
    const Vec v = c.extend(w);
    out.max_norm = std::max(out.max_norm, c.space().norm(v));
    out.max_component = std::max(out.max_component, c.space().norm(ch.proj_complement * v));
  }
  if (!std::isfinite(out.epsilon)) {
    out.vacuous = true;
    out.pass = out.identity_residual <= 1e-10;
    return out;
  }
  if (out.epsilon < 1e-6)
    fail(ErrorCode::refused, "gap of H is below 1e-6 (" + detail::str(out.epsilon) + ")");
  out.bound = 2.0 * out.radius / out.epsilon;
  out.pass = out.identity_residual <= 1e-10 && out.max_component <= out.bound + tol;
  return out;
}

MautnerReport mautner_check(const Cocycle& c, const Word& g, const Word& h, std::size_t n_max,
                            double tol, const std::optional<std::pair<Mat, Mat>>& group_side) {
  MautnerReport out;
  Mat G, H;
  if (group_side) {
    G = group_side->first;
    H = group_side->second;
    if (G.rows() != G.cols() || H.rows() != H.cols() || G.rows() != H.rows())
      fail(ErrorCode::dimension_mismatch, "group-side matrices must be square of one size");
  } else {
    G = c.rep().word_matrix(g);
    H = c.rep().word_matrix(h);
  }
  Eigen::FullPivLU<Mat> lu(G);
  if (!lu.isInvertible()) fail(ErrorCode::invalid_argument, "g is not invertible on the group side");
  const Mat G_inv = lu.inverse();
  const Mat id = Mat::Identity(G.rows(), G.cols());
  Mat conj = H;
  for (std::size_t k = 0; k <= n_max; ++k) {
    out.contraction.push_back((conj - id).cwiseAbs().maxCoeff());
    conj = G_inv * conj * G;
  }
  const double d0 = out.contraction.front();
  bool monotone = true;
  for (std::size_t k = 1; k < out.contraction.size(); ++k)
    if (out.contraction[k] > out.contraction[k - 1] * (1.0 + 1e-12) + 1e-300) monotone = false;
  const bool contracting = d0 == 0.0 || (monotone && out.contraction.back() <= 1e-6 * d0);
  if (!contracting) {
    out.reason = "conjugates g^-n h g^n do not contract to the identity";
    return out;
  }
  const CoboundarySolution fx = coboundary_solve(c, {g}, tol);
  out.g_residual = fx.residual;
  if (!fx.is_coboundary) {
    out.reason = "no g-fixed point found";
    return out;
  }
  out.applicable = true;
  out.fixed_point = fx.v;
  out.h_displacement = c.space().distance(c.act(h, fx.v), fx.v);
  out.pass = out.h_displacement <= tol;
  return out;
}

}  // namespace isolab
