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
#include "isolab/induction.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <set>

#include "detail.hpp"

namespace isolab {

namespace {

std::vector<int> closure(const Group& g, const std::vector<std::size_t>& gens) {
  std::vector<int> elems{g.identity()};
  std::set<int> seen{g.identity()};
  for (std::size_t q = 0; q < elems.size(); ++q) {
    for (auto i : gens) {
      const int y = g.multiply(elems[q], g.generator_element(i));
      if (seen.insert(y).second) elems.push_back(y);
    }
  }
  return elems;
}

[[noreturn]] void rethrow_staged(const char* stage, const Error& e) {
  throw Error(e.code(), std::string(stage) + ": " + e.what());
}

}  // namespace

CosetStructure::CosetStructure(Group ambient,
                               const std::vector<std::pair<std::string, Word>>& generators)
    : ambient_(std::move(ambient)), embedding_(), subgroup_(ambient_.subgroup(generators, &embedding_)) {
  const auto m = static_cast<int>(ambient_.order());
  local_.assign(m, -1);
  for (std::size_t i = 0; i < embedding_.size(); ++i) local_[embedding_[i]] = static_cast<int>(i);
  coset_.assign(m, -1);
  auto claim = [&](int g) {
    const int j = static_cast<int>(reps_.size());
    reps_.push_back(g);
    for (int gamma : embedding_) coset_[ambient_.multiply(g, gamma)] = j;
  };
  claim(ambient_.identity());
  for (int g = 0; g < m; ++g)
    if (coset_[g] < 0) claim(g);
  chi_.assign(m, -1);
  for (int g = 0; g < m; ++g) {
    const int d = reps_[coset_[g]];
    chi_[g] = local_[ambient_.multiply(ambient_.inverse(g), d)];
  }
  if (const std::size_t bad = verify())
    fail(ErrorCode::validation, "coset structure fails " + std::to_string(bad) + " checks");
}

std::size_t CosetStructure::verify() const {
  std::size_t bad = 0;
  const auto m = static_cast<int>(ambient_.order());
  std::vector<std::size_t> sizes(reps_.size(), 0);
  for (int g = 0; g < m; ++g) {
    if (coset_[g] < 0 || chi_[g] < 0) {
      ++bad;
      continue;
    }
    ++sizes[coset_[g]];
    // g = d chi(g)^{-1}
    const int d = reps_[coset_[g]];
    const int back = ambient_.multiply(d, ambient_.inverse(embedding_[chi_[g]]));
    if (back != g) ++bad;
  }
  for (auto s : sizes)
    if (s != embedding_.size()) ++bad;
  for (int d : reps_)
    if (chi_[d] != subgroup_.identity()) ++bad;
  for (int g = 0; g < m; ++g) {
    for (std::size_t c = 0; c < embedding_.size(); ++c) {
      const int gamma = embedding_[c];
      const int lhs = chi_[ambient_.multiply(g, ambient_.inverse(gamma))];
      const int rhs = subgroup_.multiply(static_cast<int>(c), chi_[g]);
      if (lhs != rhs) ++bad;
    }
  }
  return bad;
}

Vec block(const Vec& f, std::size_t j, std::size_t dim) {
  return f.segment(static_cast<Eigen::Index>(j * dim), static_cast<Eigen::Index>(dim));
}

Vec constant_section(const Vec& x, std::size_t index) {
  Vec f(x.size() * static_cast<Eigen::Index>(index));
  for (std::size_t j = 0; j < index; ++j) f.segment(static_cast<Eigen::Index>(j) * x.size(), x.size()) = x;
  return f;
}

namespace {

void require_subgroup_rep(const Representation& rep, const CosetStructure& cs) {
  if (rep.group().names() != cs.subgroup().names() || !rep.group().is_table() ||
      rep.group().order() != cs.subgroup().order())
    fail(ErrorCode::invalid_argument, "representation is not over the coset structure's subgroup");
}

LpSpace induced_space(const LpSpace& base, std::size_t index) {
  const auto n = static_cast<Eigen::Index>(base.dim());
  Vec w(n * static_cast<Eigen::Index>(index));
  for (std::size_t j = 0; j < index; ++j) w.segment(static_cast<Eigen::Index>(j) * n, n) = base.weights();
  return LpSpace(base.p(), w);
}

}  // namespace

Representation induce_rep(const Representation& rep, const CosetStructure& cs) {
  require_subgroup_rep(rep, cs);
  const Group& G = cs.ambient();
  const std::vector<Mat> gamma = rep.element_matrices();
  const auto n = static_cast<Eigen::Index>(rep.dim());
  const std::size_t idx = cs.index();
  std::vector<Mat> images;
  for (std::size_t g = 0; g < G.generator_count(); ++g) {
    const int h_inv = G.inverse(G.generator_element(g));
    Mat m = Mat::Zero(n * static_cast<Eigen::Index>(idx), n * static_cast<Eigen::Index>(idx));
    for (std::size_t j = 0; j < idx; ++j) {
      const int x = G.multiply(h_inv, cs.representatives()[j]);
      const auto k = static_cast<Eigen::Index>(cs.coset_of(x));
      m.block(static_cast<Eigen::Index>(j) * n, k * n, n, n) = gamma[cs.chi(x)];
    }
    images.push_back(std::move(m));
  }
  return Representation(G, induced_space(rep.space(), idx), std::move(images));
}

Cocycle induce_cocycle(const Cocycle& b, const CosetStructure& cs) {
  Representation rep = induce_rep(b.rep(), cs);
  const Group& G = cs.ambient();
  const Group& S = cs.subgroup();
  const auto n = static_cast<Eigen::Index>(b.rep().dim());
  std::vector<Vec> gamma_values;
  for (std::size_t e = 0; e < S.order(); ++e) gamma_values.push_back(b.extend(S.element_word(static_cast<int>(e))));
  std::vector<Vec> values;
  for (std::size_t g = 0; g < G.generator_count(); ++g) {
    const int h_inv = G.inverse(G.generator_element(g));
    Vec v(n * static_cast<Eigen::Index>(cs.index()));
    for (std::size_t j = 0; j < cs.index(); ++j) {
      const int x = G.multiply(h_inv, cs.representatives()[j]);
      v.segment(static_cast<Eigen::Index>(j) * n, n) = gamma_values[cs.chi(x)];
    }
    values.push_back(std::move(v));
  }
  return Cocycle(std::move(rep), std::move(values));
}

TransferReport fixed_point_transfer(const Cocycle& b, const Cocycle& induced,
                                    const CosetStructure& cs, double tol) {
  TransferReport out;
  const std::size_t n = b.rep().dim();
  const CoboundarySolution gs = coboundary_solve(b, tol);
  const CoboundarySolution Gs = coboundary_solve(induced, tol);
  out.gamma_fixed = gs.is_coboundary;
  out.g_fixed = Gs.is_coboundary;
  out.gamma_residual = gs.residual;
  out.g_residual = Gs.residual;

  auto max_move = [](const Cocycle& c, const Vec& x) {
    double d = 0.0;
    for (std::size_t g = 0; g < c.rep().group().generator_count(); ++g) {
      const Word w{static_cast<int>(g) + 1};
      d = std::max(d, c.space().distance(c.act(w, x), x));
    }
    return d;
  };

  if (out.gamma_fixed) out.constant_section_residual = max_move(induced, constant_section(gs.v, cs.index()));
  if (out.g_fixed) {
    for (std::size_t i = 0; i < cs.index(); ++i)
      for (std::size_t j = i + 1; j < cs.index(); ++j)
        out.block_spread = std::max(out.block_spread, b.space().distance(block(Gs.v, i, n), block(Gs.v, j, n)));
    out.block_value_residual = max_move(b, block(Gs.v, 0, n));
  }
  out.pass = out.gamma_fixed == out.g_fixed &&
             (!out.gamma_fixed || out.constant_section_residual <= tol) &&
             (!out.g_fixed || (out.block_spread <= tol && out.block_value_residual <= tol));
  return out;
}

SplitReport split_action(const Cocycle& b, const SplitOptions& options) {
  const Representation& rep = b.rep();
  const ProductDecomposition pd = product_decomposition(rep);
  const auto n = static_cast<Eigen::Index>(rep.dim());
  const Mat id = Mat::Identity(n, n);
  const Mat qf = pd.proj1 * pd.proj2;
  const Mat q1 = (id - pd.proj1) * pd.proj2;  // fixed by G2
  const Mat q2 = pd.proj1 * (id - pd.proj2);  // fixed by G1
  const Mat q0 = (id - pd.proj1) * (id - pd.proj2);

  SplitReport out;
  out.dim_fixed = static_cast<std::size_t>(pd.fixed.cols());
  out.dim_b0 = static_cast<std::size_t>(pd.b0.cols());
  out.dim_b1 = static_cast<std::size_t>(pd.b2.cols());
  out.dim_b2 = static_cast<std::size_t>(pd.b1.cols());
  out.e1 = pd.b2;
  out.e2 = pd.b1;

  if (pd.b0.cols() > 0) {
    std::vector<Mat> k;
    for (const Word& w : rep.group().k_set()) k.push_back(rep.word_matrix(w));
    out.gap_b0 = kazhdan_gap(rep.space(), k, pd.b0, options.gap_budget, options.seed).upper;
    if (out.gap_b0 < options.gap_threshold)
      fail(ErrorCode::refused, "gap on B0 is " + detail::str(out.gap_b0) + ", below the threshold " +
                                   detail::str(options.gap_threshold) +
                                   "; the action may almost have invariant vectors");
  }

  const auto& labels = rep.group().factor();
  std::vector<Vec> b0;
  for (std::size_t g = 0; g < rep.group().generator_count(); ++g) {
    const Vec& c = b.values()[g];
    const Vec f = qf * c;
    out.fixed_part.push_back(f);
    out.b1.push_back(q1 * c + (labels[g] == 1 ? f : Vec::Zero(n)));
    out.b2.push_back(q2 * c + (labels[g] == 2 ? f : Vec::Zero(n)));
    b0.push_back(q0 * c);
  }
  const Cocycle c0(rep, b0, std::numeric_limits<double>::infinity());
  const CoboundarySolution sol = coboundary_solve(c0, options.tol);
  out.v = q0 * sol.v;
  out.b0_residual = sol.residual;

  const LpSpace& space = rep.space();
  for (std::size_t g = 0; g < rep.group().generator_count(); ++g) {
    const Vec dv = out.v - rep.image(g) * out.v;
    out.reconstruction_residual =
        std::max(out.reconstruction_residual, space.norm(b.values()[g] - out.b1[g] - out.b2[g] - dv));
    out.support_residual = std::max(out.support_residual, space.norm((id - pd.proj2) * out.b1[g]));
    out.support_residual = std::max(out.support_residual, space.norm((id - pd.proj1) * out.b2[g]));
    if (labels[g] == 2) out.factor_residual = std::max(out.factor_residual, space.norm(out.b1[g]));
    if (labels[g] == 1) out.factor_residual = std::max(out.factor_residual, space.norm(out.b2[g]));
  }
  const Cocycle c1(rep, out.b1, std::numeric_limits<double>::infinity());
  const Cocycle c2(rep, out.b2, std::numeric_limits<double>::infinity());
  out.cocycle_residual = std::max(c1.relator_residual(), c2.relator_residual());
  out.pass = out.b0_residual <= options.tol && out.reconstruction_residual <= options.tol &&
             out.support_residual <= options.tol && out.factor_residual <= options.tol &&
             out.cocycle_residual <= options.tol;
  return out;
}

bool projections_surject(const CosetStructure& cs) {
  const Group& G = cs.ambient();
  const auto g1 = closure(G, factor_generators(G, 1));
  const auto g2 = closure(G, factor_generators(G, 2));
  if (g1.size() * g2.size() != G.order())
    fail(ErrorCode::invalid_argument, "ambient group is not the product of its labelled factors");
  std::vector<int> part1(G.order(), -1), part2(G.order(), -1);
  for (int a : g1) {
    for (int c : g2) {
      const int x = G.multiply(a, c);
      if (part1[x] >= 0) fail(ErrorCode::invalid_argument, "labelled factors intersect nontrivially");
      part1[x] = a;
      part2[x] = c;
    }
  }
  std::set<int> p1, p2;
  for (int e : cs.embedding()) {
    p1.insert(part1[e]);
    p2.insert(part2[e]);
  }
  return p1.size() == g1.size() && p2.size() == g2.size();
}

PipelineReport superrigidity_pipeline(const Cocycle& b, const CosetStructure& cs,
                                      const SplitOptions& options) {
  PipelineReport out;
  try {
    if (!projections_surject(cs))
      fail(ErrorCode::refused, "the subgroup does not project onto both factors");
  } catch (const Error& e) {
    rethrow_staged("projections", e);
  }
  std::optional<Cocycle> induced;
  try {
    induced.emplace(induce_cocycle(b, cs));
  } catch (const Error& e) {
    rethrow_staged("induce", e);
  }
  try {
    out.split = split_action(*induced, options);
  } catch (const Error& e) {
    rethrow_staged("split", e);
  }

  const std::size_t n = b.rep().dim();
  const Cocycle c1(induced->rep(), out.split.b1, std::numeric_limits<double>::infinity());
  const Cocycle c2(induced->rep(), out.split.b2, std::numeric_limits<double>::infinity());
  out.v = block(out.split.v, 0, n);
  const Group& S = cs.subgroup();
  const Group& G = cs.ambient();
  for (std::size_t s = 0; s < S.generator_count(); ++s) {
    const Word w = G.element_word(cs.embedding()[S.generator_element(s)]);
    out.beta1.push_back(block(c1.extend(w), 0, n));
    out.beta2.push_back(block(c2.extend(w), 0, n));
    const Vec dv = out.v - b.rep().image(s) * out.v;
    out.residual = std::max(out.residual,
                            b.space().norm(b.values()[s] - out.beta1.back() - out.beta2.back() - dv));
  }

  auto first_block_span = [n](const Mat& e) {
    return e.cols() ? column_space(e.topRows(static_cast<Eigen::Index>(n)), 1e-8)
                    : Mat(static_cast<Eigen::Index>(n), 0);
  };
  const Mat s1 = first_block_span(out.split.e1);
  const Mat s2 = first_block_span(out.split.e2);
  out.dim_b1 = static_cast<std::size_t>(s1.cols());
  out.dim_b2 = static_cast<std::size_t>(s2.cols());
  Mat both(static_cast<Eigen::Index>(n), s1.cols() + s2.cols());
  both << s1, s2;
  out.dim_overlap = out.dim_b1 + out.dim_b2 - numerical_rank(both, 1e-8);
  out.pass = out.split.pass && out.residual <= options.tol;
  return out;
}

}  // namespace isolab
