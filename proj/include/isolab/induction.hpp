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
#ifndef ISOLAB_INDUCTION_HPP
#define ISOLAB_INDUCTION_HPP

#include <cstdint>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "isolab/cocycle.hpp"

namespace isolab {

/// Finite-index subgroup Gamma of a table group G with a fundamental domain D
/// (one representative per coset g Gamma, the identity for Gamma itself and
/// the smallest element index otherwise) and the return map chi with
/// g = d chi(g)^{-1}.
class CosetStructure {
 public:
  CosetStructure(Group ambient, const std::vector<std::pair<std::string, Word>>& generators);

  const Group& ambient() const noexcept { return ambient_; }
  const Group& subgroup() const noexcept { return subgroup_; }
  std::size_t index() const noexcept { return reps_.size(); }
  const std::vector<int>& representatives() const noexcept { return reps_; }
  /// Ambient index of each subgroup element.
  const std::vector<int>& embedding() const noexcept { return embedding_; }
  int coset_of(int g) const { return coset_.at(g); }
  /// chi(g) as a subgroup element index.
  int chi(int g) const { return chi_.at(g); }

  /// Re-runs the partition and equivariance checks; returns the number of
  /// violations (0 for a valid structure).
  std::size_t verify() const;

 private:
  Group ambient_;
  std::vector<int> embedding_;  // filled while subgroup_ is built
  Group subgroup_;
  std::vector<int> local_;  // ambient index -> subgroup index or -1
  std::vector<int> reps_;
  std::vector<int> coset_;
  std::vector<int> chi_;
};

/// Induced representation on l^p(G/Gamma, B), block j being coset j.
Representation induce_rep(const Representation& rep, const CosetStructure& cs);
Cocycle induce_cocycle(const Cocycle& b, const CosetStructure& cs);

/// Block j of a section.
Vec block(const Vec& f, std::size_t j, std::size_t dim);
Vec constant_section(const Vec& x, std::size_t index);

struct TransferReport {
  bool gamma_fixed = false;         ///< Gamma action has a fixed point
  bool g_fixed = false;             ///< induced action has a fixed point
  double gamma_residual = 0.0;
  double g_residual = 0.0;
  double block_spread = 0.0;        ///< max pairwise block distance of the G-fixed section
  double block_value_residual = 0.0;///< Gamma displacement of its block value
  double constant_section_residual = 0.0;  ///< G displacement of the section at a Gamma-fixed point
  bool pass = false;
};

TransferReport fixed_point_transfer(const Cocycle& b, const Cocycle& induced,
                                    const CosetStructure& cs, double tol = 1e-8);

struct SplitOptions {
  double gap_threshold = 0.01;
  std::size_t gap_budget = 64;
  std::uint64_t seed = 1;
  double tol = 1e-8;
};

struct SplitReport {
  std::size_t dim_fixed = 0, dim_b0 = 0, dim_b1 = 0, dim_b2 = 0;
  double gap_b0 = std::numeric_limits<double>::infinity();
  /// b1 takes values in the G2-fixed vectors and factors through G1; b2 symmetric.
  std::vector<Vec> b1, b2;
  std::vector<Vec> fixed_part;  ///< homomorphism part in the G-fixed vectors
  Vec v;                        ///< b0 = v - rho(g) v
  double b0_residual = 0.0;
  double reconstruction_residual = 0.0;
  double support_residual = 0.0;   ///< distance of b_i(g) from B^{rho(G'_i)}
  double factor_residual = 0.0;    ///< max |b1(G2 generators)|, |b2(G1 generators)|
  double cocycle_residual = 0.0;   ///< relator residual of b1 and b2
  Mat e1, e2;                      ///< bases of the ranges of b1 and b2 (block spaces)
  bool pass = false;
};

/// Refuses (ErrorCode::refused) when the gap of G on B0 is below threshold.
SplitReport split_action(const Cocycle& b, const SplitOptions& options = {});

struct PipelineReport {
  SplitReport split;        ///< on the induced action
  std::vector<Vec> beta1, beta2;  ///< pulled-back Gamma cocycles, per Gamma generator
  Vec v;                    ///< pulled-back coboundary vector
  double residual = 0.0;    ///< max_gamma |b - beta1 - beta2 - dv|
  std::size_t dim_b1 = 0, dim_b2 = 0, dim_overlap = 0;
  bool pass = false;
};

/// Gamma < G1 x G2 with surjective projections; `b` is a Gamma cocycle.
PipelineReport superrigidity_pipeline(const Cocycle& b, const CosetStructure& cs,
                                      const SplitOptions& options = {});

/// True if Gamma projects onto both factors of the product structure of G.
bool projections_surject(const CosetStructure& cs);

}  // namespace isolab

#endif  // ISOLAB_INDUCTION_HPP
