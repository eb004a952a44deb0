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
#ifndef ISOLAB_MODULUS_HPP
#define ISOLAB_MODULUS_HPP

#include <cstdint>
#include <functional>
#include <vector>

#include "isolab/lp_space.hpp"

namespace isolab {

using NormFn = std::function<double(const Vec&)>;

struct ModulusEstimate {
  double epsilon = 0.0;
  double delta = 1.0;  ///< 1 - ||x+y||/2 at the witness; an upper bound for delta(eps)
  Vec x;
  Vec y;
  std::size_t samples = 0;
};

/// Upper estimate of the convexity modulus of an arbitrary norm on R^dim by
/// sampling unit pairs at distance exactly eps and refining locally.
ModulusEstimate convexity_modulus(const NormFn& norm, std::size_t dim, double epsilon,
                                  std::size_t budget, std::uint64_t seed);

/// Same for an l^p space; rejects p = 1.
ModulusEstimate convexity_modulus(const LpSpace& space, double epsilon, std::size_t budget,
                                  std::uint64_t seed);

struct ModulusTable {
  std::vector<double> epsilon;   ///< strictly increasing
  std::vector<double> raw;       ///< sampled estimates
  std::vector<double> envelope;  ///< min_{j >= i} raw[j], non-decreasing
};

ModulusTable modulus_table(const NormFn& norm, std::size_t dim, const std::vector<double>& eps,
                           std::size_t budget, std::uint64_t seed);
ModulusTable modulus_table(const LpSpace& space, const std::vector<double>& eps,
                           std::size_t budget, std::uint64_t seed);

/// sup{eps : envelope(eps) <= t} on the table.
double inverse_modulus(const ModulusTable& table, double t);

}  // namespace isolab

#endif  // ISOLAB_MODULUS_HPP
