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
#ifndef ISOLAB_TESTS_SUPPORT_HPP
#define ISOLAB_TESTS_SUPPORT_HPP

#include <doctest.h>

#include <functional>
#include <initializer_list>

#include "isolab/error.hpp"
#include "isolab/lp_space.hpp"

namespace support {

inline isolab::Vec vec(std::initializer_list<double> xs) {
  isolab::Vec v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v[i++] = x;
  return v;
}

inline isolab::Mat mat(std::initializer_list<std::initializer_list<double>> rows) {
  isolab::Mat m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.begin()->size()));
  Eigen::Index i = 0;
  for (const auto& r : rows) {
    Eigen::Index j = 0;
    for (double x : r) m(i, j++) = x;
    ++i;
  }
  return m;
}

inline isolab::ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const isolab::Error& e) {
    return e.code();
  }
  FAIL("expected an isolab::Error");
  return isolab::ErrorCode::invalid_argument;
}

}  // namespace support

#endif  // ISOLAB_TESTS_SUPPORT_HPP
