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
#ifndef ISOLAB_GROUP_HPP
#define ISOLAB_GROUP_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "isolab/error.hpp"

namespace isolab {

/// Word over generators: letter +(i+1) is generator i, -(i+1) its inverse.
using Word = std::vector<int>;

Word inverse_word(const Word& w);
Word free_reduce(const Word& w);
Word concat(const Word& a, const Word& b);

/// A finite group given by its multiplication table, or a finitely presented
/// group given by generators and relators. Generators carry a factor label
/// (0 = unlabelled, 1 or 2) so that product groups remember their factors.
class Group {
 public:
  static Group from_table(std::vector<std::vector<int>> table, int identity,
                          std::vector<std::string> names, std::vector<int> generator_elements);
  static Group presentation(std::vector<std::string> names, std::vector<Word> relators);

  static Group cyclic(int n, const std::string& name = "a");
  /// Symmetries of the n-gon: rotation r, reflection s. Elements r^k s^f are
  /// indexed k + n f.
  static Group dihedral(int n);
  /// Generators of g1 are renamed x_1, those of g2 x_2; element (a, b) has
  /// index a * |g2| + b.
  static Group product(const Group& g1, const Group& g2);
  /// Closure of the given permutations of {0..n-1}.
  static Group from_permutations(std::vector<std::string> names,
                                 const std::vector<std::vector<int>>& perms);

  bool is_table() const noexcept { return !table_.empty(); }
  std::size_t order() const;
  std::size_t generator_count() const noexcept { return names_.size(); }
  const std::vector<std::string>& names() const noexcept { return names_; }
  int identity() const noexcept { return identity_; }

  int multiply(int a, int b) const;
  int inverse(int a) const;
  int generator_element(std::size_t i) const;
  int evaluate(const Word& w) const;

  /// Spanning-tree word for each element (table groups).
  const Word& element_word(int element) const;
  /// Presentation relators, or a complete Schreier relator set for tables.
  const std::vector<Word>& relators() const noexcept { return relators_; }

  const std::vector<Word>& k_set() const noexcept { return k_set_; }
  void set_k_set(std::vector<Word> k);

  const std::vector<int>& factor() const noexcept { return factor_; }
  void set_factor(std::vector<int> labels);

  std::optional<std::size_t> find_generator(const std::string& name) const;

  /// "a b^-1 a^3"; "e" or "" is the empty word.
  Word parse_word(const std::string& text) const;
  std::string format_word(const Word& w) const;

  /// Table subgroup generated by the given words, with its own generator
  /// names. `embedding` receives the ambient index of each subgroup element.
  Group subgroup(const std::vector<std::pair<std::string, Word>>& generators,
                 std::vector<int>* embedding) const;

 private:
  Group() = default;
  void finish_table();
  void require_table(const char* what) const;

  std::vector<std::vector<int>> table_;
  std::vector<int> inverse_;
  int identity_ = 0;
  std::vector<std::string> names_;
  std::vector<int> generator_elements_;
  std::vector<Word> relators_;
  std::vector<Word> element_words_;
  std::vector<Word> k_set_;
  std::vector<int> factor_;
};

}  // namespace isolab

#endif  // ISOLAB_GROUP_HPP
