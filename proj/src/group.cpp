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
#include "isolab/group.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <map>
#include <sstream>

namespace isolab {

namespace {

constexpr std::size_t kMaxTableOrder = 4096;

bool valid_name(const std::string& s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  return std::all_of(s.begin(), s.end(),
                     [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

}  // namespace

Word inverse_word(const Word& w) {
  Word out(w.rbegin(), w.rend());
  for (int& l : out) l = -l;
  return out;
}

Word free_reduce(const Word& w) {
  Word out;
  for (int l : w) {
    if (!out.empty() && out.back() == -l) {
      out.pop_back();
    } else {
      out.push_back(l);
    }
  }
  return out;
}

Word concat(const Word& a, const Word& b) {
  Word out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

Group Group::from_table(std::vector<std::vector<int>> table, int identity,
                        std::vector<std::string> names, std::vector<int> generator_elements) {
  const std::size_t m = table.size();
  if (m == 0) fail(ErrorCode::invalid_argument, "multiplication table is empty");
  if (m > kMaxTableOrder)
    fail(ErrorCode::limit_exceeded, "table groups are limited to order " + std::to_string(kMaxTableOrder));
  for (const auto& row : table) {
    if (row.size() != m) fail(ErrorCode::invalid_argument, "multiplication table is not square");
    for (int x : row)
      if (x < 0 || static_cast<std::size_t>(x) >= m)
        fail(ErrorCode::invalid_argument, "table entry out of range");
  }
  if (identity < 0 || static_cast<std::size_t>(identity) >= m)
    fail(ErrorCode::invalid_argument, "identity index out of range");
  if (names.size() != generator_elements.size())
    fail(ErrorCode::invalid_argument, "one element per generator name is required");
  Group g;
  g.table_ = std::move(table);
  g.identity_ = identity;
  g.names_ = std::move(names);
  g.generator_elements_ = std::move(generator_elements);
  for (std::size_t i = 0; i < g.names_.size(); ++i) {
    if (!valid_name(g.names_[i])) fail(ErrorCode::invalid_argument, "invalid generator name '" + g.names_[i] + "'");
    for (std::size_t j = 0; j < i; ++j)
      if (g.names_[j] == g.names_[i]) fail(ErrorCode::invalid_argument, "duplicate generator name '" + g.names_[i] + "'");
    const int e = g.generator_elements_[i];
    if (e < 0 || static_cast<std::size_t>(e) >= m) fail(ErrorCode::invalid_argument, "generator element out of range");
  }
  g.finish_table();
  return g;
}

void Group::finish_table() {
  const std::size_t m = table_.size();
  for (std::size_t a = 0; a < m; ++a) {
    if (table_[identity_][a] != static_cast<int>(a) || table_[a][identity_] != static_cast<int>(a))
      fail(ErrorCode::validation, "identity law fails at element " + std::to_string(a));
  }
  inverse_.assign(m, -1);
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = 0; b < m; ++b) {
      if (table_[a][b] == identity_) {
        inverse_[a] = static_cast<int>(b);
        break;
      }
    }
    if (inverse_[a] < 0) fail(ErrorCode::validation, "element " + std::to_string(a) + " has no inverse");
  }

  // Spanning tree of the Cayley graph; also proves the generators generate.
  element_words_.assign(m, Word{});
  std::vector<bool> seen(m, false);
  std::vector<int> parent_gen(m, -1);
  std::deque<int> queue{identity_};
  seen[identity_] = true;
  while (!queue.empty()) {
    const int x = queue.front();
    queue.pop_front();
    for (std::size_t i = 0; i < generator_elements_.size(); ++i) {
      const int y = table_[x][generator_elements_[i]];
      if (!seen[y]) {
        seen[y] = true;
        parent_gen[y] = static_cast<int>(i);
        element_words_[y] = element_words_[x];
        element_words_[y].push_back(static_cast<int>(i) + 1);
        queue.push_back(y);
      }
    }
  }
  for (std::size_t a = 0; a < m; ++a)
    if (!seen[a]) fail(ErrorCode::validation, "generators do not generate element " + std::to_string(a));

  // Associativity, checked against generators (sufficient once they generate).
  for (int s : generator_elements_)
    for (std::size_t x = 0; x < m; ++x)
      for (std::size_t y = 0; y < m; ++y)
        if (table_[table_[x][s]][y] != table_[x][table_[s][y]])
          fail(ErrorCode::validation, "multiplication table is not associative");

  relators_.clear();
  for (std::size_t x = 0; x < m; ++x) {
    for (std::size_t i = 0; i < generator_elements_.size(); ++i) {
      const int y = table_[x][generator_elements_[i]];
      Word r = element_words_[x];
      r.push_back(static_cast<int>(i) + 1);
      r = free_reduce(concat(r, inverse_word(element_words_[y])));
      if (!r.empty()) relators_.push_back(r);
    }
  }
  std::sort(relators_.begin(), relators_.end(),
            [](const Word& a, const Word& b) { return a.size() != b.size() ? a.size() < b.size() : a < b; });
  relators_.erase(std::unique(relators_.begin(), relators_.end()), relators_.end());

  k_set_.clear();
  for (std::size_t i = 0; i < names_.size(); ++i) k_set_.push_back(Word{static_cast<int>(i) + 1});
  factor_.assign(names_.size(), 0);
}

Group Group::presentation(std::vector<std::string> names, std::vector<Word> relators) {
  Group g;
  g.names_ = std::move(names);
  for (std::size_t i = 0; i < g.names_.size(); ++i) {
    if (!valid_name(g.names_[i])) fail(ErrorCode::invalid_argument, "invalid generator name '" + g.names_[i] + "'");
    for (std::size_t j = 0; j < i; ++j)
      if (g.names_[j] == g.names_[i]) fail(ErrorCode::invalid_argument, "duplicate generator name '" + g.names_[i] + "'");
  }
  const int k = static_cast<int>(g.names_.size());
  for (const Word& r : relators) {
    if (r.empty()) fail(ErrorCode::invalid_argument, "relators must be nonempty words");
    for (int l : r)
      if (l == 0 || l > k || l < -k) fail(ErrorCode::invalid_argument, "relator uses an unknown generator");
  }
  g.relators_ = std::move(relators);
  for (int i = 0; i < k; ++i) g.k_set_.push_back(Word{i + 1});
  g.factor_.assign(g.names_.size(), 0);
  return g;
}

Group Group::cyclic(int n, const std::string& name) {
  if (n < 1) fail(ErrorCode::invalid_argument, "cyclic group order must be positive");
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) t[i][j] = (i + j) % n;
  return from_table(std::move(t), 0, {name}, {n > 1 ? 1 : 0});
}

Group Group::dihedral(int n) {
  if (n < 1) fail(ErrorCode::invalid_argument, "dihedral group needs n >= 1");
  const int m = 2 * n;
  std::vector<std::vector<int>> t(m, std::vector<int>(m));
  for (int x = 0; x < m; ++x) {
    for (int y = 0; y < m; ++y) {
      const int a = x % n, f = x / n, b = y % n, h = y / n;
      const int k = ((a + (f ? -b : b)) % n + n) % n;
      t[x][y] = k + n * ((f + h) % 2);
    }
  }
  return from_table(std::move(t), 0, {"r", "s"}, {n > 1 ? 1 : 0, n});
}

Group Group::product(const Group& g1, const Group& g2) {
  std::vector<std::string> names;
  std::vector<int> labels;
  for (const auto& s : g1.names_) {
    names.push_back(s + "_1");
    labels.push_back(1);
  }
  for (const auto& s : g2.names_) {
    names.push_back(s + "_2");
    labels.push_back(2);
  }
  const int k1 = static_cast<int>(g1.names_.size());
  auto shift = [k1](const Word& w) {
    Word out = w;
    for (int& l : out) l += l > 0 ? k1 : -k1;
    return out;
  };
  std::vector<Word> k;
  for (const Word& w : g1.k_set_) k.push_back(w);
  for (const Word& w : g2.k_set_) k.push_back(shift(w));

  Group g;
  if (g1.is_table() && g2.is_table()) {
    const int m1 = static_cast<int>(g1.order()), m2 = static_cast<int>(g2.order());
    if (static_cast<std::size_t>(m1) * static_cast<std::size_t>(m2) > kMaxTableOrder)
      fail(ErrorCode::limit_exceeded, "product table too large; use a presentation");
    std::vector<std::vector<int>> t(m1 * m2, std::vector<int>(m1 * m2));
    for (int x = 0; x < m1 * m2; ++x)
      for (int y = 0; y < m1 * m2; ++y)
        t[x][y] = g1.table_[x / m2][y / m2] * m2 + g2.table_[x % m2][y % m2];
    std::vector<int> gens;
    for (int e : g1.generator_elements_) gens.push_back(e * m2 + g2.identity_);
    for (int e : g2.generator_elements_) gens.push_back(g1.identity_ * m2 + e);
    g = from_table(std::move(t), g1.identity_ * m2 + g2.identity_, names, gens);
  } else {
    std::vector<Word> rel = g1.relators_;
    for (const Word& r : g2.relators_) rel.push_back(shift(r));
    const int k2 = static_cast<int>(g2.names_.size());
    for (int a = 1; a <= k1; ++a)
      for (int b = k1 + 1; b <= k1 + k2; ++b) rel.push_back(Word{a, b, -a, -b});
    g = presentation(names, rel);
  }
  g.k_set_ = k;
  g.factor_ = labels;
  return g;
}

Group Group::from_permutations(std::vector<std::string> names,
                               const std::vector<std::vector<int>>& perms) {
  if (perms.empty()) fail(ErrorCode::invalid_argument, "at least one permutation is required");
  const std::size_t n = perms.front().size();
  for (const auto& p : perms) {
    if (p.size() != n) fail(ErrorCode::invalid_argument, "permutations have different lengths");
    std::vector<bool> seen(n, false);
    for (int x : p) {
      if (x < 0 || static_cast<std::size_t>(x) >= n || seen[x])
        fail(ErrorCode::invalid_argument, "not a permutation");
      seen[x] = true;
    }
  }
  std::vector<int> id(n);
  for (std::size_t i = 0; i < n; ++i) id[i] = static_cast<int>(i);
  std::map<std::vector<int>, int> index{{id, 0}};
  std::vector<std::vector<int>> elems{id};
  auto compose = [n](const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> c(n);
    for (std::size_t i = 0; i < n; ++i) c[i] = a[b[i]];
    return c;
  };
  for (std::size_t q = 0; q < elems.size(); ++q) {
    for (const auto& p : perms) {
      auto c = compose(elems[q], p);
      if (!index.count(c)) {
        if (elems.size() >= kMaxTableOrder) fail(ErrorCode::limit_exceeded, "permutation group too large");
        index[c] = static_cast<int>(elems.size());
        elems.push_back(c);
      }
    }
  }
  const std::size_t m = elems.size();
  std::vector<std::vector<int>> t(m, std::vector<int>(m));
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) t[a][b] = index.at(compose(elems[a], elems[b]));
  std::vector<int> gens;
  for (const auto& p : perms) gens.push_back(index.at(p));
  return from_table(std::move(t), 0, std::move(names), gens);
}

std::size_t Group::order() const { return table_.size(); }

void Group::require_table(const char* what) const {
  if (!is_table()) fail(ErrorCode::refused, std::string(what) + " needs a table-backed group");
}

int Group::multiply(int a, int b) const {
  require_table("multiply");
  return table_.at(a).at(b);
}

int Group::inverse(int a) const {
  require_table("inverse");
  return inverse_.at(a);
}

int Group::generator_element(std::size_t i) const {
  require_table("generator_element");
  return generator_elements_.at(i);
}

int Group::evaluate(const Word& w) const {
  require_table("evaluate");
  int x = identity_;
  for (int l : w) {
    const int g = generator_elements_.at(static_cast<std::size_t>(std::abs(l)) - 1);
    x = table_[x][l > 0 ? g : inverse_[g]];
  }
  return x;
}

const Word& Group::element_word(int element) const {
  require_table("element_word");
  return element_words_.at(element);
}

void Group::set_k_set(std::vector<Word> k) {
  if (k.empty()) fail(ErrorCode::invalid_argument, "K must be nonempty");
  const int n = static_cast<int>(names_.size());
  for (const Word& w : k)
    for (int l : w)
      if (l == 0 || l > n || l < -n) fail(ErrorCode::invalid_argument, "K word uses an unknown generator");
  k_set_ = std::move(k);
}

void Group::set_factor(std::vector<int> labels) {
  if (labels.size() != names_.size()) fail(ErrorCode::invalid_argument, "one factor label per generator");
  for (int l : labels)
    if (l < 0 || l > 2) fail(ErrorCode::invalid_argument, "factor labels are 0, 1 or 2");
  factor_ = std::move(labels);
}

std::optional<std::size_t> Group::find_generator(const std::string& name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return i;
  return std::nullopt;
}

Word Group::parse_word(const std::string& text) const {
  std::istringstream in(text);
  std::string tok;
  Word out;
  while (in >> tok) {
    if (tok == "e" && !find_generator("e")) continue;
    std::string name = tok;
    long power = 1;
    const auto caret = tok.find('^');
    if (caret != std::string::npos) {
      name = tok.substr(0, caret);
      const std::string exp = tok.substr(caret + 1);
      try {
        std::size_t used = 0;
        power = std::stol(exp, &used);
        if (used != exp.size()) throw std::invalid_argument(exp);
      } catch (const std::exception&) {
        fail(ErrorCode::parse, "bad exponent in word token '" + tok + "'");
      }
      if (std::abs(power) > 100000) fail(ErrorCode::limit_exceeded, "exponent too large in '" + tok + "'");
    }
    const auto g = find_generator(name);
    if (!g) fail(ErrorCode::parse, "unknown generator '" + name + "' in word '" + text + "'");
    const int letter = static_cast<int>(*g) + 1;
    for (long i = 0; i < std::abs(power); ++i) out.push_back(power > 0 ? letter : -letter);
  }
  return out;
}

std::string Group::format_word(const Word& w) const {
  if (w.empty()) return "e";
  std::string out;
  std::size_t i = 0;
  while (i < w.size()) {
    std::size_t j = i;
    while (j < w.size() && w[j] == w[i]) ++j;
    const long run = static_cast<long>(j - i) * (w[i] > 0 ? 1 : -1);
    if (!out.empty()) out += ' ';
    out += names_.at(static_cast<std::size_t>(std::abs(w[i])) - 1);
    if (run != 1) out += "^" + std::to_string(run);
    i = j;
  }
  return out;
}

Group Group::subgroup(const std::vector<std::pair<std::string, Word>>& generators,
                      std::vector<int>* embedding) const {
  require_table("subgroup");
  if (generators.empty()) fail(ErrorCode::invalid_argument, "subgroup needs at least one generator");
  std::vector<int> gens;
  for (const auto& [name, w] : generators) gens.push_back(evaluate(w));
  std::vector<int> elems{identity_};
  std::map<int, int> local{{identity_, 0}};
  for (std::size_t q = 0; q < elems.size(); ++q) {
    for (int s : gens) {
      const int y = table_[elems[q]][s];
      if (!local.count(y)) {
        local[y] = static_cast<int>(elems.size());
        elems.push_back(y);
      }
    }
  }
  const std::size_t m = elems.size();
  std::vector<std::vector<int>> t(m, std::vector<int>(m));
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) t[a][b] = local.at(table_[elems[a]][elems[b]]);
  std::vector<std::string> names;
  std::vector<int> local_gens;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    names.push_back(generators[i].first);
    local_gens.push_back(local.at(gens[i]));
  }
  if (embedding) *embedding = elems;
  return from_table(std::move(t), 0, std::move(names), std::move(local_gens));
}

}  // namespace isolab
