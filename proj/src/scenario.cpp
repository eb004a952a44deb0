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
#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "detail.hpp"
#include "isolab/convex.hpp"
#include "isolab/induction.hpp"
#include "isolab/lp_minimize.hpp"
#include "isolab/modulus.hpp"
#include "isolab/scenario.hpp"

namespace isolab {

namespace {

using json = nlohmann::json;

// JSON view that remembers where it came from, for error messages.
class Node {
 public:
  Node(const json& j, std::string path) : j_(&j), path_(std::move(path)) {}

  const json& raw() const { return *j_; }
  const std::string& path() const { return path_; }

  [[noreturn]] void bad(const std::string& what) const { fail(ErrorCode::parse, path_ + ": " + what); }

  bool has(const std::string& key) const { return j_->is_object() && j_->contains(key); }
  Node at(const std::string& key) const {
    if (!j_->is_object()) bad("expected an object");
    if (!j_->contains(key)) fail(ErrorCode::parse, path_ + "." + key + ": required field is missing");
    return Node((*j_)[key], path_ + "." + key);
  }
  std::optional<Node> get(const std::string& key) const {
    if (!has(key)) return std::nullopt;
    return Node((*j_)[key], path_ + "." + key);
  }
  std::size_t size() const {
    if (!j_->is_array()) bad("expected a list");
    return j_->size();
  }
  Node operator[](std::size_t i) const {
    return Node((*j_)[i], path_ + "[" + std::to_string(i) + "]");
  }
  void allow(std::initializer_list<const char*> keys) const {
    if (!j_->is_object()) bad("expected an object");
    for (auto it = j_->begin(); it != j_->end(); ++it)
      if (std::none_of(keys.begin(), keys.end(), [&](const char* k) { return it.key() == k; }))
        fail(ErrorCode::parse, path_ + "." + it.key() + ": unknown field");
  }

  double number() const {
    if (!j_->is_number()) bad("expected a number");
    const double x = j_->get<double>();
    if (!std::isfinite(x)) bad("expected a finite number");
    return x;
  }
  long long integer() const {
    if (!j_->is_number_integer()) bad("expected an integer");
    return j_->get<long long>();
  }
  std::string string() const {
    if (!j_->is_string()) bad("expected a string");
    return j_->get<std::string>();
  }
  bool boolean() const {
    if (!j_->is_boolean()) bad("expected true or false");
    return j_->get<bool>();
  }
  std::vector<double> numbers() const {
    std::vector<double> out;
    for (std::size_t i = 0; i < size(); ++i) out.push_back((*this)[i].number());
    return out;
  }
  std::vector<int> ints() const {
    std::vector<int> out;
    for (std::size_t i = 0; i < size(); ++i) out.push_back(static_cast<int>((*this)[i].integer()));
    return out;
  }
  Vec vec() const {
    const auto v = numbers();
    return Eigen::Map<const Vec>(v.data(), static_cast<Eigen::Index>(v.size()));
  }
  Vec vec(std::size_t n) const {
    Vec v = vec();
    if (static_cast<std::size_t>(v.size()) != n)
      bad("expected " + std::to_string(n) + " entries, got " + std::to_string(v.size()));
    return v;
  }
  Mat matrix() const {
    const std::size_t r = size();
    if (r == 0) bad("matrix has no rows");
    const std::size_t c = (*this)[0].size();
    Mat m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
    for (std::size_t i = 0; i < r; ++i) {
      const auto row = (*this)[i].numbers();
      if (row.size() != c) (*this)[i].bad("ragged matrix row");
      for (std::size_t j = 0; j < c; ++j) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = row[j];
    }
    return m;
  }

 private:
  const json* j_;
  std::string path_;
};

json to_json(const Vec& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

json columns_json(const Mat& m) {
  json a = json::array();
  for (Eigen::Index j = 0; j < m.cols(); ++j) a.push_back(to_json(m.col(j)));
  return a;
}

json to_json(const std::vector<Vec>& vs) {
  json a = json::array();
  for (const Vec& v : vs) a.push_back(to_json(v));
  return a;
}

double max_abs(const Mat& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

class Checks {
 public:
  explicit Checks(Report& r) : r_(r) {}
  void add(const std::string& name, double value, const std::string& rel, double bound) {
    bool ok = false;
    if (rel == "<=") ok = value <= bound;
    else if (rel == "<") ok = value < bound;
    else if (rel == ">=") ok = value >= bound;
    else if (rel == ">") ok = value > bound;
    else if (rel == "==") ok = value == bound;
    r_.checks.push_back({name, value, bound, rel, ok});
  }

 private:
  Report& r_;
};

struct Context {
  Node root;
  Node task;
  std::string kind;
  std::uint64_t seed;
  RunOptions options;
  LpSpace space;
  std::optional<Group> group;
  json tolerances = json::object();

  double tol(const char* key, double fallback) {
    double v = fallback;
    if (auto t = task.get(key)) v = t->number();
    if (options.tol) v = *options.tol;
    tolerances[key] = v;
    return v;
  }
  std::size_t budget(std::size_t fallback) {
    std::size_t v = fallback;
    if (auto t = task.get("budget")) {
      const long long b = t->integer();
      if (b < 0) t->bad("budget must be nonnegative");
      v = static_cast<std::size_t>(b);
    }
    if (options.budget) v = *options.budget;
    return v;
  }
  const Group& require_group() const {
    if (!group) root.bad("this task needs a group");
    return *group;
  }
};

LpSpace parse_space(const Node& n, const std::optional<double>& p_override) {
  n.allow({"dim", "p", "weights"});
  double p = n.at("p").number();
  if (p_override) p = *p_override;
  if (auto w = n.get("weights")) {
    const Vec weights = w->vec();
    if (auto d = n.get("dim"))
      if (d->integer() != weights.size()) d->bad("dim disagrees with the number of weights");
    for (Eigen::Index i = 0; i < weights.size(); ++i)
      if (!(weights[i] > 0.0)) (*w)[static_cast<std::size_t>(i)].bad("weights must be positive");
    return LpSpace(p, weights);
  }
  const long long d = n.at("dim").integer();
  if (d < 1) n.at("dim").bad("dim must be at least 1");
  return LpSpace(static_cast<std::size_t>(d), p);
}

Group parse_group(const Node& n) {
  const std::string kind = n.at("kind").string();
  Group g = [&]() {
    if (kind == "cyclic") {
      n.allow({"kind", "n", "name", "K", "factors"});
      const std::string name = n.has("name") ? n.at("name").string() : "a";
      return Group::cyclic(static_cast<int>(n.at("n").integer()), name);
    }
    if (kind == "dihedral") {
      n.allow({"kind", "n", "K", "factors"});
      return Group::dihedral(static_cast<int>(n.at("n").integer()));
    }
    if (kind == "product") {
      n.allow({"kind", "factors", "K"});
      const Node f = n.at("factors");
      if (f.size() != 2) f.bad("a product has exactly two factors");
      return Group::product(parse_group(f[0]), parse_group(f[1]));
    }
    if (kind == "table") {
      n.allow({"kind", "table", "identity", "generators", "K", "factors"});
      const Node t = n.at("table");
      std::vector<std::vector<int>> table;
      for (std::size_t i = 0; i < t.size(); ++i) table.push_back(t[i].ints());
      const Node gens = n.at("generators");
      std::vector<std::string> names;
      std::vector<int> elems;
      for (std::size_t i = 0; i < gens.size(); ++i) {
        names.push_back(gens[i].at("name").string());
        elems.push_back(static_cast<int>(gens[i].at("element").integer()));
      }
      const int id = n.has("identity") ? static_cast<int>(n.at("identity").integer()) : 0;
      return Group::from_table(std::move(table), id, names, elems);
    }
    if (kind == "permutations") {
      n.allow({"kind", "generators", "K", "factors"});
      const Node gens = n.at("generators");
      std::vector<std::string> names;
      std::vector<std::vector<int>> perms;
      for (std::size_t i = 0; i < gens.size(); ++i) {
        names.push_back(gens[i].at("name").string());
        perms.push_back(gens[i].at("perm").ints());
      }
      return Group::from_permutations(names, perms);
    }
    if (kind == "presentation") {
      n.allow({"kind", "generators", "relators", "K", "factors"});
      const Node gens = n.at("generators");
      std::vector<std::string> names;
      for (std::size_t i = 0; i < gens.size(); ++i) names.push_back(gens[i].string());
      Group free = Group::presentation(names, {});
      std::vector<Word> rel;
      if (auto r = n.get("relators"))
        for (std::size_t i = 0; i < r->size(); ++i) rel.push_back(free.parse_word((*r)[i].string()));
      return Group::presentation(names, rel);
    }
    n.at("kind").bad("unknown group kind '" + kind + "'");
  }();
  if (auto k = n.get("K")) {
    std::vector<Word> words;
    for (std::size_t i = 0; i < k->size(); ++i) words.push_back(g.parse_word((*k)[i].string()));
    g.set_k_set(words);
  }
  if (kind != "product") {
    if (auto f = n.get("factors")) {
      std::vector<int> labels(g.generator_count(), 0);
      for (auto it = f->raw().begin(); it != f->raw().end(); ++it) {
        const auto idx = g.find_generator(it.key());
        if (!idx) f->bad("unknown generator '" + it.key() + "'");
        labels[*idx] = static_cast<int>(Node(it.value(), f->path() + "." + it.key()).integer());
      }
      g.set_factor(labels);
    }
  }
  return g;
}

std::vector<Word> parse_words(const Group& g, const Node& n) {
  std::vector<Word> out;
  for (std::size_t i = 0; i < n.size(); ++i) out.push_back(g.parse_word(n[i].string()));
  return out;
}

Mat parse_image(const Group& g, std::size_t gen, const LpSpace& space, const Node& n) {
  const auto dim = static_cast<Eigen::Index>(space.dim());
  if (n.raw().is_string()) {
    const std::string s = n.string();
    if (s == "identity") return Mat::Identity(dim, dim);
    if (s == "negation") return -Mat::Identity(dim, dim);
    n.bad("unknown image '" + s + "'");
  }
  if (n.has("matrix")) {
    n.allow({"matrix"});
    Mat m = n.at("matrix").matrix();
    if (m.rows() != dim || m.cols() != dim) n.at("matrix").bad("matrix must be dim x dim");
    return m;
  }
  if (n.has("permutation") || n.has("lamperti")) {
    std::vector<std::size_t> sigma;
    std::vector<int> signs(space.dim(), 1);
    if (n.has("permutation")) {
      n.allow({"permutation", "signs"});
      // x -> perm[x]; the image acts by f -> f o perm^{-1}.
      const auto perm = n.at("permutation").ints();
      if (perm.size() != space.dim()) n.at("permutation").bad("length differs from the space dimension");
      sigma.assign(space.dim(), space.dim());
      for (std::size_t x = 0; x < perm.size(); ++x) {
        if (perm[x] < 0 || static_cast<std::size_t>(perm[x]) >= perm.size() || sigma[perm[x]] != space.dim())
          n.at("permutation").bad("not a permutation");
        sigma[static_cast<std::size_t>(perm[x])] = x;
      }
    } else {
      n.allow({"lamperti"});
      const Node l = n.at("lamperti");
      l.allow({"sigma", "signs"});
      for (int s : l.at("sigma").ints()) {
        if (s < 0) l.at("sigma").bad("negative index");
        sigma.push_back(static_cast<std::size_t>(s));
      }
      if (l.has("signs")) signs = l.at("signs").ints();
    }
    if (n.has("signs")) signs = n.at("signs").ints();
    return LampertiIsometry(sigma, signs, space, space).matrix();
  }
  if (n.has("rotation")) {
    n.allow({"rotation"});
    const Node r = n.at("rotation");
    r.allow({"turns", "plane"});
    const double turns = r.at("turns").number();
    std::vector<int> plane{0, 1};
    if (r.has("plane")) plane = r.at("plane").ints();
    if (plane.size() != 2 || plane[0] == plane[1] || plane[0] < 0 || plane[1] < 0 || plane[0] >= dim ||
        plane[1] >= dim)
      r.bad("plane must name two distinct coordinates");
    const double th = 2.0 * 3.14159265358979323846 * turns;
    Mat m = Mat::Identity(dim, dim);
    m(plane[0], plane[0]) = std::cos(th);
    m(plane[0], plane[1]) = -std::sin(th);
    m(plane[1], plane[0]) = std::sin(th);
    m(plane[1], plane[1]) = std::cos(th);
    return m;
  }
  if (n.has("scalar")) {
    n.allow({"scalar"});
    return n.at("scalar").number() * Mat::Identity(dim, dim);
  }
  (void)g;
  (void)gen;
  n.bad("unrecognized image; use matrix, permutation, lamperti, rotation, scalar, identity or negation");
}

Representation parse_rep(const Group& g, const LpSpace& space, const Node& n) {
  std::vector<Mat> images;
  if (n.raw().is_string() && n.string() == "regular") {
    if (!g.is_table()) n.bad("the regular representation needs a table-backed group");
    if (space.dim() != g.order()) n.bad("the regular representation needs dim = group order");
    for (std::size_t i = 0; i < g.generator_count(); ++i) {
      const int ginv = g.inverse(g.generator_element(i));
      std::vector<std::size_t> sigma(space.dim());
      for (std::size_t x = 0; x < space.dim(); ++x)
        sigma[x] = static_cast<std::size_t>(g.multiply(ginv, static_cast<int>(x)));
      images.push_back(LampertiIsometry(sigma, std::vector<int>(space.dim(), 1), space, space).matrix());
    }
    return Representation(g, space, images);
  }
  if (!n.raw().is_object()) n.bad("expected an object mapping generator names to images");
  for (auto it = n.raw().begin(); it != n.raw().end(); ++it)
    if (!g.find_generator(it.key())) fail(ErrorCode::parse, n.path() + "." + it.key() + ": not a generator");
  for (std::size_t i = 0; i < g.generator_count(); ++i)
    images.push_back(parse_image(g, i, space, n.at(g.names()[i])));
  try {
    return Representation(g, space, images);
  } catch (const Error& e) {
    fail(e.code(), n.path() + ": " + e.what());
  }
}

Cocycle parse_cocycle(const Representation& rep, const std::optional<Node>& n) {
  if (!n) return Cocycle::zero(rep);
  const std::size_t dim = rep.dim();
  if (n->has("coboundary")) {
    n->allow({"coboundary"});
    return Cocycle::coboundary(rep, n->at("coboundary").vec(dim));
  }
  const Group& g = rep.group();
  for (auto it = n->raw().begin(); it != n->raw().end(); ++it)
    if (!g.find_generator(it.key())) fail(ErrorCode::parse, n->path() + "." + it.key() + ": not a generator");
  std::vector<Vec> values;
  for (std::size_t i = 0; i < g.generator_count(); ++i) {
    const std::string& name = g.names()[i];
    values.push_back(n->has(name) ? n->at(name).vec(dim) : Vec::Zero(static_cast<Eigen::Index>(dim)));
  }
  try {
    return Cocycle(rep, values);
  } catch (const Error& e) {
    fail(e.code(), n->path() + ": " + e.what());
  }
}

Vec x0_param(Context& ctx) {
  if (auto x = ctx.task.get("x0")) return x->vec(ctx.space.dim());
  return Vec::Zero(static_cast<Eigen::Index>(ctx.space.dim()));
}

bool fully_labelled(const Group& g) {
  return !g.factor().empty() &&
         std::all_of(g.factor().begin(), g.factor().end(), [](int l) { return l == 1 || l == 2; });
}

// Distance from x to the fixed set v + B^rho(G) of a coboundary.
double fixed_set_distance(const Cocycle& c, const Vec& x) {
  const CoboundarySolution cb = coboundary_solve(c);
  const Mat F = fixed_subspace(c.rep());
  return solve::minimize_affine_norm(c.space().weights(), c.space().p(), x - cb.v, -F).value;
}

void task_decompose(Context& ctx, Report& r) {
  Checks ck(r);
  const Representation rep = parse_rep(ctx.require_group(), ctx.space, ctx.root.at("representation"));
  const auto n = static_cast<Eigen::Index>(rep.dim());
  const double tol = ctx.tol("tol", 1e-10);
  const Complement c = canonical_complement(rep);
  r.payload["dim"] = rep.dim();
  r.payload["dim_fixed"] = c.fixed.cols();
  r.payload["dim_complement"] = c.complement.cols();
  r.payload["fixed_basis"] = columns_json(c.fixed);
  r.payload["complement_basis"] = columns_json(c.complement);
  r.payload["headline"] = static_cast<double>(c.complement.cols());

  ck.add("dimension_sum", static_cast<double>(c.fixed.cols() + c.complement.cols()), "==", static_cast<double>(n));
  ck.add("projection_idempotent", max_abs(c.proj * c.proj - c.proj), "<=", tol);
  double commute = 0.0, fixed = 0.0, invariant = 0.0;
  for (const Mat& a : rep.images()) {
    commute = std::max(commute, max_abs(c.proj * a - a * c.proj));
    fixed = std::max(fixed, max_abs(a * c.fixed - c.fixed));
    invariant = std::max(invariant, max_abs(c.proj * a * c.complement));
  }
  ck.add("projection_commutes", commute, "<=", tol);
  ck.add("fixed_vectors_fixed", fixed, "<=", tol);
  ck.add("complement_invariant", invariant, "<=", tol);
  if (ctx.space.p() == 2.0) {
    const Mat oracle = null_space(c.fixed.transpose() * ctx.space.weights().asDiagonal(), 1e-10);
    double angle = 1.0;
    if (oracle.cols() == c.complement.cols()) {
      const Mat qa = column_space(oracle, 1e-10), qb = column_space(c.complement, 1e-10);
      angle = qa.cols() == 0 ? 0.0
                             : (qa * qa.transpose() - qb * qb.transpose()).jacobiSvd().singularValues()[0];
    }
    ck.add("orthogonal_oracle_angle", angle, "<=", 1e-8);
  }
  if (c.fixed.cols() > 0) {
    detail::Rng rng(ctx.seed);
    double qdev = 0.0, dual_dev = 0.0;
    const auto dual = dual_images(ctx.space, rep.images());
    for (int s = 0; s < 8; ++s) {
      Vec v = c.fixed * (s < c.fixed.cols() ? Vec::Unit(c.fixed.cols(), s) : rng.normal_vector(c.fixed.cols()));
      v /= ctx.space.norm(v);
      qdev = std::max(qdev, std::abs(quotient_norm(ctx.space, c.complement, v).value - 1.0));
      const Vec J = duality_map(ctx.space, v);
      for (const Mat& d : dual) dual_dev = std::max(dual_dev, (d * J - J).cwiseAbs().maxCoeff());
    }
    ck.add("quotient_norm_of_fixed_units", qdev, "<=", 1e-6);
    ck.add("duality_map_of_fixed_is_dual_fixed", dual_dev, "<=", tol);
  }
  if (fully_labelled(rep.group())) {
    const ProductDecomposition pd = product_decomposition(rep);
    r.payload["product"] = {{"dim_fixed", pd.fixed.cols()}, {"dim_b0", pd.b0.cols()},
                            {"dim_b1", pd.b1.cols()}, {"dim_b2", pd.b2.cols()}};
    ck.add("product_dimension_sum", static_cast<double>(pd.fixed.cols() + pd.b0.cols() + pd.b1.cols() + pd.b2.cols()),
           "==", static_cast<double>(n));
    ck.add("product_span_identity", pd.span_residual, "<=", 1e-8);
  }
  if (auto e = ctx.task.get("expect")) {
    e->allow({"dim_fixed", "dim_complement", "product"});
    if (auto d = e->get("dim_fixed")) ck.add("expected_dim_fixed", static_cast<double>(c.fixed.cols()), "==", d->number());
    if (auto d = e->get("dim_complement"))
      ck.add("expected_dim_complement", static_cast<double>(c.complement.cols()), "==", d->number());
    if (auto d = e->get("product")) {
      if (!r.payload.contains("product")) d->bad("group has no product structure");
      const auto want = d->ints();
      if (want.size() != 4) d->bad("expected [dim_fixed, dim_b0, dim_b1, dim_b2]");
      const char* keys[] = {"dim_fixed", "dim_b0", "dim_b1", "dim_b2"};
      for (int i = 0; i < 4; ++i)
        ck.add(std::string("expected_product_") + keys[i], r.payload["product"][keys[i]].get<double>(), "==", want[i]);
    }
  }
}

void task_gap(Context& ctx, Report& r) {
  Checks ck(r);
  const Group& g = ctx.require_group();
  const Representation rep = parse_rep(g, ctx.space, ctx.root.at("representation"));
  const std::vector<Word> k = ctx.task.has("K") ? parse_words(g, ctx.task.at("K")) : g.k_set();
  const std::size_t budget = ctx.budget(64);
  const GapEstimate ge = kazhdan_gap(rep, k, budget, ctx.seed);
  r.payload["upper"] = ge.upper;
  r.payload["heuristic_lower"] = ge.heuristic_lower;
  r.payload["complement_dim"] = ge.complement_dim;
  r.payload["witness"] = to_json(ge.witness);
  r.payload["evaluations"] = ge.evaluations;
  r.payload["headline"] = ge.upper;
  if (ge.complement_dim == 0) {
    r.payload["sentinel"] = true;
    ck.add("complement_dim", 0.0, "==", 0.0);
    return;
  }
  r.payload["witness_norm"] = ctx.space.norm(ge.witness);
  std::vector<Mat> ki;
  for (const Word& w : k) ki.push_back(rep.word_matrix(w));
  ck.add("witness_unit_norm", std::abs(ctx.space.norm(ge.witness) - 1.0), "<=", 1e-10);
  ck.add("witness_attains_upper", std::abs(displacement_ratio(ctx.space, ki, ge.witness) - ge.upper), "<=",
         1e-9 * std::max(1.0, ge.upper));
  const double threshold = ctx.task.has("threshold") ? ctx.task.at("threshold").number() : 0.01;
  ck.add("gap_above_threshold", ge.upper, ">", threshold);
  if (auto e = ctx.task.get("expect")) {
    e->allow({"value", "tol"});
    const double tol = e->has("tol") ? e->at("tol").number() : 1e-4;
    ck.add("expected_gap", std::abs(ge.upper - e->at("value").number()), "<=", tol);
  }
}

void task_fixpoint(Context& ctx, Report& r) {
  Checks ck(r);
  const Group& g = ctx.require_group();
  const Representation rep = parse_rep(g, ctx.space, ctx.root.at("representation"));
  const Cocycle c = parse_cocycle(rep, ctx.root.get("cocycle"));
  const std::string method = ctx.task.has("method") ? ctx.task.at("method").string() : "circumcenter";
  const Vec x0 = x0_param(ctx);
  const double tol = ctx.tol("tol", 1e-6);
  r.payload["method"] = method;
  if (method == "circumcenter") {
    const std::string expect = ctx.task.has("expect") ? ctx.task.at("expect").string() : "fixed";
    const std::size_t max_radius = ctx.task.has("max_radius") ? static_cast<std::size_t>(ctx.task.at("max_radius").integer()) : 50;
    const OrbitFixedPoint fp = fixed_point_circumcenter(c, x0, max_radius, 3, 100000, tol);
    r.payload["outcome"] = to_string(fp.status);
    r.payload["orbit_size"] = fp.orbit_size;
    r.payload["diameter"] = fp.diameter;
    r.payload["radius_reached"] = fp.radius_reached;
    r.payload["headline"] = fp.fixed_residual;
    if (fp.status != OrbitFixedPoint::Status::unbounded) {
      r.payload["center"] = to_json(fp.center);
      r.payload["circumradius"] = fp.radius;
      r.payload["fixed_residual"] = fp.fixed_residual;
      ck.add("fixed_residual", fp.fixed_residual, "<=", tol);
      if (coboundary_solve(c).is_coboundary) ck.add("fixed_set_distance", fixed_set_distance(c, fp.center), "<=", 1e-5);
    }
    ck.add("expected_outcome", expect == to_string(fp.status) ? 1.0 : 0.0, "==", 1.0);
    return;
  }
  if (method != "fisher-margulis") ctx.task.at("method").bad("unknown method '" + method + "'");
  const std::string expect = ctx.task.has("expect") ? ctx.task.at("expect").string() : "converged";
  const std::vector<Word> k = ctx.task.has("K") ? parse_words(g, ctx.task.at("K")) : g.k_set();
  FmOptions o;
  o.tol = tol;
  o.seed = ctx.seed;
  o.restarts = ctx.budget(8);
  if (auto m = ctx.task.get("multiplier")) o.multiplier = m->number();
  if (auto m = ctx.task.get("max_iter")) o.max_iter = static_cast<std::size_t>(m->integer());
  const FmTrace tr = fisher_margulis_iterate(c, k, x0, o);
  r.payload["outcome"] = to_string(tr.status);
  r.payload["steps"] = tr.steps.size();
  r.payload["terminal"] = to_json(tr.terminal);
  r.payload["terminal_displacement"] = tr.terminal_displacement;
  r.payload["multiplier"] = o.multiplier;
  r.payload["headline"] = tr.terminal_displacement;
  r.trace_header = {"iteration", "R_n", "step_norm", "objective"};
  double halving = 0.0, step = 0.0;
  for (std::size_t i = 0; i < tr.steps.size(); ++i) {
    const FmStep& s = tr.steps[i];
    double disp = 0.0;
    for (const Word& w : k) disp = std::max(disp, ctx.space.distance(c.act(w, s.x), s.x));
    r.trace.push_back({static_cast<double>(s.iteration), s.diameter, s.step_norm, disp});
    if (i > 0) {
      const double prev = tr.steps[i - 1].diameter;
      halving = std::max(halving, s.diameter / prev);
      step = std::max(step, s.step_norm / (o.multiplier * prev));
    }
  }
  if (tr.steps.size() > 1) {
    ck.add("halving_ratio", halving, "<", 0.5);
    ck.add("step_within_search_ball", step, "<=", 1.0 + 1e-12);
  }
  if (tr.status == FmTrace::Status::converged) {
    ck.add("terminal_displacement", tr.terminal_displacement, "<=", tol);
    ck.add("fixed_set_distance", fixed_set_distance(c, tr.terminal), "<=", 1e-5);
  }
  ck.add("expected_outcome", expect == to_string(tr.status) ? 1.0 : 0.0, "==", 1.0);
}

void task_cobound(Context& ctx, Report& r) {
  Checks ck(r);
  const Representation rep = parse_rep(ctx.require_group(), ctx.space, ctx.root.at("representation"));
  const Cocycle c = parse_cocycle(rep, ctx.root.get("cocycle"));
  const double tol = ctx.tol("tol", 1e-8);
  const CoboundarySolution cb = coboundary_solve(c, tol);
  r.payload["v"] = to_json(cb.v);
  r.payload["residual"] = cb.residual;
  r.payload["is_coboundary"] = cb.is_coboundary;
  r.payload["relator_residual"] = c.relator_residual();
  r.payload["headline"] = cb.residual;
  if (cb.is_coboundary) {
    double move = 0.0;
    for (std::size_t g = 0; g < rep.group().generator_count(); ++g)
      move = std::max(move, ctx.space.distance(c.act(Word{static_cast<int>(g) + 1}, cb.v), cb.v));
    ck.add("residual", cb.residual, "<=", tol);
    ck.add("fixed_point_residual", move, "<=", 10 * tol);
  } else {
    ck.add("residual", cb.residual, ">", tol);
  }
  if (auto e = ctx.task.get("expect")) {
    const std::string want = e->string();
    if (want != "coboundary" && want != "nontrivial") e->bad("expect is coboundary or nontrivial");
    ck.add("expected_class", cb.is_coboundary == (want == "coboundary") ? 1.0 : 0.0, "==", 1.0);
  }
}

CosetStructure parse_cosets(Context& ctx) {
  const Group& g = ctx.require_group();
  const Node sub = ctx.task.at("subgroup");
  std::vector<std::pair<std::string, Word>> gens;
  for (auto it = sub.raw().begin(); it != sub.raw().end(); ++it)
    gens.emplace_back(it.key(), g.parse_word(Node(it.value(), sub.path() + "." + it.key()).string()));
  return CosetStructure(g, gens);
}

void task_induce(Context& ctx, Report& r) {
  Checks ck(r);
  const CosetStructure cs = parse_cosets(ctx);
  const Representation rep = parse_rep(cs.subgroup(), ctx.space, ctx.root.at("representation"));
  const Cocycle b = parse_cocycle(rep, ctx.root.get("cocycle"));
  const double tol = ctx.tol("tol", 1e-10);
  const double classify = ctx.tol("classify", 1e-8);
  const Cocycle bt = induce_cocycle(b, cs);
  const Representation& ind = bt.rep();
  r.payload["index"] = cs.index();
  r.payload["subgroup_order"] = cs.subgroup().order();
  r.payload["induced_dim"] = ind.dim();
  r.payload["representatives"] = cs.representatives();
  r.payload["headline"] = ind.relation_residual();

  ck.add("coset_structure_violations", static_cast<double>(cs.verify()), "==", 0.0);
  ck.add("induced_relator_residual", ind.relation_residual(), "<=", tol);
  ck.add("induced_isometry_residual", ind.isometry_residual(), "<=", tol);
  ck.add("induced_cocycle_relator_residual", bt.relator_residual(), "<=", tol);

  detail::Rng rng(ctx.seed);
  double norm_dev = 0.0;
  const double p = ctx.space.p();
  for (int s = 0; s < 20; ++s) {
    const Vec f = rng.normal_vector(static_cast<Eigen::Index>(ind.dim()));
    double sum = 0.0;
    for (std::size_t j = 0; j < cs.index(); ++j) sum += std::pow(ctx.space.norm(block(f, j, rep.dim())), p);
    const double lhs = std::pow(ind.space().norm(f), p);
    norm_dev = std::max(norm_dev, std::abs(lhs - sum) / lhs);
  }
  ck.add("block_norm_identity", norm_dev, "<=", 1e-12);

  const CoboundarySolution cb = coboundary_solve(b, classify);
  const CoboundarySolution cbt = coboundary_solve(bt, classify);
  r.payload["gamma_residual"] = cb.residual;
  r.payload["induced_residual"] = cbt.residual;
  ck.add("h1_classification_agrees", cb.is_coboundary == cbt.is_coboundary ? 1.0 : 0.0, "==", 1.0);
  if (cb.is_coboundary) {
    const Cocycle expected = Cocycle::coboundary(ind, constant_section(cb.v, cs.index()));
    double dev = 0.0;
    for (std::size_t g = 0; g < bt.values().size(); ++g)
      dev = std::max(dev, max_abs(bt.values()[g] - expected.values()[g]));
    ck.add("coboundary_induces_constant_section", dev, "<=", std::max(tol, 1e-10));
  }
  const TransferReport tr = fixed_point_transfer(b, bt, cs, classify);
  r.payload["transfer"] = {{"gamma_fixed", tr.gamma_fixed}, {"g_fixed", tr.g_fixed},
                           {"block_spread", tr.block_spread},
                           {"block_value_residual", tr.block_value_residual},
                           {"constant_section_residual", tr.constant_section_residual}};
  ck.add("fixed_point_transfer", tr.pass ? 1.0 : 0.0, "==", 1.0);
}

SplitOptions split_options(Context& ctx) {
  SplitOptions o;
  o.seed = ctx.seed;
  o.gap_budget = ctx.budget(64);
  o.tol = ctx.tol("tol", 1e-8);
  if (auto t = ctx.task.get("gap_threshold")) o.gap_threshold = t->number();
  ctx.tolerances["gap_threshold"] = o.gap_threshold;
  return o;
}

void split_checks(Checks& ck, const SplitReport& s, double tol) {
  ck.add("b0_coboundary_residual", s.b0_residual, "<=", tol);
  ck.add("reconstruction_residual", s.reconstruction_residual, "<=", tol);
  ck.add("component_support_residual", s.support_residual, "<=", tol);
  ck.add("factor_residual", s.factor_residual, "<=", tol);
  ck.add("component_cocycle_residual", s.cocycle_residual, "<=", tol);
}

json split_json(const SplitReport& s) {
  return {{"dim_fixed", s.dim_fixed}, {"dim_b0", s.dim_b0}, {"dim_b1", s.dim_b1}, {"dim_b2", s.dim_b2},
          {"gap_b0", s.gap_b0}, {"b1", to_json(s.b1)}, {"b2", to_json(s.b2)}, {"v", to_json(s.v)},
          {"reconstruction_residual", s.reconstruction_residual}};
}

void task_split(Context& ctx, Report& r) {
  Checks ck(r);
  const Group& g = ctx.require_group();
  if (!fully_labelled(g)) ctx.root.at("group").bad("split needs a product group (factor labels 1 and 2)");
  const Representation rep = parse_rep(g, ctx.space, ctx.root.at("representation"));
  const Cocycle c = parse_cocycle(rep, ctx.root.get("cocycle"));
  const SplitOptions o = split_options(ctx);
  const SplitReport s = split_action(c, o);
  r.payload = split_json(s);
  r.payload["headline"] = s.reconstruction_residual;
  split_checks(ck, s, o.tol);
  if (auto e = ctx.task.get("expect")) {
    e->allow({"b1", "b2"});
    for (const char* key : {"b1", "b2"}) {
      const auto want = e->get(key);
      if (!want) continue;
      const auto& got = std::string(key) == "b1" ? s.b1 : s.b2;
      double dev = 0.0;
      for (std::size_t i = 0; i < g.generator_count(); ++i) {
        const Vec w = want->has(g.names()[i]) ? want->at(g.names()[i]).vec(rep.dim())
                                              : Vec::Zero(static_cast<Eigen::Index>(rep.dim()));
        dev = std::max(dev, ctx.space.norm(got[i] - w));
      }
      ck.add(std::string(key) + "_recovery", dev, "<=", o.tol);
    }
  }
}

void task_superrigid(Context& ctx, Report& r) {
  Checks ck(r);
  const CosetStructure cs = parse_cosets(ctx);
  const Representation rep = parse_rep(cs.subgroup(), ctx.space, ctx.root.at("representation"));
  const Cocycle b = parse_cocycle(rep, ctx.root.get("cocycle"));
  const SplitOptions o = split_options(ctx);
  const PipelineReport pr = superrigidity_pipeline(b, cs, o);
  r.payload["split"] = split_json(pr.split);
  r.payload["beta1"] = to_json(pr.beta1);
  r.payload["beta2"] = to_json(pr.beta2);
  r.payload["v"] = to_json(pr.v);
  r.payload["residual"] = pr.residual;
  r.payload["dim_b1"] = pr.dim_b1;
  r.payload["dim_b2"] = pr.dim_b2;
  r.payload["dim_overlap"] = pr.dim_overlap;
  r.payload["index"] = cs.index();
  r.payload["headline"] = pr.residual;
  split_checks(ck, pr.split, o.tol);
  ck.add("pullback_residual", pr.residual, "<=", o.tol);
  if (auto e = ctx.task.get("expect")) {
    e->allow({"dim_overlap", "beta1_is_b"});
    if (auto d = e->get("dim_overlap")) ck.add("expected_overlap", static_cast<double>(pr.dim_overlap), "==", d->number());
    if (auto d = e->get("beta1_is_b"); d && d->boolean()) {
      double dev1 = 0.0, dev2 = 0.0;
      for (std::size_t i = 0; i < pr.beta1.size(); ++i) {
        dev1 = std::max(dev1, ctx.space.norm(pr.beta1[i] - b.values()[i]));
        dev2 = std::max(dev2, ctx.space.norm(pr.beta2[i]));
      }
      ck.add("beta1_matches_b", dev1, "<=", o.tol);
      ck.add("beta2_vanishes", dev2, "<=", o.tol);
    }
  }
}

LampertiIsometry random_lamperti(detail::Rng& rng, std::size_t n, double p) {
  std::vector<std::size_t> sigma(n);
  for (std::size_t i = 0; i < n; ++i) sigma[i] = i;
  std::shuffle(sigma.begin(), sigma.end(), rng.engine());
  std::vector<int> signs(n);
  for (auto& s : signs) s = rng.uniform(0.0, 1.0) < 0.5 ? -1 : 1;
  Vec mu(static_cast<Eigen::Index>(n)), nu(static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    mu[static_cast<Eigen::Index>(i)] = std::exp(rng.uniform(-1.0, 1.0));
    nu[static_cast<Eigen::Index>(i)] = std::exp(rng.uniform(-1.0, 1.0));
  }
  return LampertiIsometry(sigma, signs, LpSpace(p, mu), LpSpace(p, nu));
}

void task_mazur(Context& ctx, Report& r) {
  Checks ck(r);
  const double p = ctx.space.p();
  const std::size_t trials = ctx.budget(100);
  const std::size_t vectors = ctx.task.has("vectors") ? static_cast<std::size_t>(ctx.task.at("vectors").integer()) : 50;
  const std::size_t max_dim = ctx.task.has("max_dim") ? static_cast<std::size_t>(ctx.task.at("max_dim").integer()) : 8;
  if (max_dim < 1) ctx.task.at("max_dim").bad("max_dim must be positive");
  const double tol = ctx.tol("tol", 1e-10);
  detail::Rng rng(ctx.seed);
  double agree = 0.0, linear = 0.0, iso = 0.0, sphere = 0.0, duality = 0.0, inverse_err = 0.0;
  std::size_t comp_mismatch = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    const std::size_t n = 1 + rng.index(max_dim);
    const LampertiIsometry u = random_lamperti(rng, n, p);
    const LampertiIsometry w = mazur_conjugate(u);
    const LpSpace& src2 = w.source();
    for (std::size_t s = 0; s < vectors; ++s) {
      const Vec v = detail::unit_vector(src2, rng);
      const Vec x = detail::unit_vector(src2, rng);
      agree = std::max(agree, (mazur_conjugate_apply(u, v) - w.apply(v)).cwiseAbs().maxCoeff());
      const double a = rng.uniform(-1.0, 1.0), b = rng.uniform(-1.0, 1.0);
      const Vec lhs = mazur_conjugate_apply(u, a * v + b * x);
      const Vec rhs = a * mazur_conjugate_apply(u, v) + b * mazur_conjugate_apply(u, x);
      linear = std::max(linear, (lhs - rhs).cwiseAbs().maxCoeff());
      const Vec y = detail::unit_vector(u.source(), rng);
      iso = std::max(iso, std::abs(u.target().norm(u.apply(y)) - 1.0));
      sphere = std::max(sphere, std::abs(src2.norm(mazur_map(u.source(), y, 2.0)) - 1.0));
      inverse_err = std::max(inverse_err, (mazur_map(src2, mazur_map(u.source(), y, 2.0), p) - y).cwiseAbs().maxCoeff());
      if (p > 1.0) {
        const double q = u.source().conjugate_exponent();
        duality = std::max(duality, (mazur_map(u.source(), y, q) - duality_map(u.source(), y)).cwiseAbs().maxCoeff());
      }
    }
    const LampertiIsometry v2(u.sigma(), u.signs(), u.target(), random_lamperti(rng, n, p).target());
    const LampertiIsometry wv = v2;
    if (!(mazur_conjugate(compose(wv, u)) == compose(mazur_conjugate(wv), mazur_conjugate(u)))) ++comp_mismatch;
  }
  r.payload["trials"] = trials;
  r.payload["vectors"] = vectors;
  r.payload["max_agreement_error"] = agree;
  r.payload["max_linearity_error"] = linear;
  r.payload["headline"] = agree;
  ck.add("conjugate_matches_lamperti", agree, "<=", tol);
  ck.add("conjugate_is_linear", linear, "<=", tol);
  ck.add("lamperti_isometric", iso, "<=", tol);
  ck.add("mazur_preserves_sphere", sphere, "<=", tol);
  ck.add("mazur_round_trip", inverse_err, "<=", tol);
  if (p > 1.0) ck.add("mazur_is_duality_map", duality, "<=", tol);
  ck.add("conjugation_respects_composition", static_cast<double>(comp_mismatch), "==", 0.0);
}

void task_schoenberg(Context& ctx, Report& r) {
  Checks ck(r);
  const double p = ctx.space.p();
  detail::Rng rng(ctx.seed);
  if (auto fx = ctx.task.get("fixture")) {
    fx->allow({"points", "s", "p"});
    std::vector<Vec> pts;
    const Node ps = fx->at("points");
    for (std::size_t i = 0; i < ps.size(); ++i) pts.push_back(ps[i].vec());
    const LpSpace sp(static_cast<std::size_t>(pts.front().size()), p);
    const GramReport gr = schoenberg_gram(pts, fx->at("s").number(), sp);
    r.payload["fixture_min_eigenvalue"] = gr.min_eigenvalue;
    ck.add("fixture_violates", gr.min_eigenvalue, "<", -1e-6);
  }
  if (p <= 2.0) {
    const std::size_t configs = ctx.budget(200);
    const double tol = ctx.tol("tol", 1e-9);
    double worst = std::numeric_limits<double>::infinity();
    const double scales[] = {0.1, 1.0, 10.0};
    for (std::size_t t = 0; t < configs; ++t) {
      const std::size_t m = 1 + rng.index(8);
      const std::size_t d = 1 + rng.index(6);
      const LpSpace sp(d, p);
      std::vector<Vec> pts;
      for (std::size_t i = 0; i < m; ++i) pts.push_back(rng.uniform_vector(static_cast<Eigen::Index>(d), -1.0, 1.0));
      worst = std::min(worst, schoenberg_gram(pts, scales[t % 3], sp).min_eigenvalue);
    }
    r.payload["configurations"] = configs;
    r.payload["min_eigenvalue"] = worst;
    r.payload["headline"] = worst;
    ck.add("gram_positive_semidefinite", worst, ">=", -tol);
    return;
  }
  const std::size_t trials = ctx.budget(2000);
  const SchoenbergWitness w = schoenberg_search(p, trials, ctx.seed);
  r.payload["found"] = w.found;
  r.payload["trials_used"] = w.trials_used;
  r.payload["min_eigenvalue"] = w.min_eigenvalue;
  r.payload["headline"] = w.min_eigenvalue;
  if (w.found) {
    r.payload["witness"] = {{"points", to_json(w.points)}, {"s", w.s}, {"dim", w.dim}};
    ck.add("violation_found", w.min_eigenvalue, "<", -1e-6);
  } else {
    ck.add("search_exhausted", static_cast<double>(w.trials_used), "==", static_cast<double>(trials));
  }
}

void task_modulus(Context& ctx, Report& r) {
  Checks ck(r);
  std::vector<double> eps{0.25, 0.5, 0.75, 1.0, 1.25, 1.5, 1.75, 2.0};
  if (auto e = ctx.task.get("epsilon")) eps = e->numbers();
  const std::size_t budget = ctx.budget(2000);
  const ModulusTable t = modulus_table(ctx.space, eps, budget, ctx.seed);
  r.payload["epsilon"] = eps;
  r.payload["raw"] = t.raw;
  r.payload["envelope"] = t.envelope;
  r.payload["headline"] = t.envelope.empty() ? 0.0 : t.envelope.front();
  std::size_t violations = 0;
  for (std::size_t i = 1; i < t.envelope.size(); ++i)
    if (t.envelope[i] < t.envelope[i - 1]) ++violations;
  ck.add("envelope_monotone_violations", static_cast<double>(violations), "==", 0.0);
  double round_trip = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < eps.size(); ++i)
    round_trip = std::min(round_trip, inverse_modulus(t, t.envelope[i]) - eps[i]);
  ck.add("inverse_round_trip_margin", round_trip, ">=", 0.0);
  if (auto ts = ctx.task.get("inverse_at")) {
    json inv = json::array();
    for (double x : ts->numbers()) inv.push_back({{"t", x}, {"epsilon", inverse_modulus(t, x)}});
    r.payload["inverse"] = inv;
  }
  if (auto ex = ctx.task.get("expect")) {
    for (std::size_t i = 0; i < ex->size(); ++i) {
      const Node e = (*ex)[i];
      e.allow({"epsilon", "delta", "tol"});
      const double at = e.at("epsilon").number();
      const auto it = std::find(eps.begin(), eps.end(), at);
      if (it == eps.end()) e.at("epsilon").bad("epsilon is not on the grid");
      const double got = t.raw[static_cast<std::size_t>(it - eps.begin())];
      ck.add("expected_delta_at_" + format_number(at), std::abs(got - e.at("delta").number()), "<=",
             e.has("tol") ? e.at("tol").number() : 1e-3);
    }
  }
}

void task_klee(Context& ctx, Report& r) {
  Checks ck(r);
  const std::size_t trials = ctx.budget(2000);
  const double margin = ctx.tol("margin", 1e-6);
  if (auto fx = ctx.task.get("fixture")) {
    std::vector<Vec> pts;
    const Node ps = fx->at("points");
    for (std::size_t i = 0; i < ps.size(); ++i) pts.push_back(ps[i].vec(ctx.space.dim()));
    const Circumcenter cc = circumcenter(pts, ctx.space);
    Mat P(static_cast<Eigen::Index>(ctx.space.dim()), static_cast<Eigen::Index>(pts.size()));
    for (std::size_t j = 0; j < pts.size(); ++j) P.col(static_cast<Eigen::Index>(j)) = pts[j];
    const double d = nearest_point(Hull{P}, cc.center, ctx.space).distance;
    r.payload["fixture_hull_distance"] = d;
    ck.add("fixture_outside_hull", d, ">", margin);
  }
  const KleeWitness w = klee_search(ctx.space, trials, ctx.seed, margin);
  r.payload["found"] = w.found;
  r.payload["trials_used"] = w.trials_used;
  r.payload["hull_distance"] = w.hull_distance;
  r.payload["headline"] = w.hull_distance;
  if (w.found) {
    r.payload["witness"] = {{"points", to_json(w.points)}, {"center", to_json(w.center)}, {"radius", w.radius}};
    ck.add("center_outside_hull", w.hull_distance, ">", margin);
  } else {
    ck.add("search_exhausted", static_cast<double>(w.trials_used), "==", static_cast<double>(trials));
  }
}

void task_displacement(Context& ctx, Report& r) {
  Checks ck(r);
  const Group& g = ctx.require_group();
  const Representation rep = parse_rep(g, ctx.space, ctx.root.at("representation"));
  const Cocycle c = parse_cocycle(rep, ctx.root.get("cocycle"));
  const std::vector<Word> kh = ctx.task.has("K_H") ? parse_words(g, ctx.task.at("K_H")) : std::vector<Word>{};
  const std::size_t len = ctx.task.has("max_length") ? static_cast<std::size_t>(ctx.task.at("max_length").integer()) : 6;
  const double tol = ctx.tol("tol", 1e-6);
  const DisplacementReport d = displacement_bound_check(c, kh, len, tol, ctx.budget(64), ctx.seed);
  r.payload["epsilon"] = d.epsilon;
  r.payload["R"] = d.radius;
  r.payload["bound"] = d.bound;
  r.payload["max_component"] = d.max_component;
  r.payload["max_norm"] = d.max_norm;
  r.payload["words_checked"] = d.words_checked;
  r.payload["vacuous"] = d.vacuous;
  r.payload["slack"] = d.bound - d.max_component;
  r.payload["headline"] = d.max_component;
  ck.add("commutator_residual", d.commutator_residual, "<=", 1e-10);
  ck.add("identity_residual", d.identity_residual, "<=", 1e-10);
  if (!d.vacuous) ck.add("displacement_bound", d.max_component, "<=", d.bound + tol);
}

void task_mautner(Context& ctx, Report& r) {
  Checks ck(r);
  const Group& g = ctx.require_group();
  const Representation rep = parse_rep(g, ctx.space, ctx.root.at("representation"));
  const Cocycle c = parse_cocycle(rep, ctx.root.get("cocycle"));
  const Word gw = g.parse_word(ctx.task.at("g").string());
  const Word hw = g.parse_word(ctx.task.at("h").string());
  const std::size_t n_max = ctx.task.has("n_max") ? static_cast<std::size_t>(ctx.task.at("n_max").integer()) : 20;
  const double tol = ctx.tol("tol", 1e-6);
  std::optional<std::pair<Mat, Mat>> side;
  if (auto m = ctx.task.get("group_matrices")) {
    m->allow({"g", "h"});
    side = std::make_pair(m->at("g").matrix(), m->at("h").matrix());
  }
  const MautnerReport mr = mautner_check(c, gw, hw, n_max, tol, side);
  r.payload["contraction"] = mr.contraction;
  r.payload["applicable"] = mr.applicable;
  r.payload["headline"] = mr.h_displacement;
  if (!mr.applicable) {
    r.payload["reason"] = mr.reason;
    r.status = Status::not_applicable;
    r.message = mr.reason;
    return;
  }
  r.payload["fixed_point"] = to_json(mr.fixed_point);
  r.payload["g_residual"] = mr.g_residual;
  r.payload["h_displacement"] = mr.h_displacement;
  ck.add("g_fixed_residual", mr.g_residual, "<=", tol);
  ck.add("h_displacement", mr.h_displacement, "<=", tol);
}

const std::map<std::string, void (*)(Context&, Report&)>& tasks() {
  static const std::map<std::string, void (*)(Context&, Report&)> t{
      {"decompose", task_decompose}, {"gap", task_gap},
      {"fixpoint", task_fixpoint},   {"cobound", task_cobound},
      {"induce", task_induce},       {"split", task_split},
      {"superrigid", task_superrigid}, {"mazur", task_mazur},
      {"schoenberg", task_schoenberg}, {"modulus", task_modulus},
      {"klee", task_klee},           {"displacement", task_displacement},
      {"mautner", task_mautner}};
  return t;
}

std::string line_column(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

// The parser's own text minus its exception tag and position prefix.
std::string parse_detail(const json::parse_error& e) {
  const std::string what = e.what();
  const auto at = what.find(": ");
  return at == std::string::npos ? what : what.substr(at + 2);
}

}  // namespace

Report run_scenario(const std::string& text, const RunOptions& options) {
  Report r;
  r.provenance["version"] = version();
  r.provenance["schema"] = kScenarioSchema;
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    r.status = Status::refused;
    r.message = "parse error at " + line_column(text, e.byte > 0 ? e.byte - 1 : 0) + ": " + parse_detail(e);
    return r;
  }
  try {
    // expectations belong to the scenario's own task kind
    if (options.task && doc.is_object() && doc.contains("task") && doc["task"].is_object() &&
        doc["task"].value("kind", std::string()) != *options.task)
      doc["task"].erase("expect");
    const Node root(doc, "$");
    root.allow({"schema", "name", "description", "seed", "space", "group", "representation", "cocycle", "task"});
    if (auto s = root.get("schema"))
      if (s->string() != kScenarioSchema) s->bad("unsupported schema '" + s->string() + "'");
    r.scenario = root.has("name") ? root.at("name").string() : "unnamed";
    const Node task = root.at("task");
    std::string kind = task.at("kind").string();
    if (options.task) kind = *options.task;
    r.task = kind;
    const auto it = tasks().find(kind);
    if (it == tasks().end()) task.at("kind").bad("unknown task '" + kind + "'");
    std::optional<std::uint64_t> sseed;
    if (auto s = root.get("seed")) {
      if (!s->raw().is_number_unsigned()) s->bad("seed must be a nonnegative integer");
      sseed = s->raw().get<std::uint64_t>();
    }
    Context ctx{root, task, kind, resolve_seed(options.seed, sseed), options,
                parse_space(root.at("space"), options.p), std::nullopt};
    if (auto g = root.get("group")) ctx.group = parse_group(*g);
    r.provenance["seed"] = ctx.seed;
    r.provenance["p"] = ctx.space.p();
    it->second(ctx, r);
    r.provenance["tolerances"] = ctx.tolerances;
    if (options.budget) r.provenance["budget"] = *options.budget;
    if (r.status != Status::not_applicable) {
      const bool ok = !r.checks.empty() &&
                      std::all_of(r.checks.begin(), r.checks.end(), [](const Check& c) { return c.pass; });
      r.status = ok ? Status::pass : Status::fail;
    }
  } catch (const Error& e) {
    r.status = e.code() == ErrorCode::numerical ? Status::fail : Status::refused;
    r.message = e.code() == ErrorCode::refused ? std::string(e.what())
                                               : std::string(to_string(e.code())) + ": " + e.what();
  } catch (const std::exception& e) {
    r.status = Status::refused;
    r.message = std::string("invalid input: ") + e.what();
  }
  return r;
}

std::optional<Representation> scenario_representation(const std::string& text,
                                                       const RunOptions& options) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(ErrorCode::parse, "parse error at " + line_column(text, e.byte > 0 ? e.byte - 1 : 0));
  }
  const Node root(doc, "$");
  if (!root.has("representation") || !root.has("group")) return std::nullopt;
  const LpSpace space = parse_space(root.at("space"), options.p);
  const Group g = parse_group(root.at("group"));
  const Node rep = root.at("representation");
  if (root.has("task") && root.at("task").has("subgroup")) {
    Context ctx{root, root.at("task"), "", 0, options, space, g};
    const CosetStructure cs = parse_cosets(ctx);
    return parse_rep(cs.subgroup(), space, rep);
  }
  return parse_rep(g, space, rep);
}

Report run_scenario_file(const std::string& path, const RunOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    Report r;
    r.scenario = path;
    r.status = Status::refused;
    r.message = "cannot open scenario file '" + path + "'";
    return r;
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return run_scenario(ss.str(), options);
}

std::vector<SweepRow> sweep(const std::string& text, const std::vector<double>& ps,
                            const RunOptions& options) {
  std::vector<SweepRow> rows;
  for (double p : ps) {
    RunOptions o = options;
    o.p = p;
    const auto t0 = std::chrono::steady_clock::now();
    SweepRow row;
    row.p = p;
    row.report = run_scenario(text, o);
    row.runtime = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    row.status = row.report.status;
    const json& pl = row.report.payload;
    if (pl.contains("headline") && pl["headline"].is_number()) row.gap_upper = pl["headline"].get<double>();
    if (pl.contains("witness_norm") && pl["witness_norm"].is_number()) row.witness_norm = pl["witness_norm"].get<double>();
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace isolab
