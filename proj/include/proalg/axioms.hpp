#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "proalg/abelian.hpp"
#include "proalg/diagrep.hpp"
#include "proalg/field.hpp"
#include "proalg/paren.hpp"

namespace proalg {

struct FragmentBound {
  std::size_t max_dimension = 3;       // N
  std::size_t max_tensor_length = 2;   // M
  std::size_t witness_dimension = 5;   // N_w
  std::size_t witness_length = 3;      // M_w
  std::size_t tuple_budget = 1500;     // inner tuples per instance before sampling
  std::size_t morphism_samples = 2;    // random elements per hom space besides 0 and the basis
  std::size_t witness_tries = 32;      // random candidates per witness object
  std::size_t pair_rate = 128;         // keep 1 in pair_rate object pairs when a third object is quantified
  std::uint64_t seed = 1;

  static FragmentBound defaults(std::size_t n, std::size_t m) {
    FragmentBound b;
    b.max_dimension = n;
    b.max_tensor_length = m;
    b.witness_dimension = n + 2;
    b.witness_length = m + 1;
    return b;
  }
  void validate() const {
    if (!max_dimension || !max_tensor_length || !witness_dimension || !witness_length)
      throw std::invalid_argument("fragment bounds must be at least 1");
    if (witness_dimension < max_dimension || witness_length < max_tensor_length)
      throw std::invalid_argument("witness bounds must contain the fragment bounds");
    if (!tuple_budget || !witness_tries || !pair_rate) throw std::invalid_argument("sampling parameters must be positive");
  }
};

enum class AxiomStatus { pass, fail, skipped };

inline std::string axiom_status_name(AxiomStatus s) {
  switch (s) {
    case AxiomStatus::pass: return "pass";
    case AxiomStatus::fail: return "fail";
    case AxiomStatus::skipped: return "skipped";
  }
  return "?";
}

struct AxiomResult {
  int index = 0;
  std::string name;
  AxiomStatus status = AxiomStatus::pass;
  std::string detail;  // counterexample or skip reason
  std::string scope;
  std::size_t instances = 0;
  double seconds = 0;
};

struct AxiomReport {
  std::string field, group;
  FragmentBound bounds;
  std::vector<AxiomResult> results;  // by index 1..27

  std::size_t count(AxiomStatus s) const {
    std::size_t c = 0;
    for (auto& r : results) c += r.status == s;
    return c;
  }
  bool all_pass() const { return count(AxiomStatus::pass) == results.size(); }
  const AxiomResult& at(int index) const { return results.at(static_cast<std::size_t>(index - 1)); }
  std::vector<int> failing() const {
    std::vector<int> out;
    for (auto& r : results)
      if (r.status == AxiomStatus::fail) out.push_back(r.index);
    return out;
  }
};

inline const std::vector<std::string>& axiom_names() {
  static const std::vector<std::string> names = {
      "field",
      "surjectivity of pi_p",
      "existence of zero",
      "vector space addition",
      "scalar multiplication",
      "dimension",
      "surjectivity of pi_{p,q}",
      "commuting projections",
      "morphisms",
      "existence of the identity",
      "composition of morphisms",
      "linearity",
      "tensor compatible with projections",
      "bilinearity of tensor product",
      "tensor product",
      "functoriality of tensor product",
      "associativity of the tensor product",
      "commutativity of the tensor product",
      "uniqueness of tensor factorization",
      "existence of tensor factorization",
      "tensor skeletal",
      "existence of the identity object",
      "existence of duals",
      "existence of direct sums",
      "existence of kernels",
      "existence of cokernels",
      "linear independence",
  };
  return names;
}

namespace model {

using Mat = Matrix<PrimeField>;
using ObjId = std::uint32_t;

struct ObjectInfo {
  BaseObject base;  // weights and shape
  std::string key;  // identity of the element of B_p
  Sort sort;
};

class ObjectTable {
 public:
  ObjId intern(const BaseObject& base, const std::string& key) {
    auto it = index_.find(key);
    if (it != index_.end()) return it->second;
    ObjId id = static_cast<ObjId>(info_.size());
    info_.push_back({base, key, sort_of(base)});
    sorts_.push_back(info_.back().sort);
    weights_.emplace_back();
    if (info_.back().sort.m == 1) {
      auto sorted = weights(id);
      std::sort(sorted.begin(), sorted.end());
      by_weights_.emplace(std::move(sorted), id);
    }
    index_.emplace(key, id);
    return id;
  }
  ObjId intern(const BaseObject& base) { return intern(base, format_object(base)); }
  std::optional<ObjId> find(const std::string& key) const {
    auto it = index_.find(key);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }
  const ObjectInfo& operator[](ObjId id) const { return info_.at(id); }
  const Sort& sort(ObjId id) const { return sorts_[id]; }

  // Basis weights as small codes, equal codes for equal characters.
  const std::vector<std::uint32_t>& weights(ObjId id) const {
    auto& w = weights_.at(id);
    if (!w) {
      w.emplace();
      for (auto& a : basis_weights(info_[id].base))
        w->push_back(codes_.emplace(a, static_cast<std::uint32_t>(codes_.size())).first->second);
    }
    return *w;
  }
  std::size_t size() const { return info_.size(); }

  // Memo for interpretations that compute an object from two others.
  std::optional<ObjId> memo(int slot, ObjId a, ObjId b) const {
    auto it = memo_.find(memo_key(slot, a, b));
    if (it == memo_.end()) return std::nullopt;
    return it->second;
  }
  void remember(int slot, ObjId a, ObjId b, ObjId r) { memo_[memo_key(slot, a, b)] = r; }

  // The first irreducible interned with these basis weights.
  std::optional<ObjId> irreducible_with(std::vector<std::uint32_t> weights) const {
    std::sort(weights.begin(), weights.end());
    auto it = by_weights_.find(weights);
    if (it == by_weights_.end()) return std::nullopt;
    return it->second;
  }

 private:
  std::deque<ObjectInfo> info_;
  std::unordered_map<std::string, ObjId> index_;
  static std::uint64_t memo_key(int slot, ObjId a, ObjId b) {
    return (static_cast<std::uint64_t>(slot) << 56) ^ (static_cast<std::uint64_t>(a) << 28) ^ b;
  }
  std::unordered_map<std::uint64_t, ObjId> memo_;
  std::vector<Sort> sorts_;
  mutable std::deque<std::optional<std::vector<std::uint32_t>>> weights_;
  mutable std::map<GroupElement, std::uint32_t> codes_;
  std::map<std::vector<std::uint32_t>, ObjId> by_weights_;
};

// An element of X_p: the object it lies over and its coordinates, one byte each.
struct Vec {
  ObjId obj = 0;
  std::string c;
  friend bool operator==(const Vec&, const Vec&) = default;
  friend auto operator<=>(const Vec&, const Vec&) = default;
};

// An element of B_{p,q}.
struct Mor {
  ObjId src = 0, tgt = 0;
  Mat map;
  std::uint32_t tag = 0;
  friend bool operator==(const Mor& a, const Mor& b) {
    return a.src == b.src && a.tgt == b.tgt && a.tag == b.tag && a.map == b.map;
  }
};
using MorPtr = std::shared_ptr<const Mor>;

// An element of X_{p,q}.
struct Point {
  Vec s, t;
  MorPtr owner;
};

// Interpretations of the symbols of the language on M(k, A), plus witness hints.
// A hint only orders the witness search; every witness is re-verified.
struct ModelHooks {
  std::function<std::vector<unsigned>()> field_elements;
  std::function<unsigned(unsigned, unsigned)> field_add, field_mul;
  unsigned field_zero = 0, field_one = 1;

  std::function<std::vector<ObjId>(ObjectTable&, std::size_t max_dim, std::size_t max_len)> objects;
  std::function<ObjId(ObjectTable&)> unit;

  std::function<std::vector<Vec>(const ObjectTable&, ObjId)> carrier;
  std::function<ObjId(const Vec&)> pi;
  std::function<bool(const Vec&)> zero;
  std::function<std::vector<Vec>(const Vec&, const Vec&)> add;  // every z with A_p(x, y, z)
  std::function<Vec(unsigned, const Vec&)> scale;
  std::function<bool(const std::vector<Vec>&)> li;
  std::function<Vec(ObjectTable&, const Vec&, const Vec&)> tensor;

  std::function<std::vector<Mat>(const ObjectTable&, ObjId, ObjId)> hom_basis;
  std::function<std::vector<Mor>(const ObjectTable&, ObjId, ObjId, const Mat&)> morphisms_with_map;
  std::function<std::vector<Point>(const MorPtr&)> fibre;
  std::function<ObjId(const Mor&)> source, target;

  std::function<std::optional<ObjId>(ObjectTable&, int axiom, const std::vector<ObjId>&, const Mat*)> hint;
};

inline Vec make_vec(ObjId obj, const std::vector<Mod>& v) {
  Vec x{obj, std::string(v.size(), '\0')};
  for (std::size_t i = 0; i < v.size(); ++i) x.c[i] = static_cast<char>(v[i].value());
  return x;
}

inline std::vector<Mod> coords(const PrimeField& k, const Vec& x) {
  std::vector<Mod> v(x.c.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = k.element(static_cast<unsigned char>(x.c[i]));
  return v;
}

inline std::string vec_string(const ObjectTable& t, const Vec& x) {
  std::string s = t[x.obj].key + ":[";
  for (std::size_t i = 0; i < x.c.size(); ++i)
    s += (i ? " " : "") + std::to_string(static_cast<unsigned char>(x.c[i]));
  return s + "]";
}

inline std::string mat_string(const Mat& M) {
  std::string s = "[";
  for (std::size_t i = 0; i < M.rows(); ++i) {
    s += i ? "; " : "";
    for (std::size_t j = 0; j < M.cols(); ++j) s += (j ? " " : "") + to_string(M(i, j));
  }
  return s + "]";
}

// Irreducibles of every dimension up to max_dim, then parenthesized tensor
// products of them with at most max_len leaves and dimension at most max_dim.
inline std::vector<BaseObject> canonical_objects(const GroupPtr& g, std::size_t max_dim, std::size_t max_len) {
  return fragment_objects(finite_elements(g), max_dim, max_len);
}

// M maps X(b) to X(c) without mixing weights.
inline bool equivariant(const ObjectTable& t, ObjId b, ObjId c, const Mat& M) {
  const auto& wb = t.weights(b);
  const auto& wc = t.weights(c);
  if (M.rows() != wc.size() || M.cols() != wb.size()) return false;
  for (std::size_t i = 0; i < wc.size(); ++i)
    for (std::size_t j = 0; j < wb.size(); ++j)
      if (wc[i] != wb[j] && !is_zero(M(i, j))) return false;
  return true;
}

inline ModelHooks canonical_model(const PrimeField& k, const GroupPtr& g) {
  if (!g->is_finite()) throw std::invalid_argument("the bounded checker needs a finite group");
  if (k.p > 251) throw std::invalid_argument("the bounded checker needs a prime field with at most 251 elements");
  const unsigned p = static_cast<unsigned>(k.p);
  ModelHooks h;
  h.field_elements = [p] {
    std::vector<unsigned> e(p);
    for (unsigned i = 0; i < p; ++i) e[i] = i;
    return e;
  };
  h.field_add = [p](unsigned a, unsigned b) { return (a + b) % p; };
  h.field_mul = [p](unsigned a, unsigned b) { return (a * b) % p; };

  h.objects = [g](ObjectTable& t, std::size_t n, std::size_t m) {
    std::vector<ObjId> ids;
    for (auto& b : canonical_objects(g, n, m)) ids.push_back(t.intern(b));
    return ids;
  };
  h.unit = [g](ObjectTable& t) { return t.intern(unit_object(g)); };

  h.carrier = [p](const ObjectTable& t, ObjId b) {
    const std::size_t n = t[b].sort.n;
    std::vector<Vec> out;
    Vec x{b, std::string(n, '\0')};
    while (true) {
      out.push_back(x);
      std::size_t i = n;
      while (i > 0 && static_cast<unsigned char>(x.c[i - 1]) == p - 1) x.c[--i] = 0;
      if (i == 0) return out;
      x.c[i - 1] = static_cast<char>(static_cast<unsigned char>(x.c[i - 1]) + 1);
    }
  };
  h.pi = [](const Vec& x) { return x.obj; };
  h.zero = [](const Vec& x) { return x.c.find_first_not_of('\0') == std::string::npos; };
  h.add = [p](const Vec& x, const Vec& y) {
    if (x.obj != y.obj || x.c.size() != y.c.size()) return std::vector<Vec>{};
    Vec z = x;
    for (std::size_t i = 0; i < z.c.size(); ++i)
      z.c[i] = static_cast<char>((static_cast<unsigned char>(x.c[i]) + static_cast<unsigned char>(y.c[i])) % p);
    return std::vector<Vec>{z};
  };
  h.scale = [p](unsigned a, const Vec& x) {
    Vec z = x;
    for (auto& c : z.c) c = static_cast<char>((a * static_cast<unsigned char>(c)) % p);
    return z;
  };
  h.li = [k](const std::vector<Vec>& vs) {
    if (vs.empty()) return true;
    for (auto& v : vs)
      if (v.obj != vs[0].obj) return false;
    Mat M(k, vs[0].c.size(), vs.size());
    for (std::size_t j = 0; j < vs.size(); ++j)
      for (std::size_t i = 0; i < M.rows(); ++i) M(i, j) = k.element(static_cast<unsigned char>(vs[j].c[i]));
    return rank(M) == vs.size();
  };
  h.tensor = [p](ObjectTable& t, const Vec& x, const Vec& y) {
    auto obj = t.memo(0, x.obj, y.obj);
    if (!obj) {
      const auto& a = t[x.obj];
      const auto& b = t[y.obj];
      obj = t.intern(proalg::tensor(a.base, b.base), "(" + a.key + " " + b.key + ")");
      t.remember(0, x.obj, y.obj, *obj);
    }
    Vec z{*obj, std::string(x.c.size() * y.c.size(), '\0')};
    for (std::size_t i = 0; i < x.c.size(); ++i)
      for (std::size_t j = 0; j < y.c.size(); ++j)
        z.c[i * y.c.size() + j] = static_cast<char>(
            (static_cast<unsigned char>(x.c[i]) * static_cast<unsigned char>(y.c[j])) % p);
    return z;
  };

  // Elementary maps between equal weights; they span the same space as hom_space.
  h.hom_basis = [k](const ObjectTable& t, ObjId b, ObjId c) {
    const auto& wb = t.weights(b);
    const auto& wc = t.weights(c);
    std::vector<Mat> out;
    for (std::size_t j = 0; j < wb.size(); ++j)
      for (std::size_t i = 0; i < wc.size(); ++i)
        if (wb[j] == wc[i]) {
          Mat E(k, wc.size(), wb.size());
          E(i, j) = k.one();
          out.push_back(std::move(E));
        }
    return out;
  };
  h.morphisms_with_map = [](const ObjectTable& t, ObjId b, ObjId c, const Mat& M) {
    return equivariant(t, b, c, M) ? std::vector<Mor>{Mor{b, c, M, 0}} : std::vector<Mor>{};
  };
  h.fibre = [p](const MorPtr& f) {
    const std::size_t rows = f->map.rows(), cols = f->map.cols();
    std::vector<unsigned> M(rows * cols);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) M[i * cols + j] = static_cast<unsigned>(f->map(i, j).value());
    std::vector<Point> out;
    std::size_t total = 1;
    for (std::size_t j = 0; j < cols; ++j) total *= p;
    out.reserve(total);
    std::string s(cols, '\0');
    while (true) {
      Vec t{f->tgt, std::string(rows, '\0')};
      for (std::size_t i = 0; i < rows; ++i) {
        unsigned acc = 0;
        for (std::size_t j = 0; j < cols; ++j) acc += M[i * cols + j] * static_cast<unsigned char>(s[j]);
        t.c[i] = static_cast<char>(acc % p);
      }
      out.push_back({Vec{f->src, s}, std::move(t), f});
      std::size_t i = s.size();
      while (i > 0 && static_cast<unsigned char>(s[i - 1]) == p - 1) s[--i] = 0;
      if (i == 0) return out;
      s[i - 1] = static_cast<char>(static_cast<unsigned char>(s[i - 1]) + 1);
    }
  };
  h.source = [](const Mor& f) { return f.src; };
  h.target = [](const Mor& f) { return f.tgt; };

  // Kernel and cokernel weights of an equivariant map, one weight block at a time.
  // Outer nullopt: no irreducible with those weights is interned yet.
  auto block_hint = [k](ObjectTable& t, int axiom, ObjId b, ObjId c,
                        const Mat& M) -> std::optional<std::optional<ObjId>> {
    const auto& wb = t.weights(b);
    const auto& wc = t.weights(c);
    std::vector<std::uint32_t> codes(wb.begin(), wb.end());
    codes.insert(codes.end(), wc.begin(), wc.end());
    std::sort(codes.begin(), codes.end());
    codes.erase(std::unique(codes.begin(), codes.end()), codes.end());
    std::vector<std::uint32_t> out;
    for (std::uint32_t w : codes) {
      std::vector<std::size_t> rows, cols;
      for (std::size_t i = 0; i < wc.size(); ++i)
        if (wc[i] == w) rows.push_back(i);
      for (std::size_t j = 0; j < wb.size(); ++j)
        if (wb[j] == w) cols.push_back(j);
      std::size_t r = 0;
      if (!rows.empty() && !cols.empty()) {
        Mat B(k, rows.size(), cols.size());
        for (std::size_t i = 0; i < rows.size(); ++i)
          for (std::size_t j = 0; j < cols.size(); ++j) B(i, j) = M(rows[i], cols[j]);
        r = rank(B);
      }
      const std::size_t keep = (axiom == 25 ? cols.size() : rows.size()) - r;
      out.insert(out.end(), keep, w);
    }
    if (out.empty()) return std::optional<ObjId>{};
    if (auto u = t.irreducible_with(out)) return std::optional<ObjId>{*u};
    return std::nullopt;
  };
  h.hint = [k, block_hint](ObjectTable& t, int axiom, const std::vector<ObjId>& objs, const Mat* map) -> std::optional<ObjId> {
    switch (axiom) {
      case 21:
        if (auto c = t.irreducible_with(t.weights(objs[0]))) return c;
        return t.intern(normalize_to_irreducible(k, t[objs[0]].base).irreducible);
      case 23: return t.intern(dual(k, t[objs[0]].base).object);
      case 24: {
        auto w = t.weights(objs[0]);
        w.insert(w.end(), t.weights(objs[1]).begin(), t.weights(objs[1]).end());
        if (auto c = t.irreducible_with(w)) return c;
        return t.intern(direct_sum(k, t[objs[0]].base, t[objs[1]].base).object);
      }
      case 25:
      case 26:
        if (auto r = block_hint(t, axiom, objs[0], objs[1], *map)) return *r;
        break;
      default: return std::nullopt;
    }
    switch (axiom) {
      case 25: {
        auto f = HomMorphism<PrimeField>::from_dense(k, t[objs[0]].base, t[objs[1]].base, *map);
        if (!f) return std::nullopt;
        auto u = kernel_of(*f).object;
        if (u.is_zero()) return std::nullopt;
        return t.intern(u);
      }
      case 26: {
        auto f = HomMorphism<PrimeField>::from_dense(k, t[objs[0]].base, t[objs[1]].base, *map);
        if (!f) return std::nullopt;
        auto w = cokernel_of(*f).object;
        if (w.is_zero()) return std::nullopt;
        return t.intern(w);
      }
      default: return std::nullopt;
    }
  };
  return h;
}

}  // namespace model

namespace detail {

using model::Mat;
using model::Mor;
using model::MorPtr;
using model::ObjId;
using model::Point;
using model::Vec;

inline std::uint64_t fnv(std::uint64_t h, const std::string& s) {
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  h ^= 0xff;
  return h * 1099511628211ULL;
}

// Cheap to seed; one generator is seeded per instance.
using Rng = std::minstd_rand;

inline std::string map_hash(const Mat& M) {
  std::uint64_t h = 1469598103934665603ULL;
  for (std::size_t i = 0; i < M.rows(); ++i)
    for (std::size_t j = 0; j < M.cols(); ++j) {
      h ^= M(i, j).value() + 1;
      h *= 1099511628211ULL;
    }
  return std::to_string(h);
}

struct FailureFound {
  std::string what;
};

class Checker {
 public:
  Checker(const PrimeField& k, model::ModelHooks hooks, const FragmentBound& b)
      : k_(k), h_(std::move(hooks)), b_(b), tries_(b.witness_tries * (k.p == 2 ? 16 : k.p == 3 ? 4 : 1)) {
    frag_ = h_.objects(table_, b_.max_dimension, b_.max_tensor_length);
    for (ObjId w : h_.objects(table_, b_.witness_dimension, 1)) {
      auto s = table_[w].sort;
      if (s.m == 1) irreducibles_[s.n].push_back(w);
    }
  }

  AxiomResult run(int index) {
    AxiomResult r;
    r.index = index;
    r.name = axiom_names().at(static_cast<std::size_t>(index - 1));
    scope_.clear();
    instances_ = 0;
    out_of_scope_ = 0;
    const auto start = std::chrono::steady_clock::now();
    try {
      dispatch(index);
      r.status = AxiomStatus::pass;
      if (instances_ == 0) {
        r.status = AxiomStatus::skipped;
        r.detail = "no instance lies within the witness bounds";
      }
    } catch (const FailureFound& f) {
      r.status = AxiomStatus::fail;
      r.detail = f.what;
    }
    r.scope = scope_;
    if (out_of_scope_) r.scope += "; " + std::to_string(out_of_scope_) + " instances exceed the witness bounds";
    r.instances = instances_;
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
  }

 private:
  PrimeField k_;
  model::ModelHooks h_;
  FragmentBound b_;
  // Random maps over F2 and F3 are often singular on some block, so they get more draws.
  std::size_t tries_;
  model::ObjectTable table_;
  std::vector<ObjId> frag_;
  std::map<std::size_t, std::vector<ObjId>> irreducibles_;
  std::string scope_;
  std::size_t instances_ = 0, out_of_scope_ = 0;

  std::map<ObjId, std::vector<Vec>> fibres_;
  bool fibres_built_ = false;
  std::unordered_map<std::uint64_t, std::vector<Mat>> homs_;
  std::unordered_map<std::uint64_t, ObjId> products_;
  std::map<std::pair<ObjId, ObjId>, std::pair<Mat, Mat>> tensor_bases_;
  std::map<std::tuple<int, ObjId, std::size_t>, std::vector<std::pair<ObjId, Mat>>> recent_;
  std::set<std::pair<int, ObjId>> zero_done_;

  [[noreturn]] static void fail(const std::string& s) { throw FailureFound{s}; }
  const std::string& key(ObjId b) const { return table_[b].key; }
  std::size_t dim(ObjId b) const { return table_.sort(b).n; }
  std::size_t len(ObjId b) const { return table_.sort(b).m; }
  std::string vs(const Vec& x) const { return model::vec_string(table_, x); }

  Rng rng(std::initializer_list<std::string> parts) const {
    std::uint64_t h = 1469598103934665603ULL ^ b_.seed;
    for (auto& s : parts) h = fnv(h, s);
    return Rng(static_cast<Rng::result_type>(h % 2147483646ULL + 1));
  }
  bool keep_pair(ObjId a, ObjId c, const char* salt) const {
    std::uint64_t h = fnv(fnv(fnv(1469598103934665603ULL ^ b_.seed, salt), key(a)), key(c));
    return h % b_.pair_rate == 0;
  }

  // Indices of the tuples checked out of `total`: all of them within budget, else a seeded sample.
  std::vector<std::size_t> sample(std::size_t total, Rng& g) const {
    std::vector<std::size_t> out;
    if (total <= b_.tuple_budget) {
      out.resize(total);
      for (std::size_t i = 0; i < total; ++i) out[i] = i;
      return out;
    }
    std::uniform_int_distribution<std::size_t> u(0, total - 1);
    out.resize(b_.tuple_budget);
    for (auto& x : out) x = u(g);
    return out;
  }

  // X_p(b) for b in the fragment, computed from the carriers and pi_p.
  const std::vector<Vec>& fibre(ObjId b) {
    if (!fibres_built_) {
      fibres_built_ = true;
      for (ObjId c : frag_)
        for (auto& x : h_.carrier(table_, c)) fibres_[h_.pi(x)].push_back(x);
    }
    return fibres_[b];
  }

  Vec basis_vec(ObjId b, std::size_t i) const {
    Vec x{b, std::string(dim(b), '\0')};
    x.c[i] = 1;
    return x;
  }
  Vec zero_vec(ObjId b) const { return Vec{b, std::string(dim(b), '\0')}; }
  Vec from_mods(ObjId b, const std::vector<Mod>& v) const { return model::make_vec(b, v); }
  std::vector<Mod> mods(const Vec& x) const { return model::coords(k_, x); }
  Mod el(unsigned v) const { return k_.element(v); }

  Vec add1(const Vec& x, const Vec& y) {
    auto z = h_.add(x, y);
    if (z.empty()) fail("no sum of " + vs(x) + " and " + vs(y));
    return z[0];
  }

  ObjId product(ObjId b, ObjId c) {
    const std::uint64_t key = (static_cast<std::uint64_t>(b) << 32) | c;
    auto it = products_.find(key);
    if (it != products_.end()) return it->second;
    ObjId bc = h_.pi(h_.tensor(table_, basis_vec(b, 0), basis_vec(c, 0)));
    products_.emplace(key, bc);
    return bc;
  }

  // Columns: coordinates of e_i (x) e_j in X(b (x) c), and the inverse matrix.
  const std::pair<Mat, Mat>& tensor_basis(ObjId b, ObjId c) {
    auto it = tensor_bases_.find({b, c});
    if (it != tensor_bases_.end()) return it->second;
    ObjId bc = product(b, c);
    const std::size_t nb = dim(b), nc = dim(c);
    if (dim(bc) != nb * nc)
      fail("X(" + key(b) + ") (x) X(" + key(c) + ") has dimension " + std::to_string(nb * nc) + " but X(" + key(bc) +
           ") has dimension " + std::to_string(dim(bc)));
    Mat T(k_, nb * nc, nb * nc);
    for (std::size_t i = 0; i < nb; ++i)
      for (std::size_t j = 0; j < nc; ++j) {
        Vec z = h_.tensor(table_, basis_vec(b, i), basis_vec(c, j));
        if (h_.pi(z) != bc) fail("e_i (x) e_j leaves X(" + key(bc) + ")");
        auto v = mods(z);
        for (std::size_t r = 0; r < v.size(); ++r) T(r, i * nc + j) = v[r];
      }
    auto inv = inverse(T);
    if (!inv)
      fail("the tensor map X(" + key(b) + ") (x) X(" + key(c) + ") -> X(" + key(bc) + ") is not an isomorphism");
    return tensor_bases_.emplace(std::make_pair(b, c), std::make_pair(T, *inv)).first->second;
  }

  // f (x) g : X(b (x) c) -> X(b' (x) c') for f : b -> b', g : c -> c'.
  Mat tensor_maps(const Mat& f, ObjId b, ObjId b2, const Mat& g, ObjId c, ObjId c2) {
    return tensor_basis(b2, c2).first * kron(f, g) * tensor_basis(b, c).second;
  }
  Mat ident(std::size_t n) const { return Mat::identity(k_, n); }

  // u (x) (v (x) w) |-> (u (x) v) (x) w.
  Mat assoc(ObjId x, ObjId y, ObjId z) {
    ObjId yz = product(y, z), xy = product(x, y);
    Mat left = tensor_basis(x, yz).first * kron(ident(dim(x)), tensor_basis(y, z).first);
    Mat right = tensor_basis(xy, z).first * kron(tensor_basis(x, y).first, ident(dim(z)));
    auto inv = inverse(left);
    if (!inv) fail("triple tensor basis is singular");
    return right * *inv;
  }

  const std::vector<Mat>& hom(ObjId b, ObjId c) {
    const std::uint64_t key = (static_cast<std::uint64_t>(b) << 32) | c;
    auto it = homs_.find(key);
    if (it != homs_.end()) return it->second;
    return homs_.emplace(key, h_.hom_basis(table_, b, c)).first->second;
  }

  static void axpy(Mat& M, Mod a, const Mat& B) {
    for (std::size_t i = 0; i < B.rows(); ++i)
      for (std::size_t j = 0; j < B.cols(); ++j)
        if (!is_zero(B(i, j))) M(i, j) += a * B(i, j);
  }
  Mat combo(ObjId b, ObjId c, const std::vector<Mod>& coef) {
    Mat M(k_, dim(c), dim(b));
    auto& B = hom(b, c);
    for (std::size_t t = 0; t < B.size(); ++t)
      if (!is_zero(coef[t])) axpy(M, coef[t], B[t]);
    return M;
  }
  Mat random_map(ObjId b, ObjId c, Rng& g) {
    std::uniform_int_distribution<unsigned> u(0, static_cast<unsigned>(k_.p - 1));
    std::vector<Mod> coef(hom(b, c).size());
    for (auto& x : coef) x = el(u(g));
    return combo(b, c, coef);
  }

  // Maps of the sampled elements of B(b, c): zero, the basis, and a few random combinations.
  std::vector<Mat> sample_maps(ObjId b, ObjId c, const char* salt) {
    std::vector<Mat> out{Mat(k_, dim(c), dim(b))};
    auto& B = hom(b, c);
    if (!B.empty()) {
      auto g = rng({salt, key(b), key(c)});
      for (std::size_t i = 0; i < b_.morphism_samples; ++i) out.push_back(random_map(b, c, g));
    }
    return out;
  }
  std::vector<Mor> elements_with(ObjId b, ObjId c, const Mat& M) { return h_.morphisms_with_map(table_, b, c, M); }
  bool has_morphism(ObjId b, ObjId c, const Mat& M) { return !elements_with(b, c, M).empty(); }
  // what() is only evaluated on failure
  template <class What>
  void need_morphism(ObjId b, ObjId c, const Mat& M, What&& what) {
    if (!has_morphism(b, c, M))
      fail("no element of B(" + key(b) + ", " + key(c) + ") has map " + model::mat_string(M) + " (" + std::string(what()) + ")");
  }

  // Maps in span(basis) with coordinates y satisfying the linear conditions cond(y) = 0.
  // cond maps a basis element to a matrix; returns coefficient vectors of the solution space.
  Mat constrained(const std::vector<Mat>& basis, const std::function<Mat(const Mat&)>& cond) {
    if (basis.empty()) return Mat(k_, 0, 0);
    std::vector<Mat> imgs;
    for (auto& B : basis) imgs.push_back(cond(B));
    const std::size_t r = imgs[0].rows() * imgs[0].cols();
    Mat S(k_, r, basis.size());
    for (std::size_t t = 0; t < basis.size(); ++t)
      for (std::size_t i = 0; i < r; ++i) S(i, t) = imgs[t](i / imgs[t].cols(), i % imgs[t].cols());
    return kernel(S);
  }
  Mat random_in(const std::vector<Mat>& basis, const Mat& sol, std::size_t rows, std::size_t cols, Rng& g) {
    std::uniform_int_distribution<unsigned> u(0, static_cast<unsigned>(k_.p - 1));
    Mat M(k_, rows, cols);
    for (std::size_t s = 0; s < sol.cols(); ++s) {
      Mod a = el(u(g));
      if (is_zero(a)) continue;
      for (std::size_t t = 0; t < basis.size(); ++t)
        if (!is_zero(sol(t, s))) axpy(M, a * sol(t, s), basis[t]);
    }
    return M;
  }

  // Witness objects of sort (1, n): the hinted one first.
  std::vector<ObjId> candidates(std::size_t n, std::optional<ObjId> hinted) {
    std::vector<ObjId> out;
    auto it = irreducibles_.find(n);
    if (it == irreducibles_.end()) return out;
    if (hinted)
      for (ObjId c : it->second)
        if (c == *hinted) out.push_back(c);
    for (ObjId c : it->second)
      if (!hinted || c != *hinted) out.push_back(c);
    return out;
  }

  // Witness search over objects of dimension n: recent witnesses for this slot are
  // re-verified first, then the hinted candidate, then the rest.
  bool search(int axiom, ObjId anchor, std::size_t n, const std::function<std::optional<ObjId>()>& hint,
              const std::function<std::optional<Mat>(ObjId)>& find, const std::function<bool(ObjId, const Mat&)>& verify) {
    auto& recent = recent_[{axiom, anchor, n}];
    for (auto& [u, M] : recent)
      if (verify(u, M)) return true;
    for (ObjId u : candidates(n, hint()))
      if (auto M = find(u)) {
        recent.insert(recent.begin(), {u, *M});
        if (recent.size() > 4) recent.pop_back();
        return true;
      }
    return false;
  }

  // Upper bound on the rank of every map in span(basis).
  std::size_t term_rank(const std::vector<Mat>& basis, std::size_t rows, std::size_t cols) const {
    std::vector<std::vector<std::size_t>> adj(cols);
    for (std::size_t j = 0; j < cols; ++j)
      for (std::size_t i = 0; i < rows; ++i)
        for (auto& B : basis)
          if (!is_zero(B(i, j))) {
            adj[j].push_back(i);
            break;
          }
    std::vector<long> match(rows, -1);
    std::size_t r = 0;
    for (std::size_t j = 0; j < cols; ++j) {
      std::vector<bool> seen(rows, false);
      std::function<bool(std::size_t)> aug = [&](std::size_t c) {
        for (auto i : adj[c]) {
          if (seen[i]) continue;
          seen[i] = true;
          if (match[i] < 0 || aug(static_cast<std::size_t>(match[i]))) {
            match[i] = static_cast<long>(c);
            return true;
          }
        }
        return false;
      };
      r += aug(j);
    }
    return r;
  }

  // A randomly found element of B(b, c) with bijective map, if any.
  std::optional<Mat> find_bijection(ObjId b, ObjId c, Rng& g) {
    if (dim(b) != dim(c)) return std::nullopt;
    auto& B = hom(b, c);
    if (term_rank(B, dim(c), dim(b)) < dim(b)) return std::nullopt;
    for (std::size_t t = 0; t < tries_; ++t) {
      Mat M = random_map(b, c, g);
      if (rank(M) == dim(b) && has_morphism(b, c, M)) return M;
    }
    return std::nullopt;
  }

  void dispatch(int i) {
    switch (i) {
      case 1: return ax_field();
      case 2: return ax_pi_surjective();
      case 3: return ax_zero();
      case 4: return ax_addition();
      case 5: return ax_scalars();
      case 6: return ax_dimension();
      case 7:
      case 8:
      case 9: return fibre_axiom(i);
      case 10: return ax_identity();
      case 11: return ax_composition();
      case 12: return ax_linearity();
      case 13: return ax_tensor_projection();
      case 14: return ax_bilinear();
      case 15: return ax_tensor_iso();
      case 16: return ax_functorial();
      case 17: return ax_associative();
      case 18: return ax_commutative();
      case 19: return ax_unique_factorization();
      case 20: return ax_factorization();
      case 21: return ax_skeletal();
      case 22: return ax_unit();
      case 23: return ax_duals();
      case 24: return ax_biproducts();
      case 25: return ax_kernels();
      case 26: return ax_cokernels();
      case 27: return ax_li();
      default: throw std::out_of_range("axiom index must be 1..27");
    }
  }

  std::string frag_scope() const {
    return std::to_string(frag_.size()) + " objects with n <= " + std::to_string(b_.max_dimension) + ", m <= " +
           std::to_string(b_.max_tensor_length);
  }
  std::string pair_scope() const {
    return "object pairs exhaustive, each hom space sampled as 0 and " +
           std::to_string(b_.morphism_samples) + " seeded combinations";
  }

  // ---- (1)
  void ax_field() {
    auto E = h_.field_elements();
    std::set<unsigned> S(E.begin(), E.end());
    auto in = [&](unsigned x, const char* op) {
      if (!S.count(x)) fail(std::string("k is not closed under ") + op);
    };
    const unsigned z = h_.field_zero, o = h_.field_one;
    in(z, "the constant 0");
    in(o, "the constant 1");
    if (z == o) fail("0 = 1");
    auto A = h_.field_add, M = h_.field_mul;
    for (unsigned a : E) {
      if (A(a, z) != a) fail("a + 0 != a for a = " + std::to_string(a));
      if (M(a, o) != a) fail("a * 1 != a for a = " + std::to_string(a));
      bool neg = false, inv = (a == z);
      for (unsigned b : E) {
        in(A(a, b), "+");
        in(M(a, b), "*");
        if (A(a, b) != A(b, a) || M(a, b) != M(b, a)) fail("not commutative at " + std::to_string(a) + ", " + std::to_string(b));
        neg |= A(a, b) == z;
        inv |= M(a, b) == o;
        for (unsigned c : E) {
          ++instances_;
          if (A(A(a, b), c) != A(a, A(b, c)) || M(M(a, b), c) != M(a, M(b, c)))
            fail("not associative at " + std::to_string(a) + ", " + std::to_string(b) + ", " + std::to_string(c));
          if (M(a, A(b, c)) != A(M(a, b), M(a, c)))
            fail("not distributive at " + std::to_string(a) + ", " + std::to_string(b) + ", " + std::to_string(c));
        }
      }
      if (!neg) fail(std::to_string(a) + " has no additive inverse");
      if (!inv) fail(std::to_string(a) + " has no multiplicative inverse");
    }
    scope_ = "all " + std::to_string(E.size()) + "^3 triples of field elements";
  }

  // ---- (2)
  void ax_pi_surjective() {
    for (ObjId b : frag_) {
      ++instances_;
      if (fibre(b).empty()) fail("no element of X_p lies over " + key(b));
    }
    scope_ = "B_p over " + frag_scope();
  }

  // ---- (3)
  void ax_zero() {
    for (ObjId b : frag_) {
      ++instances_;
      std::size_t z = 0;
      for (auto& x : fibre(b)) z += h_.zero(x);
      if (z != 1) fail("X(" + key(b) + ") meets 0_p in " + std::to_string(z) + " elements");
    }
    scope_ = "every X(b) over " + frag_scope();
  }

  // ---- (4)
  void ax_addition() {
    for (ObjId b : frag_) {
      const auto& V = fibre(b);
      if (V.empty()) continue;
      ++instances_;
      std::unordered_map<std::string, std::size_t> idx;
      for (std::size_t i = 0; i < V.size(); ++i) idx[V[i].c] = i;
      const std::size_t n = V.size();
      constexpr std::size_t unset = static_cast<std::size_t>(-1);
      std::vector<std::size_t> table(n * n, unset);
      auto sum = [&](std::size_t i, std::size_t j) {
        auto& z = table[i * n + j];
        if (z != unset) return z;
        auto zs = h_.add(V[i], V[j]);
        if (zs.size() != 1)
          fail("A_p(" + vs(V[i]) + ", " + vs(V[j]) + ", z) holds for " + std::to_string(zs.size()) + " elements z");
        if (h_.pi(zs[0]) != b) fail("A_p(" + vs(V[i]) + ", " + vs(V[j]) + ", " + vs(zs[0]) + ") crosses fibres");
        auto it = idx.find(zs[0].c);
        if (it == idx.end()) fail("sum " + vs(zs[0]) + " is not in X(" + key(b) + ")");
        return z = it->second;
      };
      auto g = rng({"4", key(b)});
      for (auto& other : {frag_.front(), frag_.back()})
        if (other != b && !fibre(other).empty() && !h_.add(V[0], fibre(other)[0]).empty())
          fail("A_p relates " + vs(V[0]) + " and " + vs(fibre(other)[0]) + " from different fibres");
      std::optional<std::size_t> e;
      for (std::size_t i = 0; i < n && !e; ++i)
        if (h_.zero(V[i])) e = i;
      if (!e) fail("X(" + key(b) + ") has no element of 0_p");
      for (std::size_t j = 0; j < n; ++j) {
        if (sum(*e, j) != j) fail(vs(V[*e]) + " is not an identity of X(" + key(b) + ")");
        sum(j, j);
      }
      for (std::size_t t : sample(n * n, g)) {
        std::size_t i = t / n, j = t % n;
        if (sum(i, j) != sum(j, i)) fail("addition on X(" + key(b) + ") is not commutative at " + vs(V[i]) + ", " + vs(V[j]));
      }
      for (std::size_t t : sample(n, g)) {
        if (t * n > b_.tuple_budget && t > dim(b)) continue;  // inverses by full scan for the first elements
        bool inv = false;
        for (std::size_t j = 0; j < n && !inv; ++j) inv = sum(t, j) == *e;
        if (!inv) fail(vs(V[t]) + " has no inverse");
      }
      for (std::size_t t : sample(n * n * n, g)) {
        std::size_t i = t / (n * n), j = (t / n) % n, l = t % n;
        if (sum(sum(i, j), l) != sum(i, sum(j, l)))
          fail("addition on X(" + key(b) + ") is not associative at " + vs(V[i]) + ", " + vs(V[j]) + ", " + vs(V[l]));
      }
    }
    scope_ = "identity and doubling exhaustive, pairs, inverses and triples exhaustive up to " + std::to_string(b_.tuple_budget) +
             " per fibre then seeded; " + frag_scope();
  }

  // ---- (5)
  void ax_scalars() {
    auto E = h_.field_elements();
    for (ObjId b : frag_) {
      const auto& V = fibre(b);
      if (V.empty()) continue;
      ++instances_;
      std::set<std::string> in;
      for (auto& x : V) in.insert(x.c);
      auto g = rng({"5", key(b)});
      for (unsigned a : E)
        for (auto& x : V) {
          Vec y = h_.scale(a, x);
          if (h_.pi(y) != b || !in.count(y.c)) fail("SM(" + std::to_string(a) + ", " + vs(x) + ") leaves X(" + key(b) + ")");
        }
      for (auto& x : V)
        if (!(h_.scale(h_.field_one, x) == x)) fail("1 * " + vs(x) + " != " + vs(x));
      const std::size_t n = V.size(), q = E.size();
      for (std::size_t t : sample(q * q * n, g)) {
        unsigned a = E[t / (q * n)], c = E[(t / n) % q];
        const Vec& x = V[t % n];
        if (!(h_.scale(h_.field_mul(a, c), x) == h_.scale(a, h_.scale(c, x))))
          fail("(ab)v != a(bv) for a = " + std::to_string(a) + ", b = " + std::to_string(c) + ", v = " + vs(x));
        if (!(h_.scale(h_.field_add(a, c), x) == add1(h_.scale(a, x), h_.scale(c, x))))
          fail("(a+b)v != av + bv for a = " + std::to_string(a) + ", b = " + std::to_string(c) + ", v = " + vs(x));
      }
      for (std::size_t t : sample(q * n * n, g)) {
        unsigned a = E[t / (n * n)];
        const Vec &x = V[(t / n) % n], &y = V[t % n];
        if (!(h_.scale(a, add1(x, y)) == add1(h_.scale(a, x), h_.scale(a, y))))
          fail("a(v+w) != av + aw for a = " + std::to_string(a) + ", v = " + vs(x) + ", w = " + vs(y));
      }
    }
    scope_ = "scalar-vector tuples exhaustive up to " + std::to_string(b_.tuple_budget) + " per fibre then seeded; " + frag_scope();
  }

  // ---- (6)
  void ax_dimension() {
    const std::size_t q = h_.field_elements().size();
    for (ObjId b : frag_) {
      ++instances_;
      std::size_t expect = 1;
      for (std::size_t i = 0; i < dim(b); ++i) expect *= q;
      if (fibre(b).size() != expect)
        fail("|X(" + key(b) + ")| = " + std::to_string(fibre(b).size()) + " but |k|^n = " + std::to_string(expect));
    }
    scope_ = "|X(b)| = |k|^n on " + frag_scope();
  }

  // Runs fn(b, c, f) over the sampled elements f of B(b, c) for all fragment pairs.
  // Fibres are large, so each hom space contributes one seeded combination (the zero map when it is trivial).
  void each_morphism(const char* salt, const std::function<void(ObjId, ObjId, const MorPtr&)>& fn) {
    for (ObjId b : frag_)
      for (ObjId c : frag_) {
        ++instances_;
        std::vector<Mat> maps;
        if (hom(b, c).empty()) {
          maps.push_back(Mat(k_, dim(c), dim(b)));
        } else {
          auto g = rng({salt, key(b), key(c)});
          maps.push_back(random_map(b, c, g));
        }
        for (auto& M : maps)
          for (auto& f : elements_with(b, c, M)) fn(b, c, std::make_shared<const Mor>(f));
      }
    scope_ = "object pairs exhaustive, one seeded element per hom space; " + frag_scope();
  }

  std::string mor_string(const Mor& f) const {
    return "f : " + key(f.src) + " -> " + key(f.tgt) + " with map " + model::mat_string(f.map) +
           (f.tag ? " (tag " + std::to_string(f.tag) + ")" : "");
  }

  // Axioms (7), (8) and (9) read the same sampled fibres; one traversal records
  // the first failure of each.
  struct FibrePass {
    std::string failure[3];
    std::size_t instances = 0;
    std::string scope;
  };
  std::optional<FibrePass> fibre_pass_;

  void check_pi_pq(const MorPtr& f, const std::vector<Point>& pts) {
    bool hit = false;
    for (auto& pt : pts) hit |= pt.owner && (pt.owner.get() == f.get() || *pt.owner == *f);
    if (!hit) fail("no element of X_{p,q} lies over " + mor_string(*f));
  }
  void check_diagram(const std::vector<Point>& pts) {
    for (auto& pt : pts) {
      const Mor& o = *pt.owner;
      if (h_.pi(pt.s) != h_.source(o) || h_.pi(pt.t) != h_.target(o))
        fail("the projection square fails at the point (" + vs(pt.s) + ", " + vs(pt.t) + ") of " + mor_string(o));
    }
  }
  void check_morphism(ObjId b, ObjId c, const MorPtr& f, const std::vector<Point>& pts) {
    const unsigned p = static_cast<unsigned>(k_.p);
    const std::size_t nb = dim(b), nc = dim(c);
    const std::size_t total = fibre(b).size();
    std::vector<std::uint32_t> M(nc * nb);
    for (std::size_t i = 0; i < nc; ++i)
      for (std::size_t j = 0; j < nb; ++j) M[i * nb + j] = static_cast<std::uint32_t>(f->map(i, j).value());
    std::vector<bool> seen(total, false);
    std::size_t count = 0;
    for (auto& pt : pts) {
      if (pt.owner.get() != f.get() && !(*pt.owner == *f)) continue;
      // the projections themselves are axiom (8)
      if (pt.s.c.size() != nb || pt.t.c.size() != nc)
        fail("a point of X(f) has the wrong length for " + mor_string(*f));
      std::size_t idx = 0;
      for (unsigned char x : pt.s.c) idx = idx * p + x;
      if (idx >= total || seen[idx]) fail("S^X is not injective on X(f) at " + vs(pt.s) + " for " + mor_string(*f));
      seen[idx] = true;
      ++count;
      // the graph is the map of f; this also gives linearity
      for (std::size_t i = 0; i < nc; ++i) {
        std::uint32_t acc = 0;
        for (std::size_t j = 0; j < nb; ++j) acc += M[i * nb + j] * static_cast<unsigned char>(pt.s.c[j]);
        if (acc % p != static_cast<unsigned char>(pt.t.c[i]))
          fail("the graph of " + mor_string(*f) + " sends " + vs(pt.s) + " to " + vs(pt.t));
      }
    }
    if (count != total) fail("S^X is not surjective onto X(" + key(b) + ") for " + mor_string(*f));
    auto same = elements_with(b, c, f->map);
    if (same.size() != 1)
      fail(std::to_string(same.size()) + " distinct elements of B(" + key(b) + ", " + key(c) + ") have map " + model::mat_string(f->map));
  }

  void fibre_axiom(int which) {
    if (!fibre_pass_) {
      FibrePass fp;
      instances_ = 0;
      each_morphism("fibre", [&](ObjId b, ObjId c, const MorPtr& f) {
        auto pts = h_.fibre(f);
        for (int i = 0; i < 3; ++i) {
          if (!fp.failure[i].empty()) continue;
          try {
            if (i == 0) check_pi_pq(f, pts);
            if (i == 1) check_diagram(pts);
            if (i == 2) check_morphism(b, c, f, pts);
          } catch (const FailureFound& e) {
            fp.failure[i] = e.what;
          }
        }
      });
      fp.instances = instances_;
      fp.scope = scope_;
      fibre_pass_ = std::move(fp);
    }
    instances_ = fibre_pass_->instances;
    scope_ = fibre_pass_->scope;
    if (!fibre_pass_->failure[which - 7].empty()) fail(fibre_pass_->failure[which - 7]);
  }

  // ---- (10)
  void ax_identity() {
    for (ObjId b : frag_) {
      ++instances_;
      auto es = elements_with(b, b, ident(dim(b)));
      if (es.empty()) fail("B(" + key(b) + ", " + key(b) + ") has no identity");
      for (auto& pt : h_.fibre(std::make_shared<const Mor>(es[0])))
        if (!(pt.s == pt.t)) fail("identity candidate on " + key(b) + " moves " + vs(pt.s));
    }
    scope_ = frag_scope();
  }

  // ---- (11)
  void ax_composition() {
    for (ObjId b : frag_)
      for (ObjId c : frag_) {
        if (!keep_pair(b, c, "11")) continue;
        auto fs = sample_maps(b, c, "11");
        for (ObjId d : frag_) {
          ++instances_;
          for (auto& g : sample_maps(c, d, "11"))
            for (auto& f : fs) need_morphism(b, d, g * f, [&] { return "composite " + key(b) + " -> " + key(c) + " -> " + key(d); });
        }
      }
    scope_ = "pairs (b, c) kept at rate 1/" + std::to_string(b_.pair_rate) + " by key hash, all d; " + pair_scope() + "; " + frag_scope();
  }

  // ---- (12)
  void ax_linearity() {
    auto E = h_.field_elements();
    for (ObjId b : frag_)
      for (ObjId c : frag_) {
        ++instances_;
        auto fs = sample_maps(b, c, "12");
        for (std::size_t i = 0; i < fs.size(); ++i) {
          for (std::size_t j = i; j < fs.size(); ++j) need_morphism(b, c, fs[i] + fs[j], [&] { return "sum"; });
          for (unsigned a : E) need_morphism(b, c, el(a) * fs[i], [&] { return "scalar multiple"; });
        }
      }
    scope_ = pair_scope() + "; " + frag_scope();
  }

  // Vectors of X(b) used by the tensor axioms: zero, the basis, and seeded ones.
  std::vector<Vec> sample_vecs(ObjId b, const char* salt) {
    std::vector<Vec> out{zero_vec(b)};
    for (std::size_t i = 0; i < dim(b); ++i) out.push_back(basis_vec(b, i));
    auto g = rng({salt, key(b)});
    std::uniform_int_distribution<unsigned> u(0, static_cast<unsigned>(k_.p - 1));
    for (int t = 0; t < 2; ++t) {
      Vec x = zero_vec(b);
      for (auto& ch : x.c) ch = static_cast<char>(u(g));
      out.push_back(x);
    }
    if (dim(b) > 1) out.push_back(*h_.add(basis_vec(b, 0), basis_vec(b, 1)).begin());
    return out;
  }
  bool tensor_in_scope(ObjId b, ObjId c) {
    if (len(b) + len(c) <= b_.witness_length) return true;
    ++out_of_scope_;
    return false;
  }
  std::string tensor_scope(const char* what) const {
    return std::string(what) + "; pairs with m + m' <= " + std::to_string(b_.witness_length) + "; " + frag_scope();
  }

  // ---- (13)
  void ax_tensor_projection() {
    for (ObjId b : frag_)
      for (ObjId c : frag_) {
        if (!tensor_in_scope(b, c)) continue;
        ++instances_;
        auto X = sample_vecs(b, "13x"), Y = sample_vecs(c, "13y");
        ObjId ref = h_.pi(h_.tensor(table_, X[0], Y[0]));
        for (auto& x : X)
          for (auto& y : Y)
            if (h_.pi(h_.tensor(table_, x, y)) != ref)
              fail("pi(" + vs(x) + " (x) " + vs(y) + ") differs from pi(" + vs(X[0]) + " (x) " + vs(Y[0]) + ")");
      }
    scope_ = tensor_scope("zero, basis and seeded vectors on each side");
  }

  // ---- (14)
  void ax_bilinear() {
    auto E = h_.field_elements();
    auto T = [&](const Vec& x, const Vec& y) { return h_.tensor(table_, x, y); };
    for (ObjId b : frag_)
      for (ObjId c : frag_) {
        if (!tensor_in_scope(b, c)) continue;
        ++instances_;
        auto X = sample_vecs(b, "14x"), Y = sample_vecs(c, "14y");
        // the other side ranges over a basis vector and a seeded vector
        const std::vector<Vec> Xs{X[1], X[1 + dim(b)]}, Ys{Y[1], Y[1 + dim(c)]};
        std::vector<std::vector<Vec>> XY(Ys.size()), XsY(Xs.size());
        for (std::size_t t = 0; t < Ys.size(); ++t)
          for (auto& x : X) XY[t].push_back(T(x, Ys[t]));
        for (std::size_t t = 0; t < Xs.size(); ++t)
          for (auto& y : Y) XsY[t].push_back(T(Xs[t], y));
        for (std::size_t i = 0; i < X.size(); ++i)
          for (std::size_t j = i; j < X.size(); ++j)
            for (std::size_t t = 0; t < Ys.size(); ++t)
              if (!(T(add1(X[i], X[j]), Ys[t]) == add1(XY[t][i], XY[t][j])))
                fail("(" + vs(X[i]) + " + " + vs(X[j]) + ") (x) " + vs(Ys[t]) + " is not additive");
        for (std::size_t i = 0; i < Y.size(); ++i)
          for (std::size_t j = i; j < Y.size(); ++j)
            for (std::size_t t = 0; t < Xs.size(); ++t)
              if (!(T(Xs[t], add1(Y[i], Y[j])) == add1(XsY[t][i], XsY[t][j])))
                fail(vs(Xs[t]) + " (x) (" + vs(Y[i]) + " + " + vs(Y[j]) + ") is not additive");
        auto scalar = [&](unsigned a, const Vec& x, const Vec& y) {
          const Vec xy = h_.scale(a, T(x, y));
          if (!(T(h_.scale(a, x), y) == xy))
            fail("(" + std::to_string(a) + " " + vs(x) + ") (x) " + vs(y) + " != " + std::to_string(a) + " (" + vs(x) + " (x) " + vs(y) + ")");
          if (!(T(x, h_.scale(a, y)) == xy))
            fail(vs(x) + " (x) (" + std::to_string(a) + " " + vs(y) + ") != " + std::to_string(a) + " (" + vs(x) + " (x) " + vs(y) + ")");
        };
        for (unsigned a : E) {
          for (auto& x : X) scalar(a, x, Ys[1]);
          for (auto& y : Y) scalar(a, Xs[1], y);
        }
      }
    scope_ = tensor_scope("sums of zero, basis and seeded vectors against a basis and a seeded vector, all scalars against a seeded vector");
  }

  // ---- (15)
  void ax_tensor_iso() {
    for (ObjId b : frag_)
      for (ObjId c : frag_) {
        if (!tensor_in_scope(b, c)) continue;
        ++instances_;
        tensor_basis(b, c);
      }
    scope_ = tensor_scope("images of basis pairs form a basis");
  }

  // ---- (16)
  void ax_functorial() {
    std::vector<std::pair<ObjId, ObjId>> kept;
    for (ObjId b : frag_)
      for (ObjId c : frag_)
        if (keep_pair(b, c, "16")) kept.emplace_back(b, c);
    for (auto [b1, c1] : kept)
      for (auto [b2, c2] : kept) {
        if (len(b1) + len(b2) > b_.witness_length || len(c1) + len(c2) > b_.witness_length) {
          ++out_of_scope_;
          continue;
        }
        ++instances_;
        ObjId s = product(b1, b2), t = product(c1, c2);
        auto fs = sample_maps(b1, c1, "16"), gs = sample_maps(b2, c2, "16");
        need_morphism(s, t, tensor_maps(fs.back(), b1, c1, gs.back(), b2, c2), [&] { return "f (x) g"; });
      }
    scope_ = "pairs kept at rate 1/" + std::to_string(b_.pair_rate) + " on each side, sorts of length <= " +
             std::to_string(b_.witness_length) + ", one seeded element per hom space; " + frag_scope();
  }

  // ---- (17)
  void ax_associative() {
    std::vector<ObjId> small;
    for (ObjId b : frag_)
      if (len(b) == 1) small.push_back(b);
    for (ObjId x : frag_)
      for (ObjId y : frag_) {
        if (!keep_pair(x, y, "17")) continue;
        for (ObjId z : frag_) {
          if (len(x) + len(y) + len(z) > b_.witness_length) continue;
          ++instances_;
          need_morphism(product(x, product(y, z)), product(product(x, y), z), assoc(x, y, z), [&] { return "associator on " + key(x) + ", " + key(y) + ", " + key(z); });
        }
      }
    scope_ = "pairs (x, y) kept at rate 1/" + std::to_string(b_.pair_rate) + " by key hash, all z, m + m' + m'' <= " +
             std::to_string(b_.witness_length) + "; " + frag_scope();
  }

  // ---- (18)
  void ax_commutative() {
    for (ObjId b : frag_)
      for (ObjId c : frag_) {
        if (!tensor_in_scope(b, c)) continue;
        ++instances_;
        const std::size_t nb = dim(b), nc = dim(c);
        Mat P(k_, nb * nc, nb * nc);
        for (std::size_t i = 0; i < nb; ++i)
          for (std::size_t j = 0; j < nc; ++j) P(j * nb + i, i * nc + j) = k_.one();
        Mat S = tensor_basis(c, b).first * P * tensor_basis(b, c).second;
        need_morphism(product(b, c), product(c, b), S, [&] { return "symmetry on " + key(b) + ", " + key(c); });
      }
    scope_ = tensor_scope("the swap on basis pairs");
  }

  // ---- (19)
  void ax_unique_factorization() {
    std::map<ObjId, std::pair<ObjId, ObjId>> seen;
    for (ObjId b : frag_)
      for (ObjId c : frag_) {
        ++instances_;
        ObjId bc = product(b, c);
        auto [it, fresh] = seen.emplace(bc, std::make_pair(b, c));
        if (!fresh)
          fail(key(it->second.first) + " (x) " + key(it->second.second) + " = " + key(b) + " (x) " + key(c) + " = " + key(bc));
      }
    scope_ = "all pairs of pairs; " + frag_scope();
  }

  // ---- (20)
  void ax_factorization() {
    for (ObjId b : frag_) {
      ++instances_;
      if (len(b) == 1) continue;
      const auto& base = table_[b].base;
      std::vector<ObjId> leaves;
      for (auto& l : base.labels()) leaves.push_back(table_.intern(make_irreducible(l)));
      std::size_t i = 0;
      std::function<ObjId(const Paren<WeightMultiset>&)> build = [&](const Paren<WeightMultiset>& t) -> ObjId {
        if (t.is_leaf()) return leaves[i++];
        ObjId l = build(t.left());
        ObjId r = build(t.right());
        return product(l, r);
      };
      ObjId r = build(base.tree());
      if (r != b) fail(key(b) + " is not the tensor product of its factors in its shape (got " + key(r) + ")");
    }
    scope_ = "constructive factorization of every fragment object; " + frag_scope();
  }

  // ---- (21)
  void ax_skeletal() {
    for (ObjId b : frag_) {
      ++instances_;
      bool found = false;
      for (ObjId c : candidates(dim(b), h_.hint(table_, 21, {b}, nullptr))) {
        auto g = rng({"21", key(b), key(c)});
        if (find_bijection(b, c, g)) {
          found = true;
          break;
        }
      }
      if (!found) fail("no irreducible of dimension " + std::to_string(dim(b)) + " is isomorphic to " + key(b));
    }
    for (ObjId b : frag_)
      for (ObjId c : frag_) {
        if (b == c || len(b) != 1 || len(c) != 1 || dim(b) != dim(c)) continue;
        auto& B = hom(b, c);
        if (term_rank(B, dim(c), dim(b)) < dim(b)) {
          ++instances_;
          continue;
        }
        std::size_t total = 1;
        for (std::size_t i = 0; i < B.size() && total <= b_.tuple_budget; ++i) total *= k_.p;
        if (total <= b_.tuple_budget) {
          // every element of the span, most significant coefficient first
          ++instances_;
          std::vector<Mod> coef(B.size(), k_.zero());
          for (std::size_t t = 0; t < total; ++t) {
            std::size_t r = t;
            for (auto& x : coef) {
              x = el(static_cast<unsigned>(r % k_.p));
              r /= k_.p;
            }
            Mat M = combo(b, c, coef);
            if (rank(M) == dim(b) && has_morphism(b, c, M))
              fail("distinct irreducibles " + key(b) + " and " + key(c) + " are isomorphic via " + model::mat_string(M));
          }
          continue;
        }
        auto g = rng({"21b", key(b), key(c)});
        if (auto M = find_bijection(b, c, g))
          fail("distinct irreducibles " + key(b) + " and " + key(c) + " are isomorphic via " + model::mat_string(*M));
        ++out_of_scope_;  // neither separated nor shown isomorphic
      }
    scope_ = "first clause over " + frag_scope() + ", witnesses among irreducibles with n <= " +
             std::to_string(b_.witness_dimension) +
             "; second clause over all irreducible pairs of the fragment, by term rank or exhaustive search of the hom space";
  }

  // ---- (22)
  void ax_unit() {
    ObjId one = h_.unit(table_);
    if (dim(one) != 1 || len(one) != 1) fail("the constant 1 is not in B_(1,1)");
    for (ObjId b : frag_) {
      if (len(b) + 1 > b_.witness_length) {
        ++out_of_scope_;
        continue;
      }
      ++instances_;
      for (std::size_t a = 1; a < k_.p; ++a) {
        Mat u(k_, 1, 1);
        u(0, 0) = el(static_cast<unsigned>(a));
        Mat M = tensor_basis(one, b).first * kron(u, ident(dim(b)));
        need_morphism(b, product(one, b), M, [&] { return "v |-> u0 (x) v with u0 = " + std::to_string(a); });
      }
    }
    scope_ = "every nonzero u0 and every b with m + 1 <= " + std::to_string(b_.witness_length) + "; " + frag_scope();
  }

  // The two snake composites for ev f : b (x) c -> 1 and coev g : 1 -> c (x) b.
  std::pair<Mat, Mat> snakes(ObjId b, ObjId c, ObjId one, const Mat& f, const Mat& g) {
    const std::size_t n = dim(b);
    Mat u(k_, 1, 1);
    u(0, 0) = k_.one();
    Mat rho_b = tensor_basis(b, one).first * kron(ident(n), u);  // v |-> v (x) u0
    Mat lam_b = tensor_basis(one, b).first * kron(u, ident(n));  // v |-> u0 (x) v
    Mat rho_c = tensor_basis(c, one).first * kron(ident(n), u);
    Mat lam_c = tensor_basis(one, c).first * kron(u, ident(n));
    ObjId cb = product(c, b), bc = product(b, c);
    Mat s1 = *inverse(lam_b) * tensor_maps(f, bc, one, ident(n), b, b) * assoc(b, c, b) *
             tensor_maps(ident(n), b, b, g, one, cb) * rho_b;
    auto a2 = inverse(assoc(c, b, c));
    if (!a2) fail("associator is singular");
    Mat s2 = *inverse(rho_c) * tensor_maps(ident(n), c, c, f, bc, one) * *a2 * tensor_maps(g, one, cb, ident(n), c, c) * lam_c;
    return {s1, s2};
  }

  // ---- (23)
  void ax_duals() {
    ObjId one = h_.unit(table_);
    for (ObjId b : frag_) {
      if (len(b) + 1 > b_.witness_length) {
        ++out_of_scope_;
        continue;
      }
      ++instances_;
      const std::size_t n = dim(b);
      bool found = false;
      for (ObjId c : candidates(n, h_.hint(table_, 23, {b}, nullptr))) {
        auto g = rng({"23", key(b), key(c)});
        ObjId bc = product(b, c), cb = product(c, b);
        auto& F = hom(bc, one);
        auto& G = hom(one, cb);
        if (F.size() < n || G.size() < n) continue;
        // a nondegenerate pairing needs a perfect matching in its support
        Mat support(k_, n, n);
        for (auto& B : F)
          for (std::size_t j = 0; j < n * n; ++j)
            if (!is_zero(B(0, j))) support(j / n, j % n) = k_.one();
        if (term_rank({support}, n, n) < n) continue;
        Mat I = ident(n);
        for (std::size_t t = 0; t < tries_ && !found; ++t) {
          Mat f = random_map(bc, one, g);
          // The first snake is linear in the coevaluation; solve for it.
          Mat S(k_, n * n, G.size());
          for (std::size_t s = 0; s < G.size(); ++s) {
            Mat img = snakes(b, c, one, f, G[s]).first;
            for (std::size_t i = 0; i < n * n; ++i) S(i, s) = img(i / n, i % n);
          }
          std::vector<Mod> rhs(n * n, k_.zero());
          for (std::size_t i = 0; i < n; ++i) rhs[i * n + i] = k_.one();
          auto y = solve_linear(S, rhs);
          if (!y) continue;
          Mat gm = combo(one, cb, *y);
          auto [s1, s2] = snakes(b, c, one, f, gm);
          if (s1 == I && s2 == I && has_morphism(bc, one, f) && has_morphism(one, cb, gm)) found = true;
        }
        if (found) break;
      }
      if (!found) fail("no dual of " + key(b) + " among irreducibles of dimension " + std::to_string(n));
    }
    scope_ = "every b with m + 1 <= " + std::to_string(b_.witness_length) + ", duals among irreducibles, " +
             std::to_string(tries_) + " seeded evaluations per candidate; " + frag_scope();
  }

  // ---- (24)
  void ax_biproducts() {
    for (ObjId b : frag_)
      for (ObjId c : frag_) {
        const std::size_t n = dim(b) + dim(c);
        if (n > b_.witness_dimension) {
          ++out_of_scope_;
          continue;
        }
        ++instances_;
        bool found = false;
        for (ObjId d : candidates(n, h_.hint(table_, 24, {b, c}, nullptr))) {
          auto g = rng({"24", key(b), key(c), key(d)});
          auto& Ib = hom(b, d);
          auto& Ic = hom(c, d);
          if (term_rank(Ib, n, dim(b)) < dim(b) || term_rank(Ic, n, dim(c)) < dim(c)) continue;
          for (std::size_t t = 0; t < tries_ && !found; ++t) {
            Mat ib = random_map(b, d, g), ic = random_map(c, d, g);
            auto P = inverse(ib.hcat(ic));
            if (!P) continue;
            Mat pb = P->block(0, 0, dim(b), n), pc = P->block(dim(b), 0, dim(c), n);
            if (!(ib * pb + ic * pc == ident(n)) || !(pb * ib == ident(dim(b))) || !(pc * ic == ident(dim(c))) ||
                !(pc * ib).is_zero() || !(pb * ic).is_zero())
              continue;
            found = has_morphism(b, d, ib) && has_morphism(c, d, ic) && has_morphism(d, b, pb) && has_morphism(d, c, pc);
          }
          if (found) break;
        }
        if (!found) fail("no biproduct of " + key(b) + " and " + key(c) + " among irreducibles of dimension " + std::to_string(n));
      }
    scope_ = "pairs with n + n' <= " + std::to_string(b_.witness_dimension) + "; " + frag_scope();
  }

  // ---- (25)
  void ax_kernels() {
    for (ObjId v : frag_)
      for (ObjId w : frag_) {
        auto fs = sample_maps(v, w, "25");
        bool factored = !keep_pair(v, w, "25");
        for (auto& f : fs) {
          const std::size_t ell = dim(v) - rank(f);
          if (ell == 0) {
            if (factored) continue;
            factored = true;
            // factorization through an injective f
            auto Q = kernel(f.transpose()).transpose();  // rows annihilate im f
            for (ObjId u : frag_) {
              ++instances_;
              auto& B = hom(u, w);
              Mat sol = constrained(B, [&](const Mat& m) { return Q.rows() ? Q * m : Mat(k_, 1, 1); });
              auto g = rng({"25a", key(u), key(v), key(w)});
              Mat f1 = random_in(B, sol, dim(w), dim(u), g);
              // f'' solves f f'' = f'
              Mat X(k_, dim(v), dim(u));
              for (std::size_t j = 0; j < dim(u); ++j) {
                auto x = solve_linear(f, f1.col(j));
                if (!x) fail("image of f' is not inside the image of f");
                for (std::size_t i = 0; i < dim(v); ++i) X(i, j) = (*x)[i];
              }
              need_morphism(u, v, X, [&] { return "factor through the injective map " + model::mat_string(f); });
            }
            continue;
          }
          ++instances_;
          if (ell > b_.witness_dimension) {
            ++out_of_scope_;
            continue;
          }
          // for f = 0 every check below depends on v alone
          const bool zero = f.is_zero();
          if (zero && zero_done_.count({25, v})) continue;
          const std::string fh = map_hash(f);
          auto ok = [&](ObjId u, const Mat& inc) { return rank(inc) == ell && (f * inc).is_zero() && has_morphism(u, v, inc); };
          const bool found = search(
              25, v, ell, [&] { return h_.hint(table_, 25, {v, w}, &f); },
              [&](ObjId u) -> std::optional<Mat> {
                auto g = rng({"25b", key(v), key(w), fh, key(u)});
                auto& B = hom(u, v);
                if (term_rank(B, dim(v), ell) < ell) return std::nullopt;
                Mat sol = constrained(B, [&](const Mat& m) { return f * m; });
                for (std::size_t t = 0; t < tries_ && sol.cols(); ++t) {
                  Mat inc = random_in(B, sol, dim(v), ell, g);
                  if (ok(u, inc)) return inc;
                }
                return std::nullopt;
              },
              ok);
          if (found && zero) zero_done_.insert({25, v});
          if (!found) fail("no kernel of dimension " + std::to_string(ell) + " for " + model::mat_string(f) + " : " + key(v) + " -> " + key(w));
        }
      }
    scope_ = "kernel objects for all sampled maps; factorization through the first sampled injective map on pairs kept at rate 1/" +
             std::to_string(b_.pair_rate) + " with all sources; " + pair_scope() + "; " + frag_scope();
  }

  // ---- (26)
  void ax_cokernels() {
    for (ObjId v : frag_)
      for (ObjId w : frag_) {
        auto fs = sample_maps(v, w, "26");
        bool factored = !keep_pair(v, w, "26");
        for (auto& f : fs) {
          const std::size_t r = rank(f);
          if (r == dim(w)) {
            if (factored) continue;
            factored = true;
            Mat K = kernel(f);  // columns span ker f
            for (ObjId u : frag_) {
              ++instances_;
              auto& B = hom(v, u);
              Mat sol = constrained(B, [&](const Mat& m) { return K.cols() ? m * K : Mat(k_, 1, 1); });
              auto g = rng({"26a", key(u), key(v), key(w)});
              Mat f1 = random_in(B, sol, dim(u), dim(v), g);
              // f'' solves f'' f = f'
              Mat X(k_, dim(u), dim(w));
              Mat ft = f.transpose();
              for (std::size_t i = 0; i < dim(u); ++i) {
                auto x = solve_linear(ft, f1.row(i));
                if (!x) fail("ker f is not inside ker f'");
                for (std::size_t j = 0; j < dim(w); ++j) X(i, j) = (*x)[j];
              }
              need_morphism(w, u, X, [&] { return "factor through the surjective map " + model::mat_string(f); });
            }
            continue;
          }
          ++instances_;
          const std::size_t ell = dim(w) - r;
          if (ell > b_.witness_dimension) {
            ++out_of_scope_;
            continue;
          }
          // for f = 0 every check below depends on w alone
          const bool zero = f.is_zero();
          if (zero && zero_done_.count({26, w})) continue;
          const std::string fh = map_hash(f);
          auto ok = [&](ObjId u, const Mat& pr) { return rank(pr) == ell && (pr * f).is_zero() && has_morphism(w, u, pr); };
          const bool found = search(
              26, w, ell, [&] { return h_.hint(table_, 26, {v, w}, &f); },
              [&](ObjId u) -> std::optional<Mat> {
                auto g = rng({"26b", key(v), key(w), fh, key(u)});
                auto& B = hom(w, u);
                if (term_rank(B, ell, dim(w)) < ell) return std::nullopt;
                Mat sol = constrained(B, [&](const Mat& m) { return m * f; });
                for (std::size_t t = 0; t < tries_ && sol.cols(); ++t) {
                  Mat pr = random_in(B, sol, ell, dim(w), g);
                  if (ok(u, pr)) return pr;
                }
                return std::nullopt;
              },
              ok);
          if (found && zero) zero_done_.insert({26, w});
          if (!found) fail("no cokernel of dimension " + std::to_string(ell) + " for " + model::mat_string(f) + " : " + key(v) + " -> " + key(w));
        }
      }
    scope_ = "cokernel objects for all sampled maps; factorization through the first sampled surjective map on pairs kept at rate 1/" +
             std::to_string(b_.pair_rate) + " with all targets; " + pair_scope() + "; " + frag_scope();
  }

  // ---- (27)
  void ax_li() {
    for (ObjId b : frag_) {
      const auto& V = fibre(b);
      if (V.empty()) continue;
      ++instances_;
      const std::size_t n = dim(b);
      auto g = rng({"27", key(b)});
      std::size_t total = 1;
      for (std::size_t i = 0; i < n; ++i) total *= V.size();
      std::vector<std::vector<Vec>> tuples;
      for (std::size_t t : sample(total, g)) {
        std::vector<Vec> tup;
        for (std::size_t i = 0; i < n; ++i, t /= V.size()) tup.push_back(V[t % V.size()]);
        tuples.push_back(std::move(tup));
      }
      tuples.emplace_back(n, V.back());
      std::vector<Vec> basis;
      for (std::size_t i = 0; i < n; ++i) basis.push_back(basis_vec(b, i));
      tuples.push_back(basis);
      for (auto& tup : tuples) {
        Mat M(k_, n, n);
        for (std::size_t j = 0; j < n; ++j) {
          auto c = mods(tup[j]);
          for (std::size_t i = 0; i < n; ++i) M(i, j) = c[i];
        }
        bool expect = rank(M) == n;
        if (h_.li(tup) != expect) {
          std::string s;
          for (auto& x : tup) s += (s.empty() ? "" : ", ") + vs(x);
          fail("LI(" + s + ") is " + (expect ? "false" : "true") + " on " + (expect ? "independent" : "dependent") + " vectors");
        }
      }
      for (ObjId other : {frag_.front(), frag_.back()}) {
        if (other == b || dim(other) != n || n < 2) continue;
        std::vector<Vec> mixed = basis;
        mixed[0] = basis_vec(other, 0);
        if (h_.li(mixed)) fail("LI holds on vectors from different fibres");
      }
    }
    scope_ = "n-tuples exhaustive up to " + std::to_string(b_.tuple_budget) + " per fibre then seeded; " + frag_scope();
  }
};

}  // namespace detail

inline AxiomReport check_axioms(const PrimeField& k, const GroupPtr& g, const model::ModelHooks& hooks,
                                const FragmentBound& bounds, const std::vector<int>& which = {}) {
  bounds.validate();
  AxiomReport rep;
  rep.field = k.name();
  rep.group = g->to_string();
  rep.bounds = bounds;
  detail::Checker checker(k, hooks, bounds);
  for (int i = 1; i <= 27; ++i) {
    if (!which.empty() && std::find(which.begin(), which.end(), i) == which.end()) {
      AxiomResult r;
      r.index = i;
      r.name = axiom_names()[static_cast<std::size_t>(i - 1)];
      r.status = AxiomStatus::skipped;
      r.detail = "not selected";
      rep.results.push_back(r);
      continue;
    }
    rep.results.push_back(checker.run(i));
  }
  return rep;
}

inline AxiomReport check_axioms(const ExactField& k, const FgAbelianGroup& a, const FragmentBound& bounds) {
  if (!std::holds_alternative<PrimeField>(k)) throw std::invalid_argument("the bounded checker needs a finite field");
  if (!a.is_finite()) throw std::invalid_argument("the bounded checker needs a finite group");
  const auto& f = std::get<PrimeField>(k);
  auto g = make_group(a);
  return check_axioms(f, g, model::canonical_model(f, g), bounds);
}

// A corruption of M(k, A) aimed at one axiom.
struct Mutation {
  int target = 0;
  std::string name;
  std::function<void(model::ModelHooks&, const PrimeField&, const GroupPtr&)> apply;
};

inline std::vector<Mutation> targeted_mutations(std::size_t max_dimension) {
  using namespace model;
  std::vector<Mutation> out;
  out.push_back({1, "the field constant 0 is interpreted as 1", [](ModelHooks& h, const PrimeField&, const GroupPtr&) {
                   h.field_zero = 1;
                 }});
  out.push_back({3, "0_p also holds on the first basis vector", [](ModelHooks& h, const PrimeField&, const GroupPtr&) {
                   auto z = h.zero;
                   h.zero = [z](const Vec& x) { return z(x) || (x.c.size() > 0 && x.c[0] == 1 && z(Vec{x.obj, x.c.substr(1)})); };
                 }});
  out.push_back({4, "A_p relates e1 + e1 to a second element", [](ModelHooks& h, const PrimeField& k, const GroupPtr&) {
                   auto add = h.add;
                   unsigned p = static_cast<unsigned>(k.p);
                   h.add = [add, p](const Vec& x, const Vec& y) {
                     auto z = add(x, y);
                     bool e1 = x.c.size() > 0 && x.c[0] == 1 && x.c.find_first_not_of('\0', 1) == std::string::npos;
                     if (e1 && x == y && !z.empty()) {
                       Vec w = z[0];
                       w.c[0] = static_cast<char>((static_cast<unsigned char>(w.c[0]) + 1) % p);
                       z.push_back(w);
                     }
                     return z;
                   };
                 }});
  out.push_back({5, "SM(0, v) = v", [](ModelHooks& h, const PrimeField&, const GroupPtr&) {
                   auto s = h.scale;
                   h.scale = [s](unsigned a, const Vec& x) { return a == 0 ? x : s(a, x); };
                 }});
  out.push_back({9, "every element of B(b, b) has a twin with the same map", [](ModelHooks& h, const PrimeField&, const GroupPtr&) {
                   auto m = h.morphisms_with_map;
                   h.morphisms_with_map = [m](const ObjectTable& t, ObjId b, ObjId c, const Mat& M) {
                     auto es = m(t, b, c, M);
                     if (b == c && !es.empty()) {
                       Mor extra = es[0];
                       extra.tag = 1;
                       es.push_back(extra);
                     }
                     return es;
                   };
                 }});
  out.push_back({14, "v (x) w is doubled when v has two nonzero coordinates",
                 [](ModelHooks& h, const PrimeField& k, const GroupPtr&) {
                   auto t = h.tensor;
                   unsigned p = static_cast<unsigned>(k.p);
                   h.tensor = [t, p](ObjectTable& tab, const Vec& x, const Vec& y) {
                     Vec z = t(tab, x, y);
                     std::size_t nz = 0;
                     for (char c : x.c) nz += c != 0;
                     if (nz >= 2)
                       for (auto& c : z.c) c = static_cast<char>((2u * static_cast<unsigned char>(c)) % p);
                     return z;
                   };
                 }});
  out.push_back({19, "tensor products of objects are strictly associative",
                 [](ModelHooks& h, const PrimeField&, const GroupPtr&) {
                   auto t = h.tensor;
                   h.tensor = [t](ObjectTable& tab, const Vec& x, const Vec& y) {
                     Vec z = t(tab, x, y);
                     if (auto hit = tab.memo(1, x.obj, y.obj)) {
                       z.obj = *hit;
                       return z;
                     }
                     const auto& base = tab[z.obj].base;
                     auto labels = base.labels();
                     Paren<WeightMultiset> left = Paren<WeightMultiset>::leaf(labels[0]);
                     for (std::size_t i = 1; i < labels.size(); ++i)
                       left = Paren<WeightMultiset>::pair(left, Paren<WeightMultiset>::leaf(labels[i]));
                     z.obj = tab.intern(BaseObject(left));
                     tab.remember(1, x.obj, y.obj, z.obj);
                     return z;
                   };
                 }});
  out.push_back({20, "an extra object of sort (2,1) that is no tensor product",
                 [](ModelHooks& h, const PrimeField&, const GroupPtr& g) {
                   auto o = h.objects;
                   h.objects = [o, g](ObjectTable& t, std::size_t n, std::size_t m) {
                     auto ids = o(t, n, m);
                     if (m >= 2) {
                       auto z = unit_object(g);
                       ids.push_back(t.intern(tensor(z, z), "<opaque>"));
                     }
                     return ids;
                   };
                 }});
  out.push_back({21, "a second irreducible with the weights of {0 1}",
                 [](ModelHooks& h, const PrimeField&, const GroupPtr& g) {
                   auto o = h.objects;
                   h.objects = [o, g](ObjectTable& t, std::size_t n, std::size_t m) {
                     auto ids = o(t, n, m);
                     if (n >= 2) {
                       auto b = make_irreducible(g, {0, 1});
                       ids.push_back(t.intern(b, format_object(b) + "'"));
                     }
                     return ids;
                   };
                 }});
  out.push_back({22, "the constant 1 is the character {1}", [](ModelHooks& h, const PrimeField&, const GroupPtr& g) {
                   h.unit = [g](ObjectTable& t) { return t.intern(make_irreducible(g, {1})); };
                 }});
  out.push_back({24, "no irreducible objects above the fragment dimension",
                 [max_dimension](ModelHooks& h, const PrimeField&, const GroupPtr&) {
                   auto o = h.objects;
                   h.objects = [o, max_dimension](ObjectTable& t, std::size_t n, std::size_t m) {
                     return o(t, std::min(n, max_dimension), m);
                   };
                 }});
  out.push_back({27, "LI holds on a repeated vector", [](ModelHooks& h, const PrimeField&, const GroupPtr&) {
                   auto li = h.li;
                   h.li = [li](const std::vector<Vec>& vs) {
                     bool rep = vs.size() > 1;
                     for (auto& v : vs) rep &= v == vs[0];
                     return rep || li(vs);
                   };
                 }});
  return out;
}

// The tensor product on vectors replaced by the zero map.
inline Mutation zero_tensor_mutation() {
  return {15, "tensor on vectors is the zero map", [](model::ModelHooks& h, const PrimeField&, const GroupPtr&) {
            auto t = h.tensor;
            h.tensor = [t](model::ObjectTable& tab, const model::Vec& x, const model::Vec& y) {
              auto z = t(tab, x, y);
              for (auto& c : z.c) c = 0;
              return z;
            };
          }};
}

inline AxiomReport check_mutated(const PrimeField& k, const GroupPtr& g, const Mutation& mu, const FragmentBound& bounds) {
  auto hooks = model::canonical_model(k, g);
  mu.apply(hooks, k, g);
  return check_axioms(k, g, hooks, bounds);
}

}  // namespace proalg
