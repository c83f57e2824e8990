#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "proalg/abelian.hpp"
#include "proalg/field.hpp"
#include "proalg/paren.hpp"
#include "proalg/skeleton.hpp"

namespace proalg {

// Finite multiset of characters, stored sorted.
class WeightMultiset {
 public:
  WeightMultiset() = default;
  explicit WeightMultiset(std::vector<GroupElement> elems) : e_(std::move(elems)) {
    if (e_.empty()) throw std::invalid_argument("weight multiset must be non-empty");
    for (auto& x : e_)
      if (!same_group(x.owner(), e_[0].owner())) throw std::invalid_argument("weights from different groups");
    std::sort(e_.begin(), e_.end());
  }
  static WeightMultiset of(const GroupPtr& g, const std::vector<long>& vals) {
    std::vector<GroupElement> e;
    for (long v : vals) e.push_back(GroupElement::of(g, v));
    return WeightMultiset(std::move(e));
  }

  const GroupPtr& owner() const { return e_.at(0).owner(); }
  const std::vector<GroupElement>& elements() const { return e_; }
  std::size_t size() const { return e_.size(); }
  std::size_t multiplicity(const GroupElement& a) const {
    auto r = std::equal_range(e_.begin(), e_.end(), a);
    return static_cast<std::size_t>(r.second - r.first);
  }

  std::string to_string() const {
    std::string s = "{";
    for (std::size_t i = 0; i < e_.size(); ++i) s += (i ? " " : "") + e_[i].to_string();
    return s + "}";
  }

  friend bool operator==(const WeightMultiset& a, const WeightMultiset& b) { return a.e_ == b.e_; }
  friend std::strong_ordering operator<=>(const WeightMultiset& a, const WeightMultiset& b) {
    return std::lexicographical_compare_three_way(a.e_.begin(), a.e_.end(), b.e_.begin(), b.e_.end());
  }

 private:
  std::vector<GroupElement> e_;
};

using BaseObject = ClosureObject<WeightMultiset>;

struct Sort {
  std::size_t m = 0, n = 0;
  friend bool operator==(const Sort&, const Sort&) = default;
  friend auto operator<=>(const Sort&, const Sort&) = default;
  friend Sort operator*(Sort a, Sort b) { return {a.m + b.m, a.n * b.n}; }
  std::string to_string() const { return "(" + std::to_string(m) + "," + std::to_string(n) + ")"; }
};

inline BaseObject make_irreducible(const WeightMultiset& w) { return BaseObject::leaf(w); }
inline BaseObject make_irreducible(const GroupPtr& g, const std::vector<long>& vals) {
  return make_irreducible(WeightMultiset::of(g, vals));
}
inline BaseObject unit_object(const GroupPtr& g) { return make_irreducible(WeightMultiset({GroupElement::zero(g)})); }

inline GroupPtr object_group(const BaseObject& b) { return b.is_zero() ? nullptr : b.labels().at(0).owner(); }

inline std::size_t dimension(const BaseObject& b) {
  if (b.is_zero()) return 0;
  std::size_t n = 1;
  for (auto& l : b.labels()) n *= l.size();
  return n;
}

inline Sort sort_of(const BaseObject& b) {
  if (b.is_zero()) throw std::invalid_argument("the zero object has no sort");
  return {tensor_length(b), dimension(b)};
}

inline BaseObject tensor(const BaseObject& b, const BaseObject& c) {
  if (!b.is_zero() && !c.is_zero() && !same_group(object_group(b), object_group(c)))
    throw std::invalid_argument("objects over different groups");
  return closure_tensor(b, c);
}

// Basis tuples in lexicographic order (first leaf most significant).
inline std::vector<std::vector<GroupElement>> ordered_basis(const BaseObject& b) {
  std::vector<std::vector<GroupElement>> out;
  if (b.is_zero()) return out;
  out.emplace_back();
  for (auto& l : b.labels()) {
    std::vector<std::vector<GroupElement>> next;
    next.reserve(out.size() * l.size());
    for (auto& t : out)
      for (auto& a : l.elements()) {
        next.push_back(t);
        next.back().push_back(a);
      }
    out = std::move(next);
  }
  return out;
}

// |v| for each basis vector v, in basis order.
inline std::vector<GroupElement> basis_weights(const BaseObject& b) {
  std::vector<GroupElement> w;
  if (b.is_zero()) return w;
  auto labels = b.labels();
  w.push_back(GroupElement::zero(labels[0].owner()));
  for (auto& l : labels) {
    std::vector<GroupElement> next;
    next.reserve(w.size() * l.size());
    for (auto& s : w)
      for (auto& a : l.elements()) next.push_back(s + a);
    w = std::move(next);
  }
  return w;
}

inline std::size_t isotypic_multiplicity(const BaseObject& b, const GroupElement& a) {
  std::size_t k = 0;
  for (auto& w : basis_weights(b)) k += (w == a);
  return k;
}

// The multiset of all |v|.
inline WeightMultiset weight_multiset(const BaseObject& b) {
  if (b.is_zero()) throw std::invalid_argument("the zero object has no weights");
  return WeightMultiset(basis_weights(b));
}

inline std::string format_object(const BaseObject& b) {
  if (b.is_zero()) return "0";
  return b.tree().str([](const WeightMultiset& w) { return w.to_string(); });
}

// "(( {1 2} {0} ) {5})"; "0" is the zero object. Elements of groups with
// several generators are written "(1,0)".
inline BaseObject parse_object(const GroupPtr& g, const std::string& text) {
  std::size_t pos = 0;
  auto ws = [&] {
    while (pos < text.size() && isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  auto fail = [&](const std::string& why) {
    throw std::invalid_argument("bad object '" + text + "': " + why);
  };
  std::function<Paren<WeightMultiset>()> node = [&]() -> Paren<WeightMultiset> {
    ws();
    if (pos >= text.size()) fail("unexpected end");
    if (text[pos] == '{') {
      ++pos;
      std::vector<GroupElement> elems;
      for (;;) {
        ws();
        if (pos >= text.size()) fail("unclosed '{'");
        if (text[pos] == '}') {
          ++pos;
          break;
        }
        std::size_t start = pos;
        int depth = 0;
        while (pos < text.size() && (depth > 0 || (!isspace(static_cast<unsigned char>(text[pos])) && text[pos] != '}'))) {
          if (text[pos] == '(') ++depth;
          if (text[pos] == ')') --depth;
          ++pos;
        }
        elems.push_back(GroupElement::parse(g, text.substr(start, pos - start)));
      }
      if (elems.empty()) fail("empty multiset");
      return Paren<WeightMultiset>::leaf(WeightMultiset(std::move(elems)));
    }
    if (text[pos] == '(') {
      ++pos;
      std::vector<Paren<WeightMultiset>> kids;
      for (;;) {
        ws();
        if (pos >= text.size()) fail("unclosed '('");
        if (text[pos] == ')') {
          ++pos;
          break;
        }
        kids.push_back(node());
      }
      if (kids.size() == 1) return kids[0];
      if (kids.size() != 2) fail("a pair needs exactly two parts");
      return Paren<WeightMultiset>::pair(kids[0], kids[1]);
    }
    throw std::invalid_argument("bad object '" + text + "': unexpected '" + text[pos] + "'");
  };
  ws();
  if (text.substr(pos) == "0" || (pos < text.size() && text[pos] == '0' && text.find_first_not_of(" \t\n", pos + 1) == std::string::npos))
    return BaseObject::zero();
  auto t = node();
  ws();
  if (pos != text.size()) fail("trailing characters");
  return BaseObject(t);
}

namespace detail {
// Position of each basis index among the basis vectors of the same weight.
inline std::vector<std::size_t> occurrence_ranks(const std::vector<GroupElement>& w) {
  std::map<GroupElement, std::size_t> seen;
  std::vector<std::size_t> r(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) r[i] = seen[w[i]]++;
  return r;
}
// Index of the k-th basis vector of weight a.
inline std::map<GroupElement, std::vector<std::size_t>> weight_positions(const std::vector<GroupElement>& w) {
  std::map<GroupElement, std::vector<std::size_t>> m;
  for (std::size_t i = 0; i < w.size(); ++i) m[w[i]].push_back(i);
  return m;
}
}  // namespace detail

// A weight-respecting linear map between base objects, stored as one block per
// weight shared by source and target (rows: target, columns: source).
template <class F>
class HomMorphism {
 public:
  using K = typename F::value_type;
  struct Block {
    GroupElement weight;
    std::vector<std::size_t> src, tgt;  // basis indices of that weight
    Matrix<F> m;                         // tgt.size() x src.size()
  };

  HomMorphism() = default;
  // The zero morphism.
  HomMorphism(F k, BaseObject source, BaseObject target) : k_(std::move(k)), src_(std::move(source)), tgt_(std::move(target)) {
    if (!src_.is_zero() && !tgt_.is_zero() && !same_group(object_group(src_), object_group(tgt_)))
      throw std::invalid_argument("objects over different groups");
    auto sw = basis_weights(src_);
    auto tp = detail::weight_positions(basis_weights(tgt_));
    std::map<GroupElement, std::size_t> slot;
    for (std::size_t i = 0; i < sw.size(); ++i) {
      auto t = tp.find(sw[i]);
      if (t == tp.end()) continue;
      auto [it, fresh] = slot.emplace(sw[i], blocks_.size());
      if (fresh) blocks_.push_back(Block{sw[i], {}, t->second, Matrix<F>(k_, 0, 0)});
      blocks_[it->second].src.push_back(i);
    }
    for (auto& b : blocks_) b.m = Matrix<F>(k_, b.tgt.size(), b.src.size());
  }

  static HomMorphism identity(const F& k, const BaseObject& b) {
    HomMorphism f(k, b, b);
    for (auto& bl : f.blocks_) bl.m = Matrix<F>::identity(k, bl.src.size());
    return f;
  }

  // Fails when M mixes weights.
  static std::optional<HomMorphism> from_dense(const F& k, const BaseObject& b, const BaseObject& c, const Matrix<F>& M) {
    HomMorphism f(k, b, c);
    if (M.rows() != dimension(c) || M.cols() != dimension(b)) throw std::invalid_argument("dense matrix has wrong shape");
    std::vector<bool> covered(M.rows() * M.cols(), false);
    for (auto& bl : f.blocks_)
      for (std::size_t i = 0; i < bl.tgt.size(); ++i)
        for (std::size_t j = 0; j < bl.src.size(); ++j) {
          bl.m(i, j) = M(bl.tgt[i], bl.src[j]);
          covered[bl.tgt[i] * M.cols() + bl.src[j]] = true;
        }
    for (std::size_t i = 0; i < M.rows(); ++i)
      for (std::size_t j = 0; j < M.cols(); ++j)
        if (!covered[i * M.cols() + j] && !proalg::is_zero(M(i, j))) return std::nullopt;
    return f;
  }

  // Coordinates: blocks in order of first occurrence in the source basis; each
  // block read row by row with row k holding the image of the k-th source vector.
  static HomMorphism from_coords(const F& k, const BaseObject& b, const BaseObject& c, const std::vector<K>& lambda) {
    HomMorphism f(k, b, c);
    if (lambda.size() < f.coord_count()) throw std::invalid_argument("too few coordinates");
    for (std::size_t i = f.coord_count(); i < lambda.size(); ++i)
      if (!proalg::is_zero(lambda[i])) throw std::invalid_argument("coordinates beyond the hom dimension must vanish");
    std::size_t p = 0;
    for (auto& bl : f.blocks_)
      for (std::size_t s = 0; s < bl.src.size(); ++s)
        for (std::size_t t = 0; t < bl.tgt.size(); ++t) bl.m(t, s) = lambda[p++];
    return f;
  }
  std::vector<K> coords() const {
    std::vector<K> out;
    for (auto& bl : blocks_)
      for (std::size_t s = 0; s < bl.src.size(); ++s)
        for (std::size_t t = 0; t < bl.tgt.size(); ++t) out.push_back(bl.m(t, s));
    return out;
  }
  std::size_t coord_count() const {
    std::size_t r = 0;
    for (auto& bl : blocks_) r += bl.src.size() * bl.tgt.size();
    return r;
  }

  const F& field() const { return k_; }
  const BaseObject& source() const { return src_; }
  const BaseObject& target() const { return tgt_; }
  const std::vector<Block>& blocks() const { return blocks_; }
  const Block* block(const GroupElement& a) const {
    for (auto& b : blocks_)
      if (b.weight == a) return &b;
    return nullptr;
  }
  Matrix<F>& block_matrix(std::size_t i) { return blocks_.at(i).m; }

  Matrix<F> dense() const {
    Matrix<F> M(k_, dimension(tgt_), dimension(src_));
    for (auto& bl : blocks_)
      for (std::size_t i = 0; i < bl.tgt.size(); ++i)
        for (std::size_t j = 0; j < bl.src.size(); ++j) M(bl.tgt[i], bl.src[j]) = bl.m(i, j);
    return M;
  }

  std::vector<K> apply(const std::vector<K>& v) const {
    if (v.size() != dimension(src_)) throw std::invalid_argument("vector does not live on the source");
    std::vector<K> out(dimension(tgt_), k_.zero());
    for (auto& bl : blocks_)
      for (std::size_t i = 0; i < bl.tgt.size(); ++i)
        for (std::size_t j = 0; j < bl.src.size(); ++j)
          if (!proalg::is_zero(v[bl.src[j]])) out[bl.tgt[i]] += bl.m(i, j) * v[bl.src[j]];
    return out;
  }

  bool is_zero() const {
    for (auto& bl : blocks_)
      if (!bl.m.is_zero()) return false;
    return true;
  }

  friend bool operator==(const HomMorphism& f, const HomMorphism& g) {
    if (!(f.src_ == g.src_) || !(f.tgt_ == g.tgt_)) return false;
    for (std::size_t i = 0; i < f.blocks_.size(); ++i)
      if (!(f.blocks_[i].m == g.blocks_[i].m)) return false;
    return true;
  }

  friend HomMorphism operator+(const HomMorphism& f, const HomMorphism& g) {
    same_ends(f, g);
    HomMorphism h = f;
    for (std::size_t i = 0; i < h.blocks_.size(); ++i) h.blocks_[i].m = f.blocks_[i].m + g.blocks_[i].m;
    return h;
  }
  friend HomMorphism operator*(const K& s, const HomMorphism& f) {
    HomMorphism h = f;
    for (auto& bl : h.blocks_) bl.m = s * bl.m;
    return h;
  }

 private:
  static void same_ends(const HomMorphism& f, const HomMorphism& g) {
    if (!(f.src_ == g.src_) || !(f.tgt_ == g.tgt_)) throw std::invalid_argument("morphisms with different ends");
  }

  F k_{};
  BaseObject src_, tgt_;
  std::vector<Block> blocks_;

  template <class G>
  friend HomMorphism<G> compose(const HomMorphism<G>& g, const HomMorphism<G>& f);
};

// g after f.
template <class F>
HomMorphism<F> compose(const HomMorphism<F>& g, const HomMorphism<F>& f) {
  if (!(f.target() == g.source())) throw std::invalid_argument("composition of non-composable morphisms");
  HomMorphism<F> h(f.field(), f.source(), g.target());
  for (auto& hb : h.blocks_) {
    auto* fb = f.block(hb.weight);
    auto* gb = g.block(hb.weight);
    if (fb && gb) hb.m = gb->m * fb->m;
  }
  return h;
}

template <class F>
HomMorphism<F> zero_morphism(const F& k, const BaseObject& b, const BaseObject& c) {
  return HomMorphism<F>(k, b, c);
}

template <class F>
HomMorphism<F> tensor(const HomMorphism<F>& f, const HomMorphism<F>& g) {
  auto h = HomMorphism<F>::from_dense(f.field(), tensor(f.source(), g.source()), tensor(f.target(), g.target()),
                                      kron(f.dense(), g.dense()));
  return *h;
}

inline std::size_t hom_dimension(const BaseObject& b, const BaseObject& c) {
  auto sw = basis_weights(b), tw = basis_weights(c);
  std::map<GroupElement, std::size_t> ms, mt;
  for (auto& w : sw) ++ms[w];
  for (auto& w : tw) ++mt[w];
  std::size_t r = 0;
  for (auto& [a, k] : ms) {
    auto it = mt.find(a);
    if (it != mt.end()) r += k * it->second;
  }
  return r;
}

// Basis of the hom space: the coordinate unit vectors.
template <class F>
std::vector<HomMorphism<F>> hom_space(const F& k, const BaseObject& b, const BaseObject& c) {
  HomMorphism<F> z(k, b, c);
  const std::size_t r = z.coord_count();
  std::vector<HomMorphism<F>> out;
  for (std::size_t i = 0; i < r; ++i) {
    std::vector<typename F::value_type> lam(r, k.zero());
    lam[i] = k.one();
    out.push_back(HomMorphism<F>::from_coords(k, b, c, lam));
  }
  return out;
}

template <class F>
struct ModelVector {
  BaseObject owner;
  std::vector<typename F::value_type> coeffs;
};

template <class F>
ModelVector<F> tensor(const F& k, const ModelVector<F>& x, const ModelVector<F>& y) {
  Matrix<F> a = Matrix<F>::column(k, x.coeffs), b = Matrix<F>::column(k, y.coeffs);
  return {tensor(x.owner, y.owner), kron(a, b).col(0)};
}

template <class F>
struct Dual {
  BaseObject object;
  HomMorphism<F> ev;    // b (x) b* -> 1
  HomMorphism<F> coev;  // 1 -> b* (x) b
};

template <class F>
Dual<F> dual(const F& k, const BaseObject& b) {
  if (b.is_zero()) throw std::invalid_argument("the zero object has no dual");
  auto w = basis_weights(b);
  std::vector<GroupElement> neg;
  for (auto& a : w) neg.push_back(-a);
  BaseObject d = make_irreducible(WeightMultiset(neg));
  auto dw = basis_weights(d);
  auto pos = detail::weight_positions(dw);
  auto rank = detail::occurrence_ranks(w);
  const std::size_t n = w.size();
  std::vector<std::size_t> sigma(n);
  for (std::size_t i = 0; i < n; ++i) sigma[i] = pos.at(-w[i])[rank[i]];
  BaseObject one = unit_object(object_group(b));
  Matrix<F> E(k, 1, n * n), C(k, n * n, 1);
  for (std::size_t i = 0; i < n; ++i) {
    E(0, i * n + sigma[i]) = k.one();
    C(sigma[i] * n + i, 0) = k.one();
  }
  return {d, *HomMorphism<F>::from_dense(k, tensor(b, d), one, E), *HomMorphism<F>::from_dense(k, one, tensor(d, b), C)};
}

template <class F>
struct DirectSum {
  BaseObject object;
  HomMorphism<F> inj_b, inj_c, proj_b, proj_c;
};

template <class F>
DirectSum<F> direct_sum(const F& k, const BaseObject& b, const BaseObject& c) {
  if (b.is_zero() || c.is_zero()) throw std::invalid_argument("direct sum of the zero object");
  if (!same_group(object_group(b), object_group(c))) throw std::invalid_argument("objects over different groups");
  auto wb = basis_weights(b), wc = basis_weights(c);
  std::vector<GroupElement> all = wb;
  all.insert(all.end(), wc.begin(), wc.end());
  BaseObject d = make_irreducible(WeightMultiset(all));
  auto pos = detail::weight_positions(basis_weights(d));
  std::map<GroupElement, std::size_t> used;
  auto inj = [&](const BaseObject& x, const std::vector<GroupElement>& wx) {
    Matrix<F> M(k, all.size(), wx.size());
    for (std::size_t i = 0; i < wx.size(); ++i) M(pos.at(wx[i])[used[wx[i]]++], i) = k.one();
    return *HomMorphism<F>::from_dense(k, x, d, M);
  };
  auto ib = inj(b, wb);
  auto ic = inj(c, wc);
  auto pb = *HomMorphism<F>::from_dense(k, d, b, ib.dense().transpose());
  auto pc = *HomMorphism<F>::from_dense(k, d, c, ic.dense().transpose());
  return {d, ib, ic, pb, pc};
}

template <class F>
struct Kernel {
  BaseObject object;  // ZERO when the map is injective
  HomMorphism<F> inclusion;
};

template <class F>
Kernel<F> kernel_of(const HomMorphism<F>& f) {
  const F& k = f.field();
  const BaseObject& b = f.source();
  auto sw = basis_weights(b);
  auto spos = detail::weight_positions(sw);
  std::vector<GroupElement> weights;
  std::vector<std::pair<GroupElement, Matrix<F>>> parts;  // kernel basis columns per weight
  for (auto& [a, idx] : spos) {
    auto* bl = f.block(a);
    Matrix<F> K = bl ? kernel(bl->m) : Matrix<F>::identity(k, idx.size());
    for (std::size_t j = 0; j < K.cols(); ++j) weights.push_back(a);
    if (K.cols()) parts.emplace_back(a, K);
  }
  if (weights.empty()) return {BaseObject::zero(), HomMorphism<F>(k, BaseObject::zero(), b)};
  BaseObject u = make_irreducible(WeightMultiset(weights));
  auto upos = detail::weight_positions(basis_weights(u));
  Matrix<F> M(k, dimension(b), dimension(u));
  for (auto& [a, K] : parts) {
    auto& si = spos.at(a);
    auto& ui = upos.at(a);
    for (std::size_t i = 0; i < K.rows(); ++i)
      for (std::size_t j = 0; j < K.cols(); ++j) M(si[i], ui[j]) = K(i, j);
  }
  return {u, *HomMorphism<F>::from_dense(k, u, b, M)};
}

template <class F>
struct Cokernel {
  BaseObject object;  // ZERO when the map is surjective
  HomMorphism<F> projection;
};

template <class F>
Cokernel<F> cokernel_of(const HomMorphism<F>& f) {
  const F& k = f.field();
  const BaseObject& c = f.target();
  auto tpos = detail::weight_positions(basis_weights(c));
  std::vector<GroupElement> weights;
  std::vector<std::pair<GroupElement, Matrix<F>>> parts;  // rows span the left null space per weight
  for (auto& [a, idx] : tpos) {
    auto* bl = f.block(a);
    Matrix<F> P = bl ? kernel(bl->m.transpose()).transpose() : Matrix<F>::identity(k, idx.size());
    for (std::size_t j = 0; j < P.rows(); ++j) weights.push_back(a);
    if (P.rows()) parts.emplace_back(a, P);
  }
  if (weights.empty()) return {BaseObject::zero(), HomMorphism<F>(k, c, BaseObject::zero())};
  BaseObject w = make_irreducible(WeightMultiset(weights));
  auto wpos = detail::weight_positions(basis_weights(w));
  Matrix<F> M(k, dimension(w), dimension(c));
  for (auto& [a, P] : parts) {
    auto& ti = tpos.at(a);
    auto& wi = wpos.at(a);
    for (std::size_t i = 0; i < P.rows(); ++i)
      for (std::size_t j = 0; j < P.cols(); ++j) M(wi[i], ti[j]) = P(i, j);
  }
  return {w, *HomMorphism<F>::from_dense(k, c, w, M)};
}

template <class F>
struct Normalization {
  BaseObject irreducible;
  HomMorphism<F> iso;  // object -> irreducible
};

// The k-th basis vector of weight a goes to the k-th basis vector of weight a.
template <class F>
Normalization<F> normalize_to_irreducible(const F& k, const BaseObject& b) {
  if (b.is_zero()) return {b, HomMorphism<F>(k, b, b)};
  auto w = basis_weights(b);
  BaseObject c = make_irreducible(WeightMultiset(w));
  auto pos = detail::weight_positions(basis_weights(c));
  auto rank = detail::occurrence_ranks(w);
  Matrix<F> M(k, w.size(), w.size());
  for (std::size_t i = 0; i < w.size(); ++i) M(pos.at(w[i])[rank[i]], i) = k.one();
  return {c, *HomMorphism<F>::from_dense(k, b, c, M)};
}

// Irreducibles with weights from elems and dimension <= max_dim, then
// parenthesized tensor products of them with 2..max_len leaves and dimension
// <= max_dim. Ordered by length, then shape, then labels.
inline std::vector<BaseObject> fragment_objects(const std::vector<GroupElement>& elems, std::size_t max_dim,
                                                std::size_t max_len) {
  std::vector<std::vector<BaseObject>> irr(max_dim + 1);  // by dimension
  std::vector<std::size_t> pick;
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t from, std::size_t left) {
    if (!pick.empty()) {
      std::vector<GroupElement> w;
      for (auto i : pick) w.push_back(elems[i]);
      irr[pick.size()].push_back(make_irreducible(WeightMultiset(w)));
    }
    if (!left) return;
    for (std::size_t i = from; i < elems.size(); ++i) {
      pick.push_back(i);
      rec(i, left - 1);
      pick.pop_back();
    }
  };
  rec(0, max_dim);
  std::vector<BaseObject> out;
  for (auto& v : irr) out.insert(out.end(), v.begin(), v.end());
  for (std::size_t m = 2; m <= max_len; ++m)
    for (auto& shape : enumerate_shapes(m)) {
      std::vector<WeightMultiset> labels;
      std::function<void(std::size_t)> fill = [&](std::size_t dim) {
        if (labels.size() == m) {
          out.emplace_back(shape.refill(labels));
          return;
        }
        for (std::size_t d = 1; d * dim <= max_dim; ++d)
          for (auto& b : irr[d]) {
            labels.push_back(b.labels()[0]);
            fill(dim * d);
            labels.pop_back();
          }
      };
      fill(1);
    }
  return out;
}

// Groups on one-dimensional irreducibles: {a} + {b} is the irreducible form of {a} (x) {b}.
class CharacterGroup {
 public:
  explicit CharacterGroup(GroupPtr g) : g_(std::move(g)) {}
  const GroupPtr& group() const { return g_; }
  BaseObject object_of(const GroupElement& a) const { return make_irreducible(WeightMultiset({a})); }
  GroupElement element_of(const BaseObject& x) const {
    if (!is_tensor_irreducible(x) || dimension(x) != 1) throw std::invalid_argument("not an object of sort (1,1)");
    return x.labels()[0].elements()[0];
  }
  BaseObject add(const BaseObject& x, const BaseObject& y) const {
    if (dimension(x) != 1 || dimension(y) != 1) throw std::invalid_argument("not an object of sort (1,1)");
    return make_irreducible(weight_multiset(tensor(x, y)));
  }
  BaseObject zero() const { return unit_object(g_); }
  // The unique y with x + y = 0, found through the dual.
  BaseObject negate(const BaseObject& x) const { return dual(Rationals{}, x).object; }

 private:
  GroupPtr g_;
};

inline CharacterGroup character_group(const GroupPtr& g) { return CharacterGroup(g); }

// The group structure read off the objects {a}, a in elems, with
// {a} +' {b} = normalize_to_irreducible({a} (x) {b}). The presentation uses
// only the table: generators x_a, relations x_a + x_b = x_c whenever the sum
// c lands inside elems. For a finite group and all elements this is exact;
// for a bounded slice of an infinite group the table is partial.
struct CharacterTable {
  std::vector<GroupElement> elements;
  std::vector<std::vector<long>> sum;  // index of {a} +' {b} in elements, -1 when outside
  std::vector<long> negative;          // index of the dual of {a}, -1 when outside
  long zero = -1;                      // index of the unit object
  FgAbelianGroup presented;            // Z^elements / relations
  bool closed = true;                  // every sum and dual lands inside elements
  bool homomorphism = true;            // {a} |-> a respects +', 0 and negation on the table
  std::vector<std::string> mismatches;
  bool isomorphic(const FgAbelianGroup& a) const { return homomorphism && presented == a; }
};

template <class F>
CharacterTable extract_character_group(const F& k, const std::vector<GroupElement>& elems) {
  if (elems.empty()) throw std::invalid_argument("character table needs at least one element");
  const GroupPtr& g = elems[0].owner();
  CharacterTable t;
  t.elements = elems;
  std::map<GroupElement, long> index;
  for (std::size_t i = 0; i < elems.size(); ++i)
    if (!index.emplace(elems[i], static_cast<long>(i)).second) throw std::invalid_argument("repeated element in character table");
  // the label of a one-dimensional object, looked up by its single weight
  auto where = [&](const BaseObject& x) -> long {
    if (!is_tensor_irreducible(x) || dimension(x) != 1) throw std::logic_error("character object of the wrong sort");
    auto it = index.find(x.labels()[0].elements()[0]);
    return it == index.end() ? -1 : it->second;
  };
  std::vector<BaseObject> obj;
  for (auto& a : elems) obj.push_back(make_irreducible(WeightMultiset({a})));
  t.zero = where(unit_object(g));
  if (t.zero < 0) t.closed = false;
  const std::size_t n = elems.size();
  t.sum.assign(n, std::vector<long>(n, -1));
  std::vector<std::vector<Int>> rel;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      BaseObject s = normalize_to_irreducible(k, tensor(obj[i], obj[j])).irreducible;
      const long c = where(s);
      t.sum[i][j] = c;
      if (c < 0) {
        t.closed = false;
        continue;
      }
      if (!(elems[static_cast<std::size_t>(c)] == elems[i] + elems[j])) {
        t.homomorphism = false;
        t.mismatches.push_back("{" + elems[i].to_string() + "} +' {" + elems[j].to_string() + "} = {" +
                               elems[static_cast<std::size_t>(c)].to_string() + "}");
      }
      if (j < i) continue;
      std::vector<Int> r(n, 0);
      r[i] += 1;
      r[j] += 1;
      r[static_cast<std::size_t>(c)] -= 1;
      rel.push_back(r);
    }
  for (std::size_t i = 0; i < n; ++i) {
    const long d = where(dual(k, obj[i]).object);
    t.negative.push_back(d);
    if (d < 0) {
      t.closed = false;
      continue;
    }
    if (!(elems[static_cast<std::size_t>(d)] == -elems[i])) {
      t.homomorphism = false;
      t.mismatches.push_back("dual of {" + elems[i].to_string() + "} is {" + elems[static_cast<std::size_t>(d)].to_string() + "}");
    }
  }
  if (t.zero >= 0 && !elems[static_cast<std::size_t>(t.zero)].is_zero()) {
    t.homomorphism = false;
    t.mismatches.push_back("unit object is {" + elems[static_cast<std::size_t>(t.zero)].to_string() + "}");
  }
  IntMatrix R(n, rel.size() > n ? rel.size() : n);
  // columns are relations; extra zero columns leave the cokernel unchanged
  for (std::size_t c = 0; c < rel.size(); ++c)
    for (std::size_t i = 0; i < n; ++i) R(i, c) = rel[c][i];
  auto D = smith_normal_form(R).D;
  std::vector<Int> orders;
  for (std::size_t i = 0; i < n; ++i) orders.push_back(D(i, i));
  t.presented = FgAbelianGroup::from_cyclic(orders);
  return t;
}

// The skeleton construction instantiated on the diagonalizable model. The
// associativity constraint is the identity in the lexicographic bases.
template <class F>
struct DiagProvider {
  using label_type = WeightMultiset;
  using morphism_type = HomMorphism<F>;
  F k;

  std::vector<morphism_type> hom_basis(const BaseObject& x, const BaseObject& y) const { return hom_space(k, x, y); }
  morphism_type identity(const BaseObject& x) const { return morphism_type::identity(k, x); }
  morphism_type tensor(const morphism_type& f, const morphism_type& g) const { return proalg::tensor(f, g); }
  morphism_type compose(const morphism_type& g, const morphism_type& f) const { return proalg::compose(g, f); }
  morphism_type associator(const BaseObject& x, const BaseObject& y, const BaseObject& z) const {
    auto src = proalg::tensor(proalg::tensor(x, y), z);
    auto tgt = proalg::tensor(x, proalg::tensor(y, z));
    return *morphism_type::from_dense(k, src, tgt, Matrix<F>::identity(k, dimension(src)));
  }
  bool equal(const morphism_type& f, const morphism_type& g) const { return f == g; }
};

}  // namespace proalg
