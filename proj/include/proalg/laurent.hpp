#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "proalg/abelian.hpp"
#include "proalg/field.hpp"

namespace proalg {

// Exponent vector; ordered by total degree, then lexicographically.
struct Monomial {
  std::vector<std::uint16_t> e;
  unsigned deg = 0;

  Monomial() = default;
  explicit Monomial(std::size_t nvars) : e(nvars, 0) {}
  static Monomial var(std::size_t nvars, std::size_t i, unsigned power = 1) {
    Monomial m(nvars);
    m.e.at(i) = static_cast<std::uint16_t>(power);
    m.deg = power;
    return m;
  }
  std::size_t nvars() const { return e.size(); }
  friend Monomial operator*(const Monomial& a, const Monomial& b) {
    if (a.e.size() != b.e.size()) throw std::invalid_argument("monomials in different rings");
    Monomial r = a;
    for (std::size_t i = 0; i < r.e.size(); ++i) r.e[i] = static_cast<std::uint16_t>(r.e[i] + b.e[i]);
    r.deg += b.deg;
    return r;
  }
  friend bool operator==(const Monomial& a, const Monomial& b) { return a.deg == b.deg && a.e == b.e; }
  friend std::strong_ordering operator<=>(const Monomial& a, const Monomial& b) {
    if (a.deg != b.deg) return a.deg <=> b.deg;
    return std::lexicographical_compare_three_way(a.e.begin(), a.e.end(), b.e.begin(), b.e.end());
  }
};

// All monomials in nvars variables of degree <= d, ascending.
inline std::vector<Monomial> monomials_up_to(std::size_t nvars, unsigned d) {
  std::vector<Monomial> out;
  Monomial cur(nvars);
  std::function<void(std::size_t, unsigned)> rec = [&](std::size_t i, unsigned left) {
    if (i == nvars) {
      out.push_back(cur);
      return;
    }
    for (unsigned k = 0; k <= left; ++k) {
      cur.e[i] = static_cast<std::uint16_t>(k);
      cur.deg += k;
      rec(i + 1, left - k);
      cur.deg -= k;
    }
    cur.e[i] = 0;
  };
  rec(0, d);
  std::sort(out.begin(), out.end());
  return out;
}

// Sparse polynomial; zero coefficients are never stored.
template <class F>
class Poly {
 public:
  using K = typename F::value_type;
  using Terms = std::map<Monomial, K>;

  Poly() = default;
  Poly(F k, std::size_t nvars) : k_(std::move(k)), nv_(nvars) {}
  static Poly constant(const F& k, std::size_t nvars, const K& c) {
    Poly p(k, nvars);
    p.add_term(Monomial(nvars), c);
    return p;
  }
  static Poly monomial(const F& k, const Monomial& m, const K& c) {
    Poly p(k, m.nvars());
    p.add_term(m, c);
    return p;
  }
  static Poly var(const F& k, std::size_t nvars, std::size_t i) { return monomial(k, Monomial::var(nvars, i), k.one()); }

  const F& field() const { return k_; }
  std::size_t nvars() const { return nv_; }
  const Terms& terms() const { return t_; }
  std::size_t size() const { return t_.size(); }
  bool is_zero() const { return t_.empty(); }
  int degree() const { return t_.empty() ? -1 : static_cast<int>(t_.rbegin()->first.deg); }
  const Monomial& lead() const { return t_.rbegin()->first; }
  const K& lead_coeff() const { return t_.rbegin()->second; }
  K coeff(const Monomial& m) const {
    auto it = t_.find(m);
    return it == t_.end() ? k_.zero() : it->second;
  }

  void add_term(const Monomial& m, const K& c) {
    if (m.nvars() != nv_) throw std::invalid_argument("monomial from a different ring");
    if (proalg::is_zero(c)) return;
    auto [it, fresh] = t_.emplace(m, c);
    if (!fresh) {
      it->second += c;
      if (proalg::is_zero(it->second)) t_.erase(it);
    }
  }
  // this += c * m * q
  void add_scaled(const K& c, const Monomial& m, const Poly& q) {
    if (proalg::is_zero(c)) return;
    for (auto& [qm, qc] : q.t_) {
      K v = c * qc;
      add_term(m * qm, v);
    }
  }
  void add_scaled(const K& c, const Poly& q) { add_scaled(c, Monomial(nv_), q); }

  friend Poly operator+(Poly a, const Poly& b) {
    check(a, b);
    a.add_scaled(a.k_.one(), b);
    return a;
  }
  friend Poly operator-(Poly a, const Poly& b) {
    check(a, b);
    a.add_scaled(-a.k_.one(), b);
    return a;
  }
  friend Poly operator-(const Poly& a) {
    Poly r(a.k_, a.nv_);
    r.add_scaled(-a.k_.one(), a);
    return r;
  }
  friend Poly operator*(const Poly& a, const Poly& b) {
    check(a, b);
    Poly r(a.k_, a.nv_);
    for (auto& [m, c] : a.t_) r.add_scaled(c, m, b);
    return r;
  }
  friend Poly operator*(const K& s, const Poly& a) {
    Poly r(a.k_, a.nv_);
    r.add_scaled(s, a);
    return r;
  }
  Poly pow(unsigned e) const {
    Poly r = constant(k_, nv_, k_.one());
    for (unsigned i = 0; i < e; ++i) r = r * *this;
    return r;
  }
  friend bool operator==(const Poly& a, const Poly& b) { return a.nv_ == b.nv_ && a.t_ == b.t_; }

  K evaluate(const std::vector<K>& x) const {
    if (x.size() != nv_) throw std::invalid_argument("point has the wrong number of coordinates");
    K s = k_.zero();
    for (auto& [m, c] : t_) {
      K v = c;
      for (std::size_t i = 0; i < nv_; ++i)
        for (unsigned p = 0; p < m.e[i]; ++p) v *= x[i];
      s += v;
    }
    return s;
  }

  // Replace variable i by images[i] (all in one target ring).
  Poly substitute(const std::vector<Poly>& images) const {
    if (images.size() != nv_) throw std::invalid_argument("substitution has the wrong number of images");
    std::size_t tv = images.empty() ? 0 : images[0].nv_;
    Poly r(k_, tv);
    std::vector<std::vector<Poly>> powers(nv_);
    for (auto& [m, c] : t_) {
      Poly term = constant(k_, tv, c);
      for (std::size_t i = 0; i < nv_; ++i) {
        if (!m.e[i]) continue;
        auto& pw = powers[i];
        if (pw.empty()) pw.push_back(constant(k_, tv, k_.one()));
        while (pw.size() <= m.e[i]) pw.push_back(pw.back() * images[i]);
        term = term * pw[m.e[i]];
      }
      r.add_scaled(k_.one(), term);
    }
    return r;
  }

  std::string str(const std::function<std::string(std::size_t)>& name) const {
    if (t_.empty()) return "0";
    std::string s;
    bool first = true;
    for (auto it = t_.rbegin(); it != t_.rend(); ++it) {
      const auto& [m, c] = *it;
      std::string cs = to_string(c);
      bool neg = false;
      if constexpr (std::is_same_v<K, Rational>) {
        neg = sgn(c) < 0;
        if (neg) cs = to_string(K(-c));
      }
      std::string mono;
      for (std::size_t i = 0; i < nv_; ++i) {
        if (!m.e[i]) continue;
        if (!mono.empty()) mono += "*";
        mono += name(i);
        if (m.e[i] > 1) mono += "^" + std::to_string(m.e[i]);
      }
      std::string body = mono.empty() ? cs : (cs == "1" ? mono : cs + "*" + mono);
      if (first)
        s += (neg ? "-" : "") + body;
      else
        s += (neg ? " - " : " + ") + body;
      first = false;
    }
    return s;
  }

 private:
  static void check(const Poly& a, const Poly& b) {
    if (a.nv_ != b.nv_) throw std::invalid_argument("polynomials in different rings");
  }
  F k_{};
  std::size_t nv_ = 0;
  Terms t_;
};

// Variable layout of k[Z, Z^-1] for GL_n: Z[i,j] at i*n+j, W[i,j] = (Z^-1)[i,j] at n^2+i*n+j.
class LaurentRing {
 public:
  explicit LaurentRing(std::size_t n) : n_(n) {
    if (n < 1) throw std::invalid_argument("matrix size must be at least 1");
  }
  std::size_t n() const { return n_; }
  std::size_t nvars() const { return 2 * n_ * n_; }
  std::size_t z(std::size_t i, std::size_t j) const { return i * n_ + j; }
  std::size_t w(std::size_t i, std::size_t j) const { return n_ * n_ + i * n_ + j; }

  std::string var_name(std::size_t v) const {
    bool is_w = v >= n_ * n_;
    std::size_t r = v % (n_ * n_);
    if (n_ == 1) return is_w ? "W" : "Z";
    return std::string(is_w ? "W" : "Z") + "[" + std::to_string(r / n_ + 1) + "," + std::to_string(r % n_ + 1) + "]";
  }
  // Variables of the tensor square: right-hand copies are primed.
  std::string tensor_var_name(std::size_t v) const {
    return v < nvars() ? var_name(v) : var_name(v - nvars()) + "'";
  }

  template <class F>
  Poly<F> Z(const F& k, std::size_t i, std::size_t j) const {
    return Poly<F>::var(k, nvars(), z(i, j));
  }
  template <class F>
  Poly<F> W(const F& k, std::size_t i, std::size_t j) const {
    return Poly<F>::var(k, nvars(), w(i, j));
  }
  template <class F>
  Poly<F> one(const F& k) const {
    return Poly<F>::constant(k, nvars(), k.one());
  }

  // Entries of ZW - I and WZ - I.
  template <class F>
  std::vector<Poly<F>> relations(const F& k) const {
    std::vector<Poly<F>> out;
    for (int pass = 0; pass < 2; ++pass)
      for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j) {
          Poly<F> p(k, nvars());
          for (std::size_t l = 0; l < n_; ++l)
            p = p + (pass == 0 ? Z(k, i, l) * W(k, l, j) : W(k, i, l) * Z(k, l, j));
          if (i == j) p = p - one(k);
          out.push_back(p);
        }
    return out;
  }

  // Z -> Z (x) Z and W[i,j] -> sum_l W[l,j] (x) W[i,l], into 2 * nvars() variables.
  template <class F>
  Poly<F> comultiply(const Poly<F>& f) const {
    const F& k = f.field();
    const std::size_t N = nvars(), T = 2 * N;
    std::vector<Poly<F>> img;
    for (std::size_t v = 0; v < N; ++v) {
      std::size_t r = v % (n_ * n_), i = r / n_, j = r % n_;
      bool is_w = v >= n_ * n_;
      Poly<F> p(k, T);
      for (std::size_t l = 0; l < n_; ++l) {
        std::size_t a = is_w ? w(l, j) : z(i, l);
        std::size_t b = is_w ? w(i, l) : z(l, j);
        p = p + Poly<F>::var(k, T, a) * Poly<F>::var(k, T, N + b);
      }
      img.push_back(p);
    }
    return f.substitute(img);
  }

  // Z <-> W.
  template <class F>
  Poly<F> antipode(const Poly<F>& f) const {
    const F& k = f.field();
    std::vector<Poly<F>> img;
    for (std::size_t v = 0; v < nvars(); ++v) img.push_back(Poly<F>::var(k, nvars(), (v + n_ * n_) % nvars()));
    return f.substitute(img);
  }

  // Degrees of a tensor-square monomial in the left and right factors.
  std::pair<unsigned, unsigned> bidegree(const Monomial& m) const {
    unsigned a = 0, b = 0;
    for (std::size_t i = 0; i < nvars(); ++i) a += m.e.at(i);
    for (std::size_t i = 0; i < nvars(); ++i) b += m.e.at(nvars() + i);
    return {a, b};
  }

  // Value at g (W evaluated at g^-1); g must be invertible.
  template <class F>
  typename F::value_type evaluate(const Poly<F>& f, const Matrix<F>& g) const {
    auto gi = inverse(g);
    if (!gi) throw std::invalid_argument("evaluation point is not invertible");
    return f.evaluate(point(g, *gi));
  }
  template <class F>
  std::vector<typename F::value_type> point(const Matrix<F>& g, const Matrix<F>& gi) const {
    std::vector<typename F::value_type> x(nvars(), g.field().zero());
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) {
        x[z(i, j)] = g(i, j);
        x[w(i, j)] = gi(i, j);
      }
    return x;
  }

  template <class F>
  std::string format(const Poly<F>& f) const {
    return f.str([this](std::size_t v) { return var_name(v); });
  }
  template <class F>
  std::string format_tensor(const Poly<F>& f) const {
    return f.str([this](std::size_t v) { return tensor_var_name(v); });
  }

  // "Z[1,1]^2 - Z[2,2]", "3/2*W[1,2] + 1"; with n = 1, bare Z and W are accepted.
  template <class F>
  Poly<F> parse(const F& k, const std::string& text) const {
    std::size_t pos = 0;
    auto ws = [&] {
      while (pos < text.size() && isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    };
    auto fail = [&](const std::string& why) {
      throw std::invalid_argument("bad polynomial '" + text + "': " + why);
    };
    auto number = [&]() -> std::string {
      std::size_t s = pos;
      while (pos < text.size() && (isdigit(static_cast<unsigned char>(text[pos])) || text[pos] == '/')) ++pos;
      return text.substr(s, pos - s);
    };
    std::function<Poly<F>()> expr;
    std::function<Poly<F>()> atom = [&]() -> Poly<F> {
      ws();
      if (pos >= text.size()) fail("unexpected end");
      char c = text[pos];
      if (c == '(') {
        ++pos;
        Poly<F> p = expr();
        ws();
        if (pos >= text.size() || text[pos] != ')') fail("missing ')'");
        ++pos;
        return p;
      }
      if (isdigit(static_cast<unsigned char>(c))) return Poly<F>::constant(k, nvars(), parse_scalar(k, number()));
      if (c == 'Z' || c == 'W') {
        ++pos;
        std::size_t i = 0, j = 0;
        ws();
        if (pos < text.size() && text[pos] == '[') {
          ++pos;
          ws();
          std::string a = number();
          ws();
          if (pos >= text.size() || text[pos] != ',') fail("expected ','");
          ++pos;
          ws();
          std::string b = number();
          ws();
          if (pos >= text.size() || text[pos] != ']') fail("expected ']'");
          ++pos;
          if (a.empty() || b.empty()) fail("missing index");
          i = std::stoul(a);
          j = std::stoul(b);
          if (i < 1 || j < 1 || i > n_ || j > n_) fail("index out of range");
          --i;
          --j;
        } else if (n_ != 1) {
          fail("variables need indices when n > 1");
        }
        return c == 'Z' ? Z(k, i, j) : W(k, i, j);
      }
      fail(std::string("unexpected '") + c + "'");
      return {};
    };
    auto factor = [&]() -> Poly<F> {
      Poly<F> b = atom();
      ws();
      if (pos < text.size() && text[pos] == '^') {
        ++pos;
        ws();
        std::string e = number();
        if (e.empty() || e.find('/') != std::string::npos) fail("bad exponent");
        b = b.pow(static_cast<unsigned>(std::stoul(e)));
      }
      return b;
    };
    auto term = [&]() -> Poly<F> {
      Poly<F> p = factor();
      for (;;) {
        ws();
        if (pos < text.size() && text[pos] == '*') {
          ++pos;
          p = p * factor();
        } else {
          return p;
        }
      }
    };
    expr = [&]() -> Poly<F> {
      ws();
      Poly<F> p(k, nvars());
      bool neg = false;
      if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) neg = text[pos++] == '-';
      p = neg ? -term() : term();
      for (;;) {
        ws();
        if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
          bool minus = text[pos++] == '-';
          Poly<F> t = term();
          p = minus ? p - t : p + t;
        } else {
          return p;
        }
      }
    };
    Poly<F> p = expr();
    ws();
    if (pos != text.size()) fail("trailing characters");
    return p;
  }

 private:
  std::size_t n_;
};

// log2 of the Hermann degree bound (2d)^(2^N) for N variables and generator degree d.
struct HermannBound {
  unsigned gen_degree = 0;
  std::size_t nvars = 0;
  double log2_value() const { return std::ldexp(1.0, static_cast<int>(nvars)) * std::log2(2.0 * gen_degree); }
  // D >= bound; false whenever the bound does not fit in 64 bits.
  bool reached_by(std::size_t D) const {
    if (gen_degree == 0) return true;
    double l = log2_value();
    if (l >= 63) return false;
    return static_cast<double>(D) >= std::exp2(l);
  }
  std::string to_string() const {
    return "(" + std::to_string(2 * gen_degree) + ")^(2^" + std::to_string(nvars) + ")";
  }
};

template <class F>
struct LaurentIdeal {
  F k;
  std::size_t n = 1;
  std::vector<Poly<F>> generators;  // the relations of GL_n are implicit

  LaurentRing ring() const { return LaurentRing(n); }
  // User generators followed by the entries of ZW - I and WZ - I.
  std::vector<Poly<F>> all_generators() const {
    auto g = generators;
    for (auto& r : ring().relations(k)) g.push_back(r);
    return g;
  }
  HermannBound hermann() const {
    unsigned d = 2;
    for (auto& g : generators) d = std::max(d, static_cast<unsigned>(std::max(0, g.degree())));
    return {d, ring().nvars()};
  }
};

// span{m * g : g generator, m monomial, degree bound} as an echelon basis with
// leading monomials distinct. Each row remembers how it was produced, so any
// element of the span can be written as sum h_i g_i.
template <class F>
class ProductSpan {
 public:
  using K = typename F::value_type;
  enum class Cap { product_degree, cofactor_degree };

  ProductSpan(F k, std::size_t nvars, std::vector<Poly<F>> gens, unsigned D, Cap cap = Cap::product_degree)
      : k_(std::move(k)), nv_(nvars), gens_(std::move(gens)), D_(D) {
    struct Cand {
      std::size_t g;
      Monomial m;
      unsigned deg;
      std::size_t len;
    };
    std::vector<Cand> cands;
    std::map<unsigned, std::vector<Monomial>> mons;
    for (std::size_t g = 0; g < gens_.size(); ++g) {
      if (gens_[g].nvars() != nv_) throw std::invalid_argument("generator from a different ring");
      if (gens_[g].is_zero()) continue;
      int dg = gens_[g].degree();
      int lim = cap == Cap::product_degree ? static_cast<int>(D) - dg : static_cast<int>(D);
      if (lim < 0) continue;
      auto& ms = mons[static_cast<unsigned>(lim)];
      if (ms.empty()) ms = monomials_up_to(nv_, static_cast<unsigned>(lim));
      for (auto& m : ms) cands.push_back({g, m, m.deg + static_cast<unsigned>(dg), gens_[g].size()});
    }
    std::stable_sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) {
      return a.deg != b.deg ? a.deg < b.deg : a.len < b.len;
    });
    for (auto& c : cands) {
      Poly<F> p(k_, nv_);
      p.add_scaled(k_.one(), c.m, gens_[c.g]);
      products_.push_back({c.g, c.m});
      insert(std::move(p), products_.size() - 1);
    }
  }

  const std::vector<Poly<F>>& generators() const { return gens_; }
  unsigned cap() const { return D_; }
  std::size_t product_count() const { return products_.size(); }
  std::size_t rank() const { return rows_.size(); }

  // Cofactors h with f = sum h_i g_i, or nullopt when f is outside the span.
  std::optional<std::vector<Poly<F>>> express(const Poly<F>& f) const {
    auto [rem, coef] = reduce(f);
    if (!rem.is_zero()) return std::nullopt;
    return cofactors(coef);
  }
  bool contains(const Poly<F>& f) const { return reduce(f).first.is_zero(); }

  // Basis of span intersected with polynomials of degree <= d, fully reduced,
  // each with its cofactors.
  std::vector<std::pair<Poly<F>, std::vector<Poly<F>>>> truncation(unsigned d) const {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < rows_.size(); ++i)
      if (rows_[i].p.lead().deg <= d) idx.push_back(i);
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return rows_[a].p.lead() < rows_[b].p.lead(); });
    // Back substitution among the selected rows, tracking row coefficients.
    std::vector<Poly<F>> basis;
    std::vector<std::map<std::size_t, K>> coefs;
    std::map<Monomial, std::size_t> where;
    for (std::size_t t = 0; t < idx.size(); ++t) {
      Poly<F> p = rows_[idx[t]].p;
      std::map<std::size_t, K> c{{idx[t], k_.one()}};
      // Clear the leads of earlier basis elements from p.
      std::vector<Monomial> ms;
      for (auto& tm : p.terms()) ms.push_back(tm.first);
      const Monomial lead = p.lead();
      for (auto& m : ms) {
        if (m == lead) continue;
        auto it = where.find(m);
        if (it == where.end()) continue;
        K f = p.coeff(m);
        if (proalg::is_zero(f)) continue;
        p.add_scaled(-f, basis[it->second]);
        for (auto& [r, v] : coefs[it->second]) c[r] -= f * v;
      }
      // Clear p's lead from earlier basis elements.
      for (std::size_t u = 0; u < basis.size(); ++u) {
        K f = basis[u].coeff(p.lead());
        if (proalg::is_zero(f)) continue;
        basis[u].add_scaled(-f, p);
        for (auto& [r, v] : c) coefs[u][r] -= f * v;
      }
      where[p.lead()] = basis.size();
      basis.push_back(p);
      coefs.push_back(c);
    }
    std::vector<std::pair<Poly<F>, std::vector<Poly<F>>>> out;
    for (std::size_t t = 0; t < basis.size(); ++t) out.emplace_back(basis[t], cofactors(coefs[t]));
    return out;
  }

 private:
  struct Row {
    Poly<F> p;  // monic
    std::size_t product;
    K scale;                                     // p = scale * (product - sum c_j rows_j)
    std::vector<std::pair<std::size_t, K>> steps;  // (j, c_j)
  };
  struct Product {
    std::size_t g;
    Monomial m;
  };

  void insert(Poly<F> p, std::size_t prod) {
    std::vector<std::pair<std::size_t, K>> steps;
    while (!p.is_zero()) {
      auto it = pivot_.find(p.lead());
      if (it == pivot_.end()) break;
      K c = p.lead_coeff();
      p.add_scaled(-c, rows_[it->second].p);
      steps.emplace_back(it->second, c);
    }
    if (p.is_zero()) return;
    K s = k_.one() / p.lead_coeff();
    p = s * p;
    pivot_[p.lead()] = rows_.size();
    rows_.push_back({std::move(p), prod, s, std::move(steps)});
  }

  // f = rem + sum coef_i rows_i, where no monomial of rem is a pivot.
  std::pair<Poly<F>, std::map<std::size_t, K>> reduce(Poly<F> f) const {
    Poly<F> rem(k_, nv_);
    std::map<std::size_t, K> coef;
    while (!f.is_zero()) {
      Monomial m = f.lead();
      K c = f.lead_coeff();
      auto it = pivot_.find(m);
      if (it == pivot_.end()) {
        rem.add_term(m, c);
        f.add_term(m, -c);
        continue;
      }
      f.add_scaled(-c, rows_[it->second].p);
      coef[it->second] += c;
    }
    return {rem, coef};
  }

  std::vector<Poly<F>> cofactors(std::map<std::size_t, K> coef) const {
    std::vector<Poly<F>> h(gens_.size(), Poly<F>(k_, nv_));
    while (!coef.empty()) {
      auto it = std::prev(coef.end());
      std::size_t i = it->first;
      K c = it->second * rows_[i].scale;
      coef.erase(it);
      if (proalg::is_zero(c)) continue;
      const auto& pr = products_[rows_[i].product];
      h[pr.g].add_term(pr.m, c);
      for (auto& [j, cj] : rows_[i].steps) {
        K v = c * cj;
        coef[j] -= v;
      }
    }
    return h;
  }

  F k_;
  std::size_t nv_;
  std::vector<Poly<F>> gens_;
  unsigned D_;
  std::vector<Product> products_;
  std::vector<Row> rows_;
  std::map<Monomial, std::size_t> pivot_;
};

// sum h_i g_i.
template <class F>
Poly<F> expand_witness(const std::vector<Poly<F>>& cofactors, const std::vector<Poly<F>>& gens) {
  if (cofactors.size() != gens.size()) throw std::invalid_argument("witness length mismatch");
  Poly<F> s(gens.at(0).field(), gens.at(0).nvars());
  for (std::size_t i = 0; i < gens.size(); ++i) s = s + cofactors[i] * gens[i];
  return s;
}

template <class F>
struct MembershipResult {
  enum class Status { member, not_member_up_to };
  Status status = Status::not_member_up_to;
  unsigned cap = 0;
  bool definitive = false;            // member, or the cap reaches the Hermann bound
  std::vector<Poly<F>> cofactors;     // over LaurentIdeal::all_generators()
  bool verified = false;              // expansion of the witness reproduces f
  bool is_member() const { return status == Status::member; }
};

// Searches for f = sum h_i g_i with deg h_i <= D over the generators and R_n.
template <class F>
MembershipResult<F> ideal_membership(const Poly<F>& f, const LaurentIdeal<F>& I, unsigned D) {
  if (f.nvars() != I.ring().nvars()) throw std::invalid_argument("element and ideal live in different rings");
  auto gens = I.all_generators();
  ProductSpan<F> span(I.k, I.ring().nvars(), gens, D, ProductSpan<F>::Cap::cofactor_degree);
  MembershipResult<F> r;
  r.cap = D;
  if (auto h = span.express(f)) {
    r.status = MembershipResult<F>::Status::member;
    r.cofactors = *h;
    r.verified = expand_witness(*h, gens) == f;
    r.definitive = true;
  } else {
    r.definitive = I.hermann().reached_by(D);
  }
  return r;
}

template <class F>
struct Truncation {
  unsigned d = 0, cap = 0;
  std::vector<Poly<F>> basis;                  // inside the degree <= d slice of the ideal
  std::vector<std::vector<Poly<F>>> witnesses;  // cofactors over all_generators()
  bool complete = false;                        // cap reaches the Hermann bound
};

template <class F>
Truncation<F> truncated_ideal_part(const LaurentIdeal<F>& I, unsigned d, unsigned D) {
  if (D < d) throw std::invalid_argument("work cap below the truncation degree");
  ProductSpan<F> span(I.k, I.ring().nvars(), I.all_generators(), D);
  Truncation<F> t;
  t.d = d;
  t.cap = D;
  for (auto& [p, h] : span.truncation(d)) {
    t.basis.push_back(p);
    t.witnesses.push_back(h);
  }
  t.complete = I.hermann().reached_by(D);
  return t;
}

// Closed subgroup of GL_n given by generators of its ideal; `weights` is set
// when it is the image of a diagonalizable group acting through these characters.
template <class F>
struct SubgroupPresentation {
  std::string name;
  LaurentIdeal<F> ideal;
  std::optional<std::vector<GroupElement>> weights;
};

// Image of D(A) in GL_n acting diagonally through the given characters.
template <class F>
SubgroupPresentation<F> diagonalizable_image_ideal(const F& k, const std::vector<GroupElement>& weights, std::string name = "") {
  if (weights.empty()) throw std::invalid_argument("at least one weight is needed");
  const std::size_t n = weights.size();
  LaurentRing R(n);
  LaurentIdeal<F> I{k, n, {}};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) I.generators.push_back(R.Z(k, i, j));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) I.generators.push_back(R.W(k, i, j));
  std::vector<std::size_t> first;  // representative index of each distinct weight
  std::vector<GroupElement> distinct;
  for (std::size_t i = 0; i < n; ++i) {
    auto it = std::find(distinct.begin(), distinct.end(), weights[i]);
    if (it == distinct.end()) {
      distinct.push_back(weights[i]);
      first.push_back(i);
      continue;
    }
    std::size_t r = first[static_cast<std::size_t>(it - distinct.begin())];
    I.generators.push_back(R.Z(k, r, r) - R.Z(k, i, i));
    I.generators.push_back(R.W(k, r, r) - R.W(k, i, i));
  }
  IntMatrix L = relation_lattice(distinct);
  for (std::size_t row = 0; row < L.rows(); ++row) {
    // Units: +1 per positive exponent (a Z), -1 per negative (a W); the first
    // ceil(T/2) stay left, the rest move right inverted.
    std::vector<std::pair<std::size_t, bool>> units;  // (diagonal index, is Z)
    for (std::size_t c = 0; c < L.cols(); ++c)
      for (Int e = L(row, c); e > 0; --e) units.emplace_back(first[c], true);
    for (std::size_t c = 0; c < L.cols(); ++c)
      for (Int e = L(row, c); e < 0; ++e) units.emplace_back(first[c], false);
    const std::size_t T = units.size(), Lh = (T + 1) / 2;
    Poly<F> lhs = R.one(k), rhs = R.one(k);
    for (std::size_t u = 0; u < T; ++u) {
      auto [i, z] = units[u];
      if (u < Lh)
        lhs = lhs * (z ? R.Z(k, i, i) : R.W(k, i, i));
      else
        rhs = rhs * (z ? R.W(k, i, i) : R.Z(k, i, i));
    }
    I.generators.push_back(lhs - rhs);
  }
  if (name.empty()) {
    name = "D(" + weights[0].owner()->to_string() + ") via (";
    for (std::size_t i = 0; i < n; ++i) name += (i ? "," : "") + weights[i].to_string();
    name += ")";
  }
  return {name, I, weights};
}

}  // namespace proalg
