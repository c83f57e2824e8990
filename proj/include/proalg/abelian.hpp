#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace proalg {

using Int = mpz_class;

inline std::strong_ordering compare_int(const Int& a, const Int& b) {
  int c = ::cmp(a, b);
  return c < 0 ? std::strong_ordering::less
               : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

// Dense integer matrix, row-major.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols, 0) {}
  IntMatrix(std::initializer_list<std::initializer_list<long>> init) {
    rows_ = init.size();
    cols_ = rows_ ? init.begin()->size() : 0;
    for (auto& r : init) {
      if (r.size() != cols_) throw std::invalid_argument("ragged matrix literal");
      for (long x : r) a_.emplace_back(x);
    }
  }

  static IntMatrix identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Int& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const Int& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

  friend IntMatrix operator*(const IntMatrix& x, const IntMatrix& y) {
    if (x.cols_ != y.rows_) throw std::invalid_argument("matrix shape mismatch");
    IntMatrix r(x.rows_, y.cols_);
    for (std::size_t i = 0; i < x.rows_; ++i)
      for (std::size_t k = 0; k < x.cols_; ++k) {
        if (x(i, k) == 0) continue;
        for (std::size_t j = 0; j < y.cols_; ++j) r(i, j) += x(i, k) * y(k, j);
      }
    return r;
  }

  IntMatrix transpose() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  void swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(i, c), (*this)(j, c));
  }
  void swap_cols(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t r = 0; r < rows_; ++r) std::swap((*this)(r, i), (*this)(r, j));
  }
  // row_i += q * row_j
  void add_row(std::size_t i, std::size_t j, const Int& q) {
    for (std::size_t c = 0; c < cols_; ++c) (*this)(i, c) += q * (*this)(j, c);
  }
  void add_col(std::size_t i, std::size_t j, const Int& q) {
    for (std::size_t r = 0; r < rows_; ++r) (*this)(r, i) += q * (*this)(r, j);
  }
  void negate_row(std::size_t i) {
    for (std::size_t c = 0; c < cols_; ++c) (*this)(i, c) = -(*this)(i, c);
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Int> a_;
};

// Determinant by fraction-free (Bareiss) elimination.
inline Int determinant(IntMatrix m) {
  std::size_t n = m.rows();
  if (n != m.cols()) throw std::invalid_argument("determinant of non-square matrix");
  if (n == 0) return 1;
  Int prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && m(p, k) == 0) ++p;
      if (p == n) return 0;
      m.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        m(i, j) = m(i, j) * m(k, k) - m(i, k) * m(k, j);
        mpz_divexact(m(i, j).get_mpz_t(), m(i, j).get_mpz_t(), prev.get_mpz_t());
      }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

struct SmithForm {
  IntMatrix U, D, V;  // U * M * V == D
};

// Smith normal form with unimodular transforms; the diagonal is nonnegative
// and each entry divides the next.
inline SmithForm smith_normal_form(const IntMatrix& M) {
  const std::size_t m = M.rows(), n = M.cols();
  IntMatrix D = M, U = IntMatrix::identity(m), V = IntMatrix::identity(n);
  const std::size_t lim = std::min(m, n);
  for (std::size_t t = 0; t < lim; ++t) {
    for (;;) {
      // smallest nonzero entry of the trailing block becomes the pivot
      bool found = false;
      std::size_t pr = t, pc = t;
      for (std::size_t i = t; i < m; ++i)
        for (std::size_t j = t; j < n; ++j)
          if (D(i, j) != 0 && (!found || abs(D(i, j)) < abs(D(pr, pc)))) {
            found = true;
            pr = i;
            pc = j;
          }
      if (!found) return {U, D, V};
      D.swap_rows(t, pr);
      U.swap_rows(t, pr);
      D.swap_cols(t, pc);
      V.swap_cols(t, pc);
      bool dirty = false;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (D(i, t) == 0) continue;
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), D(i, t).get_mpz_t(), D(t, t).get_mpz_t());
        D.add_row(i, t, -q);
        U.add_row(i, t, -q);
        if (D(i, t) != 0) dirty = true;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (D(t, j) == 0) continue;
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), D(t, j).get_mpz_t(), D(t, t).get_mpz_t());
        D.add_col(j, t, -q);
        V.add_col(j, t, -q);
        if (D(t, j) != 0) dirty = true;
      }
      if (dirty) continue;
      // pivot must divide the rest of the block
      bool divides = true;
      for (std::size_t i = t + 1; i < m && divides; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (!mpz_divisible_p(D(i, j).get_mpz_t(), D(t, t).get_mpz_t())) {
            D.add_row(t, i, 1);
            U.add_row(t, i, 1);
            divides = false;
            break;
          }
      if (!divides) continue;
      if (D(t, t) < 0) {
        D.negate_row(t);
        U.negate_row(t);
      }
      break;
    }
  }
  return {U, D, V};
}

// Row-style Hermite normal form of the lattice spanned by the rows; zero rows dropped.
inline IntMatrix hermite_rows(IntMatrix H) {
  const std::size_t m = H.rows(), n = H.cols();
  std::size_t r = 0;
  for (std::size_t c = 0; c < n && r < m; ++c) {
    for (;;) {
      std::size_t p = m;
      for (std::size_t i = r; i < m; ++i)
        if (H(i, c) != 0 && (p == m || abs(H(i, c)) < abs(H(p, c)))) p = i;
      if (p == m) break;
      H.swap_rows(r, p);
      bool clean = true;
      for (std::size_t i = r + 1; i < m; ++i) {
        if (H(i, c) == 0) continue;
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), H(i, c).get_mpz_t(), H(r, c).get_mpz_t());
        H.add_row(i, r, -q);
        if (H(i, c) != 0) clean = false;
      }
      if (clean) break;
    }
    if (r < m && H(r, c) != 0) {
      if (H(r, c) < 0) H.negate_row(r);
      for (std::size_t i = 0; i < r; ++i) {
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), H(i, c).get_mpz_t(), H(r, c).get_mpz_t());
        if (q != 0) H.add_row(i, r, -q);
      }
      ++r;
    }
  }
  IntMatrix out(r, n);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < n; ++j) out(i, j) = H(i, j);
  return out;
}

// Z^rank + Z/d1 + ... + Z/dt with d1 | d2 | ... and every di >= 2.
class FgAbelianGroup {
 public:
  FgAbelianGroup() = default;
  FgAbelianGroup(std::size_t rank, std::vector<Int> torsion) : rank_(rank), torsion_(std::move(torsion)) {
    for (std::size_t i = 0; i < torsion_.size(); ++i) {
      if (torsion_[i] < 2) throw std::invalid_argument("torsion coefficient must be >= 2");
      if (i && !mpz_divisible_p(torsion_[i].get_mpz_t(), torsion_[i - 1].get_mpz_t()))
        throw std::invalid_argument("torsion coefficients must form a divisibility chain");
    }
  }

  // Any list of cyclic orders; 0 means a free summand. Normalized via Smith form.
  static FgAbelianGroup from_cyclic(const std::vector<Int>& orders) {
    const std::size_t k = orders.size();
    IntMatrix M(k, k);
    for (std::size_t i = 0; i < k; ++i) M(i, i) = orders[i];
    auto D = smith_normal_form(M).D;
    std::size_t rank = 0;
    std::vector<Int> tors;
    for (std::size_t i = 0; i < k; ++i) {
      if (D(i, i) == 0)
        ++rank;
      else if (D(i, i) > 1)
        tors.push_back(D(i, i));
    }
    return FgAbelianGroup(rank, tors);
  }

  std::size_t rank() const { return rank_; }
  const std::vector<Int>& torsion() const { return torsion_; }
  std::size_t ngens() const { return rank_ + torsion_.size(); }
  bool is_finite() const { return rank_ == 0; }
  Int order() const {
    if (rank_) throw std::domain_error("infinite group has no finite order");
    Int o = 1;
    for (auto& d : torsion_) o *= d;
    return o;
  }
  // Exponent (lcm of orders); 0 for infinite groups.
  Int exponent() const {
    if (rank_) return 0;
    return torsion_.empty() ? Int(1) : torsion_.back();
  }
  // Modulus of coordinate i, 0 for free coordinates.
  Int modulus(std::size_t i) const { return i < rank_ ? Int(0) : torsion_[i - rank_]; }

  friend bool operator==(const FgAbelianGroup&, const FgAbelianGroup&) = default;

  std::string to_string() const {
    std::vector<std::string> parts;
    if (rank_ == 1) parts.push_back("Z");
    if (rank_ > 1) parts.push_back("Z^" + std::to_string(rank_));
    for (auto& d : torsion_) parts.push_back("Z/" + d.get_str());
    if (parts.empty()) return "0";
    std::string s = parts[0];
    for (std::size_t i = 1; i < parts.size(); ++i) s += " + " + parts[i];
    return s;
  }

  // Grammar: "0" | term ("+" term)*, term = "Z" | "Z^r" | "Z/d".
  static FgAbelianGroup parse(const std::string& text) {
    std::string s;
    for (char c : text)
      if (!isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) throw std::invalid_argument("empty group string");
    if (s == "0" || s == "1") return FgAbelianGroup();
    std::vector<Int> orders;
    std::size_t pos = 0;
    auto number = [&](std::size_t& p) {
      std::size_t q = p;
      while (q < s.size() && isdigit(static_cast<unsigned char>(s[q]))) ++q;
      if (q == p) throw std::invalid_argument("expected a number in group string '" + text + "'");
      Int v(s.substr(p, q - p));
      p = q;
      return v;
    };
    for (;;) {
      if (pos >= s.size() || s[pos] != 'Z') throw std::invalid_argument("bad group string '" + text + "'");
      ++pos;
      if (pos < s.size() && s[pos] == '^') {
        ++pos;
        Int r = number(pos);
        for (Int i = 0; i < r; ++i) orders.push_back(0);
      } else if (pos < s.size() && s[pos] == '/') {
        ++pos;
        Int d = number(pos);
        if (d < 1) throw std::invalid_argument("cyclic order must be positive");
        orders.push_back(d);
      } else {
        orders.push_back(0);
      }
      if (pos == s.size()) break;
      if (s[pos] != '+') throw std::invalid_argument("bad group string '" + text + "'");
      ++pos;
    }
    return from_cyclic(orders);
  }

 private:
  std::size_t rank_ = 0;
  std::vector<Int> torsion_;
};

using GroupPtr = std::shared_ptr<const FgAbelianGroup>;

inline GroupPtr make_group(FgAbelianGroup g) { return std::make_shared<const FgAbelianGroup>(std::move(g)); }

inline bool same_group(const GroupPtr& a, const GroupPtr& b) { return a == b || (a && b && *a == *b); }

class GroupElement {
 public:
  GroupElement() = default;
  GroupElement(GroupPtr owner, std::vector<Int> coords) : owner_(std::move(owner)), c_(std::move(coords)) {
    if (!owner_) throw std::invalid_argument("group element without owner");
    if (c_.size() != owner_->ngens()) throw std::invalid_argument("coordinate count does not match group");
    reduce();
  }
  static GroupElement zero(const GroupPtr& g) { return GroupElement(g, std::vector<Int>(g->ngens(), 0)); }
  // Element of a group with a single generator.
  static GroupElement of(const GroupPtr& g, long v) {
    if (g->ngens() == 0) return zero(g);
    if (g->ngens() != 1) throw std::invalid_argument("scalar element needs a cyclic group");
    return GroupElement(g, {Int(v)});
  }

  const GroupPtr& owner() const { return owner_; }
  const std::vector<Int>& coords() const { return c_; }
  bool is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const Int& x) { return x == 0; });
  }

  friend GroupElement operator+(const GroupElement& x, const GroupElement& y) {
    check(x, y);
    std::vector<Int> c(x.c_.size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = x.c_[i] + y.c_[i];
    return GroupElement(x.owner_, std::move(c));
  }
  friend GroupElement operator-(const GroupElement& x) {
    std::vector<Int> c(x.c_.size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = -x.c_[i];
    return GroupElement(x.owner_, std::move(c));
  }
  friend GroupElement operator-(const GroupElement& x, const GroupElement& y) { return x + (-y); }
  friend GroupElement operator*(const Int& k, const GroupElement& x) {
    std::vector<Int> c(x.c_.size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = k * x.c_[i];
    return GroupElement(x.owner_, std::move(c));
  }

  friend bool operator==(const GroupElement& x, const GroupElement& y) {
    return same_group(x.owner_, y.owner_) && x.c_ == y.c_;
  }
  // Canonical total order: lexicographic on coordinates.
  friend std::strong_ordering operator<=>(const GroupElement& x, const GroupElement& y) {
    for (std::size_t i = 0; i < std::min(x.c_.size(), y.c_.size()); ++i) {
      auto c = compare_int(x.c_[i], y.c_[i]);
      if (c != 0) return c;
    }
    return x.c_.size() <=> y.c_.size();
  }

  // "(3,0,1)"; a group with one generator prints the bare integer.
  std::string to_string() const {
    if (c_.empty()) return "0";
    if (c_.size() == 1) return c_[0].get_str();
    std::string s = "(";
    for (std::size_t i = 0; i < c_.size(); ++i) s += (i ? "," : "") + c_[i].get_str();
    return s + ")";
  }

  static GroupElement parse(const GroupPtr& g, const std::string& text) {
    std::string s;
    for (char ch : text)
      if (!isspace(static_cast<unsigned char>(ch))) s += ch;
    if (!s.empty() && s.front() == '(') {
      if (s.back() != ')') throw std::invalid_argument("bad element '" + text + "'");
      s = s.substr(1, s.size() - 2);
    }
    std::vector<Int> c;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      if (tok.empty()) throw std::invalid_argument("bad element '" + text + "'");
      try {
        c.emplace_back(tok);
      } catch (const std::exception&) {
        throw std::invalid_argument("bad element '" + text + "'");
      }
    }
    if (g->ngens() == 0 && (s.empty() || s == "0")) return zero(g);
    return GroupElement(g, std::move(c));
  }

 private:
  static void check(const GroupElement& x, const GroupElement& y) {
    if (!same_group(x.owner_, y.owner_)) throw std::invalid_argument("group elements have different owners");
  }
  void reduce() {
    for (std::size_t i = owner_->rank(); i < c_.size(); ++i) {
      const Int& d = owner_->torsion()[i - owner_->rank()];
      mpz_fdiv_r(c_[i].get_mpz_t(), c_[i].get_mpz_t(), d.get_mpz_t());
    }
  }

  GroupPtr owner_;
  std::vector<Int> c_;
};

// All elements of a finite group, in the canonical order.
inline std::vector<GroupElement> finite_elements(const GroupPtr& g) {
  if (!g->is_finite()) throw std::domain_error("an infinite group has no element list");
  std::vector<GroupElement> out;
  std::vector<Int> c(g->ngens(), 0);
  while (true) {
    out.emplace_back(g, c);
    std::size_t i = c.size();
    while (i > 0) {
      --i;
      if (++c[i] < g->torsion()[i]) break;
      c[i] = 0;
      if (i == 0) return out;
    }
    if (c.empty()) return out;
  }
}

// Elements whose free coordinates lie in [-bound, bound], in the canonical order.
// For a finite group this is finite_elements.
inline std::vector<GroupElement> bounded_elements(const GroupPtr& g, long bound) {
  if (bound < 0) throw std::invalid_argument("element bound must be nonnegative");
  const std::size_t r = g->rank(), k = g->ngens();
  std::vector<Int> c(k, 0);
  for (std::size_t i = 0; i < r; ++i) c[i] = -bound;
  std::vector<GroupElement> out;
  while (true) {
    out.emplace_back(g, c);
    std::size_t i = k;
    bool carry = true;
    while (carry && i > 0) {
      --i;
      c[i] += 1;
      const bool wrap = i < r ? c[i] > bound : c[i] >= g->torsion()[i - r];
      if (!wrap) {
        carry = false;
        break;
      }
      c[i] = i < r ? Int(-bound) : Int(0);
    }
    if (carry) return out;
  }
}

// Kernel of Z^m -> A, u |-> sum u_i a_i, as Hermite-reduced lattice basis rows.
inline IntMatrix relation_lattice(const std::vector<GroupElement>& weights) {
  const std::size_t m = weights.size();
  if (m == 0) return IntMatrix(0, 0);
  const GroupPtr& g = weights[0].owner();
  for (auto& w : weights)
    if (!same_group(w.owner(), g)) throw std::invalid_argument("weights have different owners");
  const std::size_t k = g->ngens(), t = g->torsion().size();
  // columns: the m weights, then one column per torsion modulus
  IntMatrix C(k, m + t);
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t i = 0; i < k; ++i) C(i, j) = weights[j].coords()[i];
  for (std::size_t i = 0; i < t; ++i) C(g->rank() + i, m + i) = g->torsion()[i];
  auto snf = smith_normal_form(C);
  std::size_t rk = 0;
  while (rk < std::min(snf.D.rows(), snf.D.cols()) && snf.D(rk, rk) != 0) ++rk;
  const std::size_t nk = m + t - rk;
  IntMatrix gens(nk, m);
  for (std::size_t c = 0; c < nk; ++c)
    for (std::size_t i = 0; i < m; ++i) gens(c, i) = snf.V(i, rk + c);
  return hermite_rows(gens);
}

}  // namespace proalg
