#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "proalg/abelian.hpp"
#include "proalg/diagrep.hpp"
#include "proalg/field.hpp"
#include "proalg/laurent.hpp"

namespace proalg {

// Element of N[X,Y]. Terms are ordered by total degree, then by larger X-exponent.
class ShapePolynomial {
 public:
  struct Term {
    unsigned a = 0, b = 0;  // X^a Y^b
    friend bool operator==(const Term&, const Term&) = default;
    friend bool operator<(const Term& s, const Term& t) {
      if (s.a + s.b != t.a + t.b) return s.a + s.b < t.a + t.b;
      return s.a > t.a;
    }
  };

  ShapePolynomial() = default;
  void add(unsigned a, unsigned b, const Int& c) {
    if (c < 0) throw std::invalid_argument("shape coefficients must be nonnegative");
    if (c == 0) return;
    c_[{a, b}] += c;
  }
  const std::map<Term, Int>& terms() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  unsigned degree() const {
    unsigned d = 0;
    for (auto& [t, c] : c_) d = std::max(d, t.a + t.b);
    return d;
  }
  // Dimension of P(V, V*) for dim V = n.
  std::size_t dimension(std::size_t n) const {
    Int s = 0;
    for (auto& [t, c] : c_) {
      Int p = 1;
      for (unsigned i = 0; i < t.a + t.b; ++i) p *= static_cast<unsigned long>(n);
      s += c * p;
    }
    if (!s.fits_ulong_p() || s > 1000000) throw std::invalid_argument("shape dimension too large");
    return s.get_ui();
  }

  friend ShapePolynomial operator+(const ShapePolynomial& p, const ShapePolynomial& q) {
    ShapePolynomial r = p;
    for (auto& [t, c] : q.c_) r.add(t.a, t.b, c);
    return r;
  }
  friend ShapePolynomial operator*(const ShapePolynomial& p, const ShapePolynomial& q) {
    ShapePolynomial r;
    for (auto& [s, c] : p.c_)
      for (auto& [t, d] : q.c_) r.add(s.a + t.a, s.b + t.b, c * d);
    return r;
  }
  friend bool operator==(const ShapePolynomial&, const ShapePolynomial&) = default;

  std::string to_string() const {
    if (c_.empty()) return "0";
    std::string s;
    for (auto& [t, c] : c_) {
      std::string mono;
      auto pw = [](const char* v, unsigned e) { return e == 0 ? std::string() : e == 1 ? std::string(v) : std::string(v) + "^" + std::to_string(e); };
      std::string x = pw("X", t.a), y = pw("Y", t.b);
      mono = x + (x.empty() || y.empty() ? "" : "*") + y;
      std::string term = mono.empty() ? c.get_str() : (c == 1 ? mono : c.get_str() + "*" + mono);
      s += (s.empty() ? "" : " + ") + term;
    }
    return s;
  }

  // Integers, X, Y, +, *, ^ and parentheses.
  static ShapePolynomial parse(const std::string& text) {
    std::size_t pos = 0;
    auto ws = [&] {
      while (pos < text.size() && isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    };
    auto fail = [&](const std::string& why) {
      throw std::invalid_argument("bad shape polynomial '" + text + "': " + why);
    };
    auto integer = [&]() {
      std::size_t s = pos;
      while (pos < text.size() && isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
      if (s == pos) fail("expected an integer");
      return Int(text.substr(s, pos - s));
    };
    std::function<ShapePolynomial()> sum;
    auto atom = [&]() -> ShapePolynomial {
      ws();
      if (pos >= text.size()) fail("unexpected end");
      ShapePolynomial r;
      char c = text[pos];
      if (c == '(') {
        ++pos;
        r = sum();
        ws();
        if (pos >= text.size() || text[pos] != ')') fail("missing ')'");
        ++pos;
      } else if (c == 'X' || c == 'Y') {
        ++pos;
        r.add(c == 'X', c == 'Y', 1);
      } else if (isdigit(static_cast<unsigned char>(c))) {
        r.add(0, 0, integer());
        if (r.is_zero()) r = ShapePolynomial();
      } else {
        fail(std::string("unexpected '") + c + "'");
      }
      ws();
      if (pos < text.size() && text[pos] == '^') {
        ++pos;
        ws();
        Int e = integer();
        ShapePolynomial base = r;
        r = ShapePolynomial();
        r.add(0, 0, 1);
        for (Int i = 0; i < e; ++i) r = r * base;
      }
      return r;
    };
    auto product = [&]() -> ShapePolynomial {
      ShapePolynomial r = atom();
      for (;;) {
        ws();
        if (pos < text.size() && text[pos] == '*') {
          ++pos;
          r = r * atom();
        } else if (pos < text.size() && (text[pos] == 'X' || text[pos] == 'Y' || text[pos] == '(')) {
          r = r * atom();
        } else {
          return r;
        }
      }
    };
    sum = [&]() -> ShapePolynomial {
      ShapePolynomial r = product();
      for (;;) {
        ws();
        if (pos < text.size() && text[pos] == '+') {
          ++pos;
          r = r + product();
        } else {
          return r;
        }
      }
    };
    ShapePolynomial p = sum();
    ws();
    if (pos != text.size()) fail("trailing characters");
    if (p.is_zero()) fail("the zero shape has no representation space");
    return p;
  }

 private:
  std::map<Term, Int> c_;
};

inline Int binomial(unsigned n, unsigned k) {
  Int r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

// sum over a+b <= d of C(a+n-1,a) C(b+n-1,b) X^a Y^b.
inline ShapePolynomial pd_polynomial(std::size_t n, unsigned d) {
  if (n < 1) throw std::invalid_argument("n must be at least 1");
  ShapePolynomial p;
  for (unsigned a = 0; a <= d; ++a)
    for (unsigned b = 0; a + b <= d; ++b)
      p.add(a, b, binomial(a + static_cast<unsigned>(n) - 1, a) * binomial(b + static_cast<unsigned>(n) - 1, b));
  return p;
}

// Canonical basis vector v_{x1} (x) ... (x) v_{xa} (x) v*_{y1} (x) ... (x) v*_{yb}
// in copy `copy` of term X^a Y^b. Indices are 0-based.
struct CanonicalLabel {
  unsigned a = 0, b = 0;
  std::size_t copy = 0;
  std::vector<std::size_t> x, y;

  std::string to_string() const {
    if (x.empty() && y.empty()) return "1";
    std::string s;
    for (auto i : x) s += (s.empty() ? "" : "⊗") + std::string("v") + std::to_string(i + 1);
    for (auto i : y) s += (s.empty() ? "" : "⊗") + std::string("v") + std::to_string(i + 1) + "∨";
    return s;
  }
  // Exponent of t on this vector under diag(t): counts in x minus counts in y.
  std::vector<long> exponent(std::size_t n) const {
    std::vector<long> e(n, 0);
    for (auto i : x) ++e[i];
    for (auto i : y) --e[i];
    return e;
  }
  // Weight when v_i has weight w[i] and v*_i has weight -w[i].
  GroupElement weight(const std::vector<GroupElement>& w) const {
    GroupElement s = GroupElement::zero(w.at(0).owner());
    for (auto i : x) s = s + w.at(i);
    for (auto i : y) s = s - w.at(i);
    return s;
  }
};

// Terms in ShapePolynomial order, copies in index order, tuples in row-major order.
inline std::vector<CanonicalLabel> canonical_basis(const ShapePolynomial& P, std::size_t n) {
  std::vector<CanonicalLabel> out;
  for (auto& [t, c] : P.terms()) {
    const unsigned len = t.a + t.b;
    for (std::size_t copy = 0; Int(static_cast<unsigned long>(copy)) < c; ++copy) {
      std::vector<std::size_t> idx(len, 0);
      for (;;) {
        CanonicalLabel l{t.a, t.b, copy, {idx.begin(), idx.begin() + t.a}, {idx.begin() + t.a, idx.end()}};
        out.push_back(std::move(l));
        std::size_t p = len;
        while (p > 0 && ++idx[p - 1] == n) idx[--p] = 0;
        if (p == 0) break;
      }
    }
  }
  return out;
}

template <class F>
using PolyMatrix = std::vector<std::vector<Poly<F>>>;

// B with g(u_j) = sum_i u_i B_ij: Z on V, W^T on V*, Kronecker on tensors,
// block diagonal on sums, 1 on constants.
template <class F>
PolyMatrix<F> action_matrix(const F& k, const ShapePolynomial& P, std::size_t n) {
  LaurentRing R(n);
  auto labels = canonical_basis(P, n);
  const std::size_t s = labels.size();
  PolyMatrix<F> B(s, std::vector<Poly<F>>(s, Poly<F>(k, R.nvars())));
  for (std::size_t i = 0; i < s; ++i)
    for (std::size_t j = 0; j < s; ++j) {
      const auto& L = labels[i];
      const auto& M = labels[j];
      if (L.a != M.a || L.b != M.b || L.copy != M.copy) continue;
      Monomial m(R.nvars());
      for (std::size_t t = 0; t < L.x.size(); ++t) ++m.e[R.z(L.x[t], M.x[t])];
      for (std::size_t t = 0; t < L.y.size(); ++t) ++m.e[R.w(M.y[t], L.y[t])];
      m.deg = L.a + L.b;
      B[i][j] = Poly<F>::monomial(k, m, k.one());
    }
  return B;
}

// B(g) computed directly from g and its inverse.
template <class F>
Matrix<F> action_at(const ShapePolynomial& P, const Matrix<F>& g, const Matrix<F>& g_inv) {
  const F& k = g.field();
  const std::size_t n = g.rows();
  auto labels = canonical_basis(P, n);
  const std::size_t s = labels.size();
  Matrix<F> B(k, s, s);
  for (std::size_t i = 0; i < s; ++i)
    for (std::size_t j = 0; j < s; ++j) {
      const auto& L = labels[i];
      const auto& M = labels[j];
      if (L.a != M.a || L.b != M.b || L.copy != M.copy) continue;
      typename F::value_type v = k.one();
      for (std::size_t t = 0; t < L.x.size(); ++t) v *= g(L.x[t], M.x[t]);
      for (std::size_t t = 0; t < L.y.size(); ++t) v *= g_inv(M.y[t], L.y[t]);
      B(i, j) = v;
    }
  return B;
}

// The subspace spanned by the columns of A (s x r) inside P(V, V*), with
// 0-based pivot rows whose r x r minor is invertible.
template <class F>
struct StabilizerProblem {
  ShapePolynomial shape;
  std::size_t n = 1;
  std::vector<std::size_t> pivots;
  Matrix<F> A;
};

namespace detail {
template <class F>
void check_problem(const StabilizerProblem<F>& pr) {
  const std::size_t s = pr.shape.dimension(pr.n), r = pr.pivots.size();
  if (pr.A.rows() != s) throw std::invalid_argument("subspace matrix has " + std::to_string(pr.A.rows()) + " rows, expected " + std::to_string(s));
  if (pr.A.cols() != r) throw std::invalid_argument("subspace matrix needs one column per pivot");
  if (r < 1 || r > s) throw std::invalid_argument("need 1 <= r <= s");
  for (std::size_t i = 0; i < r; ++i) {
    if (pr.pivots[i] >= s) throw std::invalid_argument("pivot row out of range");
    if (i && pr.pivots[i] <= pr.pivots[i - 1]) throw std::invalid_argument("pivot rows must increase");
  }
  Matrix<F> minor(pr.A.field(), r, r);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) minor(i, j) = pr.A(pr.pivots[i], j);
  if (is_zero(determinant(minor))) throw std::invalid_argument("pivot minor is singular");
}

// [A | E] with E the unit vectors of the non-pivot rows.
template <class F>
Matrix<F> extended_basis(const StabilizerProblem<F>& pr) {
  const std::size_t s = pr.A.rows(), r = pr.A.cols();
  const F& k = pr.A.field();
  Matrix<F> T(k, s, s);
  for (std::size_t i = 0; i < s; ++i)
    for (std::size_t j = 0; j < r; ++j) T(i, j) = pr.A(i, j);
  std::size_t c = r;
  for (std::size_t i = 0; i < s; ++i)
    if (!std::binary_search(pr.pivots.begin(), pr.pivots.end(), i)) T(i, c++) = k.one();
  return T;
}
}  // namespace detail

// Entries (row-major) of rows r..s-1, columns 0..r-1 of T^-1 B T.
template <class F>
std::vector<Poly<F>> stabilizer_polys(const StabilizerProblem<F>& pr) {
  detail::check_problem(pr);
  const F& k = pr.A.field();
  const std::size_t s = pr.A.rows(), r = pr.A.cols();
  Matrix<F> T = detail::extended_basis(pr);
  Matrix<F> Ti = *inverse(T);
  auto B = action_matrix(k, pr.shape, pr.n);
  LaurentRing R(pr.n);
  // (B T) restricted to the first r columns, then T^-1 rows r..s-1.
  std::vector<std::vector<Poly<F>>> BT(s, std::vector<Poly<F>>(r, Poly<F>(k, R.nvars())));
  for (std::size_t a = 0; a < s; ++a)
    for (std::size_t b = 0; b < s; ++b) {
      if (B[a][b].is_zero()) continue;
      for (std::size_t j = 0; j < r; ++j)
        if (!is_zero(T(b, j))) BT[a][j].add_scaled(T(b, j), B[a][b]);
    }
  std::vector<Poly<F>> out;
  for (std::size_t i = r; i < s; ++i)
    for (std::size_t j = 0; j < r; ++j) {
      Poly<F> q(k, R.nvars());
      for (std::size_t a = 0; a < s; ++a)
        if (!is_zero(Ti(i, a))) q.add_scaled(Ti(i, a), BT[a][j]);
      out.push_back(q);
    }
  return out;
}

// Symbolic variant over Z[Z, W, T]: variables are the 2n^2 ring variables
// followed by T[i,j] (i*r+j) for the entries of A. Returns det(T~) times the
// stabilizer polynomials together with det(T~), so specializing T to a concrete
// A and dividing by det gives stabilizer_polys.
template <class F>
struct SymbolicStabilizer {
  std::size_t s = 0, r = 0, n = 1;
  std::vector<Poly<F>> scaled_polys;
  Poly<F> det;
  std::size_t nvars() const { return 2 * n * n + s * r; }
  std::string var_name(std::size_t v) const {
    LaurentRing R(n);
    if (v < R.nvars()) return R.var_name(v);
    v -= R.nvars();
    return "T[" + std::to_string(v / r + 1) + "," + std::to_string(v % r + 1) + "]";
  }
};

template <class F>
SymbolicStabilizer<F> symbolic_stabilizer_polys(const F& k, const ShapePolynomial& P, std::size_t n,
                                                const std::vector<std::size_t>& pivots) {
  const std::size_t s = P.dimension(n), r = pivots.size();
  if (s > 6) throw std::invalid_argument("symbolic mode is limited to s <= 6");
  if (r < 1 || r > s) throw std::invalid_argument("need 1 <= r <= s");
  LaurentRing R(n);
  const std::size_t N = R.nvars() + s * r;
  using P_ = Poly<F>;
  std::vector<std::vector<P_>> T(s, std::vector<P_>(s, P_(k, N)));
  for (std::size_t i = 0; i < s; ++i)
    for (std::size_t j = 0; j < r; ++j) T[i][j] = P_::var(k, N, R.nvars() + i * r + j);
  std::size_t c = r;
  for (std::size_t i = 0; i < s; ++i)
    if (!std::binary_search(pivots.begin(), pivots.end(), i)) T[i][c++] = P_::constant(k, N, k.one());
  if (c != s) throw std::invalid_argument("pivot rows must be distinct and in range");
  // Determinant by Laplace expansion along the first row.
  std::function<P_(const std::vector<std::size_t>&, const std::vector<std::size_t>&)> det =
      [&](const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) -> P_ {
    if (rows.empty()) return P_::constant(k, N, k.one());
    P_ sum(k, N);
    for (std::size_t t = 0; t < cols.size(); ++t) {
      if (T[rows[0]][cols[t]].is_zero()) continue;
      std::vector<std::size_t> rr(rows.begin() + 1, rows.end()), cc = cols;
      cc.erase(cc.begin() + static_cast<long>(t));
      P_ m = T[rows[0]][cols[t]] * det(rr, cc);
      sum = (t % 2) ? sum - m : sum + m;
    }
    return sum;
  };
  std::vector<std::size_t> all(s);
  for (std::size_t i = 0; i < s; ++i) all[i] = i;
  P_ D = det(all, all);
  // adj(T)[i][a] = (-1)^(i+a) det(T without row a, column i).
  auto adj = [&](std::size_t i, std::size_t a) {
    std::vector<std::size_t> rr, cc;
    for (std::size_t x = 0; x < s; ++x) {
      if (x != a) rr.push_back(x);
      if (x != i) cc.push_back(x);
    }
    P_ m = det(rr, cc);
    return ((i + a) % 2) ? -m : m;
  };
  auto B = action_matrix(k, P, n);
  // Lift B into the larger ring (same variable positions for Z and W).
  auto lift = [&](const Poly<F>& p) {
    P_ q(k, N);
    for (auto& [m, cf] : p.terms()) {
      Monomial mm(N);
      for (std::size_t v = 0; v < m.nvars(); ++v) mm.e[v] = m.e[v];
      mm.deg = m.deg;
      q.add_term(mm, cf);
    }
    return q;
  };
  SymbolicStabilizer<F> out;
  out.s = s;
  out.r = r;
  out.n = n;
  out.det = D;
  for (std::size_t i = r; i < s; ++i)
    for (std::size_t j = 0; j < r; ++j) {
      P_ q(k, N);
      for (std::size_t a = 0; a < s; ++a) {
        P_ ad = adj(i, a);
        if (ad.is_zero()) continue;
        P_ col(k, N);
        for (std::size_t b = 0; b < s; ++b)
          if (!B[a][b].is_zero() && !T[b][j].is_zero()) col = col + lift(B[a][b]) * T[b][j];
        q = q + ad * col;
      }
      out.scaled_polys.push_back(q);
    }
  return out;
}

// V has basis weights w; the subspace spanned by A is stable under the
// diagonalizable group iff it contains the weight components of its vectors.
template <class F>
bool is_stable_weights(const std::vector<GroupElement>& w, const ShapePolynomial& P, const Matrix<F>& A) {
  auto labels = canonical_basis(P, w.size());
  if (A.rows() != labels.size()) throw std::invalid_argument("subspace matrix has the wrong number of rows");
  std::vector<GroupElement> lw;
  for (auto& l : labels) lw.push_back(l.weight(w));
  const std::size_t r0 = rank(A);
  std::vector<GroupElement> distinct = lw;
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  for (auto& a : distinct) {
    Matrix<F> proj(A.field(), A.rows(), A.cols());
    for (std::size_t i = 0; i < A.rows(); ++i)
      if (lw[i] == a)
        for (std::size_t j = 0; j < A.cols(); ++j) proj(i, j) = A(i, j);
    if (rank(A.hcat(proj)) != r0) return false;
  }
  return true;
}

template <class F>
bool is_stable(const BaseObject& b, const ShapePolynomial& P, const Matrix<F>& A) {
  if (b.is_zero()) throw std::invalid_argument("the zero object has no representation space");
  return is_stable_weights(basis_weights(b), P, A);
}

template <class F>
struct GroupLeD {
  SubgroupPresentation<F> group;
  Truncation<F> truncation;
};

// The subgroup cut out by the degree <= d part of I(G) (as found below the cap).
template <class F>
GroupLeD<F> group_le_d(const SubgroupPresentation<F>& G, unsigned d, unsigned D) {
  auto t = truncated_ideal_part(G.ideal, d, std::max(D, d));
  SubgroupPresentation<F> H{G.name + "_{<=" + std::to_string(d) + "}", {G.ideal.k, G.ideal.n, t.basis}, std::nullopt};
  return {H, t};
}

// Lattice generated by e1 - e2 over exponent vectors with |e|_1 <= d and equal
// weight sum e_i w_i: the torus D(Z^n / L_d) lies in G_{<=d}.
inline IntMatrix degree_lattice(const std::vector<GroupElement>& w, unsigned d) {
  const std::size_t n = w.size();
  std::map<GroupElement, std::vector<long>> rep;
  std::vector<std::vector<long>> rows;
  std::vector<long> e(n, 0);
  std::function<void(std::size_t, unsigned)> rec = [&](std::size_t i, unsigned left) {
    if (i == n) {
      GroupElement s = GroupElement::zero(w[0].owner());
      for (std::size_t j = 0; j < n; ++j) s = s + Int(e[j]) * w[j];
      auto [it, fresh] = rep.emplace(s, e);
      if (!fresh) {
        std::vector<long> diff(n);
        for (std::size_t j = 0; j < n; ++j) diff[j] = e[j] - it->second[j];
        rows.push_back(diff);
      }
      return;
    }
    for (long v = -static_cast<long>(left); v <= static_cast<long>(left); ++v) {
      e[i] = v;
      rec(i + 1, left - static_cast<unsigned>(v < 0 ? -v : v));
    }
    e[i] = 0;
  };
  rec(0, d);
  IntMatrix M(rows.size(), n);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < n; ++j) M(i, j) = rows[i][j];
  return hermite_rows(M);
}

// {u : sum u_i w_i = 0}, the character lattice relations of the image.
inline IntMatrix full_relation_lattice(const std::vector<GroupElement>& w) { return relation_lattice(w); }

// u in the row lattice of an echelon basis H.
inline bool lattice_contains(const IntMatrix& H, std::vector<Int> u) {
  for (std::size_t i = 0; i < H.rows(); ++i) {
    std::size_t c = 0;
    while (c < H.cols() && H(i, c) == 0) ++c;
    if (c == H.cols()) continue;
    for (std::size_t j = 0; j < c; ++j)
      if (u[j] != 0) return false;
    if (u[c] % H(i, c) != 0) return false;
    Int q = u[c] / H(i, c);
    for (std::size_t j = 0; j < H.cols(); ++j) u[j] -= q * H(i, j);
  }
  for (auto& x : u)
    if (x != 0) return false;
  return true;
}

// Some exponent class of f restricted to the diagonal torus modulo the
// lattice L has a nonzero coefficient sum, i.e. f does not vanish on D(Z^n/L).
template <class F>
std::optional<std::vector<Int>> nonvanishing_class(const Poly<F>& f, std::size_t n, const IntMatrix& L) {
  LaurentRing R(n);
  std::vector<std::pair<std::vector<Int>, typename F::value_type>> classes;
  for (auto& [m, c] : f.terms()) {
    bool diagonal = true;
    std::vector<Int> e(n, 0);
    for (std::size_t i = 0; i < n && diagonal; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        if (i == j) continue;
        if (m.e[R.z(i, j)] || m.e[R.w(i, j)]) diagonal = false;
      }
    if (!diagonal) continue;
    for (std::size_t i = 0; i < n; ++i) e[i] = Int(m.e[R.z(i, i)]) - Int(m.e[R.w(i, i)]);
    bool placed = false;
    for (auto& [rep, sum] : classes) {
      std::vector<Int> diff(n);
      for (std::size_t i = 0; i < n; ++i) diff[i] = e[i] - rep[i];
      if (lattice_contains(L, diff)) {
        sum += c;
        placed = true;
        break;
      }
    }
    if (!placed) classes.emplace_back(e, c);
  }
  for (auto& [rep, sum] : classes)
    if (!is_zero(sum)) return rep;
  return std::nullopt;
}

// Why G differs from G_{<=d}: generator `generator` does not vanish on the
// torus D(Z^n/L_d) contained in G_{<=d}; `lattice_vector` lies in the
// relations of G but not in L_d.
struct DegreeCertificate {
  std::size_t generator = 0;
  std::vector<Int> exponent_class;
  std::vector<Int> lattice_vector;
};

template <class F>
struct DegreeStep {
  unsigned d = 0, cap = 0;
  Truncation<F> truncation;                      // inside I(G), with witnesses
  std::vector<std::optional<std::vector<Poly<F>>>> generator_witnesses;  // each presented generator in (T_d) + R_n
  bool generates = false;                         // every presented generator was found
  std::optional<DegreeCertificate> certificate;   // proof that G_{<=d} != G
};

enum class DegreeStatus { found, exceeds_dmax, unknown_at_cap };

inline const char* degree_status_name(DegreeStatus s) {
  switch (s) {
    case DegreeStatus::found: return "found";
    case DegreeStatus::exceeds_dmax: return "exceeds_dmax";
    case DegreeStatus::unknown_at_cap: return "unknown_at_cap";
  }
  return "unknown";
}

template <class F>
struct DefiningDegreeResult {
  DegreeStatus status = DegreeStatus::unknown_at_cap;
  unsigned degree = 0;  // meaningful for found; the undecided d for unknown_at_cap
  std::vector<DegreeStep<F>> steps;
};

namespace detail {
template <class F>
std::optional<DegreeCertificate> certify_gap(const SubgroupPresentation<F>& G, const std::vector<Poly<F>>& polys, unsigned d) {
  if (!G.weights) return std::nullopt;
  const auto& w = *G.weights;
  IntMatrix Ld = degree_lattice(w, d);
  IntMatrix L = full_relation_lattice(w);
  for (std::size_t i = 0; i < polys.size(); ++i)
    if (auto cls = nonvanishing_class(polys[i], w.size(), Ld)) {
      DegreeCertificate c{i, *cls, {}};
      for (std::size_t r = 0; r < L.rows(); ++r) {
        std::vector<Int> u(L.cols());
        for (std::size_t j = 0; j < L.cols(); ++j) u[j] = L(r, j);
        if (!lattice_contains(Ld, u)) {
          c.lattice_vector = u;
          break;
        }
      }
      return c;
    }
  return std::nullopt;
}

template <class F>
DegreeStep<F> degree_step(const SubgroupPresentation<F>& G, unsigned d, unsigned D) {
  DegreeStep<F> st;
  st.d = d;
  st.cap = D;
  st.truncation = truncated_ideal_part(G.ideal, d, D);
  LaurentIdeal<F> J{G.ideal.k, G.ideal.n, st.truncation.basis};
  ProductSpan<F> span(J.k, J.ring().nvars(), J.all_generators(), D);
  st.generates = true;
  for (auto& g : G.ideal.generators) {
    st.generator_witnesses.push_back(span.express(g));
    if (!st.generator_witnesses.back()) st.generates = false;
  }
  if (!st.generates) st.certificate = certify_gap(G, G.ideal.generators, d);
  return st;
}
}  // namespace detail

inline unsigned default_cap(unsigned d) { return 2 * d + 2; }

// Smallest d <= dmax with G = G_{<=d}. A degree is skipped only with a
// certificate; an uncertified failure stops the search.
template <class F>
DefiningDegreeResult<F> defining_degree(const SubgroupPresentation<F>& G, unsigned dmax, std::optional<unsigned> cap = {}) {
  DefiningDegreeResult<F> res;
  for (unsigned d = 0; d <= dmax; ++d) {
    unsigned D = cap ? std::max(*cap, d) : default_cap(d);
    res.steps.push_back(detail::degree_step(G, d, D));
    auto& st = res.steps.back();
    if (st.generates) {
      res.status = DegreeStatus::found;
      res.degree = d;
      return res;
    }
    if (!st.certificate) {
      res.status = DegreeStatus::unknown_at_cap;
      res.degree = d;
      return res;
    }
  }
  res.status = DegreeStatus::exceeds_dmax;
  res.degree = dmax;
  return res;
}

enum class Tri { yes, no, unknown_at_cap };

inline const char* tri_name(Tri t) {
  switch (t) {
    case Tri::yes: return "yes";
    case Tri::no: return "no";
    case Tri::unknown_at_cap: return "unknown_at_cap";
  }
  return "unknown";
}

template <class F>
struct DegreesEqualResult {
  Tri answer = Tri::unknown_at_cap;
  Truncation<F> lower, upper;
  std::vector<std::optional<std::vector<Poly<F>>>> witnesses;  // upper basis in (lower) + R_n
  std::optional<DegreeCertificate> certificate;               // "no": an upper element off D(Z^n/L_d)
};

// Does G_{<=d} = G_{<=d'}? Yes when the d'-truncation lies in the ideal of the
// d-truncation.
template <class F>
DegreesEqualResult<F> degrees_equal_check(const SubgroupPresentation<F>& G, unsigned d, unsigned dprime,
                                          std::optional<unsigned> cap = {}) {
  if (dprime < d) throw std::invalid_argument("need d <= d'");
  unsigned D = cap ? std::max(*cap, dprime) : default_cap(dprime);
  DegreesEqualResult<F> r;
  r.lower = truncated_ideal_part(G.ideal, d, D);
  r.upper = truncated_ideal_part(G.ideal, dprime, D);
  LaurentIdeal<F> J{G.ideal.k, G.ideal.n, r.lower.basis};
  ProductSpan<F> span(J.k, J.ring().nvars(), J.all_generators(), D);
  bool all = true;
  for (auto& p : r.upper.basis) {
    r.witnesses.push_back(span.express(p));
    if (!r.witnesses.back()) all = false;
  }
  if (all) {
    r.answer = Tri::yes;
    return r;
  }
  r.certificate = detail::certify_gap(G, r.upper.basis, d);
  r.answer = r.certificate ? Tri::no : Tri::unknown_at_cap;
  return r;
}

// The small closed subgroups used throughout: trivial, mu_2, mu_3 and mu_5 in
// GL_1, and diag(t, t^2) in GL_2.
template <class F>
std::vector<SubgroupPresentation<F>> catalog_groups(const F& k) {
  std::vector<SubgroupPresentation<F>> out;
  auto cyclic = [&](const std::string& a, const std::vector<std::string>& w, const std::string& name) {
    auto g = make_group(FgAbelianGroup::parse(a));
    std::vector<GroupElement> ws;
    for (auto& x : w) ws.push_back(GroupElement::parse(g, x));
    out.push_back(diagonalizable_image_ideal(k, ws, name));
  };
  cyclic("0", {"0"}, "trivial");
  cyclic("Z/2", {"1"}, "mu2");
  cyclic("Z/3", {"1"}, "mu3");
  cyclic("Z/5", {"1"}, "mu5");
  cyclic("Z", {"1", "2"}, "diag_t_t2");
  return out;
}

}  // namespace proalg
