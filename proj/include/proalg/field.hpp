#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <gmpxx.h>

#include "abelian.hpp"

namespace proalg {

using Rational = mpq_class;

// Residue modulo a prime; the modulus travels with the value so that mixing
// fields is caught at the first operation.
class Mod {
 public:
  Mod() = default;
  Mod(std::uint64_t v, std::uint64_t p) : v_(p ? v % p : v), p_(p) {}

  std::uint64_t value() const { return v_; }
  std::uint64_t modulus() const { return p_; }

  friend Mod operator+(Mod a, Mod b) {
    check(a, b);
    std::uint64_t s = a.v_ + b.v_;
    return Mod(s >= a.p_ ? s - a.p_ : s, a.p_, raw{});
  }
  friend Mod operator-(Mod a, Mod b) {
    check(a, b);
    return Mod(a.v_ >= b.v_ ? a.v_ - b.v_ : a.v_ + a.p_ - b.v_, a.p_, raw{});
  }
  friend Mod operator-(Mod a) { return Mod(a.v_ ? a.p_ - a.v_ : 0, a.p_, raw{}); }
  friend Mod operator*(Mod a, Mod b) {
    check(a, b);
    if (a.p_ <= 0xffffffffu) return Mod(a.v_ * b.v_ % a.p_, a.p_, raw{});
    return Mod(static_cast<std::uint64_t>((static_cast<unsigned __int128>(a.v_) * b.v_) % a.p_), a.p_, raw{});
  }
  friend Mod operator/(Mod a, Mod b) { return a * b.inverse(); }
  Mod& operator+=(Mod b) { return *this = *this + b; }
  Mod& operator-=(Mod b) { return *this = *this - b; }
  Mod& operator*=(Mod b) { return *this = *this * b; }
  Mod& operator/=(Mod b) { return *this = *this / b; }

  Mod inverse() const {
    if (v_ == 0) throw std::domain_error("division by zero in F" + std::to_string(p_));
    if (p_ <= 0xffffffffu) {
      std::int64_t a = static_cast<std::int64_t>(v_), m = static_cast<std::int64_t>(p_), x0 = 1, x1 = 0;
      while (m) {
        std::int64_t q = a / m, t = a - q * m;
        a = m;
        m = t;
        t = x0 - q * x1;
        x0 = x1;
        x1 = t;
      }
      if (a != 1) throw std::domain_error("non-invertible residue");
      std::int64_t r = x0 % static_cast<std::int64_t>(p_);
      if (r < 0) r += static_cast<std::int64_t>(p_);
      return Mod(static_cast<std::uint64_t>(r), p_, raw{});
    }
    // extended Euclid on signed 128-bit values
    __int128 a = v_, m = p_, x0 = 1, x1 = 0;
    while (m) {
      __int128 q = a / m, t = a - q * m;
      a = m;
      m = t;
      t = x0 - q * x1;
      x0 = x1;
      x1 = t;
    }
    if (a != 1) throw std::domain_error("non-invertible residue");
    __int128 r = x0 % static_cast<__int128>(p_);
    if (r < 0) r += p_;
    return Mod(static_cast<std::uint64_t>(r), p_, raw{});
  }

  friend bool operator==(Mod a, Mod b) { return a.v_ == b.v_ && (a.p_ == b.p_ || a.v_ == 0); }
  friend bool operator<(Mod a, Mod b) { return a.v_ < b.v_; }

 private:
  struct raw {};
  Mod(std::uint64_t v, std::uint64_t p, raw) : v_(v), p_(p) {}
  // A default-constructed Mod is a zero that adopts the other operand's modulus.
  static void check(Mod& a, Mod& b) {
    if (a.p_ == b.p_) return;
    if (a.p_ == 0 && a.v_ == 0) {
      a.p_ = b.p_;
      return;
    }
    if (b.p_ == 0 && b.v_ == 0) {
      b.p_ = a.p_;
      return;
    }
    throw std::invalid_argument("mixed prime fields");
  }
  std::uint64_t v_ = 0, p_ = 0;
};

inline bool is_zero(const Rational& x) { return sgn(x) == 0; }
inline bool is_zero(Mod x) { return x.value() == 0; }
inline std::string to_string(const Rational& x) { return x.get_str(); }
inline std::string to_string(Mod x) { return std::to_string(x.value()); }

inline bool is_prime(std::uint64_t p) {
  if (p < 2) return false;
  for (std::uint64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

// The rationals.
struct Rationals {
  using value_type = Rational;
  Rational zero() const { return 0; }
  Rational one() const { return 1; }
  Rational from_int(const Int& v) const { return Rational(v); }
  Rational from_int(long v) const { return Rational(v); }
  Rational from_fraction(const Int& num, const Int& den) const {
    if (den == 0) throw std::domain_error("zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
  }
  bool is_finite() const { return false; }
  std::uint64_t characteristic() const { return 0; }
  std::string name() const { return "Q"; }
  friend bool operator==(const Rationals&, const Rationals&) { return true; }
};

// F_p for a prime p.
struct PrimeField {
  using value_type = Mod;
  std::uint64_t p = 2;
  PrimeField() = default;
  explicit PrimeField(std::uint64_t prime) : p(prime) {
    if (!is_prime(prime)) throw std::invalid_argument(std::to_string(prime) + " is not prime");
  }
  Mod zero() const { return Mod(0, p); }
  Mod one() const { return Mod(1, p); }
  Mod from_int(const Int& v) const {
    Int r;
    mpz_fdiv_r_ui(r.get_mpz_t(), v.get_mpz_t(), p);
    return Mod(r.get_ui(), p);
  }
  Mod from_int(long v) const { return from_int(Int(v)); }
  Mod from_fraction(const Int& num, const Int& den) const { return from_int(num) / from_int(den); }
  bool is_finite() const { return true; }
  std::uint64_t characteristic() const { return p; }
  std::uint64_t size() const { return p; }
  Mod element(std::uint64_t i) const { return Mod(i, p); }
  std::string name() const { return "F" + std::to_string(p); }
  friend bool operator==(const PrimeField& a, const PrimeField& b) { return a.p == b.p; }
};

using ExactField = std::variant<Rationals, PrimeField>;

// "Q" | "F<p>"
inline ExactField parse_field(const std::string& s) {
  if (s == "Q" || s == "QQ") return Rationals{};
  if (s.size() >= 2 && s[0] == 'F') {
    std::uint64_t p = 0;
    for (std::size_t i = 1; i < s.size(); ++i) {
      if (!isdigit(static_cast<unsigned char>(s[i]))) throw std::invalid_argument("bad field '" + s + "'");
      p = p * 10 + static_cast<std::uint64_t>(s[i] - '0');
      if (p > (1ULL << 62)) throw std::invalid_argument("field characteristic too large");
    }
    return PrimeField(p);
  }
  throw std::invalid_argument("bad field '" + s + "'");
}

inline std::string field_name(const ExactField& f) {
  return std::visit([](const auto& k) { return k.name(); }, f);
}

// Parses an integer or a fraction "a/b" into the field.
template <class F>
typename F::value_type parse_scalar(const F& k, const std::string& text) {
  std::string s;
  for (char c : text)
    if (!isspace(static_cast<unsigned char>(c))) s += c;
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return k.from_int(Int(s));
    return k.from_fraction(Int(s.substr(0, slash)), Int(s.substr(slash + 1)));
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("bad scalar '" + text + "'");
  }
}

template <class F>
class Matrix {
 public:
  using K = typename F::value_type;

  Matrix() = default;
  Matrix(F field, std::size_t rows, std::size_t cols)
      : k_(std::move(field)), rows_(rows), cols_(cols), a_(rows * cols, k_.zero()) {}

  static Matrix identity(const F& k, std::size_t n) {
    Matrix m(k, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = k.one();
    return m;
  }
  static Matrix from_rows(const F& k, const std::vector<std::vector<K>>& rows) {
    std::size_t c = rows.empty() ? 0 : rows[0].size();
    Matrix m(k, rows.size(), c);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != c) throw std::invalid_argument("ragged matrix");
      for (std::size_t j = 0; j < c; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }
  static Matrix from_ints(const F& k, std::initializer_list<std::initializer_list<long>> init) {
    std::vector<std::vector<K>> rows;
    for (auto& r : init) {
      rows.emplace_back();
      for (long x : r) rows.back().push_back(k.from_int(x));
    }
    Matrix m = from_rows(k, rows);
    if (rows.empty()) m = Matrix(k, 0, 0);
    return m;
  }
  static Matrix column(const F& k, const std::vector<K>& v) {
    Matrix m(k, v.size(), 1);
    for (std::size_t i = 0; i < v.size(); ++i) m(i, 0) = v[i];
    return m;
  }

  const F& field() const { return k_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  K& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const K& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  std::vector<K> col(std::size_t j) const {
    std::vector<K> v;
    for (std::size_t i = 0; i < rows_; ++i) v.push_back((*this)(i, j));
    return v;
  }
  std::vector<K> row(std::size_t i) const {
    return std::vector<K>(a_.begin() + static_cast<long>(i * cols_), a_.begin() + static_cast<long>((i + 1) * cols_));
  }

  bool is_zero() const {
    for (auto& x : a_)
      if (!proalg::is_zero(x)) return false;
    return true;
  }

  friend bool operator==(const Matrix& x, const Matrix& y) {
    return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.a_ == y.a_;
  }

  friend Matrix operator*(const Matrix& x, const Matrix& y) {
    if (x.cols_ != y.rows_) throw std::invalid_argument("matrix shape mismatch");
    check_field(x, y);
    Matrix r(x.k_, x.rows_, y.cols_);
    for (std::size_t i = 0; i < x.rows_; ++i)
      for (std::size_t l = 0; l < x.cols_; ++l) {
        const K& v = x(i, l);
        if (proalg::is_zero(v)) continue;
        for (std::size_t j = 0; j < y.cols_; ++j) r(i, j) += v * y(l, j);
      }
    return r;
  }
  friend Matrix operator+(const Matrix& x, const Matrix& y) {
    same_shape(x, y);
    Matrix r = x;
    for (std::size_t i = 0; i < r.a_.size(); ++i) r.a_[i] += y.a_[i];
    return r;
  }
  friend Matrix operator-(const Matrix& x, const Matrix& y) {
    same_shape(x, y);
    Matrix r = x;
    for (std::size_t i = 0; i < r.a_.size(); ++i) r.a_[i] -= y.a_[i];
    return r;
  }
  friend Matrix operator*(const K& s, const Matrix& x) {
    Matrix r = x;
    for (auto& v : r.a_) v *= s;
    return r;
  }

  std::vector<K> apply(const std::vector<K>& v) const {
    if (v.size() != cols_) throw std::invalid_argument("vector length mismatch");
    std::vector<K> out(rows_, k_.zero());
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        if (!proalg::is_zero(v[j])) out[i] += (*this)(i, j) * v[j];
    return out;
  }

  Matrix transpose() const {
    Matrix t(k_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    Matrix b(k_, nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
      for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
    return b;
  }

  // [this | other]
  Matrix hcat(const Matrix& o) const {
    if (o.rows_ != rows_) throw std::invalid_argument("hcat row mismatch");
    Matrix r(k_, rows_, cols_ + o.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) r(i, j) = (*this)(i, j);
      for (std::size_t j = 0; j < o.cols_; ++j) r(i, cols_ + j) = o(i, j);
    }
    return r;
  }

  void swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(i, c), (*this)(j, c));
  }

 private:
  static void check_field(const Matrix& x, const Matrix& y) {
    if (!(x.k_ == y.k_)) throw std::invalid_argument("matrices over different fields");
  }
  static void same_shape(const Matrix& x, const Matrix& y) {
    check_field(x, y);
    if (x.rows_ != y.rows_ || x.cols_ != y.cols_) throw std::invalid_argument("matrix shape mismatch");
  }

  F k_{default_field()};
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<K> a_;

  static F default_field() {
    if constexpr (std::is_same_v<F, PrimeField>)
      return PrimeField(2);
    else
      return F{};
  }
};

// Row-major Kronecker product: (x (x) y)[(i1,i2),(j1,j2)] = x[i1][j1] * y[i2][j2].
template <class F>
Matrix<F> kron(const Matrix<F>& x, const Matrix<F>& y) {
  Matrix<F> r(x.field(), x.rows() * y.rows(), x.cols() * y.cols());
  for (std::size_t i1 = 0; i1 < x.rows(); ++i1)
    for (std::size_t j1 = 0; j1 < x.cols(); ++j1) {
      if (is_zero(x(i1, j1))) continue;
      for (std::size_t i2 = 0; i2 < y.rows(); ++i2)
        for (std::size_t j2 = 0; j2 < y.cols(); ++j2)
          r(i1 * y.rows() + i2, j1 * y.cols() + j2) = x(i1, j1) * y(i2, j2);
    }
  return r;
}

template <class F>
struct Rref {
  Matrix<F> R;
  std::vector<std::size_t> pivots;
};

template <class F>
Rref<F> rref(Matrix<F> M) {
  const auto& k = M.field();
  std::vector<std::size_t> piv;
  std::size_t r = 0;
  for (std::size_t c = 0; c < M.cols() && r < M.rows(); ++c) {
    std::size_t p = r;
    while (p < M.rows() && is_zero(M(p, c))) ++p;
    if (p == M.rows()) continue;
    M.swap_rows(r, p);
    typename F::value_type inv = k.one() / M(r, c);
    for (std::size_t j = c; j < M.cols(); ++j) M(r, j) *= inv;
    for (std::size_t i = 0; i < M.rows(); ++i) {
      if (i == r || is_zero(M(i, c))) continue;
      typename F::value_type f = M(i, c);
      for (std::size_t j = c; j < M.cols(); ++j) M(i, j) -= f * M(r, j);
    }
    piv.push_back(c);
    ++r;
  }
  return {std::move(M), std::move(piv)};
}

template <class F>
std::size_t rank(const Matrix<F>& M) {
  return rref(M).pivots.size();
}

// Columns form a basis of {x : M x = 0}.
template <class F>
Matrix<F> kernel(const Matrix<F>& M) {
  auto [R, piv] = rref(M);
  const auto& k = M.field();
  std::vector<bool> is_piv(M.cols(), false);
  for (auto c : piv) is_piv[c] = true;
  std::vector<std::size_t> free;
  for (std::size_t c = 0; c < M.cols(); ++c)
    if (!is_piv[c]) free.push_back(c);
  Matrix<F> B(k, M.cols(), free.size());
  for (std::size_t t = 0; t < free.size(); ++t) {
    B(free[t], t) = k.one();
    for (std::size_t i = 0; i < piv.size(); ++i) B(piv[i], t) = -R(i, free[t]);
  }
  return B;
}

// One solution of M x = b, or nullopt when inconsistent.
template <class F>
std::optional<std::vector<typename F::value_type>> solve_linear(const Matrix<F>& M,
                                                                const std::vector<typename F::value_type>& b) {
  if (b.size() != M.rows()) throw std::invalid_argument("right-hand side length mismatch");
  const auto& k = M.field();
  auto [R, piv] = rref(M.hcat(Matrix<F>::column(k, b)));
  if (!piv.empty() && piv.back() == M.cols()) return std::nullopt;
  std::vector<typename F::value_type> x(M.cols(), k.zero());
  for (std::size_t i = 0; i < piv.size(); ++i) x[piv[i]] = R(i, M.cols());
  return x;
}

template <class F>
std::optional<Matrix<F>> inverse(const Matrix<F>& M) {
  if (M.rows() != M.cols()) throw std::invalid_argument("inverse of non-square matrix");
  const std::size_t n = M.rows();
  auto [R, piv] = rref(M.hcat(Matrix<F>::identity(M.field(), n)));
  if (piv.size() < n || (n && piv[n - 1] != n - 1)) return std::nullopt;
  return R.block(0, n, n, n);
}

template <class F>
typename F::value_type determinant(Matrix<F> M) {
  if (M.rows() != M.cols()) throw std::invalid_argument("determinant of non-square matrix");
  const auto& k = M.field();
  typename F::value_type det = k.one();
  for (std::size_t c = 0; c < M.cols(); ++c) {
    std::size_t p = c;
    while (p < M.rows() && is_zero(M(p, c))) ++p;
    if (p == M.rows()) return k.zero();
    if (p != c) {
      M.swap_rows(c, p);
      det = -det;
    }
    det *= M(c, c);
    typename F::value_type inv = k.one() / M(c, c);
    for (std::size_t i = c + 1; i < M.rows(); ++i) {
      if (is_zero(M(i, c))) continue;
      typename F::value_type f = M(i, c) * inv;
      for (std::size_t j = c; j < M.cols(); ++j) M(i, j) -= f * M(c, j);
    }
  }
  return det;
}

}  // namespace proalg
