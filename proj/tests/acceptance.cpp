// Acceptance run: one PASS/FAIL line per criterion. Every check compares the
// library against an oracle written here from first principles.

#include <chrono>
#include <cstdlib>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "proalg/axioms.hpp"
#include "proalg/stab.hpp"

using namespace proalg;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
  void require(bool cond, const std::string& why) {
    if (!cond && ok) {
      ok = false;
      detail = why;
    }
  }
};

int failures = 0;
std::set<int> selected;  // empty: all

void run(int index, const std::string& title, double limit_s, const std::function<Outcome()>& body) {
  if (!selected.empty() && !selected.count(index)) return;
  auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o.ok = false;
    o.detail = std::string("exception: ") + e.what();
  }
  double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  bool in_time = limit_s <= 0 || s < limit_s;
  if (o.ok && !in_time) {
    o.ok = false;
    o.detail += " (over the time limit)";
  }
  if (!o.ok) ++failures;
  char timing[96];
  if (limit_s > 0)
    std::snprintf(timing, sizeof timing, "%.2f s, limit %.0f s", s, limit_s);
  else
    std::snprintf(timing, sizeof timing, "%.2f s", s);
  std::printf("criterion %2d %s  %s [%s] %s\n", index, o.ok ? "PASS" : "FAIL", title.c_str(), timing, o.detail.c_str());
  std::fflush(stdout);
}

// ---------- 1 ----------

std::string shape_string(const ParenShape& p) {
  if (p.is_leaf()) return "V";
  return "(" + shape_string(p.left()) + shape_string(p.right()) + ")";
}

Outcome counts() {
  Outcome o;
  const std::vector<std::size_t> want = {1, 1, 2, 5, 14, 42};
  std::string sizes;
  for (std::size_t m = 1; m <= 6; ++m) {
    auto shapes = enumerate_shapes(m);
    // (1/m) C(2(m-1), m-1)
    Int c;
    mpz_bin_uiui(c.get_mpz_t(), 2 * (m - 1), m - 1);
    c /= static_cast<unsigned long>(m);
    o.require(shapes.size() == want[m - 1], "m = " + std::to_string(m) + " gives " + std::to_string(shapes.size()));
    o.require(c == static_cast<unsigned long>(shapes.size()), "closed form disagrees at m = " + std::to_string(m));
    std::set<std::string> distinct;
    for (auto& s : shapes) distinct.insert(shape_string(s));
    o.require(distinct.size() == shapes.size(), "duplicate shapes at m = " + std::to_string(m));
    sizes += (m > 1 ? " " : "") + std::to_string(shapes.size());
  }
  std::set<std::string> four;
  for (auto& s : enumerate_shapes(4)) four.insert(shape_string(s));
  const std::set<std::string> listed = {"(((VV)V)V)", "((V(VV))V)", "((VV)(VV))", "(V((VV)V))", "(V(V(VV)))"};
  o.require(four == listed, "the shapes of four factors differ from the explicit list");
  if (o.ok) o.detail = "sizes " + sizes + "; the five shapes of four factors match";
  return o;
}

// ---------- 2 ----------

Outcome codec() {
  Outcome o;
  const std::string text = "10 10 10 00 00 00 01 10 00 01 01 10 00 00 01 01";
  auto code = BitCode::parse(text);
  auto p = decode_shape(code);
  auto leaf = [](std::size_t k) { return SlotPattern::leaf(k); };
  auto expect = SlotPattern::pair(SlotPattern::pair(leaf(3), leaf(1)), leaf(2));
  o.require(p == expect, "worked string decodes to " + format_pattern(p, "•"));
  o.require(format_pattern(p, "•") == "(((• • •)(•))(• •))", "printed form " + format_pattern(p, "•"));
  o.require(encode_shape(p) == code, "re-encoding differs: " + encode_shape(p).spaced());

  std::mt19937_64 rng(20240611);
  std::size_t padded = 0;
  for (int i = 0; i < 1000 && o.ok; ++i) {
    std::size_t groups = 1 + rng() % 6;
    auto shape = random_shape(groups, rng);
    std::vector<std::size_t> slots(groups);
    std::size_t total = 0;
    for (auto& s : slots) total += s = 1 + rng() % 4;
    auto pat = shape.refill(slots);
    auto c = encode_shape(pat);
    // 4 bits per node of the binary tree, 2 per slot
    o.require(c.size() == 4 * (2 * groups - 1) + 2 * total, "unexpected code length in round trip " + std::to_string(i));
    o.require(decode_shape(c) == pat, "round trip " + std::to_string(i) + " failed for " + format_pattern(pat));
    std::size_t r = c.size() + 2 * (rng() % 4);
    auto cp = encode_shape(pat, r);
    padded += r > c.size();
    o.require(cp.size() == r && decode_shape(cp) == pat, "padded round trip " + std::to_string(i) + " failed");
  }
  if (o.ok) o.detail = "worked string ok; 1000 round trips (" + std::to_string(padded) + " padded)";
  return o;
}

// ---------- 3 ----------

Outcome model_axioms() {
  Outcome o;
  PrimeField k(5);
  auto g = make_group(FgAbelianGroup::parse("Z/4"));
  auto b = FragmentBound::defaults(3, 2);
  auto rep = check_axioms(k, g, model::canonical_model(k, g), b);
  o.require(rep.results.size() == 27, "expected 27 axioms");
  auto fails = rep.failing();
  o.require(rep.count(AxiomStatus::pass) == 27 && rep.count(AxiomStatus::skipped) == 0,
            std::to_string(rep.count(AxiomStatus::pass)) + "/27 pass, " + std::to_string(rep.count(AxiomStatus::skipped)) +
                " skipped" + (fails.empty() ? "" : ", first failure " + std::to_string(fails[0])));
  auto muts = targeted_mutations(b.max_dimension);
  o.require(muts.size() >= 10, "fewer than 10 targeted mutations");
  std::size_t exact = 0;
  for (auto& mu : muts) {
    auto r = check_mutated(k, g, mu, b);
    bool hit = r.failing() == std::vector<int>{mu.target};
    exact += hit;
    if (!hit) {
      std::string f;
      for (int x : r.failing()) f += " " + std::to_string(x);
      o.require(false, "mutation '" + mu.name + "' aimed at " + std::to_string(mu.target) + " fails:" + f);
    }
  }
  if (o.ok)
    o.detail = "27/27 pass, 0 skipped; " + std::to_string(exact) + "/" + std::to_string(muts.size()) +
               " mutations flip exactly their target";
  return o;
}

// ---------- 4 ----------

// Index of the element with these coordinates, reduced in the group; -1 if absent.
long find_coords(const std::vector<GroupElement>& elems, const FgAbelianGroup& a, std::vector<Int> c) {
  for (std::size_t i = a.rank(); i < c.size(); ++i) {
    Int m = a.modulus(i);
    c[i] = ((c[i] % m) + m) % m;
  }
  for (std::size_t i = 0; i < elems.size(); ++i)
    if (elems[i].coords() == c) return static_cast<long>(i);
  return -1;
}

Outcome character_groups() {
  Outcome o;
  struct Case {
    std::string group;
    long bound;  // 0: all elements
  };
  const std::vector<Case> cases = {{"Z/2", 0}, {"Z/6", 0}, {"Z/2+Z/4", 0}, {"Z", 3}, {"Z", 5}};
  std::string done;
  for (auto& cs : cases) {
    FgAbelianGroup a = FgAbelianGroup::parse(cs.group);
    auto g = make_group(a);
    auto elems = cs.bound ? bounded_elements(g, cs.bound) : finite_elements(g);
    auto t = extract_character_group(Rationals{}, elems);
    const std::size_t n = elems.size();
    std::size_t entries = 0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        std::vector<Int> s(a.ngens());
        for (std::size_t c = 0; c < s.size(); ++c) s[c] = elems[i].coords()[c] + elems[j].coords()[c];
        long want = find_coords(elems, a, s);
        o.require(t.sum[i][j] == want, cs.group + ": sum of " + elems[i].to_string() + " and " + elems[j].to_string());
        entries += want >= 0;
      }
      std::vector<Int> neg(a.ngens());
      for (std::size_t c = 0; c < neg.size(); ++c) neg[c] = -elems[i].coords()[c];
      o.require(t.negative[i] == find_coords(elems, a, neg), cs.group + ": negative of " + elems[i].to_string());
    }
    o.require(t.zero == find_coords(elems, a, std::vector<Int>(a.ngens(), 0)), cs.group + ": unit object");
    o.require(t.homomorphism && t.mismatches.empty(), cs.group + ": table is not a homomorphic image");
    o.require(t.presented == a, cs.group + ": presented group is " + t.presented.to_string());
    o.require(t.closed == a.is_finite(), cs.group + ": closure flag");
    done += " " + cs.group + (cs.bound ? "[|x|<=" + std::to_string(cs.bound) + "]" : "") + ":" + std::to_string(entries);
  }
  if (o.ok) o.detail = "tables match, defined entries" + done;
  return o;
}

// ---------- 5 ----------

// Action of the character a |-> zeta^(j a) of Z/6 on an object, built from its tree.
Matrix<PrimeField> action_on(const PrimeField& k, const BaseObject& b, Mod zeta_j) {
  std::function<Matrix<PrimeField>(const Paren<WeightMultiset>&)> rec = [&](const Paren<WeightMultiset>& p) {
    if (!p.is_leaf()) return kron(rec(p.left()), rec(p.right()));
    const auto& w = p.value().elements();
    Matrix<PrimeField> d(k, w.size(), w.size());
    for (std::size_t i = 0; i < w.size(); ++i) {
      Mod x = k.one();
      for (long e = w[i].coords()[0].get_si(); e > 0; --e) x *= zeta_j;
      d(i, i) = x;
    }
    return d;
  };
  return rec(b.tree());
}

Outcome hom_dimensions() {
  Outcome o;
  PrimeField k(7);
  auto g = make_group(FgAbelianGroup::parse("Z/6"));
  auto objs = fragment_objects(finite_elements(g), 3, 2);
  const Mod zeta = k.from_int(3L);  // generates F7*
  {
    Mod x = zeta;
    int ord = 1;
    for (; !(x == k.one()); ++ord) x *= zeta;
    o.require(ord == 6, "3 does not have order 6 in F7");
  }
  std::mt19937_64 rng(6007);
  std::size_t nonzero = 0;
  for (int trial = 0; trial < 200 && o.ok; ++trial) {
    const BaseObject& b = objs[rng() % objs.size()];
    const BaseObject& c = objs[rng() % objs.size()];
    const std::size_t nb = dimension(b), nc = dimension(c);
    // unknowns M(r, s), r < nc, s < nb; one block of equations per point
    Matrix<PrimeField> sys(k, 6 * nc * nb, nc * nb);
    Mod zj = k.one();
    for (std::size_t j = 0; j < 6; ++j, zj *= zeta) {
      auto rb = action_on(k, b, zj), rc = action_on(k, c, zj);
      for (std::size_t r = 0; r < nc; ++r)
        for (std::size_t s = 0; s < nb; ++s) {
          std::size_t row = (j * nc + r) * nb + s;
          // (M rb - rc M)(r, s)
          for (std::size_t t = 0; t < nb; ++t) sys(row, r * nb + t) += rb(t, s);
          for (std::size_t t = 0; t < nc; ++t) sys(row, t * nb + s) -= rc(r, t);
        }
    }
    std::size_t brute = nc * nb - rank(sys);
    std::size_t formula = hom_dimension(b, c);
    nonzero += formula > 0;
    o.require(brute == formula, "Hom(" + format_object(b) + ", " + format_object(c) + "): formula " +
                                    std::to_string(formula) + ", brute force " + std::to_string(brute));
  }
  if (o.ok) o.detail = "200 pairs agree (" + std::to_string(nonzero) + " with nonzero Hom), " + std::to_string(objs.size()) + " objects";
  return o;
}

// ---------- 6 ----------

template <class F>
Outcome duality_over(const F& k, std::size_t& snakes, std::size_t& sums) {
  Outcome o;
  auto g = make_group(FgAbelianGroup::parse("Z/4"));
  auto objs = fragment_objects(finite_elements(g), 3, 2);
  using M = Matrix<F>;
  for (auto& b : objs) {
    const std::size_t n = dimension(b);
    auto d = dual(k, b);
    M E = d.ev.dense(), C = d.coev.dense(), I = M::identity(k, n);
    o.require(dimension(d.object) == n && E.rows() == 1 && E.cols() == n * n && C.rows() == n * n && C.cols() == 1,
              "dual shapes for " + format_object(b));
    if (!o.ok) return o;
    // b -> b (b* b) = (b b*) b -> b  and  b* -> (b* b) b* = b* (b b*) -> b*
    o.require(kron(E, I) * kron(I, C) == I, "first snake fails for " + format_object(b));
    o.require(kron(I, E) * kron(C, I) == I, "second snake fails for " + format_object(b));
    ++snakes;
  }
  for (auto& b : objs)
    for (auto& c : objs) {
      auto s = direct_sum(k, b, c);
      const std::size_t nb = dimension(b), nc = dimension(c);
      M ib = s.inj_b.dense(), ic = s.inj_c.dense(), pb = s.proj_b.dense(), pc = s.proj_c.dense();
      bool good = dimension(s.object) == nb + nc && pb * ib == M::identity(k, nb) && pc * ic == M::identity(k, nc) &&
                  (pb * ic).is_zero() && (pc * ib).is_zero() && ib * pb + ic * pc == M::identity(k, nb + nc);
      o.require(good, "biproduct equations fail for " + format_object(b) + ", " + format_object(c));
      if (!o.ok) return o;
      ++sums;
    }
  return o;
}

Outcome duality() {
  Outcome o;
  std::string d;
  std::size_t snakes = 0, sums = 0;
  auto a = duality_over(PrimeField(5), snakes, sums);
  o.require(a.ok, "F5: " + a.detail);
  d += "F5: " + std::to_string(snakes) + " objects, " + std::to_string(sums) + " pairs";
  snakes = sums = 0;
  auto b = duality_over(Rationals{}, snakes, sums);
  o.require(b.ok, "Q: " + b.detail);
  d += "; Q: " + std::to_string(snakes) + " objects, " + std::to_string(sums) + " pairs";
  if (o.ok) o.detail = d;
  return o;
}

// ---------- 7 ----------

template <class F>
Poly<F> expand(const std::vector<Poly<F>>& cof, const std::vector<Poly<F>>& gens, std::size_t nvars) {
  Poly<F> s(gens.empty() ? F{} : gens[0].field(), nvars);
  for (std::size_t i = 0; i < gens.size() && i < cof.size(); ++i) s = s + cof[i] * gens[i];
  return s;
}

Matrix<PrimeField> random_invertible(const PrimeField& k, std::size_t n, std::mt19937_64& rng) {
  for (;;) {
    Matrix<PrimeField> m(k, n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m(i, j) = k.element(rng() % k.size());
    if (!is_zero(determinant(m))) return m;
  }
}

Outcome hopf() {
  Outcome o;
  std::size_t monos = 0, evals = 0;
  PrimeField k7(7);
  std::mt19937_64 rng(77);
  for (std::size_t n = 1; n <= 2; ++n) {
    LaurentRing R(n);
    const std::size_t N = R.nvars();
    for (unsigned d = 0; d <= 2; ++d)
      for (auto& m : monomials_up_to(N, d)) {
        auto f = Poly<PrimeField>::monomial(k7, m, k7.one());
        auto df = R.comultiply(f);
        o.require(!df.is_zero() && df.nvars() == 2 * N, "empty coproduct");
        for (auto& [mm, c] : df.terms()) {
          auto [a, b] = R.bidegree(mm);
          o.require(a <= d && b <= d, "coproduct leaves the slice for n = " + std::to_string(n) + ", d = " + std::to_string(d));
        }
        // Delta(f)(g, h) = f(g h)
        for (int t = 0; t < 2; ++t) {
          auto gm = random_invertible(k7, n, rng), hm = random_invertible(k7, n, rng);
          auto x = R.point(gm, *inverse(gm)), y = R.point(hm, *inverse(hm));
          x.insert(x.end(), y.begin(), y.end());
          auto gh = gm * hm;
          o.require(df.evaluate(x) == f.evaluate(R.point(gh, *inverse(gh))), "coproduct is not dual to multiplication");
          ++evals;
        }
        ++monos;
      }
  }
  // antipode on the truncations of the catalog ideals
  Rationals q;
  std::size_t checked = 0;
  for (auto& G : catalog_groups(q)) {
    const LaurentRing R = G.ideal.ring();
    auto gens = G.ideal.all_generators();
    for (unsigned d = 0; d <= 2; ++d) {
      auto T = truncated_ideal_part(G.ideal, d, default_cap(d));
      for (std::size_t i = 0; i < T.basis.size(); ++i) {
        const auto& p = T.basis[i];
        o.require(p.degree() <= static_cast<int>(d), G.name + ": truncation element above its degree");
        o.require(expand(T.witnesses[i], gens, R.nvars()) == p, G.name + ": truncation witness does not expand");
        auto sp = R.antipode(p);
        o.require(sp.degree() == p.degree() && R.antipode(sp) == p, G.name + ": antipode is not a degree-preserving involution");
        auto mr = ideal_membership(sp, G.ideal, default_cap(d));
        o.require(mr.is_member(), G.name + ": S(" + R.format(p) + ") not found in the ideal");
        if (mr.is_member())
          o.require(expand(mr.cofactors, gens, R.nvars()) == sp, G.name + ": antipode witness does not expand");
        ++checked;
      }
    }
  }
  if (o.ok)
    o.detail = std::to_string(monos) + " monomials in the slice, " + std::to_string(evals) + " point checks; " +
               std::to_string(checked) + " antipode images certified in the catalog ideals";
  return o;
}

// ---------- 8 ----------

// g acting on the canonical basis of P(V, V*): v_i -> g v_i, v*_i -> g^{-T} v*_i.
Matrix<PrimeField> oracle_action(const PrimeField& k, const std::vector<CanonicalLabel>& basis, const Matrix<PrimeField>& g,
                                 const Matrix<PrimeField>& gi) {
  const std::size_t s = basis.size();
  Matrix<PrimeField> B(k, s, s);
  for (std::size_t r = 0; r < s; ++r)
    for (std::size_t c = 0; c < s; ++c) {
      const auto &to = basis[r], &from = basis[c];
      if (to.a != from.a || to.b != from.b || to.copy != from.copy) continue;
      Mod v = k.one();
      for (std::size_t i = 0; i < from.x.size(); ++i) v *= g(to.x[i], from.x[i]);
      for (std::size_t i = 0; i < from.y.size(); ++i) v *= gi(from.y[i], to.y[i]);
      B(r, c) = v;
    }
  return B;
}

Outcome stabilizers() {
  Outcome o;
  PrimeField k(5);
  const std::size_t n = 2;
  std::vector<std::pair<Matrix<PrimeField>, Matrix<PrimeField>>> gl;
  for (unsigned code = 0; code < 625; ++code) {
    Matrix<PrimeField> g(k, 2, 2);
    g(0, 0) = k.element(code % 5);
    g(0, 1) = k.element(code / 5 % 5);
    g(1, 0) = k.element(code / 25 % 5);
    g(1, 1) = k.element(code / 125);
    if (auto gi = inverse(g)) gl.emplace_back(g, *gi);
  }
  o.require(gl.size() == 480, "GL2(F5) has " + std::to_string(gl.size()) + " elements");
  LaurentRing R(n);
  std::mt19937_64 rng(5050);
  std::string summary;
  for (const std::string shape : {"X", "X+Y", "XY"}) {
    auto P = ShapePolynomial::parse(shape);
    auto basis = canonical_basis(P, n);
    const std::size_t s = basis.size();
    std::vector<Matrix<PrimeField>> actions;
    for (auto& [g, gi] : gl) actions.push_back(oracle_action(k, basis, g, gi));
    std::size_t stab_total = 0;
    for (int trial = 0; trial < 50 && o.ok; ++trial) {
      const std::size_t r = 1 + rng() % (s - 1);
      std::vector<std::size_t> rows(s);
      for (std::size_t i = 0; i < s; ++i) rows[i] = i;
      std::shuffle(rows.begin(), rows.end(), rng);
      std::vector<std::size_t> piv(rows.begin(), rows.begin() + static_cast<long>(r));
      std::sort(piv.begin(), piv.end());
      Matrix<PrimeField> A(k, s, r);
      for (;;) {
        for (std::size_t i = 0; i < s; ++i)
          for (std::size_t j = 0; j < r; ++j) A(i, j) = k.element(rng() % 5);
        Matrix<PrimeField> minor(k, r, r);
        for (std::size_t i = 0; i < r; ++i)
          for (std::size_t j = 0; j < r; ++j) minor(i, j) = A(piv[i], j);
        if (!is_zero(determinant(minor))) break;
      }
      StabilizerProblem<PrimeField> pr{P, n, piv, A};
      auto polys = stabilizer_polys(pr);
      std::size_t agree = 0, stab = 0;
      for (std::size_t e = 0; e < gl.size(); ++e) {
        auto pt = R.point(gl[e].first, gl[e].second);
        bool vanish = true;
        for (auto& p : polys)
          if (!is_zero(p.evaluate(pt))) {
            vanish = false;
            break;
          }
        bool brute = rank(A.hcat(actions[e] * A)) == r;
        agree += vanish == brute;
        stab += brute;
      }
      stab_total += stab;
      o.require(agree == gl.size(), shape + ": subspace " + std::to_string(trial) + " disagrees on " +
                                        std::to_string(gl.size() - agree) + " points");
    }
    summary += " " + shape + ":" + std::to_string(stab_total);
  }
  if (o.ok) o.detail = "150 subspaces x 480 points agree; stabilizer sizes summed" + summary;
  return o;
}

// ---------- 9 and 10 ----------

const std::vector<std::pair<std::string, unsigned>>& expected_degrees() {
  static const std::vector<std::pair<std::string, unsigned>> e = {
      {"trivial", 1}, {"mu2", 1}, {"mu3", 2}, {"mu5", 3}, {"diag_t_t2", 2}};
  return e;
}

// Tries constant cofactors first; most links of a chain are plain linear combinations.
template <class F>
bool is_member_certified(const Poly<F>& p, const LaurentIdeal<F>& I, unsigned cap) {
  for (unsigned D : {0u, cap}) {
    auto r = ideal_membership(p, I, D);
    if (r.is_member()) return expand(r.cofactors, I.all_generators(), I.ring().nvars()) == p;
  }
  return false;
}

Outcome defining_degrees() {
  Outcome o;
  Rationals k;
  auto cat = catalog_groups(k);
  std::string got;
  for (std::size_t gi = 0; gi < cat.size(); ++gi) {
    const auto& G = cat[gi];
    const auto& [name, want] = expected_degrees().at(gi);
    o.require(G.name == name, "catalog order changed");
    auto res = defining_degree(G, 4);
    o.require(res.status == DegreeStatus::found && res.degree == want,
              name + ": " + degree_status_name(res.status) + " at " + std::to_string(res.degree));
    if (!o.ok) return o;
    got += " " + name + "=" + std::to_string(res.degree);
    const std::size_t nv = G.ideal.ring().nvars();
    for (auto& st : res.steps) {
      if (st.d < res.degree) {
        o.require(!st.generates && st.certificate.has_value(), name + ": degree " + std::to_string(st.d) + " lacks a gap certificate");
        continue;
      }
      auto gens = G.ideal.all_generators();
      for (std::size_t i = 0; i < st.truncation.basis.size(); ++i)
        o.require(expand(st.truncation.witnesses[i], gens, nv) == st.truncation.basis[i], name + ": truncation witness");
      LaurentIdeal<Rationals> J{k, G.ideal.n, st.truncation.basis};
      auto jg = J.all_generators();
      o.require(st.generator_witnesses.size() == G.ideal.generators.size(), name + ": missing generator witnesses");
      for (std::size_t i = 0; i < st.generator_witnesses.size(); ++i) {
        const auto& w = st.generator_witnesses[i];
        o.require(w && expand(*w, jg, nv) == G.ideal.generators[i], name + ": generator witness " + std::to_string(i));
      }
    }
  }
  // diag(t, t^2) at d = 1 is the diagonal torus
  const auto& D = cat.at(4);
  auto le1 = group_le_d(D, 1, default_cap(1));
  auto z2 = make_group(FgAbelianGroup(2, {}));
  auto torus = diagonalizable_image_ideal(k, {GroupElement(z2, {1, 0}), GroupElement(z2, {0, 1})}, "T");
  for (auto& p : torus.ideal.generators)
    o.require(is_member_certified(p, le1.group.ideal, default_cap(1)), "torus generator outside G_{<=1}");
  for (auto& p : le1.truncation.basis)
    o.require(is_member_certified(p, torus.ideal, default_cap(1)), "G_{<=1} generator outside the torus ideal");
  if (o.ok) o.detail = "degrees" + got + "; all witnesses expand; diag(t,t^2) at d = 1 is the diagonal torus";
  return o;
}

Outcome chain() {
  Outcome o;
  Rationals k;
  auto cat = catalog_groups(k);
  std::size_t links = 0;
  for (std::size_t gi = 0; gi < cat.size(); ++gi) {
    const auto& G = cat[gi];
    const unsigned deg = expected_degrees().at(gi).second;
    const unsigned top = deg + 1;
    std::vector<Truncation<Rationals>> T;
    // one step past the defining degree, at the cap that certified it
    for (unsigned d = 0; d <= top; ++d) T.push_back(truncated_ideal_part(G.ideal, d, std::max(d, default_cap(std::min(d, deg)))));
    for (unsigned d = 0; d < top; ++d) {
      LaurentIdeal<Rationals> next{k, G.ideal.n, T[d + 1].basis};
      for (auto& p : T[d].basis)
        o.require(is_member_certified(p, next, T[d + 1].cap), G.name + ": chain not nested at d = " + std::to_string(d));
      ++links;
    }
    // (T_deg) = I(G), and nothing new appears one degree later
    LaurentIdeal<Rationals> J{k, G.ideal.n, T[deg].basis};
    const unsigned cap = default_cap(deg);
    for (auto& p : G.ideal.generators)
      o.require(is_member_certified(p, J, cap), G.name + ": truncation at the degree misses a generator");
    auto gens = G.ideal.all_generators();
    for (std::size_t i = 0; i < T[deg].basis.size(); ++i)
      o.require(expand(T[deg].witnesses[i], gens, G.ideal.ring().nvars()) == T[deg].basis[i], G.name + ": truncation leaves I(G)");
    auto same = degrees_equal_check(G, deg, top, default_cap(deg));
    o.require(same.answer == Tri::yes, G.name + ": chain moves after the defining degree");
    auto strict = degrees_equal_check(G, deg - 1, deg);
    o.require(strict.answer == Tri::no, G.name + ": chain does not move below the defining degree");
  }
  if (o.ok) o.detail = std::to_string(links) + " nested links certified; every chain stabilizes at its defining degree";
  return o;
}

// ---------- 11 ----------

// Every subspace of F^m, each given by a basis in the columns of an m x r matrix.
std::vector<Matrix<PrimeField>> all_subspaces(const PrimeField& k, std::size_t m) {
  std::vector<Matrix<PrimeField>> out;
  for (std::size_t r = 0; r <= m; ++r) {
    std::vector<std::size_t> piv(r);
    std::function<void(std::size_t, std::size_t)> choose = [&](std::size_t i, std::size_t from) {
      if (i == r) {
        // reduced echelon rows: 1 at the pivot, free entries right of it off the pivot columns
        std::vector<std::pair<std::size_t, std::size_t>> free;
        for (std::size_t a = 0; a < r; ++a)
          for (std::size_t c = piv[a] + 1; c < m; ++c)
            if (std::find(piv.begin(), piv.end(), c) == piv.end()) free.emplace_back(a, c);
        std::size_t total = 1;
        for (std::size_t f = 0; f < free.size(); ++f) total *= k.size();
        for (std::size_t code = 0; code < total; ++code) {
          Matrix<PrimeField> U(k, m, r);
          for (std::size_t a = 0; a < r; ++a) U(piv[a], a) = k.one();
          std::size_t x = code;
          for (auto& [a, c] : free) {
            U(c, a) = k.element(x % k.size());
            x /= k.size();
          }
          out.push_back(U);
        }
        return;
      }
      for (std::size_t c = from; c < m; ++c) {
        piv[i] = c;
        choose(i + 1, c + 1);
      }
    };
    choose(0, 0);
  }
  return out;
}

Outcome points_vs_stabilizers() {
  Outcome o;
  PrimeField k(5);
  std::string d;
  for (std::uint64_t order : {4u, 2u}) {
    auto g = make_group(FgAbelianGroup::parse("Z/" + std::to_string(order)));
    auto G = diagonalizable_image_ideal(k, {GroupElement::of(g, 1)});
    LaurentRing R(1);
    for (unsigned deg = 1; deg <= 2; ++deg) {
      auto T = truncated_ideal_part(G.ideal, deg, default_cap(deg));
      std::set<std::uint64_t> points, stab;
      for (std::uint64_t t = 1; t < 5; ++t) {
        Matrix<PrimeField> m(k, 1, 1);
        m(0, 0) = k.element(t);
        bool vanish = true;
        for (auto& p : T.basis) vanish = vanish && is_zero(R.evaluate(p, m));
        if (vanish) points.insert(t);
      }
      // t acts on a basis vector with x-count a and y-count b by t^(a-b); its weight is (a-b) mod order.
      auto basis = canonical_basis(pd_polynomial(1, deg), 1);
      std::map<long, std::vector<long>> blocks;  // weight -> exponents
      for (auto& l : basis) {
        long e = static_cast<long>(l.x.size()) - static_cast<long>(l.y.size());
        long w = ((e % static_cast<long>(order)) + static_cast<long>(order)) % static_cast<long>(order);
        blocks[w].push_back(e);
      }
      std::size_t subspaces = 0;
      for (std::uint64_t t = 1; t < 5; ++t) {
        const Mod tv = k.element(t), ti = tv.inverse();
        bool all = true;
        for (auto& [w, ex] : blocks) {
          Matrix<PrimeField> D(k, ex.size(), ex.size());
          for (std::size_t i = 0; i < ex.size(); ++i) {
            Mod v = k.one();
            for (long e = ex[i]; e > 0; --e) v *= tv;
            for (long e = ex[i]; e < 0; ++e) v *= ti;
            D(i, i) = v;
          }
          for (auto& U : all_subspaces(k, ex.size())) {
            if (t == 1) ++subspaces;
            if (U.cols() && rank(U.hcat(D * U)) != U.cols()) all = false;
          }
        }
        if (all) stab.insert(t);
      }
      auto show = [](const std::set<std::uint64_t>& s) {
        std::string x = "{";
        for (auto v : s) x += (x.size() > 1 ? "," : "") + std::to_string(v);
        return x + "}";
      };
      o.require(points == stab, "mu" + std::to_string(order) + ", d = " + std::to_string(deg) + ": points " + show(points) +
                                    ", stabilizer " + show(stab));
      d += " mu" + std::to_string(order) + "/d=" + std::to_string(deg) + ":" + show(points) + "/" + std::to_string(subspaces);
    }
  }
  if (o.ok) o.detail = "points = stabilizers (points/subspaces)" + d;
  return o;
}

}  // namespace

// Optional arguments restrict the run to the listed criteria.
int main(int argc, char** argv) {
  for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));
  run(1, "parenthesization counts", 1, counts);
  run(2, "bit codec fidelity", 5, codec);
  run(3, "axioms of the canonical model and targeted mutations", 60, model_axioms);
  run(4, "character group extraction", 0, character_groups);
  run(5, "hom dimension against brute force", 0, hom_dimensions);
  run(6, "snakes and biproduct equations", 0, duality);
  run(7, "coalgebra slice and antipode on catalog ideals", 0, hopf);
  run(8, "stabilizer polynomials over GL2(F5)", 120, stabilizers);
  run(9, "defining degrees of the catalog", 300, defining_degrees);
  run(10, "nested truncation chain", 0, chain);
  run(11, "points of G_{<=d} and stabilizers of weight blocks", 0, points_vs_stabilizers);
  std::printf("%s: %d criteria failed\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
