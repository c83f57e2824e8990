#include <catch_amalgamated.hpp>

#include <random>

#include "proalg/diagrep.hpp"

using namespace proalg;

namespace {

const PrimeField F5(5);

// The character a |-> z^a of Z/4 on an object, built from its tree; z = 2 generates F5*.
Matrix<PrimeField> rho(const BaseObject& b, Mod z) {
  std::function<Matrix<PrimeField>(const Paren<WeightMultiset>&)> rec = [&](const Paren<WeightMultiset>& p) {
    if (!p.is_leaf()) return kron(rec(p.left()), rec(p.right()));
    const auto& w = p.value().elements();
    Matrix<PrimeField> d(F5, w.size(), w.size());
    for (std::size_t i = 0; i < w.size(); ++i) {
      Mod x = F5.one();
      for (long e = w[i].coords()[0].get_si(); e > 0; --e) x *= z;
      d(i, i) = x;
    }
    return d;
  };
  return rec(b.tree());
}

bool equivariant(const Matrix<PrimeField>& M, const BaseObject& b, const BaseObject& c) {
  Mod z = F5.one();
  for (int j = 0; j < 4; ++j, z *= F5.element(2))
    if (!(M * rho(b, z) == rho(c, z) * M)) return false;
  return true;
}

std::vector<BaseObject> z4_objects(std::size_t n, std::size_t m) {
  return fragment_objects(finite_elements(make_group(FgAbelianGroup::parse("Z/4"))), n, m);
}

template <class F>
HomMorphism<F> random_hom(const F& k, const BaseObject& b, const BaseObject& c, std::mt19937_64& rng) {
  auto basis = hom_space(k, b, c);
  auto f = zero_morphism(k, b, c);
  for (auto& h : basis) f = f + k.from_int(static_cast<long>(rng() % 5)) * h;
  return f;
}

}  // namespace

TEST_CASE("dimensions, sorts and weights") {
  auto g = make_group(FgAbelianGroup::parse("Z/4"));
  auto b = parse_object(g, "({1 2} {0 3 3})");
  REQUIRE(dimension(b) == 6);
  REQUIRE(sort_of(b).m == 2);
  REQUIRE(tensor_length(b) == 2);
  auto w = basis_weights(b);
  REQUIRE(w.size() == 6);
  // lexicographic basis: (1,0) (1,3) (1,3) (2,0) (2,3) (2,3)
  std::vector<long> want = {1, 0, 0, 2, 1, 1};
  for (std::size_t i = 0; i < 6; ++i) REQUIRE(w[i].coords()[0] == want[i]);
  REQUIRE(parse_object(g, format_object(b)) == b);
  REQUIRE_THROWS_AS(parse_object(g, "({1} {2}"), std::invalid_argument);
}

TEST_CASE("hom dimension is the sum of products of multiplicities") {
  auto objs = z4_objects(3, 2);
  std::mt19937_64 rng(41);
  for (int t = 0; t < 300; ++t) {
    auto& b = objs[rng() % objs.size()];
    auto& c = objs[rng() % objs.size()];
    auto wb = basis_weights(b), wc = basis_weights(c);
    std::size_t pairs = 0;
    for (auto& x : wb)
      for (auto& y : wc) pairs += x == y;
    REQUIRE(hom_dimension(b, c) == pairs);
  }
}

TEST_CASE("hom space bases are equivariant and independent") {
  auto objs = z4_objects(3, 2);
  std::mt19937_64 rng(42);
  for (int t = 0; t < 150; ++t) {
    auto& b = objs[rng() % objs.size()];
    auto& c = objs[rng() % objs.size()];
    auto basis = hom_space(F5, b, c);
    REQUIRE(basis.size() == hom_dimension(b, c));
    const std::size_t nb = dimension(b), nc = dimension(c);
    Matrix<PrimeField> V(F5, nb * nc, basis.size());
    for (std::size_t i = 0; i < basis.size(); ++i) {
      auto M = basis[i].dense();
      REQUIRE(equivariant(M, b, c));
      for (std::size_t r = 0; r < nc; ++r)
        for (std::size_t s = 0; s < nb; ++s) V(r * nb + s, i) = M(r, s);
    }
    REQUIRE(rank(V) == basis.size());
  }
}

TEST_CASE("dense matrices convert exactly when equivariant") {
  auto g = make_group(FgAbelianGroup::parse("Z/4"));
  auto b = parse_object(g, "{0 1}"), c = parse_object(g, "{1 1}");
  auto ok = Matrix<PrimeField>::from_ints(F5, {{0, 3}, {0, 4}});
  auto bad = Matrix<PrimeField>::from_ints(F5, {{1, 0}, {0, 0}});
  auto f = HomMorphism<PrimeField>::from_dense(F5, b, c, ok);
  REQUIRE(f.has_value());
  REQUIRE(f->dense() == ok);
  REQUIRE_FALSE(HomMorphism<PrimeField>::from_dense(F5, b, c, bad).has_value());
  auto h = HomMorphism<PrimeField>::from_coords(F5, b, c, f->coords());
  REQUIRE(h == *f);
}

TEST_CASE("composition and tensor product match matrix products") {
  auto objs = z4_objects(2, 2);
  std::mt19937_64 rng(43);
  for (int t = 0; t < 150; ++t) {
    auto& a = objs[rng() % objs.size()];
    auto& b = objs[rng() % objs.size()];
    auto& c = objs[rng() % objs.size()];
    auto f = random_hom(F5, a, b, rng), g = random_hom(F5, b, c, rng);
    REQUIRE(compose(g, f).dense() == g.dense() * f.dense());
    auto tf = tensor(f, g);
    REQUIRE(tf.dense() == kron(f.dense(), g.dense()));
    REQUIRE(tf.source() == tensor(a, b));
    REQUIRE(HomMorphism<PrimeField>::identity(F5, a).dense() == Matrix<PrimeField>::identity(F5, dimension(a)));
  }
}

TEST_CASE("kernels and cokernels are exact") {
  auto objs = z4_objects(3, 2);
  std::mt19937_64 rng(44);
  for (int t = 0; t < 200; ++t) {
    auto& b = objs[rng() % objs.size()];
    auto& c = objs[rng() % objs.size()];
    auto f = random_hom(F5, b, c, rng);
    const std::size_t r = rank(f.dense());
    auto K = kernel_of(f);
    auto C = cokernel_of(f);
    const std::size_t nk = K.object.is_zero() ? 0 : dimension(K.object);
    const std::size_t nq = C.object.is_zero() ? 0 : dimension(C.object);
    REQUIRE(nk == dimension(b) - r);
    REQUIRE(nq == dimension(c) - r);
    if (nk) {
      REQUIRE(is_tensor_irreducible(K.object));
      REQUIRE(compose(f, K.inclusion).is_zero());
      REQUIRE(rank(K.inclusion.dense()) == nk);
    }
    if (nq) {
      REQUIRE(is_tensor_irreducible(C.object));
      REQUIRE(compose(C.projection, f).is_zero());
      REQUIRE(rank(C.projection.dense()) == nq);
    }
  }
}

TEST_CASE("tensor factorization is unique") {
  auto objs = z4_objects(2, 2);
  for (std::size_t i = 0; i < objs.size(); i += 7)
    for (std::size_t j = 0; j < objs.size(); j += 5) {
      auto t = tensor(objs[i], objs[j]);
      auto fi = tensor_factors(objs[i]), fj = tensor_factors(objs[j]), ft = tensor_factors(t);
      fi.insert(fi.end(), fj.begin(), fj.end());
      REQUIRE(ft == fi);
      auto [l, r] = tensor_split(t);
      REQUIRE(l == objs[i]);
      REQUIRE(r == objs[j]);
      // a different bracketing of the same factors is a different object
      if (tensor_length(objs[i]) == 2) REQUIRE_FALSE(t == tensor(tensor_split(objs[i]).first, tensor(tensor_split(objs[i]).second, objs[j])));
    }
}

TEST_CASE("normalization to an irreducible is an isomorphism") {
  auto objs = z4_objects(3, 2);
  for (auto& b : objs) {
    auto n = normalize_to_irreducible(F5, b);
    REQUIRE(is_tensor_irreducible(n.irreducible));
    REQUIRE(weight_multiset(n.irreducible) == weight_multiset(b));
    REQUIRE(inverse(n.iso.dense()).has_value());
    REQUIRE(equivariant(n.iso.dense(), b, n.irreducible));
  }
}

TEST_CASE("duals over the rationals") {
  auto g = make_group(FgAbelianGroup::parse("Z + Z/2"));
  auto b = parse_object(g, "{(1,0) (-2,1) (0,1)}");
  Rationals q;
  auto d = dual(q, b);
  auto w = basis_weights(d.object);
  auto wb = basis_weights(b);
  for (std::size_t i = 0; i < wb.size(); ++i) REQUIRE(isotypic_multiplicity(d.object, -wb[i]) == isotypic_multiplicity(b, wb[i]));
  auto I = Matrix<Rationals>::identity(q, 3);
  REQUIRE(kron(d.ev.dense(), I) * kron(I, d.coev.dense()) == I);
}

TEST_CASE("character tables of small groups") {
  for (std::string s : {"Z/3", "Z/4", "Z/2 + Z/2", "Z/3 + Z/3"}) {
    auto a = FgAbelianGroup::parse(s);
    auto t = extract_character_group(PrimeField(7), finite_elements(make_group(a)));
    REQUIRE(t.closed);
    REQUIRE(t.isomorphic(a));
  }
  auto a = FgAbelianGroup::parse("Z^2");
  auto t = extract_character_group(Rationals{}, bounded_elements(make_group(a), 1));
  REQUIRE_FALSE(t.closed);
  REQUIRE(t.isomorphic(a));
}
