#include <catch_amalgamated.hpp>

#include <random>
#include <set>

#include "proalg/abelian.hpp"

using namespace proalg;

namespace {

IntMatrix random_matrix(std::size_t r, std::size_t c, std::mt19937_64& rng, long span) {
  IntMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = static_cast<long>(rng() % (2 * span + 1)) - span;
  return m;
}

bool is_unimodular(const IntMatrix& m) {
  Int d = determinant(m);
  return d == 1 || d == -1;
}

}  // namespace

TEST_CASE("Smith form is a unimodular diagonalization with a divisibility chain") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 200; ++t) {
    std::size_t r = 1 + rng() % 4, c = 1 + rng() % 4;
    IntMatrix M = random_matrix(r, c, rng, 6);
    auto s = smith_normal_form(M);
    REQUIRE(s.U * M * s.V == s.D);
    REQUIRE(is_unimodular(s.U));
    REQUIRE(is_unimodular(s.V));
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j)
        if (i != j) REQUIRE(s.D(i, j) == 0);
    const std::size_t k = std::min(r, c);
    for (std::size_t i = 0; i < k; ++i) {
      REQUIRE(s.D(i, i) >= 0);
      if (i + 1 < k && s.D(i, i) != 0) REQUIRE(s.D(i + 1, i + 1) % s.D(i, i) == 0);
      if (s.D(i, i) == 0 && i + 1 < k) REQUIRE(s.D(i + 1, i + 1) == 0);
    }
  }
}

TEST_CASE("Smith form of a square matrix preserves |det|") {
  std::mt19937_64 rng(12);
  for (int t = 0; t < 100; ++t) {
    IntMatrix M = random_matrix(3, 3, rng, 5);
    auto s = smith_normal_form(M);
    Int prod = 1;
    for (std::size_t i = 0; i < 3; ++i) prod *= s.D(i, i);
    Int d = determinant(M);
    REQUIRE(prod == (d < 0 ? Int(-d) : d));
  }
}

TEST_CASE("group normal forms and parsing") {
  REQUIRE(FgAbelianGroup::from_cyclic({2, 3}) == FgAbelianGroup::parse("Z/6"));
  REQUIRE(FgAbelianGroup::from_cyclic({4, 2, 0}) == FgAbelianGroup::parse("Z + Z/2 + Z/4"));
  REQUIRE(FgAbelianGroup::from_cyclic({1}) == FgAbelianGroup::parse("0"));
  for (std::string s : {"0", "Z", "Z^3", "Z/2 + Z/4", "Z^2 + Z/3 + Z/6"})
    REQUIRE(FgAbelianGroup::parse(FgAbelianGroup::parse(s).to_string()) == FgAbelianGroup::parse(s));
  REQUIRE(FgAbelianGroup::parse("Z/2+Z/4").order() == 8);
  REQUIRE(FgAbelianGroup::parse("Z/4+Z/6").torsion() == std::vector<Int>{2, 12});
  REQUIRE_THROWS_AS(FgAbelianGroup::parse("Z/x"), std::invalid_argument);
  REQUIRE_THROWS_AS(FgAbelianGroup(0, {4, 2}), std::invalid_argument);
}

TEST_CASE("element arithmetic reduces modulo the torsion") {
  auto g = make_group(FgAbelianGroup::parse("Z + Z/4"));
  auto a = GroupElement::parse(g, "(3, 3)");
  auto b = GroupElement::parse(g, "(-1, 2)");
  REQUIRE((a + b).coords() == std::vector<Int>{2, 1});
  REQUIRE((a + (-a)).is_zero());
  REQUIRE((Int(4) * b).coords() == std::vector<Int>{-4, 0});
  REQUIRE(GroupElement::parse(g, a.to_string()) == a);
}

TEST_CASE("finite enumeration lists each element once") {
  for (std::string s : {"0", "Z/2", "Z/6", "Z/2 + Z/4", "Z/3 + Z/3"}) {
    auto g = make_group(FgAbelianGroup::parse(s));
    auto e = finite_elements(g);
    std::set<GroupElement> u(e.begin(), e.end());
    REQUIRE(e.size() == g->order().get_ui());
    REQUIRE(u.size() == e.size());
    REQUIRE(std::is_sorted(e.begin(), e.end()));
  }
}

TEST_CASE("bounded enumeration of a mixed group") {
  auto g = make_group(FgAbelianGroup::parse("Z + Z/2"));
  auto e = bounded_elements(g, 2);
  REQUIRE(e.size() == 10);
  std::set<GroupElement> u(e.begin(), e.end());
  REQUIRE(u.size() == 10);
  for (auto& x : e) REQUIRE(abs(x.coords()[0]) <= 2);
}

// A lattice of relations with the right index is the whole relation lattice.
TEST_CASE("relation lattice against brute force") {
  std::mt19937_64 rng(13);
  for (std::string s : {"Z/6", "Z/2 + Z/4", "Z/12", "Z/3 + Z/3"}) {
    auto g = make_group(FgAbelianGroup::parse(s));
    auto elems = finite_elements(g);
    for (int t = 0; t < 20; ++t) {
      std::size_t m = 1 + rng() % 3;
      std::vector<GroupElement> w;
      for (std::size_t i = 0; i < m; ++i) w.push_back(elems[rng() % elems.size()]);
      IntMatrix L = relation_lattice(w);
      REQUIRE(L.rows() == m);
      for (std::size_t r = 0; r < L.rows(); ++r) {
        GroupElement sum = GroupElement::zero(g);
        for (std::size_t i = 0; i < m; ++i) sum = sum + L(r, i) * w[i];
        REQUIRE(sum.is_zero());
      }
      // size of the subgroup generated by w, by closure
      std::set<GroupElement> sub{GroupElement::zero(g)};
      for (bool grew = true; grew;) {
        grew = false;
        for (auto x : std::vector<GroupElement>(sub.begin(), sub.end()))
          for (auto& y : w) grew |= sub.insert(x + y).second;
      }
      Int d = determinant(L);
      REQUIRE((d < 0 ? Int(-d) : d) == static_cast<unsigned long>(sub.size()));
    }
  }
}

TEST_CASE("relation lattice of a free group") {
  auto g = make_group(FgAbelianGroup::parse("Z"));
  auto L = relation_lattice({GroupElement::of(g, 1), GroupElement::of(g, 2)});
  REQUIRE(L.rows() == 1);
  // (2, -1) up to sign
  REQUIRE(abs(L(0, 0)) == 2);
  REQUIRE(abs(L(0, 1)) == 1);
  REQUIRE(L(0, 0) * L(0, 1) < 0);
}
