#include <catch_amalgamated.hpp>

#include <map>
#include <random>
#include <set>

#include "proalg/paren.hpp"

using namespace proalg;

namespace {

std::string str(const ParenShape& p) { return p.is_leaf() ? "V" : "(" + str(p.left()) + str(p.right()) + ")"; }

CodecError kind_of(const std::string& bits) {
  try {
    decode_shape(BitCode::parse(bits));
  } catch (const codec_error& e) {
    return e.kind();
  }
  FAIL("code decoded: " << bits);
  return CodecError::malformed;
}

// Every slot pattern on a shape with 1..k slots per group.
std::vector<SlotPattern> fillings(const ParenShape& s, std::size_t k) {
  const std::size_t m = s.leaf_count();
  std::vector<SlotPattern> out;
  std::vector<std::size_t> v(m, 1);
  for (;;) {
    out.push_back(s.refill(v));
    std::size_t i = 0;
    while (i < m && ++v[i] > k) v[i++] = 1;
    if (i == m) break;
  }
  return out;
}

}  // namespace

TEST_CASE("shape counts follow the Catalan recurrence") {
  std::vector<std::size_t> c = {0, 1};
  for (std::size_t m = 2; m <= 9; ++m) {
    std::size_t s = 0;
    for (std::size_t i = 1; i < m; ++i) s += c[i] * c[m - i];
    c.push_back(s);
  }
  for (std::size_t m = 1; m <= 9; ++m) {
    auto shapes = enumerate_shapes(m);
    REQUIRE(shapes.size() == c[m]);
    std::set<std::string> u;
    for (auto& s : shapes) {
      REQUIRE(s.leaf_count() == m);
      u.insert(str(s));
    }
    REQUIRE(u.size() == shapes.size());
  }
  REQUIRE_THROWS_AS(enumerate_shapes(0), std::invalid_argument);
}

TEST_CASE("every pattern with at most five groups round-trips, padded or not") {
  for (std::size_t m = 1; m <= 5; ++m)
    for (auto& s : enumerate_shapes(m))
      for (auto& p : fillings(s, m <= 3 ? 3 : 2)) {
        auto c = encode_shape(p);
        REQUIRE(decode_shape(c) == p);
        REQUIRE(decode_shape(encode_shape(p, c.size() + 6)) == p);
        REQUIRE(parse_pattern(format_pattern(p)) == p);
        REQUIRE(parse_pattern(format_pattern(p, "•")) == p);
      }
}

TEST_CASE("the worked example") {
  auto p = parse_pattern("(((_ _ _)(_))(_ _))");
  REQUIRE(encode_shape(p).spaced() == "10 10 10 00 00 00 01 10 00 01 01 10 00 00 01 01");
  REQUIRE(encode_shape(p, 36).spaced() == "10 10 10 00 00 00 01 10 00 01 01 10 00 00 01 01 11 11");
  REQUIRE(parse_pattern("((_)((_ _)))") == parse_pattern("((_)(_ _))"));
}

TEST_CASE("malformed codes are classified") {
  REQUIRE_THROWS_AS(BitCode::parse("101"), codec_error);
  REQUIRE_THROWS_AS(BitCode::parse("10 2 01"), codec_error);
  REQUIRE(kind_of("10 11 00 01") == CodecError::interior_padding);
  REQUIRE(kind_of("11 11") == CodecError::empty);
  REQUIRE(kind_of("10 00") == CodecError::unbalanced);
  REQUIRE(kind_of("01 10") == CodecError::unbalanced);
  REQUIRE(kind_of("10 00 10 00 01 01") == CodecError::mixed_group);
  REQUIRE(kind_of("10 10 00 01 01") == CodecError::not_binary);
  REQUIRE(kind_of("10 10 00 01 10 00 01 10 00 01 01") == CodecError::not_binary);
  REQUIRE(kind_of("10 00 01 10 00 01") == CodecError::unbalanced);
  REQUIRE(kind_of("10 01") == CodecError::empty);
  try {
    encode_shape(parse_pattern("(_ _)"), 4);
    FAIL("encoded into too few bits");
  } catch (const codec_error& e) {
    REQUIRE(e.kind() == CodecError::too_long);
  }
  REQUIRE_THROWS_AS(parse_pattern("((_)(_)(_))"), std::invalid_argument);
  REQUIRE_THROWS_AS(parse_pattern("((_)"), std::invalid_argument);
  REQUIRE_THROWS_AS(parse_pattern("(_ (_))"), std::invalid_argument);
}

TEST_CASE("random shapes are close to uniform") {
  std::mt19937_64 rng(31);
  std::map<std::string, int> seen;
  const int trials = 14000;
  for (int i = 0; i < trials; ++i) ++seen[str(random_shape(5, rng))];
  REQUIRE(seen.size() == 14);
  for (auto& [s, n] : seen) {
    INFO(s);
    REQUIRE(n > 800);
    REQUIRE(n < 1200);
  }
}
