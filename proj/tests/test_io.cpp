#include <catch_amalgamated.hpp>

#include <sstream>

#include "proalg/io.hpp"

using namespace proalg;
using io::Json;

TEST_CASE("group files") {
  Rationals q;
  auto G = io::presentation_from_json(q, Json::parse(R"({"name": "mu3", "field": "Q", "weights": {"group": "Z/3", "values": ["1"]}})"));
  REQUIRE(G.name == "mu3");
  REQUIRE(G.weights.has_value());
  REQUIRE(G.ideal.generators.size() == 1);
  auto H = io::presentation_from_json(q, Json::parse(R"({"n": 1, "generators": ["Z^3 - 1"]})"));
  REQUIRE(H.name == "G");
  REQUIRE_FALSE(H.weights.has_value());
  auto back = io::presentation_json(G);
  REQUIRE(back["generators"][0] == "Z^2 - W");
  back.erase("weights");
  REQUIRE(io::presentation_from_json(q, back).ideal.generators == G.ideal.generators);

  for (const char* bad : {R"({"weights": {"group": "Z/3", "values": ["1"]}, "generators": []})", R"({"name": "x"})",
                          R"({"generators": ["Z"]})", R"({"n": 1, "generators": ["Z"], "extra": 1})", R"([1, 2])",
                          R"({"n": 2, "weights": {"group": "Z/3", "values": ["1"]}})"})
    REQUIRE_THROWS_AS(io::presentation_from_json(q, Json::parse(bad)), std::invalid_argument);
}

TEST_CASE("matrix files") {
  PrimeField k(5);
  std::istringstream in("# a plane\n1, 0\n\n0, 1/2\n 3 ,4\n");
  auto M = io::matrix_from_csv(k, in);
  REQUIRE(M.rows() == 3);
  REQUIRE(M(1, 1) == Mod(3, 5));
  std::istringstream ragged("1,2\n3\n"), empty("# nothing\n"), hole("1,,2\n");
  REQUIRE_THROWS_AS(io::matrix_from_csv(k, ragged), std::invalid_argument);
  REQUIRE_THROWS_AS(io::matrix_from_csv(k, empty), std::invalid_argument);
  REQUIRE_THROWS_AS(io::matrix_from_csv(k, hole), std::invalid_argument);
}

TEST_CASE("documents carry the schema and are reproducible") {
  auto d = io::document("x");
  REQUIRE(d["schema"] == 1);
  REQUIRE(d.dump().find("\"schema\":1") == 1);

  PrimeField k(5);
  auto g = make_group(FgAbelianGroup::parse("Z/2"));
  auto r1 = check_axioms(k, g, model::canonical_model(k, g), FragmentBound::defaults(1, 1));
  auto r2 = check_axioms(k, g, model::canonical_model(k, g), FragmentBound::defaults(1, 1));
  auto j1 = io::axiom_report_json(r1).dump(), j2 = io::axiom_report_json(r2).dump();
  REQUIRE(j1 == j2);
  REQUIRE(j1.find("seconds") == std::string::npos);

  Rationals q;
  auto G = catalog_groups(q).at(2);
  auto a = io::defining_degree_json(G, defining_degree(G, 3), true).dump();
  auto b = io::defining_degree_json(G, defining_degree(G, 3), true).dump();
  REQUIRE(a == b);
  auto j = Json::parse(a);
  REQUIRE(j["status"] == "found");
  REQUIRE(j["degree"] == 2);
}

TEST_CASE("objects and morphisms in JSON") {
  auto g = make_group(FgAbelianGroup::parse("Z/3"));
  auto b = parse_object(g, "({0 1} {2})");
  auto j = io::object_json(b);
  REQUIRE(j["dimension"] == 2);
  REQUIRE(j["sort"] == Json::array({2, 2}));
  REQUIRE(j["basis_weights"] == Json::array({"2", "0"}));
  auto f = HomMorphism<Rationals>::identity(Rationals{}, b);
  auto m = io::morphism_json(f);
  REQUIRE(m["blocks"].size() == 2);
  auto t = extract_character_group(Rationals{}, finite_elements(g));
  auto c = io::character_table_json(t, *g);
  REQUIRE(c["isomorphic"] == true);
  REQUIRE(c["sum_table"][1][2] == "0");
}
