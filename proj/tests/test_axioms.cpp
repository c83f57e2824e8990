#include <catch_amalgamated.hpp>

#include <algorithm>
#include <map>
#include <set>

#include "proalg/axioms.hpp"

using namespace proalg;

namespace {

AxiomReport canonical(std::uint64_t p, const std::string& group, std::size_t n, std::size_t m, std::vector<int> which = {}) {
  PrimeField k(p);
  auto g = make_group(FgAbelianGroup::parse(group));
  return check_axioms(k, g, model::canonical_model(k, g), FragmentBound::defaults(n, m), which);
}

// Tiny fragments may leave an axiom with nothing to check; that is a skip, never a failure.
bool clean(const AxiomReport& r) {
  for (auto& a : r.results) {
    if (a.status == AxiomStatus::fail) return false;
    if (a.status == AxiomStatus::skipped && a.detail.find("no instance") == std::string::npos) return false;
  }
  return true;
}

std::set<int> passing(const AxiomReport& r) {
  std::set<int> s;
  for (auto& a : r.results)
    if (a.status == AxiomStatus::pass) s.insert(a.index);
  return s;
}

std::string summary(const AxiomReport& r) {
  std::string s;
  for (auto& a : r.results)
    if (a.status != AxiomStatus::pass) s += std::to_string(a.index) + ":" + axiom_status_name(a.status) + " " + a.detail + "\n";
  return s;
}

}  // namespace

TEST_CASE("the canonical model passes on small fragments") {
  struct Case {
    std::uint64_t p;
    std::string group;
    std::size_t n, m;
  };
  for (auto& c : std::vector<Case>{{5, "Z/2", 2, 2}, {7, "Z/3", 2, 2}, {3, "Z/2 + Z/2", 2, 1}, {5, "0", 3, 2}, {2, "Z/4", 2, 2}}) {
    auto r = canonical(c.p, c.group, c.n, c.m);
    INFO("F" << c.p << " " << c.group << " " << summary(r));
    REQUIRE(r.results.size() == 27);
    REQUIRE(clean(r));
    REQUIRE(r.count(AxiomStatus::pass) >= 24);
  }
}

TEST_CASE("passing is monotone in the bounds") {
  std::map<std::pair<std::size_t, std::size_t>, std::set<int>> pass;
  for (std::size_t n = 1; n <= 2; ++n)
    for (std::size_t m = 1; m <= 2; ++m) {
      auto r = canonical(5, "Z/4", n, m);
      INFO(n << " " << m << " " << summary(r));
      REQUIRE(clean(r));
      pass[{n, m}] = passing(r);
    }
  auto within = [](const std::set<int>& a, const std::set<int>& b) { return std::includes(b.begin(), b.end(), a.begin(), a.end()); };
  REQUIRE(within(pass[{1, 1}], pass[{1, 2}]));
  REQUIRE(within(pass[{1, 1}], pass[{2, 1}]));
  REQUIRE(within(pass[{1, 2}], pass[{2, 2}]));
  REQUIRE(within(pass[{2, 1}], pass[{2, 2}]));
  REQUIRE(pass[{2, 2}].size() == 27);
}

TEST_CASE("reports are reproducible and respect the selection") {
  auto a = canonical(5, "Z/2", 2, 2), b = canonical(5, "Z/2", 2, 2);
  for (int i = 1; i <= 27; ++i) {
    REQUIRE(a.at(i).status == b.at(i).status);
    REQUIRE(a.at(i).instances == b.at(i).instances);
    REQUIRE(a.at(i).detail == b.at(i).detail);
  }
  auto s = canonical(5, "Z/2", 2, 2, {3, 10});
  REQUIRE(s.count(AxiomStatus::pass) == 2);
  REQUIRE(s.count(AxiomStatus::skipped) == 25);
  REQUIRE(s.at(1).detail == "not selected");
}

TEST_CASE("each targeted mutation breaks its axiom") {
  PrimeField k(5);
  auto g = make_group(FgAbelianGroup::parse("Z/4"));
  auto bounds = FragmentBound::defaults(3, 2);
  auto muts = targeted_mutations(bounds.max_dimension);
  REQUIRE(muts.size() >= 10);
  std::set<int> targets;
  for (auto& mu : muts) {
    auto hooks = model::canonical_model(k, g);
    mu.apply(hooks, k, g);
    auto r = check_axioms(k, g, hooks, bounds, {mu.target});
    INFO(mu.name);
    REQUIRE(r.at(mu.target).status == AxiomStatus::fail);
    REQUIRE_FALSE(r.at(mu.target).detail.empty());
    targets.insert(mu.target);
  }
  REQUIRE(targets.size() == muts.size());
}

TEST_CASE("a zero tensor product on vectors is caught") {
  PrimeField k(5);
  auto g = make_group(FgAbelianGroup::parse("Z/2"));
  auto r = check_mutated(k, g, zero_tensor_mutation(), FragmentBound::defaults(2, 2));
  auto f = r.failing();
  REQUIRE(std::find(f.begin(), f.end(), 15) != f.end());
  REQUIRE(r.at(1).status == AxiomStatus::pass);
}

TEST_CASE("checker inputs are validated") {
  auto b = FragmentBound::defaults(3, 2);
  b.witness_dimension = 2;
  REQUIRE_THROWS_AS(b.validate(), std::invalid_argument);
  REQUIRE_THROWS_AS(check_axioms(ExactField(Rationals{}), FgAbelianGroup::parse("Z/2"), FragmentBound::defaults(1, 1)),
                    std::invalid_argument);
  REQUIRE_THROWS_AS(check_axioms(ExactField(PrimeField(5)), FgAbelianGroup::parse("Z"), FragmentBound::defaults(1, 1)),
                    std::invalid_argument);
  auto r = check_axioms(ExactField(PrimeField(3)), FgAbelianGroup::parse("Z/2"), FragmentBound::defaults(1, 1));
  REQUIRE(clean(r));
}
