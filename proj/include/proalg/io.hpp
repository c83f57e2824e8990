#pragma once

// JSON export of library results and the input formats of the command-line tool.

#include <istream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "proalg/axioms.hpp"
#include "proalg/diagrep.hpp"
#include "proalg/laurent.hpp"
#include "proalg/paren.hpp"
#include "proalg/stab.hpp"

namespace proalg::io {

// Insertion-ordered, so equal inputs give byte-identical output.
using Json = nlohmann::ordered_json;

inline constexpr int schema_version = 1;

inline Json document(const std::string& kind) {
  Json j;
  j["schema"] = schema_version;
  j["kind"] = kind;
  return j;
}

inline Json elements_json(const std::vector<GroupElement>& w) {
  Json a = Json::array();
  for (auto& x : w) a.push_back(x.to_string());
  return a;
}

inline Json object_json(const BaseObject& b) {
  Json j;
  j["text"] = format_object(b);
  if (b.is_zero()) {
    j["zero"] = true;
    return j;
  }
  auto s = sort_of(b);
  j["sort"] = {s.m, s.n};
  j["dimension"] = dimension(b);
  j["basis_weights"] = elements_json(basis_weights(b));
  return j;
}

template <class F>
Json matrix_json(const Matrix<F>& M) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < M.rows(); ++i) {
    Json r = Json::array();
    for (std::size_t j = 0; j < M.cols(); ++j) r.push_back(to_string(M(i, j)));
    rows.push_back(r);
  }
  return rows;
}

template <class F>
Json morphism_json(const HomMorphism<F>& f) {
  Json j;
  j["source"] = format_object(f.source());
  j["target"] = format_object(f.target());
  Json blocks = Json::array();
  for (auto& b : f.blocks()) {
    Json x;
    x["weight"] = b.weight.to_string();
    x["source_indices"] = b.src;
    x["target_indices"] = b.tgt;
    x["matrix"] = matrix_json(b.m);
    blocks.push_back(x);
  }
  j["blocks"] = blocks;
  return j;
}

// Timings are left out so that reports are reproducible.
inline Json axiom_report_json(const AxiomReport& r) {
  Json j;
  j["field"] = r.field;
  j["group"] = r.group;
  Json b;
  b["max_dimension"] = r.bounds.max_dimension;
  b["max_tensor_length"] = r.bounds.max_tensor_length;
  b["witness_dimension"] = r.bounds.witness_dimension;
  b["witness_length"] = r.bounds.witness_length;
  b["seed"] = r.bounds.seed;
  j["bounds"] = b;
  j["passed"] = r.count(AxiomStatus::pass);
  j["failed"] = r.count(AxiomStatus::fail);
  j["skipped"] = r.count(AxiomStatus::skipped);
  Json rs = Json::array();
  for (auto& a : r.results) {
    Json x;
    x["index"] = a.index;
    x["name"] = a.name;
    x["status"] = axiom_status_name(a.status);
    x["instances"] = a.instances;
    if (!a.detail.empty()) x["detail"] = a.detail;
    x["scope"] = a.scope;
    rs.push_back(x);
  }
  j["results"] = rs;
  return j;
}

inline Json character_table_json(const CharacterTable& t, const FgAbelianGroup& a) {
  Json j;
  j["group"] = a.to_string();
  j["elements"] = elements_json(t.elements);
  auto name = [&](long i) -> Json {
    if (i < 0) return nullptr;
    return t.elements[static_cast<std::size_t>(i)].to_string();
  };
  Json table = Json::array();
  for (auto& row : t.sum) {
    Json r = Json::array();
    for (long c : row) r.push_back(name(c));
    table.push_back(r);
  }
  j["sum_table"] = table;
  Json neg = Json::array();
  for (long c : t.negative) neg.push_back(name(c));
  j["negatives"] = neg;
  j["zero"] = name(t.zero);
  j["closed"] = t.closed;
  j["presented"] = t.presented.to_string();
  j["homomorphism"] = t.homomorphism;
  j["isomorphic"] = t.isomorphic(a);
  if (!t.mismatches.empty()) j["mismatches"] = t.mismatches;
  return j;
}

template <class F>
Json polys_json(const LaurentRing& R, const std::vector<Poly<F>>& ps) {
  Json a = Json::array();
  for (auto& p : ps) a.push_back(R.format(p));
  return a;
}

template <class F>
Json witness_json(const LaurentRing& R, const std::optional<std::vector<Poly<F>>>& w) {
  if (!w) return nullptr;
  return polys_json(R, *w);
}

inline Json certificate_json(const std::optional<DegreeCertificate>& c) {
  if (!c) return nullptr;
  Json j;
  j["generator"] = c->generator;
  Json e = Json::array(), l = Json::array();
  for (auto& x : c->exponent_class) e.push_back(x.get_str());
  for (auto& x : c->lattice_vector) l.push_back(x.get_str());
  j["exponent_class"] = e;
  j["lattice_vector"] = l;
  return j;
}

template <class F>
Json presentation_json(const SubgroupPresentation<F>& G) {
  Json j;
  j["name"] = G.name;
  j["field"] = G.ideal.k.name();
  j["n"] = G.ideal.n;
  j["generators"] = polys_json(G.ideal.ring(), G.ideal.generators);
  if (G.weights) {
    j["weights"]["group"] = (*G.weights)[0].owner()->to_string();
    j["weights"]["values"] = elements_json(*G.weights);
  }
  return j;
}

template <class F>
Json defining_degree_json(const SubgroupPresentation<F>& G, const DefiningDegreeResult<F>& r, bool witnesses) {
  const LaurentRing R = G.ideal.ring();
  Json j;
  j["group"] = presentation_json(G);
  j["status"] = degree_status_name(r.status);
  j["degree"] = r.degree;
  Json steps = Json::array();
  for (auto& s : r.steps) {
    Json x;
    x["d"] = s.d;
    x["cap"] = s.cap;
    x["truncation_size"] = s.truncation.basis.size();
    x["generates"] = s.generates;
    x["certificate"] = certificate_json(s.certificate);
    if (witnesses) {
      x["truncation"] = polys_json(R, s.truncation.basis);
      Json ws = Json::array();
      for (auto& w : s.generator_witnesses) ws.push_back(witness_json(R, w));
      x["generator_witnesses"] = ws;
    }
    steps.push_back(x);
  }
  j["steps"] = steps;
  return j;
}

template <class F>
Json degrees_equal_json(const SubgroupPresentation<F>& G, unsigned d, unsigned dprime, const DegreesEqualResult<F>& r,
                        bool witnesses) {
  const LaurentRing R = G.ideal.ring();
  Json j;
  j["group"] = presentation_json(G);
  j["d"] = d;
  j["d_prime"] = dprime;
  j["answer"] = tri_name(r.answer);
  j["lower_size"] = r.lower.basis.size();
  j["upper_size"] = r.upper.basis.size();
  j["certificate"] = certificate_json(r.certificate);
  if (witnesses) {
    j["lower"] = polys_json(R, r.lower.basis);
    j["upper"] = polys_json(R, r.upper.basis);
    Json ws = Json::array();
    for (auto& w : r.witnesses) ws.push_back(witness_json(R, w));
    j["witnesses"] = ws;
  }
  return j;
}

// Group files:
//   {"name": "mu3", "field": "Q", "weights": {"group": "Z/3", "values": ["1"]}}
//   {"name": "t", "field": "F5", "n": 2, "generators": ["Z[1,2]", "W[1,2]", ...]}
// "weights" builds the image of a diagonalizable group; "generators" is an
// arbitrary ideal of k[Z, 1/det] (the relations of GL_n are implicit).
template <class F>
SubgroupPresentation<F> presentation_from_json(const F& k, const Json& j) {
  if (!j.is_object()) throw std::invalid_argument("group file must hold a JSON object");
  for (auto it = j.begin(); it != j.end(); ++it)
    if (it.key() != "name" && it.key() != "field" && it.key() != "n" && it.key() != "weights" && it.key() != "generators")
      throw std::invalid_argument("unknown key '" + it.key() + "' in group file");
  const bool has_w = j.contains("weights"), has_g = j.contains("generators");
  if (has_w == has_g) throw std::invalid_argument("group file needs exactly one of 'weights' and 'generators'");
  std::string name = j.value("name", std::string());
  if (has_w) {
    const Json& w = j.at("weights");
    auto g = make_group(FgAbelianGroup::parse(w.at("group").get<std::string>()));
    std::vector<GroupElement> vals;
    for (auto& v : w.at("values")) vals.push_back(GroupElement::parse(g, v.is_string() ? v.get<std::string>() : v.dump()));
    if (j.contains("n") && j.at("n").get<std::size_t>() != vals.size())
      throw std::invalid_argument("'n' does not match the number of weights");
    return diagonalizable_image_ideal(k, vals, name);
  }
  if (!j.contains("n")) throw std::invalid_argument("a generator presentation needs 'n'");
  const std::size_t n = j.at("n").get<std::size_t>();
  LaurentRing R(n);
  LaurentIdeal<F> I{k, n, {}};
  for (auto& g : j.at("generators")) I.generators.push_back(R.parse(k, g.get<std::string>()));
  if (name.empty()) name = "G";
  return {name, I, std::nullopt};
}

// Rows on lines, entries separated by commas; integers or fractions a/b.
// Blank lines and lines starting with '#' are ignored.
template <class F>
Matrix<F> matrix_from_csv(const F& k, std::istream& in) {
  std::vector<std::vector<typename F::value_type>> rows;
  std::string line;
  while (std::getline(in, line)) {
    std::size_t a = line.find_first_not_of(" \t\r");
    if (a == std::string::npos || line[a] == '#') continue;
    std::vector<typename F::value_type> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      if (cell.find_first_not_of(" \t\r") == std::string::npos) throw std::invalid_argument("empty matrix entry");
      row.push_back(parse_scalar(k, cell));
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw std::invalid_argument("matrix file has no rows");
  return Matrix<F>::from_rows(k, rows);
}

}  // namespace proalg::io
