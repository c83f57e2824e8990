// proalg: command-line front end.
//
// Exit codes: 0 success, 1 mathematical failure (an axiom fails, a search stops
// unknown at its cap, a character table does not match), 2 usage or input error.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "proalg/io.hpp"

namespace {

using proalg::io::Json;

struct Output {
  std::string format = "text";
  std::string path;
  std::uint64_t seed = 1;

  bool json() const { return format == "json"; }
  void emit(const Json& j, const std::string& text) const {
    std::ostringstream os;
    if (json())
      os << j.dump(2) << "\n";
    else
      os << text;
    if (path.empty()) {
      std::cout << os.str();
      return;
    }
    std::ofstream f(path);
    if (!f) throw std::invalid_argument("cannot write " + path);
    f << os.str();
  }
};

struct usage_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

Json read_json_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw usage_error("cannot read " + path);
  try {
    return Json::parse(f);
  } catch (const Json::parse_error& e) {
    throw usage_error(path + ": " + e.what());
  }
}

template <class F>
proalg::Matrix<F> read_matrix_file(const F& k, const std::string& path) {
  std::ifstream f(path);
  if (!f) throw usage_error("cannot read " + path);
  return proalg::io::matrix_from_csv(k, f);
}

std::vector<std::size_t> parse_index_list(const std::string& text) {
  std::vector<std::size_t> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    std::size_t used = 0;
    unsigned long v = 0;
    try {
      v = std::stoul(tok, &used);
    } catch (const std::exception&) {
      throw usage_error("bad index list '" + text + "'");
    }
    if (used != tok.size() || v < 1) throw usage_error("indices are 1-based integers: '" + text + "'");
    out.push_back(v - 1);
  }
  if (out.empty()) throw usage_error("empty index list");
  return out;
}

proalg::GroupPtr parse_group(const std::string& s) { return proalg::make_group(proalg::FgAbelianGroup::parse(s)); }

std::vector<proalg::GroupElement> group_elements(const proalg::GroupPtr& g, long bound) {
  return g->is_finite() ? proalg::finite_elements(g) : proalg::bounded_elements(g, bound);
}

// ---- model inspect

struct InspectArgs {
  std::string field, group;
  std::size_t max_dim = 2, max_len = 2, limit = 5000;
  long bound = 1;
  bool homs = false;
};

int cmd_model_inspect(const InspectArgs& a, const Output& out) {
  auto field = proalg::parse_field(a.field);
  auto g = parse_group(a.group);
  auto objs = proalg::fragment_objects(group_elements(g, a.bound), a.max_dim, a.max_len);
  if (objs.size() > a.limit)
    throw usage_error(std::to_string(objs.size()) + " objects exceed --limit " + std::to_string(a.limit));
  std::stable_sort(objs.begin(), objs.end(),
                   [](const proalg::BaseObject& x, const proalg::BaseObject& y) { return proalg::sort_of(x) < proalg::sort_of(y); });
  Json j = proalg::io::document("model-inspect");
  j["field"] = a.field;
  j["group"] = g->to_string();
  j["bounds"] = {{"max_dimension", a.max_dim}, {"max_tensor_length", a.max_len}};
  if (!g->is_finite()) j["bounds"]["element_bound"] = a.bound;
  std::ostringstream t;
  t << "M(" << proalg::field_name(field) << ", " << g->to_string() << "), n <= " << a.max_dim << ", m <= " << a.max_len;
  if (!g->is_finite()) t << ", free coordinates in [-" << a.bound << ", " << a.bound << "]";
  t << "\n";
  Json frags = Json::array();
  std::size_t i = 0;
  while (i < objs.size()) {
    auto s = proalg::sort_of(objs[i]);
    Json f;
    f["sort"] = {s.m, s.n};
    Json list = Json::array();
    std::size_t count = 0;
    std::ostringstream lines;
    for (; i < objs.size() && proalg::sort_of(objs[i]) == s; ++i, ++count) {
      Json o = proalg::io::object_json(objs[i]);
      auto d = std::visit([&](const auto& k) { return proalg::dual(k, objs[i]).object; }, field);
      o["dual"] = proalg::format_object(d);
      lines << "  " << proalg::format_object(objs[i]) << "  dual " << proalg::format_object(d) << "\n";
      list.push_back(o);
    }
    f["count"] = count;
    f["objects"] = list;
    frags.push_back(f);
    t << "B_" << s.to_string() << ": " << count << " objects\n" << lines.str();
  }
  j["object_count"] = objs.size();
  j["fragments"] = frags;
  if (a.homs) {
    Json keys = Json::array(), rows = Json::array();
    t << "hom dimensions (row source, column target)\n";
    for (auto& b : objs) keys.push_back(proalg::format_object(b));
    for (auto& b : objs) {
      Json r = Json::array();
      for (auto& c : objs) r.push_back(proalg::hom_dimension(b, c));
      t << "  " << proalg::format_object(b) << ":";
      for (auto& v : r) t << " " << v.get<std::size_t>();
      t << "\n";
      rows.push_back(r);
    }
    j["hom_dimensions"] = {{"objects", keys}, {"matrix", rows}};
  }
  out.emit(j, t.str());
  return 0;
}

// ---- char-group

int cmd_char_group(const std::string& field_s, const std::string& group_s, long bound, const Output& out) {
  auto field = proalg::parse_field(field_s);
  auto g = parse_group(group_s);
  auto elems = group_elements(g, bound);
  auto table = std::visit([&](const auto& k) { return proalg::extract_character_group(k, elems); }, field);
  Json j = proalg::io::document("char-group");
  j["field"] = field_s;
  if (!g->is_finite()) j["element_bound"] = bound;
  j.update(proalg::io::character_table_json(table, *g));
  const bool ok = table.isomorphic(*g);
  std::ostringstream t;
  t << "A = " << g->to_string() << ", " << elems.size() << " characters" << (table.closed ? "" : " (partial table)") << "\n";
  t << "extracted group: " << table.presented.to_string() << "\n";
  t << "{a} -> a respects the table: " << (table.homomorphism ? "yes" : "no") << "\n";
  for (auto& m : table.mismatches) t << "  " << m << "\n";
  t << "verdict: " << (ok ? "pass" : "fail") << "\n";
  out.emit(j, t.str());
  return ok ? 0 : 1;
}

// ---- axioms check

struct AxiomArgs {
  std::string field = "F5", group = "Z/4";
  std::size_t max_dim = 3, max_len = 2, witness_dim = 0, witness_len = 0;
  std::vector<int> only;
  int mutation = 0;
};

int cmd_axioms(const AxiomArgs& a, const Output& out) {
  auto field = proalg::parse_field(a.field);
  if (!std::holds_alternative<proalg::PrimeField>(field)) throw usage_error("axioms check needs a prime field, e.g. F5");
  const auto& k = std::get<proalg::PrimeField>(field);
  auto g = parse_group(a.group);
  if (!g->is_finite()) throw usage_error("axioms check needs a finite group");
  auto b = proalg::FragmentBound::defaults(a.max_dim, a.max_len);
  if (a.witness_dim) b.witness_dimension = a.witness_dim;
  if (a.witness_len) b.witness_length = a.witness_len;
  b.seed = out.seed;
  for (int i : a.only)
    if (i < 1 || i > 27) throw usage_error("axiom indices run from 1 to 27");
  auto hooks = proalg::model::canonical_model(k, g);
  std::string mutation_name;
  if (a.mutation) {
    auto muts = proalg::targeted_mutations(a.max_dim);
    muts.push_back(proalg::zero_tensor_mutation());
    auto it = std::find_if(muts.begin(), muts.end(), [&](const proalg::Mutation& m) { return m.target == a.mutation; });
    if (it == muts.end()) throw usage_error("no mutation targets axiom " + std::to_string(a.mutation));
    it->apply(hooks, k, g);
    mutation_name = it->name;
  }
  auto rep = proalg::check_axioms(k, g, hooks, b, a.only);
  Json j = proalg::io::document("axiom-report");
  j.update(proalg::io::axiom_report_json(rep));
  if (a.mutation) j["mutation"] = {{"target", a.mutation}, {"name", mutation_name}};
  std::ostringstream t;
  t << "M(" << rep.field << ", " << rep.group << "), N = " << b.max_dimension << ", M = " << b.max_tensor_length
    << ", witnesses N_w = " << b.witness_dimension << ", M_w = " << b.witness_length << "\n";
  if (a.mutation) t << "mutation: " << mutation_name << "\n";
  for (auto& r : rep.results) {
    t << "(" << r.index << ") " << r.name << ": " << proalg::axiom_status_name(r.status);
    if (!r.detail.empty()) t << " - " << r.detail;
    t << "\n";
  }
  t << rep.count(proalg::AxiomStatus::pass) << "/" << rep.results.size() << " pass, "
    << rep.count(proalg::AxiomStatus::skipped) << " skipped\n";
  out.emit(j, t.str());
  return rep.count(proalg::AxiomStatus::fail) ? 1 : 0;
}

// ---- paren

std::string shape_text(const proalg::ParenShape& s) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < s.leaf_count(); ++i) names.push_back("V" + std::to_string(i + 1));
  return s.refill(names).str([](const std::string& v) { return v; }, ",");
}

int cmd_paren_encode(const std::string& pattern, std::size_t pad_to, const Output& out) {
  auto p = proalg::parse_pattern(pattern);
  auto c = pad_to ? proalg::encode_shape(p, pad_to) : proalg::encode_shape(p);
  Json j = proalg::io::document("paren-encode");
  j["pattern"] = proalg::format_pattern(p);
  j["bits"] = c.spaced();
  j["length"] = c.size();
  out.emit(j, c.spaced() + "\n");
  return 0;
}

int cmd_paren_decode(const std::string& bits, const Output& out) {
  auto c = proalg::BitCode::parse(bits);
  auto p = proalg::decode_shape(c);
  Json j = proalg::io::document("paren-decode");
  j["bits"] = c.spaced();
  j["pattern"] = proalg::format_pattern(p);
  j["pattern_dots"] = proalg::format_pattern(p, "•");
  out.emit(j, proalg::format_pattern(p) + "\n");
  return 0;
}

int cmd_paren_count(std::size_t m, bool list, const Output& out) {
  if (m < 1) throw usage_error("--m must be at least 1");
  auto shapes = proalg::enumerate_shapes(m);
  Json j = proalg::io::document("paren-count");
  j["m"] = m;
  j["count"] = shapes.size();
  std::ostringstream t;
  t << shapes.size() << "\n";
  if (list) {
    Json a = Json::array();
    for (auto& s : shapes) {
      a.push_back(shape_text(s));
      t << "  " << shape_text(s) << "\n";
    }
    j["shapes"] = a;
  }
  out.emit(j, t.str());
  return 0;
}

// ---- stab

int cmd_stab_qpolys(const std::string& field_s, const std::string& shape, std::size_t n, const std::string& pivots,
                    const std::string& matrix, const Output& out) {
  auto field = proalg::parse_field(field_s);
  auto P = proalg::ShapePolynomial::parse(shape);
  auto piv = parse_index_list(pivots);
  return std::visit(
      [&](const auto& k) {
        using F = std::decay_t<decltype(k)>;
        proalg::StabilizerProblem<F> pr{P, n, piv, read_matrix_file(k, matrix)};
        auto qs = proalg::stabilizer_polys(pr);
        proalg::LaurentRing R(n);
        Json j = proalg::io::document("stabilizer-polys");
        j["field"] = k.name();
        j["shape"] = P.to_string();
        j["n"] = n;
        j["dimension"] = P.dimension(n);
        j["subspace"] = proalg::io::matrix_json(pr.A);
        j["pivots"] = pivots;
        j["polynomials"] = proalg::io::polys_json(R, qs);
        std::ostringstream t;
        for (auto& q : qs) t << R.format(q) << "\n";
        out.emit(j, t.str());
        return 0;
      },
      field);
}

int cmd_stab_is_stable(const std::string& field_s, const std::string& group_s, const std::string& object,
                       const std::string& shape, const std::string& matrix, const Output& out) {
  auto field = proalg::parse_field(field_s);
  auto g = parse_group(group_s);
  auto b = proalg::parse_object(g, object);
  auto P = proalg::ShapePolynomial::parse(shape);
  return std::visit(
      [&](const auto& k) {
        auto A = read_matrix_file(k, matrix);
        bool s = proalg::is_stable(b, P, A);
        Json j = proalg::io::document("is-stable");
        j["field"] = k.name();
        j["object"] = proalg::format_object(b);
        j["shape"] = P.to_string();
        j["subspace"] = proalg::io::matrix_json(A);
        j["stable"] = s;
        out.emit(j, std::string(s ? "stable" : "not stable") + "\n");
        return 0;
      },
      field);
}

template <class Fn>
int with_presentation(const std::string& field_s, const std::string& file, Fn fn) {
  Json spec = read_json_file(file);
  std::string fs = field_s;
  if (fs.empty()) fs = spec.value("field", std::string("Q"));
  auto field = proalg::parse_field(fs);
  return std::visit([&](const auto& k) { return fn(proalg::io::presentation_from_json(k, spec)); }, field);
}

int cmd_stab_defining_degree(const std::string& field_s, const std::string& file, unsigned dmax, unsigned cap,
                             bool witnesses, const Output& out) {
  return with_presentation(field_s, file, [&](const auto& G) {
    std::optional<unsigned> c;
    if (cap) c = cap;
    auto r = proalg::defining_degree(G, dmax, c);
    Json j = proalg::io::document("defining-degree");
    j.update(proalg::io::defining_degree_json(G, r, witnesses));
    std::ostringstream t;
    if (r.status == proalg::DegreeStatus::found)
      t << r.degree << "\n";
    else
      t << proalg::degree_status_name(r.status) << " at d = " << r.degree << "\n";
    out.emit(j, t.str());
    return r.status == proalg::DegreeStatus::unknown_at_cap ? 1 : 0;
  });
}

int cmd_stab_degrees_equal(const std::string& field_s, const std::string& file, unsigned d, unsigned dprime, unsigned cap,
                           bool witnesses, const Output& out) {
  if (dprime < d) throw usage_error("need --d <= --d-prime");
  return with_presentation(field_s, file, [&](const auto& G) {
    std::optional<unsigned> c;
    if (cap) c = cap;
    auto r = proalg::degrees_equal_check(G, d, dprime, c);
    Json j = proalg::io::document("degrees-equal");
    j.update(proalg::io::degrees_equal_json(G, d, dprime, r, witnesses));
    out.emit(j, std::string(proalg::tri_name(r.answer)) + "\n");
    return r.answer == proalg::Tri::unknown_at_cap ? 1 : 0;
  });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tannakian models of diagonalizable groups: axioms, character groups, parenthesization codes and defining degrees"};
  app.require_subcommand(1);
  Output out;
  bool json = false;
  app.add_option("--format", out.format, "Output format")->check(CLI::IsMember({"text", "json"}));
  app.add_flag("--json", json, "Same as --format json");
  app.add_option("-o,--output", out.path, "Write the result to a file");
  app.add_option("--seed", out.seed, "Seed for sampled checks")->capture_default_str();

  std::function<int()> run;

  // model inspect
  auto* model = app.add_subcommand("model", "The canonical model M(k, A)");
  model->require_subcommand(1);
  InspectArgs ia;
  auto* inspect = model->add_subcommand("inspect", "List objects up to the bounds with their duals");
  inspect->add_option("--field", ia.field, "Q or F<p>")->required();
  inspect->add_option("--group", ia.group, "e.g. Z/4, Z + Z/2")->required();
  inspect->add_option("--max-dim", ia.max_dim)->capture_default_str()->check(CLI::PositiveNumber);
  inspect->add_option("--max-len", ia.max_len)->capture_default_str()->check(CLI::PositiveNumber);
  inspect->add_option("--bound", ia.bound, "Free coordinates range over [-bound, bound]")->capture_default_str()->check(CLI::NonNegativeNumber);
  inspect->add_option("--limit", ia.limit, "Refuse to list more objects than this")->capture_default_str();
  inspect->add_flag("--homs", ia.homs, "Include the table of Hom dimensions");
  inspect->callback([&] { run = [&] { return cmd_model_inspect(ia, out); }; });

  // char-group
  std::string cg_field = "Q", cg_group;
  long cg_bound = 2;
  auto* cg = app.add_subcommand("char-group", "Read the character group off the one-dimensional objects");
  cg->add_option("--field", cg_field)->capture_default_str();
  cg->add_option("--group", cg_group)->required();
  cg->add_option("--bound", cg_bound, "Free coordinates range over [-bound, bound]")->capture_default_str()->check(CLI::NonNegativeNumber);
  cg->callback([&] { run = [&] { return cmd_char_group(cg_field, cg_group, cg_bound, out); }; });

  // axioms check
  auto* ax = app.add_subcommand("axioms", "Bounded checks of the 27 axioms");
  ax->require_subcommand(1);
  AxiomArgs aa;
  auto* check = ax->add_subcommand("check", "Check the axioms on M(F_p, A) up to the bounds");
  check->add_option("--field", aa.field)->capture_default_str();
  check->add_option("--group", aa.group)->capture_default_str();
  check->add_option("--max-dim", aa.max_dim, "N")->capture_default_str()->check(CLI::PositiveNumber);
  check->add_option("--max-len", aa.max_len, "M")->capture_default_str()->check(CLI::PositiveNumber);
  check->add_option("--witness-dim", aa.witness_dim, "N_w (default N + 2)");
  check->add_option("--witness-len", aa.witness_len, "M_w (default M + 1)");
  check->add_option("--only", aa.only, "Check only these axioms")->delimiter(',');
  check->add_option("--mutation", aa.mutation, "Corrupt the model with the mutation aimed at this axiom");
  check->callback([&] { run = [&] { return cmd_axioms(aa, out); }; });

  // paren
  auto* paren = app.add_subcommand("paren", "Parenthesization shapes and their bit codes");
  paren->require_subcommand(1);
  std::string pattern, bits;
  std::size_t pad_to = 0, m = 1;
  bool list = false;
  auto* enc = paren->add_subcommand("encode", "Pattern to bits");
  enc->add_option("--pattern", pattern, "e.g. \"(((_ _ _)(_))(_ _))\"")->required();
  enc->add_option("--pad-to", pad_to, "Pad with 11 blocks to this many bits");
  enc->callback([&] { run = [&] { return cmd_paren_encode(pattern, pad_to, out); }; });
  auto* dec = paren->add_subcommand("decode", "Bits to pattern");
  dec->add_option("--bits", bits)->required();
  dec->callback([&] { run = [&] { return cmd_paren_decode(bits, out); }; });
  auto* cnt = paren->add_subcommand("count", "Number of parenthesizations of m factors");
  cnt->add_option("--m", m)->required();
  cnt->add_flag("--list", list, "Also list the shapes");
  cnt->callback([&] { run = [&] { return cmd_paren_count(m, list, out); }; });

  // stab
  auto* stab = app.add_subcommand("stab", "Stabilizers and defining degrees");
  stab->require_subcommand(1);
  std::string s_field, s_shape, s_pivots = "1", s_matrix, s_group, s_object, s_file;
  std::size_t s_n = 1;
  unsigned s_dmax = 4, s_cap = 0, s_d = 1, s_dprime = 2;
  bool s_wit = false;
  auto* qp = stab->add_subcommand("qpolys", "Stabilizer polynomials of a subspace of P(V, V*)");
  qp->add_option("--field", s_field, "Q or F<p>")->default_val("Q");
  qp->add_option("--shape", s_shape, "e.g. X*Y+1")->required();
  qp->add_option("--n", s_n, "dim V")->required()->check(CLI::PositiveNumber);
  qp->add_option("--pivots", s_pivots, "1-based pivot rows, comma separated")->capture_default_str();
  qp->add_option("--matrix", s_matrix, "CSV file, one column per basis vector")->required();
  qp->callback([&] { run = [&] { return cmd_stab_qpolys(s_field, s_shape, s_n, s_pivots, s_matrix, out); }; });
  auto* st = stab->add_subcommand("is-stable", "Is a subspace of P(X(b), X(b)*) stable under D(A)?");
  st->add_option("--field", s_field, "Q or F<p>")->default_val("Q");
  st->add_option("--group", s_group)->required();
  st->add_option("--object", s_object, "e.g. \"{1 2}\"")->required();
  st->add_option("--shape", s_shape)->required();
  st->add_option("--matrix", s_matrix)->required();
  st->callback([&] { run = [&] { return cmd_stab_is_stable(s_field, s_group, s_object, s_shape, s_matrix, out); }; });
  auto* dd = stab->add_subcommand("defining-degree", "Smallest d with G = G_{<=d}");
  dd->add_option("--group-file", s_file)->required();
  dd->add_option("--field", s_field, "Overrides the field of the group file");
  dd->add_option("--dmax", s_dmax)->capture_default_str();
  dd->add_option("--cap", s_cap, "Work cap on product degrees (default 2d + 2)");
  dd->add_flag("--witnesses", s_wit, "Include truncations and witness cofactors");
  dd->callback([&] { run = [&] { return cmd_stab_defining_degree(s_field, s_file, s_dmax, s_cap, s_wit, out); }; });
  auto* de = stab->add_subcommand("degrees-equal", "Is G_{<=d} = G_{<=d'}?");
  de->add_option("--group-file", s_file)->required();
  de->add_option("--field", s_field, "Overrides the field of the group file");
  de->add_option("--d", s_d)->capture_default_str();
  de->add_option("--d-prime", s_dprime)->capture_default_str();
  de->add_option("--cap", s_cap, "Work cap on product degrees (default 2d' + 2)");
  de->add_flag("--witnesses", s_wit, "Include truncations and witness cofactors");
  de->callback([&] { run = [&] { return cmd_stab_degrees_equal(s_field, s_file, s_d, s_dprime, s_cap, s_wit, out); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  if (json) out.format = "json";
  try {
    return run ? run() : 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const Json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
}
