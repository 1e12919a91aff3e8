#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "qv/dsl.hpp"
#include "qv/fixtures.hpp"
#include "qv/induced.hpp"

using nlohmann::json;
using namespace qv;

namespace {

// Exit codes: 0 all checks pass, 1 a check failed, 2 usage or parse error.
constexpr int kOk = 0;
constexpr int kCheckFailed = 1;
constexpr int kUsage = 2;

struct Out {
  bool json_mode = false;
  void emit(const std::string& human, const json& j) const {
    if (json_mode)
      std::cout << j.dump() << "\n";
    else
      std::cout << human << "\n";
  }
};

struct Ctx {
  std::vector<Document> docs;
  Out out;
};

// Any of the four declarable kinds; exactly one field is set.
struct Object {
  std::optional<RelationMorphism> rel;
  std::optional<GraphHom> ghom;
  std::optional<PathHom> phom;
  GraphPtr graph;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Object find_in_fixture(const Fixture& fx, const std::string& name) {
  Object o;
  if (auto it = fx.relations.find(name); it != fx.relations.end())
    o.rel = it->second;
  else if (auto it2 = fx.graph_homs.find(name); it2 != fx.graph_homs.end())
    o.ghom = it2->second;
  else if (auto it3 = fx.path_homs.find(name); it3 != fx.path_homs.end())
    o.phom = it3->second;
  else if (auto it4 = fx.graphs.find(name); it4 != fx.graphs.end())
    o.graph = it4->second;
  else
    throw UsageError("fixture " + fx.id + " has no object named '" + name + "'");
  return o;
}

Object resolve(const Ctx& ctx, const std::string& ref) {
  if (ref.rfind("fx:", 0) == 0) {
    std::string rest = ref.substr(3);
    auto colon = rest.find(':');
    if (colon == std::string::npos)
      throw UsageError("'" + ref + "' names a whole fixture; use fx:<id>:<object>");
    std::string fid = rest.substr(0, colon);
    std::string obj = rest.substr(colon + 1);
    try {
      return find_in_fixture(get_fixture(fid), obj);
    } catch (const Error& e) {
      throw UsageError(e.what());
    }
  }
  Object o;
  for (const auto& doc : ctx.docs) {
    if (auto it = doc.relations.find(ref); it != doc.relations.end()) {
      o.rel = it->second;
      return o;
    }
    if (auto it = doc.graph_homs.find(ref); it != doc.graph_homs.end()) {
      o.ghom = it->second;
      return o;
    }
    if (auto it = doc.path_homs.find(ref); it != doc.path_homs.end()) {
      o.phom = it->second;
      return o;
    }
    if (auto it = doc.graphs.find(ref); it != doc.graphs.end()) {
      o.graph = it->second;
      return o;
    }
  }
  throw UsageError("unknown name '" + ref + "' (load declarations with -f FILE.qv or use fx:<id>:<object>)");
}

RelationMorphism resolve_relation(const Ctx& ctx, const std::string& ref) {
  Object o = resolve(ctx, ref);
  if (!o.rel) throw UsageError("'" + ref + "' is not a relation morphism");
  return *o.rel;
}

Level parse_level(const std::string& s) {
  if (s == "path") return Level::Path;
  if (s == "cohn") return Level::Cohn;
  if (s == "leavitt") return Level::Leavitt;
  throw UsageError("unknown level '" + s + "'");
}

std::string arrow(const RelationMorphism& r) {
  return r.name() + ": " + r.dom()->name() + " -> " + r.cod()->name();
}

std::string edge_count_str(const Graph& g) {
  std::uint64_t n = 0;
  for (FamilyIx f = 0; f < g.family_count(); ++f) {
    if (g.family(f).infinite()) return "inf";
    n += *g.family(f).count;
  }
  return std::to_string(n);
}

int cmd_check(const Ctx& ctx, const std::string& ref) {
  RelationMorphism r = resolve_relation(ctx, ref);
  AdmissibilityReport rep = admissibility_report(r);
  json j{{"event", "admissibility"},
         {"relation", r.name()},
         {"dom", r.dom()->name()},
         {"cod", r.cod()->name()},
         {"multiplicative", rep.multiplicative},
         {"decomposable", rep.decomposable},
         {"proper", rep.proper},
         {"vertex_disjoint", rep.vertex_disjoint},
         {"target_injective", rep.target_injective},
         {"target_surjective", rep.target_surjective},
         {"monotone", rep.monotone},
         {"regular", rep.regular},
         {"category", to_string(rep.category())},
         {"admissible", rep.admissible()}};
  std::ostringstream h;
  h << "relation " << arrow(r) << "\n"
    << "  multiplicative:    " << (rep.multiplicative ? "true" : "false") << "\n"
    << "  decomposable:      " << (rep.decomposable ? "true" : "false") << "\n"
    << "  proper:            " << (rep.proper ? "true" : "false") << "\n"
    << "  vertex_disjoint:   " << (rep.vertex_disjoint ? "true" : "false") << "\n"
    << "  target_injective:  " << (rep.target_injective ? "true" : "false") << "\n"
    << "  target_surjective: " << (rep.target_surjective ? "true" : "false") << "\n"
    << "  monotone:          " << (rep.monotone ? "true" : "false") << "\n"
    << "  regular:           " << (rep.regular ? "true" : "false") << "\n"
    << "  category:          " << to_string(rep.category()) << "\n"
    << "  admissible:        " << (rep.admissible() ? "true" : "false");
  ctx.out.emit(h.str(), j);
  return rep.admissible() ? kOk : kCheckFailed;
}

int cmd_factor(const Ctx& ctx, const std::string& ref) {
  RelationMorphism r = resolve_relation(ctx, ref);
  Factorization f = pullback_factorize(r);
  PathHomFlags tr = classify_path_hom(f.theta);
  GraphHomFlags pr = classify_graph_hom(f.phi);

  std::vector<std::string> reasons;
  if (!tr.injective_on_vertices) reasons.push_back("theta not injective on vertices");
  if (!tr.monotone) reasons.push_back("theta not monotone");
  if (!tr.regular) reasons.push_back("theta not regular");
  if (!pr.proper) reasons.push_back("phi not proper");
  if (!pr.target_injective) reasons.push_back("phi not target injective");
  if (!pr.target_surjective) reasons.push_back("phi not target surjective");
  if (!pr.regular) reasons.push_back("phi not regular");
  bool ok = tr.category() == PathHomCategory::RMIPG &&
            pr.category() == GraphHomCategory::CRTBPOG;

  json j{{"event", "factorization"},
         {"relation", r.name()},
         {"relation_graph", f.relation_graph->name()},
         {"relation_graph_vertices", f.relation_graph->vertex_count()},
         {"relation_graph_edges", edge_count_str(*f.relation_graph)},
         {"theta", to_string(tr.category())},
         {"theta_regular", tr.regular},
         {"phi", to_string(pr.category())},
         {"phi_target_surjective", pr.target_surjective},
         {"ok", ok}};
  j["reasons"] = reasons;
  std::size_t nv = f.relation_graph->vertex_count();
  std::string ne = edge_count_str(*f.relation_graph);
  std::ostringstream h;
  h << "factorization of " << arrow(r) << "\n"
    << "  relation graph: " << nv << (nv == 1 ? " vertex, " : " vertices, ") << ne
    << (ne == "1" ? " edge\n" : " edges\n")
    << "  theta: " << to_string(tr.category()) << "\n"
    << "  phi:   " << to_string(pr.category());
  for (const auto& reason : reasons) h << "\n  " << reason;
  ctx.out.emit(h.str(), j);
  return ok ? kOk : kCheckFailed;
}

int cmd_compose(const Ctx& ctx, const std::string& sref, const std::string& rref,
                const std::string& as_name) {
  RelationMorphism s = resolve_relation(ctx, sref);
  RelationMorphism r = resolve_relation(ctx, rref);
  RelationMorphism c = compose_relations(s, r);
  RelationMorphism renamed(as_name, c.dom(), c.cod(), c.gen_v(), c.gen_e(), c.gen_fam());

  Document doc;
  doc.add(c.dom());
  if (c.cod() != c.dom()) doc.add(c.cod());
  doc.add(renamed);

  json gv = json::array(), ge = json::array(), gf = json::array();
  for (const auto& p : renamed.gen_v()) gv.push_back(print_vertex_pair(renamed, p));
  for (const auto& p : renamed.gen_e()) ge.push_back(print_edge_pair(renamed, p));
  for (const auto& p : renamed.gen_fam())
    gf.push_back({renamed.dom()->family(p.a).name, renamed.cod()->family(p.b).name});
  json j{{"event", "composite"},
         {"name", as_name},
         {"dom", c.dom()->name()},
         {"cod", c.cod()->name()},
         {"vertices", gv},
         {"edges", ge},
         {"families", gf},
         {"category", to_string(admissibility_report(renamed).category())}};
  ctx.out.emit(print_document(doc), j);
  return kOk;
}

int cmd_induce(const Ctx& ctx, const std::string& ref, Level level,
               const std::string& level_name) {
  RelationMorphism r = resolve_relation(ctx, ref);
  InducedHom h = induce(r, level);
  const Graph& src = *h.source();
  ctx.out.emit("induced hom of " + arrow(r) + " at level " + level_name +
                   ": algebra over " + src.name() + " -> algebra over " +
                   h.target()->name(),
               json{{"event", "induced"},
                    {"relation", r.name()},
                    {"level", level_name},
                    {"from", src.name()},
                    {"to", h.target()->name()}});
  auto gen_line = [&](const std::string& gen, const AlgebraElement& img) {
    ctx.out.emit("  " + gen + " -> " + to_string(img),
                 json{{"event", "generator_image"},
                      {"generator", gen},
                      {"image", to_string(img)}});
  };
  for (VertexIx v = 0; v < src.vertex_count(); ++v)
    gen_line("S(" + src.vertex_name(v) + ")", h.vertex_image(v));
  for (FamilyIx f = 0; f < src.family_count(); ++f) {
    // Infinite families show the first two members as representatives.
    std::uint32_t members = src.family(f).infinite() ? 2 : *src.family(f).count;
    for (std::uint32_t i = 0; i < members; ++i) {
      EdgeRef e{f, i};
      gen_line("S(" + src.edge_name(e) + ")", h.edge_image(e));
      if (level != Level::Path) gen_line("S(" + src.edge_name(e) + ")*", h.ghost_image(e));
    }
  }
  return kOk;
}

int cmd_eval(const Ctx& ctx, const std::string& ref, const std::string& expr, Level level,
             const std::string& level_name) {
  Object o = resolve(ctx, ref);
  RelationMorphism r = [&] {
    if (o.rel) return *o.rel;
    if (o.ghom) return lift_graph_hom(*o.ghom);
    if (o.phom) return lower_path_hom(*o.phom);
    throw UsageError("'" + ref + "' is not a relation or homomorphism");
  }();
  InducedHom h = induce(r, level);
  AlgebraElement in = [&] {
    try {
      return parse_element(level, h.source(), expr);
    } catch (const Error& e) {
      throw UsageError(e.what());
    }
  }();
  AlgebraElement val = h.apply(in);
  ctx.out.emit("under " + r.name() + " at level " + level_name + ":\n  " + to_string(in) +
                   "  ->  " + to_string(val),
               json{{"event", "eval"},
                    {"hom", r.name()},
                    {"level", level_name},
                    {"input", to_string(in)},
                    {"output", to_string(val)}});
  return kOk;
}

int cmd_demo(const Ctx& ctx, std::string id, const std::vector<std::string>& params,
             std::optional<long> n, std::optional<long> k) {
  if (id.rfind("fx:", 0) == 0) id = id.substr(3);
  std::optional<long> pn = n, pk = k;
  for (const auto& p : params) {
    auto eq = p.find('=');
    if (eq == std::string::npos) throw UsageError("--param expects key=value, got '" + p + "'");
    std::string key = p.substr(0, eq), val = p.substr(eq + 1);
    if (val.empty() || val.find_first_not_of("0123456789") != std::string::npos)
      throw UsageError("--param " + key + " expects a number, got '" + val + "'");
    if (key == "n")
      pn = std::stol(val);
    else if (key == "k")
      pk = std::stol(val);
    else
      throw UsageError("unknown fixture parameter '" + key + "'");
  }
  if (pn || pk) {
    if (id.find('(') != std::string::npos)
      throw UsageError("fixture id '" + id + "' already carries parameters");
    if (!pn) throw UsageError("parameter k requires n");
    id += "(" + std::to_string(*pn) + (pk ? "," + std::to_string(*pk) : "") + ")";
  }
  Fixture fx = [&] {
    try {
      return get_fixture(id);
    } catch (const Error& e) {
      throw UsageError(e.what());
    }
  }();

  ctx.out.emit("fixture " + fx.id + ": " + fx.title,
               json{{"event", "demo"}, {"fixture", fx.id}, {"title", fx.title}});
  int mismatches = 0;
  for (const auto& row : fx.expected) {
    std::string got;
    try {
      got = row.compute();
    } catch (const std::exception& e) {
      got = std::string("<error: ") + e.what() + ">";
    }
    bool match = got == row.expected;
    if (!match) ++mismatches;
    std::ostringstream h;
    h << "  " << (match ? "ok   " : "FAIL ") << row.key << " = " << got << "   ["
      << row.provenance << "]";
    if (!match) h << "\n       expected: " << row.expected;
    ctx.out.emit(h.str(), json{{"event", "expected_row"},
                               {"fixture", fx.id},
                               {"key", row.key},
                               {"provenance", row.provenance},
                               {"expected", row.expected},
                               {"computed", got},
                               {"match", match}});
  }
  ctx.out.emit("fixture " + fx.id + ": " + std::to_string(fx.expected.size()) + " rows, " +
                   std::to_string(mismatches) + " mismatches",
               json{{"event", "demo_summary"},
                    {"fixture", fx.id},
                    {"rows", fx.expected.size()},
                    {"mismatches", mismatches}});
  return mismatches == 0 ? kOk : kCheckFailed;
}

int cmd_export(const Ctx& ctx, const std::string& ref) {
  Object o = resolve(ctx, ref);
  if (o.graph) {
    std::cout << export_dot(*o.graph);
    return kOk;
  }
  if (o.rel) {
    std::cout << export_dot(*pullback_factorize(*o.rel).relation_graph);
    return kOk;
  }
  throw UsageError("'" + ref + "' is not a graph or relation (only those export to DOT)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"workbench for relation morphisms of directed graphs and their path algebras"};
  app.require_subcommand(1);

  std::vector<std::string> files;
  bool json_mode = false;
  app.add_option("-f,--file", files, "load declarations from a .qv file (repeatable)");
  app.add_flag("--json", json_mode, "machine output, one JSON object per line");

  std::string ref, ref2, expr, level_s = "path", as_name = "composite", demo_id;
  std::vector<std::string> demo_params;
  std::optional<long> demo_n, demo_k;
  bool want_dot = false;

  CLI::App* c_check = app.add_subcommand("check", "admissibility report for a relation");
  c_check->add_option("relation", ref)->required();

  CLI::App* c_factor =
      app.add_subcommand("factor", "pullback factorization and classification");
  c_factor->add_option("relation", ref)->required();

  CLI::App* c_compose = app.add_subcommand("compose", "compose two relations (S after R)");
  c_compose->add_option("S", ref)->required();
  c_compose->add_option("R", ref2)->required();
  c_compose->add_option("--as", as_name, "name for the composite");

  CLI::App* c_induce = app.add_subcommand("induce", "induced algebra hom of a relation");
  c_induce->add_option("relation", ref)->required();
  c_induce->add_option("--level", level_s, "path | cohn | leavitt")
      ->required()
      ->check(CLI::IsMember({"path", "cohn", "leavitt"}));

  CLI::App* c_eval = app.add_subcommand("eval", "apply an induced hom to an element");
  c_eval->add_option("hom", ref)->required();
  c_eval->add_option("element", expr)->required();
  c_eval->add_option("--level", level_s, "path | cohn | leavitt (default path)")
      ->check(CLI::IsMember({"path", "cohn", "leavitt"}));

  CLI::App* c_demo = app.add_subcommand("demo", "replay a fixture's expected-value table");
  c_demo->add_option("fixture", demo_id)->required();
  c_demo->add_option("--param", demo_params, "fixture parameter key=value (repeatable)");
  c_demo->add_option("--n", demo_n, "fixture parameter n");
  c_demo->add_option("--k", demo_k, "fixture parameter k");

  CLI::App* c_export = app.add_subcommand("export", "export a graph or relation graph");
  c_export->add_option("name", ref)->required();
  c_export->add_flag("--dot", want_dot, "DOT format (the only format)");

  for (CLI::App* sub : app.get_subcommands({})) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  Ctx ctx;
  ctx.out.json_mode = json_mode;
  try {
    for (const auto& fname : files) {
      std::ifstream in(fname);
      if (!in) throw UsageError("cannot open '" + fname + "'");
      std::stringstream buf;
      buf << in.rdbuf();
      try {
        ctx.docs.push_back(parse_document(buf.str()));
      } catch (const Error& e) {
        throw UsageError(fname + ": " + e.what());
      }
    }

    if (c_check->parsed()) return cmd_check(ctx, ref);
    if (c_factor->parsed()) return cmd_factor(ctx, ref);
    if (c_compose->parsed()) return cmd_compose(ctx, ref, ref2, as_name);
    if (c_induce->parsed()) return cmd_induce(ctx, ref, parse_level(level_s), level_s);
    if (c_eval->parsed()) return cmd_eval(ctx, ref, expr, parse_level(level_s), level_s);
    if (c_demo->parsed()) return cmd_demo(ctx, demo_id, demo_params, demo_n, demo_k);
    if (c_export->parsed()) return cmd_export(ctx, ref);
    std::cerr << "no command\n";
    return kUsage;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kCheckFailed;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kCheckFailed;
  }
}
