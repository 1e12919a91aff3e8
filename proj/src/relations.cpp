#include "qv/relations.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace qv {

bool RelationMorphism::has_vertex_pair(VertexIx u, VertexIx v) const {
  return std::binary_search(gen_v_.begin(), gen_v_.end(), VertexPairGen{u, v});
}

namespace {

template <typename T>
void sort_unique(std::vector<T>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace

RelationMorphism from_generators(std::string name, GraphPtr dom, GraphPtr cod,
                                 std::vector<VertexPairGen> gen_v,
                                 std::vector<EdgePairGen> gen_e,
                                 std::vector<FamilyPairGen> gen_fam) {
  const std::string what = "relation '" + name + "'";
  check(dom && cod, what + ": missing graph");
  sort_unique(gen_v);
  sort_unique(gen_e);
  sort_unique(gen_fam);
  auto has_pair = [&](VertexIx u, VertexIx v) {
    return std::binary_search(gen_v.begin(), gen_v.end(), VertexPairGen{u, v});
  };
  for (const auto& p : gen_v) {
    check(p.u < dom->vertex_count() && p.v < cod->vertex_count(),
          what + ": vertex pair out of range");
  }
  for (const auto& p : gen_e) {
    check(cod->valid(p.f), what + ": generator edge out of range");
    check(!cod->family(p.f.family).infinite(),
          what + ": generator edge '" + cod->edge_name(p.f) +
              "' lies in an infinite family; relate the whole family instead");
    check(p.x.source() < dom->vertex_count(), what + ": bad generator path");
    for (EdgeRef e : p.x.edges()) {
      check(dom->valid(e), what + ": generator path has an invalid edge");
      check(!dom->family(e.family).infinite(),
            what + ": generator path traverses the infinite family '" +
                dom->family(e.family).name + "'");
    }
    check(has_pair(p.x.source(), cod->source(p.f)),
          what + ": sources of generator pair (" + print_path(*dom, p.x) + "," +
              cod->edge_name(p.f) + ") are not a vertex pair");
    check(has_pair(p.x.target(), cod->target(p.f)),
          what + ": targets of generator pair (" + print_path(*dom, p.x) + "," +
              cod->edge_name(p.f) + ") are not a vertex pair");
  }
  for (const auto& p : gen_fam) {
    check(p.a < dom->family_count() && p.b < cod->family_count(),
          what + ": family pair out of range");
    const auto& fa = dom->family(p.a);
    const auto& fb = cod->family(p.b);
    check(fa.infinite() && fb.infinite(),
          what + ": family pair (" + fa.name + "," + fb.name + ") must join infinite families");
    check(has_pair(fa.source, fb.source) && has_pair(fa.target, fb.target),
          what + ": endpoints of family pair (" + fa.name + "," + fb.name +
              ") are not vertex pairs");
  }
  return RelationMorphism(std::move(name), std::move(dom), std::move(cod), std::move(gen_v),
                          std::move(gen_e), std::move(gen_fam));
}

RelationMorphism from_generators(
    std::string name, GraphPtr dom, GraphPtr cod,
    const std::vector<std::pair<std::string, std::string>>& gen_v,
    const std::vector<std::pair<std::string, std::string>>& gen_e,
    const std::vector<std::pair<std::string, std::string>>& gen_fam) {
  std::vector<VertexPairGen> vp;
  for (const auto& [u, v] : gen_v) vp.push_back({dom->vertex(u), cod->vertex(v)});
  std::vector<EdgePairGen> ep;
  for (const auto& [x, f] : gen_e) {
    Path fp = parse_path(*cod, f);
    check(fp.length() == 1, "relation '" + name + "': '" + f + "' is not a single edge");
    ep.push_back({parse_path(*dom, x), fp.edges()[0]});
  }
  std::vector<FamilyPairGen> fp;
  for (const auto& [a, b] : gen_fam) fp.push_back({dom->family_ix(a), cod->family_ix(b)});
  return from_generators(std::move(name), std::move(dom), std::move(cod), std::move(vp),
                         std::move(ep), std::move(fp));
}

RelationMorphism lift_graph_hom(const GraphHom& phi) {
  std::vector<VertexPairGen> gv;
  for (VertexIx u = 0; u < phi.dom()->vertex_count(); ++u)
    gv.push_back({u, phi.vertex_image(u)});
  std::vector<EdgePairGen> ge;
  std::vector<FamilyPairGen> gf;
  for (FamilyIx f = 0; f < phi.dom()->family_count(); ++f) {
    const auto& fam = phi.dom()->family(f);
    if (fam.infinite()) {
      gf.push_back({f, phi.family_image(f)});
    } else {
      for (std::uint32_t i = 0; i < *fam.count; ++i)
        ge.push_back({Path::of_edges(*phi.dom(), {{f, i}}), phi.edge_image({f, i})});
    }
  }
  return from_generators("R_" + phi.name(), phi.dom(), phi.cod(), std::move(gv), std::move(ge),
                         std::move(gf));
}

RelationMorphism lower_path_hom(const PathHom& theta) {
  std::vector<VertexPairGen> gv;
  for (VertexIx v = 0; v < theta.dom()->vertex_count(); ++v)
    gv.push_back({theta.vertex_image(v), v});
  std::vector<EdgePairGen> ge;
  std::vector<FamilyPairGen> gf;
  for (FamilyIx f = 0; f < theta.dom()->family_count(); ++f) {
    const auto& fam = theta.dom()->family(f);
    if (fam.infinite()) {
      gf.push_back({theta.family_image(f), f});
    } else {
      for (std::uint32_t i = 0; i < *fam.count; ++i)
        ge.push_back({theta.edge_image({f, i}), EdgeRef{f, i}});
    }
  }
  return from_generators("R^" + theta.name(), theta.cod(), theta.dom(), std::move(gv),
                         std::move(ge), std::move(gf));
}

RelationMorphism identity_relation(GraphPtr g) {
  return lift_graph_hom(identity_graph_hom(std::move(g)));
}

bool relations_equal(const RelationMorphism& r, const RelationMorphism& s) {
  return graphs_compatible(*r.dom(), *s.dom()) && graphs_compatible(*r.cod(), *s.cod()) &&
         r.gen_v() == s.gen_v() && r.gen_e() == s.gen_e() && r.gen_fam() == s.gen_fam();
}

namespace {

// Pieces usable against one codomain edge f: the generator paths paired with
// f, plus, when f lies in an infinite family, the matching member of each
// related domain family.
std::vector<Path> pieces_for_edge(const RelationMorphism& r, EdgeRef f) {
  std::vector<Path> out;
  for (const auto& p : r.gen_e())
    if (p.f == f) out.push_back(p.x);
  FamilyIx famF = f.family;
  if (r.cod()->family(famF).infinite()) {
    for (const auto& p : r.gen_fam())
      if (p.b == famF) out.push_back(Path::of_edges(*r.dom(), {EdgeRef{p.a, f.index}}));
  }
  sort_unique(out);
  return out;
}

}  // namespace

bool member(const RelationMorphism& r, const Path& x, const Path& y) {
  const Graph& E = *r.dom();
  if (y.is_vertex()) return x.is_vertex() && r.has_vertex_pair(x.source(), y.source());

  // reach[j]: the first j edges of x can be decomposed along the edges of y
  // consumed so far.
  std::vector<char> reach(x.length() + 1, 0);
  reach[0] = 1;
  auto vertex_of = [&](std::size_t j) -> VertexIx {
    if (j == 0) return x.source();
    return E.target(x.edges()[j - 1]);
  };
  for (EdgeRef f : y.edges()) {
    std::vector<char> next(x.length() + 1, 0);
    for (std::size_t j = 0; j <= x.length(); ++j) {
      if (!reach[j]) continue;
      for (const Path& piece : pieces_for_edge(r, f)) {
        if (piece.is_vertex()) {
          if (piece.source() == vertex_of(j)) next[j] = 1;
          continue;
        }
        std::size_t k = piece.length();
        if (j + k > x.length()) continue;
        if (piece.source() != vertex_of(j)) continue;
        if (std::equal(piece.edges().begin(), piece.edges().end(), x.edges().begin() + j))
          next[j + k] = 1;
      }
    }
    reach = std::move(next);
  }
  return reach[x.length()] != 0;
}

std::vector<Path> preimage(const RelationMorphism& r, const Path& y) {
  const Graph& E = *r.dom();
  std::vector<Path> acc;
  if (y.is_vertex()) {
    for (const auto& p : r.gen_v())
      if (p.v == y.source()) acc.push_back(Path::at_vertex(p.u));
    sort_unique(acc);
    return acc;
  }
  bool started = false;
  for (EdgeRef f : y.edges()) {
    auto pieces = pieces_for_edge(r, f);
    if (!started) {
      acc = pieces;
      started = true;
      continue;
    }
    std::vector<Path> next;
    for (const Path& left : acc)
      for (const Path& piece : pieces)
        if (left.target() == piece.source()) next.push_back(concat(E, left, piece));
    acc = std::move(next);
  }
  sort_unique(acc);
  return acc;
}

RelationMorphism compose_relations(const RelationMorphism& s, const RelationMorphism& r) {
  check(graphs_compatible(*r.cod(), *s.dom()),
        "relations do not compose: middle graphs differ");
  // Vertex disjointness of the inner relation keeps the composite
  // multiplicative; composing through a vertex with two partners would not.
  auto rep = admissibility_report(r);
  check(rep.vertex_disjoint, "relation '" + r.name() +
                                 "' is not vertex disjoint; its composites need not be "
                                 "relation morphisms");
  std::vector<VertexPairGen> gv;
  for (const auto& p : r.gen_v())
    for (const auto& q : s.gen_v())
      if (p.v == q.u) gv.push_back({p.u, q.v});
  std::vector<EdgePairGen> ge;
  for (const auto& q : s.gen_e()) {
    if (q.x.is_vertex()) {
      for (const auto& p : r.gen_v())
        if (p.v == q.x.source()) ge.push_back({Path::at_vertex(p.u), q.f});
    } else {
      for (const Path& x : preimage(r, q.x)) ge.push_back({x, q.f});
    }
  }
  std::vector<FamilyPairGen> gf;
  for (const auto& q : s.gen_fam())
    for (const auto& p : r.gen_fam())
      if (p.b == q.a) gf.push_back({p.a, q.b});
  return from_generators(s.name() + "." + r.name(), r.dom(), s.cod(), std::move(gv),
                         std::move(ge), std::move(gf));
}

std::string to_string(RelationCategory c) {
  switch (c) {
    case RelationCategory::RG: return "RG";
    case RelationCategory::PRG: return "PRG";
    case RelationCategory::CRG: return "CRG";
    case RelationCategory::ARG: return "ARG";
  }
  return "?";
}

RelationCategory AdmissibilityReport::category() const {
  if (!vertex_disjoint || !target_injective) return RelationCategory::RG;
  if (!target_surjective || !monotone) return RelationCategory::PRG;
  if (!regular) return RelationCategory::CRG;
  return RelationCategory::ARG;
}

AdmissibilityReport admissibility_report(const RelationMorphism& r) {
  const Graph& E = *r.dom();
  const Graph& F = *r.cod();
  AdmissibilityReport rep;

  rep.vertex_disjoint = true;
  std::set<VertexIx> seen;
  for (const auto& p : r.gen_v())
    if (!seen.insert(p.u).second) {
      rep.vertex_disjoint = false;
      rep.notes.push_back("vertex '" + E.vertex_name(p.u) + "' is paired with two vertices");
      break;
    }

  // Target bijectivity, one codomain edge at a time; infinite families are
  // checked at their representative, all members behave alike.
  rep.target_injective = true;
  rep.target_surjective = true;
  for (EdgeRef f : F.listed_edges()) {
    auto pre = pieces_for_edge(r, f);
    std::set<VertexIx> targets;
    for (const Path& x : pre)
      if (!targets.insert(x.target()).second && rep.target_injective) {
        rep.target_injective = false;
        rep.notes.push_back("two preimages of '" + F.edge_name(f) +
                            "' share the target '" + E.vertex_name(x.target()) + "'");
      }
    for (const auto& p : r.gen_v()) {
      if (p.v != F.target(f)) continue;
      if (!targets.count(p.u) && rep.target_surjective) {
        rep.target_surjective = false;
        rep.notes.push_back("no preimage of '" + F.edge_name(f) + "' ends at '" +
                            E.vertex_name(p.u) + "'");
      }
    }
  }

  // Monotonicity over generator pairs, including family representatives.
  std::vector<EdgePairGen> pairs = r.gen_e();
  for (const auto& p : r.gen_fam())
    pairs.push_back({Path::of_edges(E, {EdgeRef{p.a, 0}}), EdgeRef{p.b, 0}});
  rep.monotone = true;
  for (std::size_t i = 0; i < pairs.size() && rep.monotone; ++i)
    for (std::size_t j = 0; j < pairs.size(); ++j) {
      if (i == j) continue;
      if (comparable(pairs[i].x, pairs[j].x)) {
        rep.monotone = false;
        rep.notes.push_back("generator paths '" + print_path(E, pairs[i].x) + "' and '" +
                            print_path(E, pairs[j].x) + "' are comparable");
        break;
      }
    }

  // Regularity. For a pair (u, v) with v regular in the codomain, every path
  // out of u must be comparable to some generator path covering v. It is
  // enough to check paths up to the longest such generator path L: a longer
  // path is comparable to a generator iff its length-L prefix is, and that
  // prefix is itself checked.
  rep.regular = true;
  auto regF = classify_vertices(F);
  for (const auto& p : r.gen_v()) {
    if (!regF.is_regular(p.v)) continue;
    std::vector<Path> cover;
    std::size_t bound = 0;
    for (const auto& g : r.gen_e()) {
      if (F.source(g.f) != p.v || g.x.source() != p.u) continue;
      cover.push_back(g.x);
      bound = std::max(bound, g.x.length());
    }
    bool ok = !cover.empty();
    if (ok) {
      for (const Path& x : paths_from(E, p.u, bound)) {
        bool matched = false;
        for (const Path& xp : cover)
          if (comparable(x, xp)) {
            matched = true;
            break;
          }
        if (!matched) {
          ok = false;
          rep.notes.push_back("path '" + print_path(E, x) + "' out of '" + E.vertex_name(p.u) +
                              "' is not comparable to any generator covering '" +
                              F.vertex_name(p.v) + "'");
          break;
        }
      }
    } else {
      rep.notes.push_back("no generator covers the regular vertex '" + F.vertex_name(p.v) +
                          "' from '" + E.vertex_name(p.u) + "'");
    }
    if (!ok) {
      rep.regular = false;
      break;
    }
  }

  return rep;
}

std::string print_vertex_pair(const RelationMorphism& r, const VertexPairGen& p) {
  return "(" + r.dom()->vertex_name(p.u) + "," + r.cod()->vertex_name(p.v) + ")";
}

std::string print_edge_pair(const RelationMorphism& r, const EdgePairGen& p) {
  return "(" + print_path(*r.dom(), p.x) + "," + r.cod()->edge_name(p.f) + ")";
}

Factorization pullback_factorize(const RelationMorphism& r) {
  const Graph& E = *r.dom();
  const Graph& F = *r.cod();
  std::vector<std::string> vertices;
  std::map<VertexPairGen, std::string> vname;
  for (const auto& p : r.gen_v()) {
    std::string n = print_vertex_pair(r, p);
    vname[p] = n;
    vertices.push_back(std::move(n));
  }
  auto pair_name = [&](VertexIx u, VertexIx v) {
    auto it = vname.find({u, v});
    check(it != vname.end(), "relation '" + r.name() + "': endpoint pair missing");
    return it->second;
  };

  std::vector<EdgeFamilySpec> fams;
  for (const auto& p : r.gen_e())
    fams.push_back({print_edge_pair(r, p), pair_name(p.x.source(), F.source(p.f)),
                    pair_name(p.x.target(), F.target(p.f)), 1});
  for (const auto& p : r.gen_fam()) {
    const auto& fa = E.family(p.a);
    const auto& fb = F.family(p.b);
    fams.push_back({"(" + fa.name + "," + fb.name + ")", pair_name(fa.source, fb.source),
                    pair_name(fa.target, fb.target), std::nullopt});
  }
  GraphPtr gr = Graph::build(std::move(vertices), std::move(fams), "G_" + r.name());

  std::vector<VertexIx> tv, pv;
  for (const auto& p : r.gen_v()) {
    tv.push_back(p.u);
    pv.push_back(p.v);
  }
  std::vector<PathEdgeImages> tmap;
  std::vector<GraphEdgeImages> pmap;
  for (const auto& p : r.gen_e()) {
    tmap.emplace_back(std::vector<Path>{p.x});
    pmap.emplace_back(std::vector<EdgeRef>{p.f});
  }
  for (const auto& p : r.gen_fam()) {
    tmap.emplace_back(p.a);
    pmap.emplace_back(p.b);
  }
  Factorization out;
  out.relation_graph = gr;
  out.theta = make_path_hom(gr, r.dom(), std::move(tv), std::move(tmap), "theta_" + r.name());
  out.phi = make_graph_hom(gr, r.cod(), std::move(pv), std::move(pmap), "phi_" + r.name());
  return out;
}

Mediator universal_mediator(const RelationMorphism& r, const PathHom& theta_p,
                            const GraphHom& phi_p) {
  check(graphs_compatible(*theta_p.dom(), *phi_p.dom()),
        "mediator: the two projections must share their domain");
  check(graphs_compatible(*theta_p.cod(), *r.dom()),
        "mediator: the path projection must land in the relation's domain");
  check(graphs_compatible(*phi_p.cod(), *r.cod()),
        "mediator: the graph projection must land in the relation's codomain");
  RelationMorphism recomposed = compose_relations(lift_graph_hom(phi_p), lower_path_hom(theta_p));
  check(relations_equal(recomposed, r),
        "mediator: the projections do not factor the relation");

  Factorization fac = pullback_factorize(r);
  const Graph& gp = *theta_p.dom();
  const Graph& gr = *fac.relation_graph;

  // Position of each generator pair in the relation graph.
  std::map<VertexPairGen, VertexIx> vix;
  for (VertexIx i = 0; i < r.gen_v().size(); ++i) vix[r.gen_v()[i]] = i;
  std::map<EdgePairGen, FamilyIx> eix;
  std::map<FamilyPairGen, FamilyIx> fix;
  for (FamilyIx i = 0; i < r.gen_e().size(); ++i) eix[r.gen_e()[i]] = i;
  for (FamilyIx i = 0; i < r.gen_fam().size(); ++i)
    fix[r.gen_fam()[i]] = static_cast<FamilyIx>(r.gen_e().size()) + i;

  std::vector<VertexIx> vmap;
  for (VertexIx z = 0; z < gp.vertex_count(); ++z) {
    auto it = vix.find({theta_p.vertex_image(z), phi_p.vertex_image(z)});
    check(it != vix.end(), "mediator: image vertex pair is not in the relation");
    vmap.push_back(it->second);
  }
  std::vector<GraphEdgeImages> emap;
  for (FamilyIx f = 0; f < gp.family_count(); ++f) {
    const auto& fam = gp.family(f);
    if (fam.infinite()) {
      auto it = fix.find({theta_p.family_image(f), phi_p.family_image(f)});
      check(it != fix.end(), "mediator: image family pair is not in the relation");
      emap.emplace_back(it->second);
    } else {
      std::vector<EdgeRef> imgs;
      for (std::uint32_t i = 0; i < *fam.count; ++i) {
        auto it = eix.find({theta_p.edge_image({f, i}), phi_p.edge_image({f, i})});
        check(it != eix.end(), "mediator: image edge pair is not in the relation");
        imgs.push_back({it->second, 0});
      }
      emap.emplace_back(std::move(imgs));
    }
  }
  Mediator out;
  out.pi = make_graph_hom(theta_p.dom(), fac.relation_graph, std::move(vmap), std::move(emap),
                          "pi_" + r.name());

  std::set<VertexIx> hit_v;
  std::set<EdgeRef> hit_e;
  bool inj = true;
  for (VertexIx z = 0; z < gp.vertex_count(); ++z)
    if (!hit_v.insert(out.pi.vertex_image(z)).second) inj = false;
  for (EdgeRef e : gp.listed_edges())
    if (!hit_e.insert(out.pi.edge_image(e)).second) inj = false;
  bool surj = hit_v.size() == gr.vertex_count();
  for (EdgeRef e : gr.listed_edges())
    if (!hit_e.count(e)) surj = false;
  out.surjective = surj;
  out.injective = inj;
  return out;
}

std::optional<PushoutWitness> pushout_obstruction(const RelationMorphism& r) {
  const Graph& F = *r.cod();
  for (EdgeRef f : F.listed_edges()) {
    auto pre = pieces_for_edge(r, f);  // canonical order: shortest first
    for (std::size_t i = 1; i < pre.size(); ++i)
      if (pre[i].length() != pre[0].length())
        return PushoutWitness{f, pre[0], pre[i]};
  }
  return std::nullopt;
}

std::optional<ClosureCounterexample> transitive_closure_check(const RelationMorphism& r,
                                                              std::size_t bound) {
  auto xs = all_paths(*r.dom(), bound);
  auto ys = all_paths(*r.cod(), bound);
  // Memoize membership so the quadruple scan stays cheap.
  std::vector<std::vector<char>> in(xs.size(), std::vector<char>(ys.size(), 0));
  for (std::size_t i = 0; i < xs.size(); ++i)
    for (std::size_t j = 0; j < ys.size(); ++j) in[i][j] = member(r, xs[i], ys[j]);

  for (std::size_t total = 0; total <= 4 * bound; ++total)
    for (std::size_t i = 0; i < xs.size(); ++i)
      for (std::size_t ip = 0; ip < xs.size(); ++ip)
        for (std::size_t j = 0; j < ys.size(); ++j)
          for (std::size_t jp = 0; jp < ys.size(); ++jp) {
            if (xs[i].length() + xs[ip].length() + ys[j].length() + ys[jp].length() != total)
              continue;
            if (in[i][j] && in[ip][j] && in[ip][jp] && !in[i][jp])
              return ClosureCounterexample{xs[i], ys[j], xs[ip], ys[jp]};
          }
  return std::nullopt;
}

}  // namespace qv
