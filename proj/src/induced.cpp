#include "qv/induced.hpp"

#include <algorithm>

namespace qv {

InducedHom::InducedHom(Level level, RelationMorphism rel)
    : level_(level), rel_(std::move(rel)) {}

AlgebraElement InducedHom::vertex_image(VertexIx v) const {
  auto out = AlgebraElement::zero(level_, target());
  for (const auto& p : rel_.gen_v())
    if (p.v == v) out = out + AlgebraElement::vertex(level_, target(), p.u);
  return out;
}

AlgebraElement InducedHom::edge_image(EdgeRef f) const {
  auto out = AlgebraElement::zero(level_, target());
  for (const Path& x : preimage(rel_, Path::of_edges(*source(), {f})))
    out = out + AlgebraElement::from_path(level_, target(), x);
  return out;
}

AlgebraElement InducedHom::ghost_image(EdgeRef f) const { return star(edge_image(f)); }

AlgebraElement InducedHom::generator_image(const GenSymbol& s) const {
  return generator_image_at(s, level_);
}

AlgebraElement InducedHom::generator_image_at(const GenSymbol& s, Level level) const {
  InducedHom at(level, rel_);
  switch (s.kind) {
    case GenSymbol::Kind::Vertex: return at.vertex_image(s.v);
    case GenSymbol::Kind::Edge: return at.edge_image(s.e);
    case GenSymbol::Kind::Ghost: return at.ghost_image(s.e);
  }
  fail("unreachable generator kind");
}

AlgebraElement InducedHom::apply(const AlgebraElement& a) const {
  check(a.level() == level_, "induced hom '" + name() + "': element level mismatch");
  check(graphs_compatible(*a.graph(), *source()),
        "induced hom '" + name() + "': element lives over the wrong graph");
  auto out = AlgebraElement::zero(level_, target());
  for (const auto& [m, c] : a.terms()) {
    AlgebraElement img;
    if (m.x.is_vertex() && m.y.is_vertex()) {
      img = vertex_image(m.x.source());
    } else {
      bool first = true;
      for (EdgeRef e : m.x.edges()) {
        img = first ? edge_image(e) : mul(img, edge_image(e));
        first = false;
      }
      const auto& ye = m.y.edges();
      for (auto it = ye.rbegin(); it != ye.rend(); ++it) {
        img = first ? ghost_image(*it) : mul(img, ghost_image(*it));
        first = false;
      }
    }
    out = out + c * img;
  }
  return out;
}

InducedHom induce(const RelationMorphism& r, Level level) {
  auto rep = admissibility_report(r);
  auto need = [&](bool flag, const char* cond) {
    check(flag, "relation '" + r.name() + "' cannot induce a " + to_string(level) +
                    " level hom: not " + cond);
  };
  need(rep.vertex_disjoint, "vertex disjoint");
  if (level != Level::Path) {
    need(rep.target_injective, "target injective");
    need(rep.target_surjective, "target surjective");
    need(rep.monotone, "monotone");
  }
  if (level == Level::Leavitt) need(rep.regular, "regular");
  return InducedHom(level, r);
}

InducedHom induce_unchecked(const RelationMorphism& r, Level level) {
  return InducedHom(level, r);
}

std::vector<RelatorResidue> verify_relators(const InducedHom& h,
                                            std::optional<Level> relator_level) {
  Level level = relator_level.value_or(h.level());
  std::vector<RelatorResidue> out;
  for (const Relator& rel : relators(level, *h.source())) {
    auto residue = evaluate_relator(level, h.target(), rel, [&](const GenSymbol& s) {
      return h.generator_image_at(s, level);
    });
    if (!residue.is_zero()) out.push_back({rel.name, residue});
  }
  return out;
}

namespace {

// The generator symbols of the algebra over g at the given level. Infinite
// families are sampled at members 0 and 1; the images are index-uniform, so
// two members witness any index-independent discrepancy.
std::vector<GenSymbol> generator_symbols(const Graph& g, Level level) {
  std::vector<GenSymbol> out;
  for (VertexIx v = 0; v < g.vertex_count(); ++v)
    out.push_back({GenSymbol::Kind::Vertex, v, {}});
  std::vector<EdgeRef> edges = g.listed_edges();
  for (FamilyIx f = 0; f < g.family_count(); ++f)
    if (g.family(f).infinite()) edges.push_back({f, 1});
  std::sort(edges.begin(), edges.end());
  for (EdgeRef e : edges) out.push_back({GenSymbol::Kind::Edge, 0, e});
  if (level != Level::Path)
    for (EdgeRef e : edges) out.push_back({GenSymbol::Kind::Ghost, 0, e});
  return out;
}

}  // namespace

std::vector<GapEntry> functoriality_gap(const RelationMorphism& s, const RelationMorphism& r,
                                        Level level) {
  check(graphs_compatible(*r.cod(), *s.dom()),
        "functoriality gap: the relations do not compose");
  InducedHom rstar = induce_unchecked(r, level);
  InducedHom sstar = induce_unchecked(s, level);
  InducedHom srstar = induce_unchecked(compose_relations(s, r), level);
  std::vector<GapEntry> out;
  for (const GenSymbol& g : generator_symbols(*s.cod(), level)) {
    auto roundabout = rstar.apply(sstar.generator_image(g));
    auto direct = srstar.generator_image(g);
    auto diff = roundabout - direct;
    if (!diff.is_zero()) out.push_back({gen_name(*s.cod(), g), diff});
  }
  return out;
}

}  // namespace qv
