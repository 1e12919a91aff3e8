#include "qv/morphisms.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace qv {

namespace {

std::pair<std::string, std::optional<std::uint32_t>> split_indexed_token(const std::string& tok) {
  auto lb = tok.find('[');
  if (lb == std::string::npos) return {tok, std::nullopt};
  check(tok.size() >= lb + 3 && tok.back() == ']', "malformed edge token '" + tok + "'");
  std::string num = tok.substr(lb + 1, tok.size() - lb - 2);
  check(num.find_first_not_of("0123456789") == std::string::npos && !num.empty(),
        "malformed edge index in '" + tok + "'");
  return {tok.substr(0, lb), static_cast<std::uint32_t>(std::stoul(num))};
}

EdgeRef resolve_edge_token(const Graph& g, const std::string& tok) {
  auto [base, ix] = split_indexed_token(tok);
  auto fam = g.find_family(base);
  check(fam.has_value(), "graph '" + g.name() + "': unknown edge '" + tok + "'");
  if (!ix) {
    const auto& f = g.family(*fam);
    check(f.count && *f.count == 1,
          "edge '" + base + "' needs an explicit index, as in '" + base + "[0]'");
    ix = 0;
  }
  EdgeRef e{*fam, *ix};
  check(g.valid(e), "graph '" + g.name() + "': edge index out of range in '" + tok + "'");
  return e;
}

void check_vmap(const Graph& dom, const Graph& cod, const std::vector<VertexIx>& vmap,
                const std::string& what) {
  check(vmap.size() == dom.vertex_count(), what + ": vertex map does not cover the domain");
  for (VertexIx img : vmap)
    check(img < cod.vertex_count(), what + ": vertex image out of range");
}

}  // namespace

EdgeRef GraphHom::edge_image(EdgeRef e) const {
  const auto& entry = emap_.at(e.family);
  if (std::holds_alternative<FamilyIx>(entry)) return {std::get<FamilyIx>(entry), e.index};
  return std::get<std::vector<EdgeRef>>(entry).at(e.index);
}

bool GraphHom::family_maps_to_family(FamilyIx f) const {
  return std::holds_alternative<FamilyIx>(emap_.at(f));
}

FamilyIx GraphHom::family_image(FamilyIx f) const { return std::get<FamilyIx>(emap_.at(f)); }

Path GraphHom::apply(const Path& p) const {
  if (p.is_vertex()) return Path::at_vertex(vertex_image(p.source()));
  std::vector<EdgeRef> edges;
  for (EdgeRef e : p.edges()) edges.push_back(edge_image(e));
  return Path::of_edges(*cod_, std::move(edges));
}

Path PathHom::edge_image(EdgeRef e) const {
  const auto& entry = pmap_.at(e.family);
  if (std::holds_alternative<FamilyIx>(entry))
    return Path::of_edges(*cod_, {EdgeRef{std::get<FamilyIx>(entry), e.index}});
  return std::get<std::vector<Path>>(entry).at(e.index);
}

bool PathHom::family_maps_to_family(FamilyIx f) const {
  return std::holds_alternative<FamilyIx>(pmap_.at(f));
}

FamilyIx PathHom::family_image(FamilyIx f) const { return std::get<FamilyIx>(pmap_.at(f)); }

Path PathHom::apply(const Path& p) const {
  Path out = Path::at_vertex(vertex_image(p.source()));
  for (EdgeRef e : p.edges()) out = concat(*cod_, out, edge_image(e));
  return out;
}

bool PathHom::length_preserving() const {
  for (const auto& entry : pmap_) {
    if (std::holds_alternative<FamilyIx>(entry)) continue;
    for (const auto& p : std::get<std::vector<Path>>(entry))
      if (p.length() != 1) return false;
  }
  return true;
}

GraphHom make_graph_hom(GraphPtr dom, GraphPtr cod, std::vector<VertexIx> vmap,
                        std::vector<GraphEdgeImages> emap, std::string name) {
  const std::string what = "graph morphism '" + name + "'";
  check(dom && cod, what + ": missing graph");
  check_vmap(*dom, *cod, vmap, what);
  check(emap.size() == dom->family_count(), what + ": edge map does not cover the domain");
  for (FamilyIx f = 0; f < dom->family_count(); ++f) {
    const auto& fam = dom->family(f);
    const auto& entry = emap[f];
    if (fam.infinite()) {
      check(std::holds_alternative<FamilyIx>(entry),
            what + ": infinite family '" + fam.name + "' must map onto a whole family");
      FamilyIx img = std::get<FamilyIx>(entry);
      check(img < cod->family_count(), what + ": family image out of range");
      const auto& cfam = cod->family(img);
      check(cfam.infinite(), what + ": infinite family '" + fam.name +
                                 "' must map onto an infinite family, '" + cfam.name +
                                 "' is finite");
      check(cfam.source == vmap[fam.source] && cfam.target == vmap[fam.target],
            what + ": family '" + fam.name + "' image endpoints disagree with the vertex map");
    } else {
      check(std::holds_alternative<std::vector<EdgeRef>>(entry),
            what + ": finite family '" + fam.name + "' must map edge by edge");
      const auto& imgs = std::get<std::vector<EdgeRef>>(entry);
      check(imgs.size() == *fam.count,
            what + ": family '" + fam.name + "' image list has the wrong cardinality");
      for (EdgeRef img : imgs) {
        check(cod->valid(img), what + ": edge image out of range");
        check(!cod->family(img.family).infinite(),
              what + ": finite edge in '" + fam.name +
                  "' may not map to a member of an infinite family");
        check(cod->source(img) == vmap[fam.source] && cod->target(img) == vmap[fam.target],
              what + ": image of an edge in '" + fam.name +
                  "' disagrees with the vertex map on endpoints");
      }
    }
  }
  return GraphHom(std::move(name), std::move(dom), std::move(cod), std::move(vmap),
                  std::move(emap));
}

PathHom make_path_hom(GraphPtr dom, GraphPtr cod, std::vector<VertexIx> vmap,
                      std::vector<PathEdgeImages> pmap, std::string name) {
  const std::string what = "path morphism '" + name + "'";
  check(dom && cod, what + ": missing graph");
  check_vmap(*dom, *cod, vmap, what);
  check(pmap.size() == dom->family_count(), what + ": edge map does not cover the domain");
  for (FamilyIx f = 0; f < dom->family_count(); ++f) {
    const auto& fam = dom->family(f);
    const auto& entry = pmap[f];
    if (fam.infinite()) {
      check(std::holds_alternative<FamilyIx>(entry),
            what + ": infinite family '" + fam.name + "' must map onto a whole family");
      FamilyIx img = std::get<FamilyIx>(entry);
      check(img < cod->family_count(), what + ": family image out of range");
      const auto& cfam = cod->family(img);
      check(cfam.infinite(), what + ": infinite family '" + fam.name +
                                 "' must map onto an infinite family, '" + cfam.name +
                                 "' is finite");
      check(cfam.source == vmap[fam.source] && cfam.target == vmap[fam.target],
            what + ": family '" + fam.name + "' image endpoints disagree with the vertex map");
    } else {
      check(std::holds_alternative<std::vector<Path>>(entry),
            what + ": finite family '" + fam.name + "' must map edge by edge");
      const auto& imgs = std::get<std::vector<Path>>(entry);
      check(imgs.size() == *fam.count,
            what + ": family '" + fam.name + "' image list has the wrong cardinality");
      for (const Path& img : imgs) {
        check(img.is_vertex() || img.target() < cod->vertex_count(), what + ": bad image path");
        for (EdgeRef e : img.edges())
          check(!cod->family(e.family).infinite(),
                what + ": image of an edge in '" + fam.name +
                    "' may not traverse an infinite family");
        check(img.source() == vmap[fam.source] && img.target() == vmap[fam.target],
              what + ": image of an edge in '" + fam.name +
                  "' disagrees with the vertex map on endpoints");
      }
    }
  }
  return PathHom(std::move(name), std::move(dom), std::move(cod), std::move(vmap),
                 std::move(pmap));
}

namespace {

std::vector<VertexIx> resolve_vmap(const Graph& dom, const Graph& cod,
                                   const std::vector<std::pair<std::string, std::string>>& vmap,
                                   const std::string& what) {
  std::vector<std::optional<VertexIx>> images(dom.vertex_count());
  for (const auto& [k, v] : vmap) {
    VertexIx u = dom.vertex(k);
    check(!images[u].has_value(), what + ": vertex '" + k + "' mapped twice");
    images[u] = cod.vertex(v);
  }
  std::vector<VertexIx> out;
  for (VertexIx u = 0; u < dom.vertex_count(); ++u) {
    check(images[u].has_value(),
          what + ": vertex '" + dom.vertex_name(u) + "' has no image");
    out.push_back(*images[u]);
  }
  return out;
}

// Shared resolution for the named edge-map builders; `mk` turns a value token
// into the image of one edge.
template <typename Img, typename Mk>
std::vector<std::variant<std::vector<Img>, FamilyIx>> resolve_emap(
    const Graph& dom, const Graph& cod,
    const std::vector<std::pair<std::string, std::string>>& emap, const std::string& what,
    Mk mk) {
  std::vector<std::map<std::uint32_t, Img>> partial(dom.family_count());
  std::vector<std::optional<FamilyIx>> whole(dom.family_count());
  for (const auto& [k, v] : emap) {
    auto [base, ix] = split_indexed_token(k);
    auto fam = dom.find_family(base);
    check(fam.has_value(), what + ": unknown edge '" + k + "'");
    const auto& f = dom.family(*fam);
    if (!ix && (f.infinite() || *f.count > 1)) {
      // whole-family entry: value must be a family of the same cardinality
      auto cfam = cod.find_family(v);
      check(cfam.has_value(), what + ": unknown family '" + v + "' as image of '" + k + "'");
      check(cod.family(*cfam).count == f.count,
            what + ": families '" + k + "' and '" + v + "' differ in cardinality");
      check(!whole[*fam] && partial[*fam].empty(), what + ": edge '" + k + "' mapped twice");
      whole[*fam] = *cfam;
      continue;
    }
    std::uint32_t index = ix.value_or(0);
    check(!f.infinite(), what + ": members of the infinite family '" + base +
                             "' cannot be mapped individually");
    check(index < *f.count, what + ": edge index out of range in '" + k + "'");
    check(!whole[*fam] && !partial[*fam].count(index), what + ": edge '" + k + "' mapped twice");
    partial[*fam][index] = mk(v, k);
  }
  std::vector<std::variant<std::vector<Img>, FamilyIx>> out;
  for (FamilyIx f = 0; f < dom.family_count(); ++f) {
    const auto& fam = dom.family(f);
    if (whole[f]) {
      if (fam.infinite()) {
        out.emplace_back(*whole[f]);
      } else {
        std::vector<Img> imgs;
        for (std::uint32_t i = 0; i < *fam.count; ++i)
          imgs.push_back(mk(cod.family(*whole[f]).name + "[" + std::to_string(i) + "]",
                            fam.name));
        out.emplace_back(std::move(imgs));
      }
      continue;
    }
    check(!fam.infinite() || partial[f].empty(),
          what + ": infinite family '" + fam.name + "' must map onto a whole family");
    check(!fam.infinite(), what + ": family '" + fam.name + "' has no image");
    std::vector<Img> imgs;
    for (std::uint32_t i = 0; i < *fam.count; ++i) {
      auto it = partial[f].find(i);
      check(it != partial[f].end(),
            what + ": edge '" + dom.edge_name({f, i}) + "' has no image");
      imgs.push_back(it->second);
    }
    out.emplace_back(std::move(imgs));
  }
  return out;
}

}  // namespace

GraphHom make_graph_hom(GraphPtr dom, GraphPtr cod,
                        const std::vector<std::pair<std::string, std::string>>& vmap,
                        const std::vector<std::pair<std::string, std::string>>& emap,
                        std::string name) {
  const std::string what = "graph morphism '" + name + "'";
  check(dom && cod, what + ": missing graph");
  auto vimgs = resolve_vmap(*dom, *cod, vmap, what);
  auto eimgs = resolve_emap<EdgeRef>(
      *dom, *cod, emap, what,
      [&](const std::string& v, const std::string&) { return resolve_edge_token(*cod, v); });
  return make_graph_hom(std::move(dom), std::move(cod), std::move(vimgs), std::move(eimgs),
                        std::move(name));
}

PathHom make_path_hom(GraphPtr dom, GraphPtr cod,
                      const std::vector<std::pair<std::string, std::string>>& vmap,
                      const std::vector<std::pair<std::string, std::string>>& pmap,
                      std::string name) {
  const std::string what = "path morphism '" + name + "'";
  check(dom && cod, what + ": missing graph");
  auto vimgs = resolve_vmap(*dom, *cod, vmap, what);
  auto pimgs = resolve_emap<Path>(
      *dom, *cod, pmap, what,
      [&](const std::string& v, const std::string&) { return parse_path(*cod, v); });
  return make_path_hom(std::move(dom), std::move(cod), std::move(vimgs), std::move(pimgs),
                       std::move(name));
}

PathHom as_path_hom(const GraphHom& h) {
  std::vector<PathEdgeImages> pmap;
  for (FamilyIx f = 0; f < h.dom()->family_count(); ++f) {
    if (h.family_maps_to_family(f)) {
      pmap.emplace_back(h.family_image(f));
      continue;
    }
    std::vector<Path> imgs;
    const auto& fam = h.dom()->family(f);
    for (std::uint32_t i = 0; i < *fam.count; ++i)
      imgs.push_back(Path::of_edges(*h.cod(), {h.edge_image({f, i})}));
    pmap.emplace_back(std::move(imgs));
  }
  std::vector<VertexIx> vmap;
  for (VertexIx v = 0; v < h.dom()->vertex_count(); ++v) vmap.push_back(h.vertex_image(v));
  return PathHom(h.name(), h.dom(), h.cod(), std::move(vmap), std::move(pmap));
}

std::optional<GraphHom> as_graph_hom(const PathHom& h) {
  if (!h.length_preserving()) return std::nullopt;
  std::vector<GraphEdgeImages> emap;
  for (FamilyIx f = 0; f < h.dom()->family_count(); ++f) {
    if (h.family_maps_to_family(f)) {
      emap.emplace_back(h.family_image(f));
      continue;
    }
    std::vector<EdgeRef> imgs;
    const auto& fam = h.dom()->family(f);
    for (std::uint32_t i = 0; i < *fam.count; ++i)
      imgs.push_back(h.edge_image({f, i}).edges().front());
    emap.emplace_back(std::move(imgs));
  }
  std::vector<VertexIx> vmap;
  for (VertexIx v = 0; v < h.dom()->vertex_count(); ++v) vmap.push_back(h.vertex_image(v));
  return GraphHom(h.name(), h.dom(), h.cod(), std::move(vmap), std::move(emap));
}

GraphHom identity_graph_hom(GraphPtr g) {
  std::vector<VertexIx> vmap(g->vertex_count());
  for (VertexIx v = 0; v < g->vertex_count(); ++v) vmap[v] = v;
  std::vector<GraphEdgeImages> emap;
  for (FamilyIx f = 0; f < g->family_count(); ++f) {
    const auto& fam = g->family(f);
    if (fam.infinite()) {
      emap.emplace_back(f);
    } else {
      std::vector<EdgeRef> imgs;
      for (std::uint32_t i = 0; i < *fam.count; ++i) imgs.push_back({f, i});
      emap.emplace_back(std::move(imgs));
    }
  }
  return GraphHom("id_" + g->name(), g, g, std::move(vmap), std::move(emap));
}

GraphHom compose_graph_homs(const GraphHom& psi, const GraphHom& theta) {
  check(graphs_compatible(*psi.dom(), *theta.cod()),
        "graph morphisms do not compose: middle graphs differ");
  std::vector<VertexIx> vmap;
  for (VertexIx v = 0; v < theta.dom()->vertex_count(); ++v)
    vmap.push_back(psi.vertex_image(theta.vertex_image(v)));
  std::vector<GraphEdgeImages> emap;
  for (FamilyIx f = 0; f < theta.dom()->family_count(); ++f) {
    const auto& fam = theta.dom()->family(f);
    if (fam.infinite()) {
      emap.emplace_back(psi.family_image(theta.family_image(f)));
    } else {
      std::vector<EdgeRef> imgs;
      for (std::uint32_t i = 0; i < *fam.count; ++i)
        imgs.push_back(psi.edge_image(theta.edge_image({f, i})));
      emap.emplace_back(std::move(imgs));
    }
  }
  return GraphHom(psi.name() + "." + theta.name(), theta.dom(), psi.cod(), std::move(vmap),
                  std::move(emap));
}

PathHom compose_path_homs(const PathHom& psi, const PathHom& theta) {
  check(graphs_compatible(*psi.dom(), *theta.cod()),
        "path morphisms do not compose: middle graphs differ");
  std::vector<VertexIx> vmap;
  for (VertexIx v = 0; v < theta.dom()->vertex_count(); ++v)
    vmap.push_back(psi.vertex_image(theta.vertex_image(v)));
  std::vector<PathEdgeImages> pmap;
  for (FamilyIx f = 0; f < theta.dom()->family_count(); ++f) {
    const auto& fam = theta.dom()->family(f);
    if (fam.infinite()) {
      pmap.emplace_back(psi.family_image(theta.family_image(f)));
    } else {
      std::vector<Path> imgs;
      for (std::uint32_t i = 0; i < *fam.count; ++i)
        imgs.push_back(psi.apply(theta.edge_image({f, i})));
      pmap.emplace_back(std::move(imgs));
    }
  }
  return PathHom(psi.name() + "." + theta.name(), theta.dom(), psi.cod(), std::move(vmap),
                 std::move(pmap));
}

std::string to_string(GraphHomCategory c) {
  switch (c) {
    case GraphHomCategory::OG: return "OG";
    case GraphHomCategory::POG: return "POG";
    case GraphHomCategory::TBPOG: return "TBPOG";
    case GraphHomCategory::CRTBPOG: return "CRTBPOG";
  }
  return "?";
}

std::string to_string(PathHomCategory c) {
  switch (c) {
    case PathHomCategory::PG: return "PG";
    case PathHomCategory::IPG: return "IPG";
    case PathHomCategory::MIPG: return "MIPG";
    case PathHomCategory::RMIPG: return "RMIPG";
  }
  return "?";
}

GraphHomCategory GraphHomFlags::category() const {
  if (!proper) return GraphHomCategory::OG;
  if (!target_bijective()) return GraphHomCategory::POG;
  if (!regular) return GraphHomCategory::TBPOG;
  return GraphHomCategory::CRTBPOG;
}

PathHomCategory PathHomFlags::category() const {
  if (!injective_on_vertices) return PathHomCategory::PG;
  if (!monotone) return PathHomCategory::IPG;
  if (!regular) return PathHomCategory::MIPG;
  return PathHomCategory::RMIPG;
}

GraphHomFlags classify_graph_hom(const GraphHom& h) {
  const Graph& E = *h.dom();
  const Graph& F = *h.cod();
  GraphHomFlags flags;

  // Domains are finite descriptions and infinite families map member by
  // member, so every preimage is finite.
  flags.proper = true;

  // Preimages of each codomain edge, checked at one representative per
  // infinite family; indices beyond 0 behave identically by construction.
  flags.target_injective = true;
  flags.target_surjective = true;
  for (EdgeRef f : F.listed_edges()) {
    std::vector<EdgeRef> pre;
    for (EdgeRef e : E.listed_edges()) {
      if (E.family(e.family).infinite()) {
        if (h.family_maps_to_family(e.family) && h.family_image(e.family) == f.family &&
            e.index == f.index)
          pre.push_back(e);
      } else if (h.edge_image(e) == f) {
        pre.push_back(e);
      }
    }
    std::set<VertexIx> targets;
    for (EdgeRef e : pre) {
      if (!targets.insert(E.target(e)).second) flags.target_injective = false;
    }
    for (VertexIx u = 0; u < E.vertex_count(); ++u) {
      if (h.vertex_image(u) != F.target(f)) continue;
      if (!targets.count(u)) flags.target_surjective = false;
    }
  }

  // Regularity: preimages of regular vertices must be regular.
  auto regE = classify_vertices(E);
  auto regF = classify_vertices(F);
  flags.regular = true;
  for (VertexIx u = 0; u < E.vertex_count(); ++u)
    if (regF.is_regular(h.vertex_image(u)) && !regE.is_regular(u)) flags.regular = false;

  return flags;
}

namespace {

// Condition (iii) of the image characterization at a regular vertex: every
// sibling edge pattern inside y extends to some image path. Image paths never
// traverse infinite families, so a sibling from an infinite family has no
// extension and the condition fails there.
bool image_condition_iii(const Graph& F, const Path& y, const std::vector<Path>& images) {
  for (std::size_t i = 0; i < y.length(); ++i) {
    VertexIx si = F.source(y.edges()[i]);
    for (FamilyIx famIx : F.families_from(si))
      if (F.family(famIx).infinite()) return false;
    for (EdgeRef f : F.listed_out_edges(si)) {
      std::vector<EdgeRef> want(y.edges().begin(), y.edges().begin() + i);
      want.push_back(f);
      Path stem = Path::of_edges(F, std::move(want));
      bool extends = false;
      for (const Path& z : images)
        if (prefix_leq(stem, z)) {
          extends = true;
          break;
        }
      if (!extends) return false;
    }
  }
  return true;
}

// Condition (ii): no image path properly extends y.
bool image_condition_ii(const Path& y, const std::vector<Path>& images) {
  for (const Path& z : images)
    if (prefix_leq(y, z) && !(z == y)) return false;
  return true;
}

}  // namespace

PathHomFlags classify_path_hom(const PathHom& h) {
  const Graph& E = *h.dom();
  const Graph& F = *h.cod();
  PathHomFlags flags;

  std::set<VertexIx> seen;
  flags.injective_on_vertices = true;
  for (VertexIx v = 0; v < E.vertex_count(); ++v)
    if (!seen.insert(h.vertex_image(v)).second) flags.injective_on_vertices = false;

  // Monotone: comparable images force equal edges. Checking listed edges
  // covers infinite families at their representative; two members of one
  // family map to distinct parallel edges, which are never comparable.
  flags.monotone = true;
  auto listed = E.listed_edges();
  for (std::size_t i = 0; i < listed.size() && flags.monotone; ++i)
    for (std::size_t j = 0; j < listed.size(); ++j) {
      if (i == j) continue;
      if (comparable(h.edge_image(listed[i]), h.edge_image(listed[j]))) {
        flags.monotone = false;
        break;
      }
    }

  // Regularity at every regular vertex v of the domain: images of the
  // outgoing edges must be pairwise distinct and exactly the paths satisfying
  // the three completeness conditions; a single-loop vertex may instead
  // collapse its loop onto the image vertex.
  auto regE = classify_vertices(E);
  flags.regular = true;
  for (VertexIx v : regE.regular) {
    auto out_edges = E.listed_out_edges(v);
    std::vector<Path> images;
    for (EdgeRef e : out_edges) images.push_back(h.edge_image(e));

    if (regE.is_single_loop(v)) {
      if (images.size() == 1 && images[0] == Path::at_vertex(h.vertex_image(v))) continue;
    }

    bool ok = true;
    std::set<Path> distinct(images.begin(), images.end());
    if (distinct.size() != images.size()) ok = false;

    std::size_t maxlen = 0;
    for (const Path& y : images) {
      maxlen = std::max(maxlen, y.length());
      if (y.is_vertex() || !image_condition_ii(y, images) ||
          !image_condition_iii(F, y, images)) {
        ok = false;
        break;
      }
    }

    if (ok) {
      // Conversely, any path satisfying the conditions must be an image.
      // Candidates longer than the longest image fail condition (iii) at
      // their last edge, so the enumeration bound is exact.
      for (const Path& y : paths_from(F, h.vertex_image(v), maxlen)) {
        if (y.is_vertex() || distinct.count(y)) continue;
        if (image_condition_ii(y, images) && image_condition_iii(F, y, images)) {
          ok = false;
          break;
        }
      }
    }

    if (!ok) {
      flags.regular = false;
      break;
    }
  }

  return flags;
}

}  // namespace qv
