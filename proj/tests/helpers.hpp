#pragma once

// Random generators and brute-force oracles shared by the test binaries.
// Everything is seeded explicitly so failures reproduce.

#include <algorithm>
#include <optional>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "qv/algebra.hpp"
#include "qv/relations.hpp"

namespace qvtest {

using Rng = std::mt19937_64;

inline std::size_t pick(Rng& rng, std::size_t n) {
  return static_cast<std::size_t>(rng() % n);
}

inline bool chance(Rng& rng, double p) {
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < p;
}

// Small random graph: 1..max_v vertices, 0..max_e edge families, counts
// mostly 1, sometimes 2, optionally an infinite family.
inline qv::GraphPtr random_graph(Rng& rng, int max_v = 5, int max_e = 6,
                                 bool allow_infinite = false,
                                 const std::string& name = "G") {
  int nv = 1 + static_cast<int>(pick(rng, max_v));
  std::vector<std::string> vs;
  for (int i = 0; i < nv; ++i) vs.push_back("v" + std::to_string(i + 1));
  int ne = static_cast<int>(pick(rng, max_e + 1));
  std::vector<qv::EdgeFamilySpec> es;
  for (int i = 0; i < ne; ++i) {
    std::optional<std::uint32_t> count = 1;
    if (chance(rng, 0.15)) count = 2;
    if (allow_infinite && chance(rng, 0.08)) count = std::nullopt;
    es.push_back({"e" + std::to_string(i + 1), vs[pick(rng, nv)], vs[pick(rng, nv)], count});
  }
  return qv::Graph::build(vs, es, name);
}

// Paths that stay off infinite families (usable as generator paths and
// finite-edge images).
inline std::vector<qv::Path> finite_paths(const qv::Graph& g, std::size_t max_len) {
  std::vector<qv::Path> out;
  for (const auto& p : qv::all_paths(g, max_len)) {
    bool ok = true;
    for (const auto& e : p.edges())
      if (g.family(e.family).infinite()) ok = false;
    if (ok) out.push_back(p);
  }
  return out;
}

inline std::optional<qv::GraphHom> random_graph_hom(Rng& rng, qv::GraphPtr dom,
                                                    qv::GraphPtr cod,
                                                    const std::string& name = "phi") {
  for (int attempt = 0; attempt < 40; ++attempt) {
    std::vector<qv::VertexIx> vmap;
    for (qv::VertexIx v = 0; v < dom->vertex_count(); ++v)
      vmap.push_back(static_cast<qv::VertexIx>(pick(rng, cod->vertex_count())));
    std::vector<qv::GraphEdgeImages> emap;
    bool ok = true;
    for (qv::FamilyIx f = 0; f < dom->family_count() && ok; ++f) {
      const auto& fam = dom->family(f);
      if (fam.infinite()) {
        std::vector<qv::FamilyIx> cands;
        for (qv::FamilyIx cf = 0; cf < cod->family_count(); ++cf)
          if (cod->family(cf).infinite() && cod->family(cf).source == vmap[fam.source] &&
              cod->family(cf).target == vmap[fam.target])
            cands.push_back(cf);
        if (cands.empty()) {
          ok = false;
          break;
        }
        emap.emplace_back(cands[pick(rng, cands.size())]);
      } else {
        std::vector<qv::EdgeRef> cands;
        for (qv::FamilyIx cf = 0; cf < cod->family_count(); ++cf) {
          const auto& cfam = cod->family(cf);
          if (cfam.infinite() || cfam.source != vmap[fam.source] ||
              cfam.target != vmap[fam.target])
            continue;
          for (std::uint32_t i = 0; i < *cfam.count; ++i) cands.push_back({cf, i});
        }
        if (cands.empty()) {
          ok = false;
          break;
        }
        std::vector<qv::EdgeRef> members;
        for (std::uint32_t i = 0; i < *fam.count; ++i)
          members.push_back(cands[pick(rng, cands.size())]);
        emap.emplace_back(std::move(members));
      }
    }
    if (ok) return qv::make_graph_hom(dom, cod, std::move(vmap), std::move(emap), name);
  }
  return std::nullopt;
}

inline std::optional<qv::PathHom> random_path_hom(Rng& rng, qv::GraphPtr dom,
                                                  qv::GraphPtr cod, std::size_t max_len = 3,
                                                  const std::string& name = "theta") {
  for (int attempt = 0; attempt < 40; ++attempt) {
    std::vector<qv::VertexIx> vmap;
    if (cod->vertex_count() >= dom->vertex_count()) {
      std::vector<qv::VertexIx> shuffled;
      for (qv::VertexIx v = 0; v < cod->vertex_count(); ++v) shuffled.push_back(v);
      std::shuffle(shuffled.begin(), shuffled.end(), rng);
      vmap.assign(shuffled.begin(), shuffled.begin() + dom->vertex_count());
    } else {
      for (qv::VertexIx v = 0; v < dom->vertex_count(); ++v)
        vmap.push_back(static_cast<qv::VertexIx>(pick(rng, cod->vertex_count())));
    }
    std::vector<qv::PathEdgeImages> pmap;
    bool ok = true;
    for (qv::FamilyIx f = 0; f < dom->family_count() && ok; ++f) {
      const auto& fam = dom->family(f);
      if (fam.infinite()) {
        std::vector<qv::FamilyIx> cands;
        for (qv::FamilyIx cf = 0; cf < cod->family_count(); ++cf)
          if (cod->family(cf).infinite() && cod->family(cf).source == vmap[fam.source] &&
              cod->family(cf).target == vmap[fam.target])
            cands.push_back(cf);
        if (cands.empty()) {
          ok = false;
          break;
        }
        pmap.emplace_back(cands[pick(rng, cands.size())]);
      } else {
        std::vector<qv::Path> cands;
        for (const auto& p : finite_paths(*cod, max_len))
          if (p.source() == vmap[fam.source] && p.target() == vmap[fam.target])
            cands.push_back(p);
        if (cands.empty()) {
          ok = false;
          break;
        }
        std::vector<qv::Path> members;
        for (std::uint32_t i = 0; i < *fam.count; ++i)
          members.push_back(cands[pick(rng, cands.size())]);
        pmap.emplace_back(std::move(members));
      }
    }
    if (ok) return qv::make_path_hom(dom, cod, std::move(vmap), std::move(pmap), name);
  }
  return std::nullopt;
}

// Random relation with vertex-disjoint generators by default; pass
// want_vd = false to sometimes duplicate a first component.
inline std::optional<qv::RelationMorphism> random_relation(Rng& rng, qv::GraphPtr E,
                                                           qv::GraphPtr F, bool want_vd = true,
                                                           const std::string& name = "R") {
  for (int attempt = 0; attempt < 40; ++attempt) {
    std::vector<qv::VertexPairGen> gv;
    for (qv::VertexIx u = 0; u < E->vertex_count(); ++u)
      if (chance(rng, 0.8))
        gv.push_back({u, static_cast<qv::VertexIx>(pick(rng, F->vertex_count()))});
    if (gv.empty()) continue;
    if (!want_vd && chance(rng, 0.7))
      gv.push_back({gv[pick(rng, gv.size())].u,
                    static_cast<qv::VertexIx>(pick(rng, F->vertex_count()))});

    auto paired = [&](qv::VertexIx u, qv::VertexIx v) {
      for (const auto& p : gv)
        if (p.u == u && p.v == v) return true;
      return false;
    };

    std::vector<qv::EdgePairGen> ge;
    std::vector<qv::FamilyPairGen> gf;
    auto dom_paths = finite_paths(*E, 3);
    for (qv::FamilyIx f = 0; f < F->family_count(); ++f) {
      const auto& fam = F->family(f);
      if (fam.infinite()) {
        std::vector<qv::FamilyIx> cands;
        for (qv::FamilyIx df = 0; df < E->family_count(); ++df)
          if (E->family(df).infinite() && paired(E->family(df).source, fam.source) &&
              paired(E->family(df).target, fam.target))
            cands.push_back(df);
        if (!cands.empty() && chance(rng, 0.8)) gf.push_back({cands[pick(rng, cands.size())], f});
        continue;
      }
      for (std::uint32_t i = 0; i < *fam.count; ++i) {
        std::vector<qv::Path> cands;
        for (const auto& x : dom_paths)
          if (paired(x.source(), fam.source) && paired(x.target(), fam.target))
            cands.push_back(x);
        if (cands.empty()) continue;
        if (chance(rng, 0.85)) ge.push_back({cands[pick(rng, cands.size())], {f, i}});
        if (cands.size() > 1 && chance(rng, 0.2))
          ge.push_back({cands[pick(rng, cands.size())], {f, i}});
      }
    }
    try {
      return qv::from_generators(name, E, F, std::move(gv), std::move(ge), std::move(gf));
    } catch (const qv::Error&) {
      continue;
    }
  }
  return std::nullopt;
}

// Brute-force expansion of a relation: all generator products with sides of
// length <= lx / ly. Members of infinite families enter up to index
// fam_members - 1. The closure agrees with the relation on this window.
inline std::set<std::pair<qv::Path, qv::Path>> closure_pairs(const qv::RelationMorphism& r,
                                                             std::size_t lx, std::size_t ly,
                                                             std::uint32_t fam_members = 2) {
  const qv::Graph& E = *r.dom();
  const qv::Graph& F = *r.cod();
  std::set<std::pair<qv::Path, qv::Path>> out;
  std::vector<std::pair<qv::Path, qv::Path>> frontier;
  for (const auto& p : r.gen_v()) {
    auto pair = std::make_pair(qv::Path::at_vertex(p.u), qv::Path::at_vertex(p.v));
    out.insert(pair);
    frontier.push_back(pair);
  }
  // Pieces: (domain path, codomain edge); vertex paths on the left are legal.
  std::vector<std::pair<qv::Path, qv::EdgeRef>> pieces;
  for (const auto& g : r.gen_e()) pieces.push_back({g.x, g.f});
  for (const auto& g : r.gen_fam())
    for (std::uint32_t i = 0; i < fam_members; ++i)
      pieces.push_back({qv::Path::of_edges(E, {{g.a, i}}), {g.b, i}});
  while (!frontier.empty()) {
    auto [x, y] = frontier.back();
    frontier.pop_back();
    for (const auto& [p, f] : pieces) {
      if (x.target() != p.source() || y.target() != F.family(f.family).source) continue;
      if (x.length() + p.length() > lx || y.length() + 1 > ly) continue;
      auto next = std::make_pair(qv::concat(E, x, p),
                                 qv::concat(F, y, qv::Path::of_edges(F, {f})));
      if (out.insert(next).second) frontier.push_back(next);
    }
  }
  return out;
}

// Random normalized element over finite paths of g: a few terms with small
// rational coefficients, ghost halves matched by target above the path level.
inline qv::AlgebraElement random_element(Rng& rng, qv::Level level, qv::GraphPtr g,
                                         int max_terms = 4, std::size_t max_len = 2) {
  using namespace qv;
  auto paths = finite_paths(*g, max_len);
  std::vector<std::pair<Rational, Monomial>> raw;
  int terms = 1 + static_cast<int>(pick(rng, static_cast<std::size_t>(max_terms)));
  for (int i = 0; i < terms && !paths.empty(); ++i) {
    const Path& x = paths[pick(rng, paths.size())];
    Path y = Path::at_vertex(x.target());
    if (level != Level::Path) {
      std::vector<Path> mates;
      for (const auto& p : paths)
        if (p.target() == x.target()) mates.push_back(p);
      y = mates[pick(rng, mates.size())];
    }
    long long num = static_cast<long long>(pick(rng, 5)) - 2;
    if (num == 0) num = 1;
    raw.push_back({Rational(num, 1 + static_cast<long long>(pick(rng, 2))), Monomial{x, y}});
  }
  return normalize(level, std::move(g), std::move(raw));
}

}  // namespace qvtest
