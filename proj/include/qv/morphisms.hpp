#pragma once

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "qv/graph.hpp"

namespace qv {

// Edge images of one domain family: per-member images for a finite family,
// or a whole codomain family (matched index-wise) for an infinite one.
using GraphEdgeImages = std::variant<std::vector<EdgeRef>, FamilyIx>;
using PathEdgeImages = std::variant<std::vector<Path>, FamilyIx>;

// A morphism of directed graphs: vertices to vertices, edges to edges,
// commuting with source and target. Infinite families map onto infinite
// families member by member.
class GraphHom {
 public:
  GraphHom() = default;
  GraphHom(std::string name, GraphPtr dom, GraphPtr cod, std::vector<VertexIx> vmap,
           std::vector<GraphEdgeImages> emap)
      : name_(std::move(name)),
        dom_(std::move(dom)),
        cod_(std::move(cod)),
        vmap_(std::move(vmap)),
        emap_(std::move(emap)) {}

  const std::string& name() const { return name_; }
  const GraphPtr& dom() const { return dom_; }
  const GraphPtr& cod() const { return cod_; }

  VertexIx vertex_image(VertexIx v) const { return vmap_.at(v); }
  EdgeRef edge_image(EdgeRef e) const;
  bool family_maps_to_family(FamilyIx f) const;
  FamilyIx family_image(FamilyIx f) const;  // for infinite families only
  const std::vector<GraphEdgeImages>& edge_images() const { return emap_; }

  Path apply(const Path& p) const;

 private:
  std::string name_;
  GraphPtr dom_, cod_;
  std::vector<VertexIx> vmap_;
  std::vector<GraphEdgeImages> emap_;
};

// A morphism of path categories: vertices to vertices and edges to finite
// paths, intertwining endpoints. Graph morphisms are exactly the
// length-preserving ones. Images of finite edges never traverse members of
// infinite families; infinite families map onto infinite families member by
// member.
class PathHom {
 public:
  PathHom() = default;
  PathHom(std::string name, GraphPtr dom, GraphPtr cod, std::vector<VertexIx> vmap,
          std::vector<PathEdgeImages> pmap)
      : name_(std::move(name)),
        dom_(std::move(dom)),
        cod_(std::move(cod)),
        vmap_(std::move(vmap)),
        pmap_(std::move(pmap)) {}

  const std::string& name() const { return name_; }
  const GraphPtr& dom() const { return dom_; }
  const GraphPtr& cod() const { return cod_; }

  VertexIx vertex_image(VertexIx v) const { return vmap_.at(v); }
  Path edge_image(EdgeRef e) const;
  bool family_maps_to_family(FamilyIx f) const;
  FamilyIx family_image(FamilyIx f) const;
  const std::vector<PathEdgeImages>& edge_images() const { return pmap_; }

  Path apply(const Path& p) const;
  bool length_preserving() const;

 private:
  std::string name_;
  GraphPtr dom_, cod_;
  std::vector<VertexIx> vmap_;
  std::vector<PathEdgeImages> pmap_;
};

// Validating constructors. The named overloads resolve vertex and edge
// tokens ("v", "e", "e[2]") against the graphs; an entry keyed by a family
// name with cardinality > 1 maps the whole family member by member.
GraphHom make_graph_hom(GraphPtr dom, GraphPtr cod, std::vector<VertexIx> vmap,
                        std::vector<GraphEdgeImages> emap, std::string name = "");
GraphHom make_graph_hom(GraphPtr dom, GraphPtr cod,
                        const std::vector<std::pair<std::string, std::string>>& vmap,
                        const std::vector<std::pair<std::string, std::string>>& emap,
                        std::string name = "");
PathHom make_path_hom(GraphPtr dom, GraphPtr cod, std::vector<VertexIx> vmap,
                      std::vector<PathEdgeImages> pmap, std::string name = "");
PathHom make_path_hom(GraphPtr dom, GraphPtr cod,
                      const std::vector<std::pair<std::string, std::string>>& vmap,
                      const std::vector<std::pair<std::string, std::string>>& pmap,
                      std::string name = "");

PathHom as_path_hom(const GraphHom& h);
std::optional<GraphHom> as_graph_hom(const PathHom& h);

GraphHom identity_graph_hom(GraphPtr g);

// psi after theta (so theta's codomain must be psi's domain).
GraphHom compose_graph_homs(const GraphHom& psi, const GraphHom& theta);
PathHom compose_path_homs(const PathHom& psi, const PathHom& theta);

enum class GraphHomCategory { OG, POG, TBPOG, CRTBPOG };
enum class PathHomCategory { PG, IPG, MIPG, RMIPG };
std::string to_string(GraphHomCategory c);
std::string to_string(PathHomCategory c);

// Classification flags for a graph morphism phi: E -> F.
//   proper:            every vertex and edge of F has finitely many preimages
//   target_injective:  for each edge f, the target map phi^-1(f) -> phi^-1(t(f)) is injective
//   target_surjective: ... surjective
//   regular:           preimages of regular vertices are regular
// The categories are nested OG > POG > TBPOG > CRTBPOG, adding proper, then
// target bijectivity, then regularity.
struct GraphHomFlags {
  bool proper = false;
  bool target_injective = false;
  bool target_surjective = false;
  bool regular = false;
  bool target_bijective() const { return target_injective && target_surjective; }
  GraphHomCategory category() const;
};

// Classification flags for a path morphism theta: E -> F.
//   injective_on_vertices
//   monotone: comparable edge images force equal edges
//   regular:  at every regular vertex v of E, theta is injective on the
//             outgoing edges and their image set is exactly characterized by
//             the completeness conditions; at a single-loop vertex the image
//             may instead collapse to the vertex itself.
// Categories nested PG > IPG > MIPG > RMIPG.
struct PathHomFlags {
  bool injective_on_vertices = false;
  bool monotone = false;
  bool regular = false;
  PathHomCategory category() const;
};

GraphHomFlags classify_graph_hom(const GraphHom& h);
PathHomFlags classify_path_hom(const PathHom& h);

}  // namespace qv
