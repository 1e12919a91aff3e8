#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qv/morphisms.hpp"

namespace qv {

// Generating data of a relation between path categories, in the canonical
// generated form: vertex pairs, pairs of a domain path with a codomain edge,
// and pairs of whole infinite families matched member by member. The full
// relation is the closure of these generators under componentwise
// concatenation.
struct VertexPairGen {
  VertexIx u = 0;  // domain vertex
  VertexIx v = 0;  // codomain vertex
  friend auto operator<=>(const VertexPairGen&, const VertexPairGen&) = default;
};
struct EdgePairGen {
  Path x;      // domain path, possibly a vertex, never through infinite families
  EdgeRef f{};  // codomain edge, never a member of an infinite family
  friend bool operator==(const EdgePairGen&, const EdgePairGen&) = default;
  friend std::strong_ordering operator<=>(const EdgePairGen& a, const EdgePairGen& b) {
    if (auto c = a.x <=> b.x; c != 0) return c;
    return a.f <=> b.f;
  }
};
struct FamilyPairGen {
  FamilyIx a = 0;  // domain family (infinite)
  FamilyIx b = 0;  // codomain family (infinite)
  friend auto operator<=>(const FamilyPairGen&, const FamilyPairGen&) = default;
};

// A relation morphism E -> F held by its canonical generators. Immutable.
// By construction every stored relation is multiplicative, decomposable and
// proper; the remaining admissibility flags are computed on demand.
class RelationMorphism {
 public:
  RelationMorphism() = default;
  RelationMorphism(std::string name, GraphPtr dom, GraphPtr cod,
                   std::vector<VertexPairGen> gen_v, std::vector<EdgePairGen> gen_e,
                   std::vector<FamilyPairGen> gen_fam)
      : name_(std::move(name)),
        dom_(std::move(dom)),
        cod_(std::move(cod)),
        gen_v_(std::move(gen_v)),
        gen_e_(std::move(gen_e)),
        gen_fam_(std::move(gen_fam)) {}

  const std::string& name() const { return name_; }
  const GraphPtr& dom() const { return dom_; }
  const GraphPtr& cod() const { return cod_; }
  const std::vector<VertexPairGen>& gen_v() const { return gen_v_; }
  const std::vector<EdgePairGen>& gen_e() const { return gen_e_; }
  const std::vector<FamilyPairGen>& gen_fam() const { return gen_fam_; }

  bool has_vertex_pair(VertexIx u, VertexIx v) const;

 private:
  std::string name_;
  GraphPtr dom_, cod_;
  std::vector<VertexPairGen> gen_v_;
  std::vector<EdgePairGen> gen_e_;
  std::vector<FamilyPairGen> gen_fam_;
};

// Validates and canonicalizes (sorts, deduplicates) the generators: paths and
// edges must exist, generator paths may not traverse infinite families, the
// codomain edge of a pair may not lie in an infinite family (whole-family
// pairs carry those), and the endpoints of every pair must appear among the
// vertex pairs.
RelationMorphism from_generators(std::string name, GraphPtr dom, GraphPtr cod,
                                 std::vector<VertexPairGen> gen_v,
                                 std::vector<EdgePairGen> gen_e,
                                 std::vector<FamilyPairGen> gen_fam = {});

// Convenience wrapper resolving names: vertex pairs ("u","v"), edge pairs
// (path text, edge token), family pairs (family name, family name).
RelationMorphism from_generators(std::string name, GraphPtr dom, GraphPtr cod,
                                 const std::vector<std::pair<std::string, std::string>>& gen_v,
                                 const std::vector<std::pair<std::string, std::string>>& gen_e,
                                 const std::vector<std::pair<std::string, std::string>>& gen_fam = {});

// The graph of a morphism as a relation: x related to phi(x).
RelationMorphism lift_graph_hom(const GraphHom& phi);
// The transpose graph of a path morphism theta: G -> E, as a relation
// E -> G relating theta(y) to y.
RelationMorphism lower_path_hom(const PathHom& theta);

RelationMorphism identity_relation(GraphPtr g);

bool relations_equal(const RelationMorphism& r, const RelationMorphism& s);

// Membership of the pair (x, y) in the generated relation; decided by
// dynamic programming over the decompositions of x along the edges of y.
bool member(const RelationMorphism& r, const Path& x, const Path& y);

// All x with (x, y) in the relation, in canonical order. Finite because
// generator paths are finitely many per codomain edge.
std::vector<Path> preimage(const RelationMorphism& r, const Path& y);

// Composite relation s after r (r: E -> F, s: F -> G). Requires r vertex
// disjoint, which keeps the composite multiplicative.
RelationMorphism compose_relations(const RelationMorphism& s, const RelationMorphism& r);

enum class RelationCategory { RG, PRG, CRG, ARG };
std::string to_string(RelationCategory c);

// The seven admissibility conditions. Multiplicative, decomposable and
// proper hold for every generated relation and are recorded as such; the
// other four are decided from the generators:
//   vertex_disjoint:   no domain vertex is paired with two codomain vertices
//   target_injective:  per codomain edge f, preimage paths have pairwise
//                      distinct targets
//   target_surjective: ... and those targets exhaust the preimage of t(f)
//   monotone:          comparable generator paths only occur in equal pairs
//   regular:           per regular codomain vertex v and pair (u, v), every
//                      path out of u is comparable to some generator path
//                      covering v (checked up to the exact length bound)
// Categories are nested RG > PRG > CRG > ARG: PRG adds vertex disjointness
// and target injectivity, CRG adds target surjectivity and monotonicity, ARG
// adds regularity.
struct AdmissibilityReport {
  bool multiplicative = true;
  bool decomposable = true;
  bool proper = true;
  bool vertex_disjoint = false;
  bool target_injective = false;
  bool target_surjective = false;
  bool monotone = false;
  bool regular = false;
  std::vector<std::string> notes;  // witnesses for failed conditions

  bool target_bijective() const { return target_injective && target_surjective; }
  RelationCategory category() const;
  bool admissible() const { return category() == RelationCategory::ARG; }
};
AdmissibilityReport admissibility_report(const RelationMorphism& r);

// The canonical factorization through the relation graph: vertices are the
// vertex pairs, edges the generator pairs, with the two projections.
struct Factorization {
  GraphPtr relation_graph;
  PathHom theta;  // projection to the domain, edges to their paths
  GraphHom phi;   // projection to the codomain, edges to their edges
};
Factorization pullback_factorize(const RelationMorphism& r);

// Given another factorization of r through g' (as theta': g' -> dom and
// phi': g' -> cod with compose(lift(phi'), lower(theta')) == r), builds the
// mediating morphism onto the relation graph and reports whether it is
// surjective / injective.
struct Mediator {
  GraphHom pi;
  bool surjective = false;
  bool injective = false;
};
Mediator universal_mediator(const RelationMorphism& r, const PathHom& theta_p,
                            const GraphHom& phi_p);

// A codomain edge whose preimage mixes path lengths; such an edge rules out
// any factorization with the projections swapped (graph morphism first).
struct PushoutWitness {
  EdgeRef f{};
  Path shorter, longer;
};
std::optional<PushoutWitness> pushout_obstruction(const RelationMorphism& r);

// Searches for pairs (x,y), (x',y), (x',y') in the relation with (x,y')
// missing, over paths of length <= bound on both sides, in canonical order.
// A relation is transitively closed in this window iff nullopt.
struct ClosureCounterexample {
  Path x, y, xp, yp;  // (x,y), (xp,y), (xp,yp) present; (x,yp) absent
};
std::optional<ClosureCounterexample> transitive_closure_check(const RelationMorphism& r,
                                                              std::size_t bound);

std::string print_vertex_pair(const RelationMorphism& r, const VertexPairGen& p);
std::string print_edge_pair(const RelationMorphism& r, const EdgePairGen& p);

}  // namespace qv
