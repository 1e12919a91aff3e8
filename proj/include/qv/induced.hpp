#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qv/algebra.hpp"
#include "qv/relations.hpp"

namespace qv {

// The algebra map induced contravariantly by a relation r: E -> F. It runs
// against the arrow: generators of the algebra over F go to sums over their
// preimages in E,
//   S_v   |->  sum of S_u over the vertex pairs (u, v)
//   S_f   |->  sum of S_x over the preimage paths x of f
//   S_f*  |->  the star of the image of S_f
// with products normalized at the hom's level. Members of an infinite family
// are handled uniformly: member i goes to the sum of the i-th members of the
// partner families.
class InducedHom {
 public:
  InducedHom() = default;
  InducedHom(Level level, RelationMorphism rel);

  Level level() const { return level_; }
  const std::string& name() const { return rel_.name(); }
  const RelationMorphism& relation() const { return rel_; }
  const GraphPtr& source() const { return rel_.cod(); }  // algebra mapped from
  const GraphPtr& target() const { return rel_.dom(); }  // algebra mapped into

  AlgebraElement vertex_image(VertexIx v) const;
  AlgebraElement edge_image(EdgeRef f) const;
  AlgebraElement ghost_image(EdgeRef f) const;
  AlgebraElement generator_image(const GenSymbol& s) const;
  // Same images assembled at another level (used to evaluate relators of a
  // finer presentation through a hom built at a coarser one).
  AlgebraElement generator_image_at(const GenSymbol& s, Level level) const;

  // Image of an element of the source algebra, monomial by monomial.
  AlgebraElement apply(const AlgebraElement& a) const;

 private:
  Level level_ = Level::Path;
  RelationMorphism rel_;
};

// Gated constructors. Each level needs its share of the admissibility
// conditions for the images to satisfy the target relations:
//   Path:    vertex disjoint
//   Cohn:    vertex disjoint, target bijective, monotone   (category CRG)
//   Leavitt: all of the above plus regular                 (category ARG)
// induce_unchecked skips the gate; the resulting map need not respect the
// source presentation, which verify_relators then measures.
InducedHom induce(const RelationMorphism& r, Level level);
InducedHom induce_unchecked(const RelationMorphism& r, Level level);

struct RelatorResidue {
  std::string relator;
  AlgebraElement residue;
};

// Evaluates every defining relation of the source presentation under the
// hom's generator images, normalizing in the target algebra, and returns the
// ones that do not vanish. By default the relators of the hom's own level are
// used; passing a level overrides both the relator set and the level at which
// the target normalizes. A hom built from a merely bijective relation checked
// against the finest relator set leaves exactly the range decompositions of
// the non-regular pairs as residues.
std::vector<RelatorResidue> verify_relators(const InducedHom& h,
                                            std::optional<Level> relator_level = {});

struct GapEntry {
  std::string generator;
  AlgebraElement value;
};

// Measures how far inducing fails to be functorial on the pair (s after r):
// for every generator of the algebra over s's codomain, the difference
//   (r-induced after s-induced)(g) - ((s after r)-induced)(g)
// in the algebra over r's domain. Empty iff the two agree on generators.
std::vector<GapEntry> functoriality_gap(const RelationMorphism& s, const RelationMorphism& r,
                                        Level level);

}  // namespace qv
