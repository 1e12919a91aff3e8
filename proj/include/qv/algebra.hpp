#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "qv/graph.hpp"
#include "qv/rational.hpp"

namespace qv {

// The three nested presentations over one graph: the path algebra, the Cohn
// algebra (adds ghost edges with the orthogonality relation), and the Leavitt
// algebra (adds the range decomposition at every regular vertex).
enum class Level { Path, Cohn, Leavitt };
std::string to_string(Level level);

// One basis word S_x S_{y*} with target(x) == target(y). At Level::Path the
// ghost half is always the target vertex, so the word is plain S_x.
struct Monomial {
  Path x, y;
  friend bool operator==(const Monomial&, const Monomial&) = default;
  friend std::strong_ordering operator<=>(const Monomial& a, const Monomial& b) {
    if (auto c = a.x <=> b.x; c != 0) return c;
    return a.y <=> b.y;
  }
};

// Choice of one outgoing edge per regular vertex, directing the range
// decomposition during normalization. Entries are nullopt at non-regular
// vertices.
using SpecialEdges = std::vector<std::optional<EdgeRef>>;
SpecialEdges default_special_edges(const Graph& g);  // first edge in declaration order

// Picks which reducible monomial to rewrite next, given the current ones in
// canonical order; used to randomize reduction order in confluence tests.
using RedexPicker = std::function<std::size_t(const std::vector<Monomial>&)>;

// An element in normal form: a finite linear combination of monomials, with
// no zero coefficients and, at Level::Leavitt, no monomial whose halves both
// end in the special edge of the same vertex. All constructors normalize.
class AlgebraElement {
 public:
  AlgebraElement() = default;
  static AlgebraElement zero(Level level, GraphPtr g);
  static AlgebraElement vertex(Level level, GraphPtr g, VertexIx v);        // S_v
  static AlgebraElement from_path(Level level, GraphPtr g, const Path& x);  // S_x
  static AlgebraElement ghost(Level level, GraphPtr g, const Path& y);      // S_{y*}
  static AlgebraElement monomial(Level level, GraphPtr g, const Path& x, const Path& y,
                                 const Rational& c = Rational(1));

  Level level() const { return level_; }
  const GraphPtr& graph() const { return graph_; }
  const std::map<Monomial, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  friend AlgebraElement operator+(const AlgebraElement& a, const AlgebraElement& b);
  friend AlgebraElement operator-(const AlgebraElement& a, const AlgebraElement& b);
  friend AlgebraElement operator*(const Rational& c, const AlgebraElement& a);
  friend bool operator==(const AlgebraElement& a, const AlgebraElement& b);

 private:
  friend AlgebraElement normalize(Level, GraphPtr, std::vector<std::pair<Rational, Monomial>>,
                                  const SpecialEdges*, const RedexPicker&);
  Level level_ = Level::Path;
  GraphPtr graph_;
  std::map<Monomial, Rational> terms_;
};

// Brings an arbitrary linear combination of monomials into normal form.
// Passing a special-edge assignment or a redex picker changes the reduction
// run but, as the tests assert, never the value.
AlgebraElement normalize(Level level, GraphPtr g,
                         std::vector<std::pair<Rational, Monomial>> raw,
                         const SpecialEdges* special = nullptr,
                         const RedexPicker& pick = {});

AlgebraElement mul(const AlgebraElement& a, const AlgebraElement& b);
// The involution: fixes vertices, swaps each edge with its ghost, reverses
// products, and acts as the identity on scalars. Undefined at Level::Path.
AlgebraElement star(const AlgebraElement& a);

std::string to_string(const AlgebraElement& a);

// A generator symbol of a presentation: a vertex, an edge, or a ghost edge.
struct GenSymbol {
  enum class Kind { Vertex, Edge, Ghost };
  Kind kind = Kind::Vertex;
  VertexIx v = 0;
  EdgeRef e{};
  friend auto operator<=>(const GenSymbol&, const GenSymbol&) = default;
};
std::string gen_name(const Graph& g, const GenSymbol& s);

// A defining relation, kept as a formal combination of generator words so it
// can be pushed through arbitrary generator images.
struct Relator {
  std::string name;
  std::vector<std::pair<Rational, std::vector<GenSymbol>>> terms;
};

// The defining relations of the presentation at the given level: vertex
// orthogonality and edge endpoint relations; at Cohn also ghost endpoint
// relations and ghost-edge orthogonality; at Leavitt also the range
// decomposition at every regular vertex (infinite emitters contribute none).
// Infinite families are covered at representative members.
std::vector<Relator> relators(Level level, const Graph& g);

// Evaluates a relator under an assignment of elements to generator symbols,
// multiplying at the elements' level.
AlgebraElement evaluate_relator(Level level, GraphPtr target, const Relator& r,
                                const std::function<AlgebraElement(const GenSymbol&)>& image);

// The identity assignment: each generator goes to itself in the algebra of g.
AlgebraElement identity_image(Level level, GraphPtr g, const GenSymbol& s);

// Monomial basis of the algebra of a finite acyclic graph without infinite
// families, in canonical order.
std::vector<Monomial> acyclic_basis(Level level, GraphPtr g);

}  // namespace qv
