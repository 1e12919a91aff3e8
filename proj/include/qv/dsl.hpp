#pragma once

#include <map>
#include <string>
#include <vector>

#include "qv/algebra.hpp"
#include "qv/relations.hpp"

namespace qv {

// A parsed text document: named graphs, homs and relations in declaration
// order. The text grammar is
//
//   graph NAME { vertices: id+ ; edges: (id ':' id '->' id ('*' ('inf'|NUM))? ;)* }
//   hom NAME ':' A '->' B ('graph'|'path') { (id '->' rhs ;)* }
//   relation NAME ':' A '->' B { vertices: ('(' id ',' id ')')+ ';'
//                                [edges: ('(' path ',' edge ')')* ';']
//                                [families: ('(' id ',' id ')')* ';'] }
//
// where paths are '.'-separated edge tokens, a bare vertex id is a length-0
// path, members of a family of cardinality > 1 are written 'e[i]', and a hom
// entry keyed by a family name maps the whole family. '#' starts a comment.
// Identifiers may end in apostrophes (e, e', e'').
struct Document {
  enum class Kind { Graph, GraphHomDecl, PathHomDecl, Relation };
  std::vector<std::pair<Kind, std::string>> decls;  // declaration order
  std::map<std::string, GraphPtr> graphs;
  std::map<std::string, GraphHom> graph_homs;
  std::map<std::string, PathHom> path_homs;
  std::map<std::string, RelationMorphism> relations;

  void add(GraphPtr g);
  void add(GraphHom h);
  void add(PathHom h);
  void add(RelationMorphism r);
};

// Parse errors carry 1-based line/column.
Document parse_document(const std::string& text);
std::string print_document(const Document& doc);
bool documents_equal(const Document& a, const Document& b);

// Element expressions over a fixed graph and level:
//   expr := ['-'] term (('+' | '-') term)*
//   term := [rational '*'] 'S(' path ['|' path] ')'
// 'S(x)' is the path monomial, 'S(x|y)' the word S_x S_{y*}.
AlgebraElement parse_element(Level level, GraphPtr g, const std::string& text);

// DOT rendering of a graph: one arrow per edge, parallel members grouped by
// family; an infinite family becomes a single dashed arrow labeled with the
// family name and the infinity sign.
std::string export_dot(const Graph& g);

}  // namespace qv
