#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qv/error.hpp"

namespace qv {

using VertexIx = std::uint32_t;
using FamilyIx = std::uint32_t;

// One concrete edge: a family plus a member index. A family of finite
// cardinality n stands for n parallel edges (indices 0..n-1); an infinite
// family stands for countably many parallel edges, of which index 0 serves
// as the representative wherever edges are enumerated.
struct EdgeRef {
  FamilyIx family = 0;
  std::uint32_t index = 0;
  friend auto operator<=>(const EdgeRef&, const EdgeRef&) = default;
};

struct EdgeFamily {
  std::string name;
  VertexIx source = 0;
  VertexIx target = 0;
  std::optional<std::uint32_t> count;  // nullopt: countably infinite
  bool infinite() const { return !count.has_value(); }
};

// Construction-time description of a family, by vertex name.
struct EdgeFamilySpec {
  std::string name;
  std::string source;
  std::string target;
  std::optional<std::uint32_t> count = 1;
};

class Graph;
using GraphPtr = std::shared_ptr<const Graph>;

// A finite directed graph whose parallel edges are grouped into families.
// Immutable after build; all mutating computation happens on copies of the
// id vectors, so a Graph can be shared freely across threads.
class Graph {
 public:
  static GraphPtr build(std::vector<std::string> vertices,
                        std::vector<EdgeFamilySpec> families,
                        std::string name = "");

  const std::string& name() const { return name_; }
  std::size_t vertex_count() const { return vertices_.size(); }
  std::size_t family_count() const { return families_.size(); }
  const std::string& vertex_name(VertexIx v) const { return vertices_.at(v); }
  const EdgeFamily& family(FamilyIx f) const { return families_.at(f); }

  std::optional<VertexIx> find_vertex(const std::string& name) const;
  std::optional<FamilyIx> find_family(const std::string& name) const;
  VertexIx vertex(const std::string& name) const;      // throws if absent
  FamilyIx family_ix(const std::string& name) const;   // throws if absent
  EdgeRef edge(const std::string& family_name, std::uint32_t index = 0) const;

  bool valid(EdgeRef e) const;
  VertexIx source(EdgeRef e) const { return families_.at(e.family).source; }
  VertexIx target(EdgeRef e) const { return families_.at(e.family).target; }

  // "e" for a cardinality-1 family, "e[i]" otherwise.
  std::string edge_name(EdgeRef e) const;

  std::vector<FamilyIx> families_from(VertexIx v) const;

  // Every member of each finite family plus the index-0 representative of
  // each infinite family, in declaration order.
  std::vector<EdgeRef> listed_edges() const;
  std::vector<EdgeRef> listed_out_edges(VertexIx v) const;

  bool has_infinite_family() const;

  // Structural equality including names; object identity is not required
  // anywhere, two graphs built from the same description are interchangeable.
  bool same_shape(const Graph& other) const;

 private:
  std::string name_;
  std::vector<std::string> vertices_;
  std::vector<EdgeFamily> families_;
  std::map<std::string, VertexIx> vertex_by_name_;
  std::map<std::string, FamilyIx> family_by_name_;
};

bool graphs_compatible(const Graph& a, const Graph& b);

// A finite path. Length zero is a single vertex; otherwise a chain of edges
// whose endpoints match. Source and target are stored so vertex paths are
// first-class values.
class Path {
 public:
  Path() = default;
  static Path at_vertex(VertexIx v);
  static Path of_edges(const Graph& g, std::vector<EdgeRef> edges);

  std::size_t length() const { return edges_.size(); }
  bool is_vertex() const { return edges_.empty(); }
  VertexIx source() const { return source_; }
  VertexIx target() const { return target_; }
  const std::vector<EdgeRef>& edges() const { return edges_; }

  // First k edges (k <= length).
  Path prefix(const Graph& g, std::size_t k) const;
  // Edges from position k to the end.
  Path suffix(const Graph& g, std::size_t k) const;

  friend bool operator==(const Path& a, const Path& b) {
    return a.source_ == b.source_ && a.edges_ == b.edges_;
  }
  // Canonical order: by length, then source, then edges in declaration order.
  friend std::strong_ordering operator<=>(const Path& a, const Path& b) {
    if (auto c = a.edges_.size() <=> b.edges_.size(); c != 0) return c;
    if (auto c = a.source_ <=> b.source_; c != 0) return c;
    return a.edges_ <=> b.edges_;
  }

 private:
  VertexIx source_ = 0;
  VertexIx target_ = 0;
  std::vector<EdgeRef> edges_;
};

enum class PathOrder { Equal, Prefix, Extension, Incomparable };

// Compares p and q in the initial-segment order: Prefix means p is a proper
// initial segment of q, Extension the converse.
PathOrder compare_paths(const Path& p, const Path& q);
bool comparable(const Path& p, const Path& q);
bool prefix_leq(const Path& p, const Path& q);  // p equal to or initial segment of q

Path concat(const Graph& g, const Path& p, const Path& q);
// If q = p . rest, returns rest; otherwise nullopt.
std::optional<Path> strip_prefix(const Graph& g, const Path& p, const Path& q);

std::string print_path(const Graph& g, const Path& p);
// Parses "e1.e2" / "v" against g; vertex names denote length-zero paths.
Path parse_path(const Graph& g, const std::string& text);

struct VertexClasses {
  std::vector<VertexIx> sinks;
  std::vector<VertexIx> infinite_emitters;
  std::vector<VertexIx> regular;      // emits at least one and finitely many edges
  std::vector<VertexIx> single_loop;  // regular, emitting exactly one edge which is a loop
  bool row_finite = true;

  bool is_regular(VertexIx v) const;
  bool is_single_loop(VertexIx v) const;
};
VertexClasses classify_vertices(const Graph& g);

// All paths with the given source, of length <= max_len, in canonical order.
// Infinite families contribute only their representative member, so the
// result is finite even over non-row-finite graphs.
std::vector<Path> paths_from(const Graph& g, VertexIx v, std::size_t max_len);
std::vector<Path> all_paths(const Graph& g, std::size_t max_len);

// The double of g: one reversed ghost family (named with a '*' suffix) per
// original family. Defined for graphs without infinite families only.
GraphPtr extended_graph(const Graph& g);

}  // namespace qv
