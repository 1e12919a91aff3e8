#include "qv/graph.hpp"

#include <algorithm>
#include <deque>

namespace qv {

GraphPtr Graph::build(std::vector<std::string> vertices,
                      std::vector<EdgeFamilySpec> families, std::string name) {
  auto g = std::make_shared<Graph>();
  g->name_ = std::move(name);
  g->vertices_ = std::move(vertices);
  for (VertexIx i = 0; i < g->vertices_.size(); ++i) {
    const auto& v = g->vertices_[i];
    check(!v.empty(), "graph '" + g->name_ + "': empty vertex id");
    check(g->vertex_by_name_.emplace(v, i).second,
          "graph '" + g->name_ + "': duplicate vertex id '" + v + "'");
  }
  for (const auto& spec : families) {
    EdgeFamily fam;
    fam.name = spec.name;
    check(!fam.name.empty(), "graph '" + g->name_ + "': empty edge id");
    check(!g->vertex_by_name_.count(fam.name),
          "graph '" + g->name_ + "': edge id '" + fam.name + "' collides with a vertex id");
    auto s = g->find_vertex(spec.source);
    auto t = g->find_vertex(spec.target);
    check(s.has_value(), "graph '" + g->name_ + "': edge '" + spec.name +
                             "' has a dangling endpoint: unknown source '" + spec.source + "'");
    check(t.has_value(), "graph '" + g->name_ + "': edge '" + spec.name +
                             "' has a dangling endpoint: unknown target '" + spec.target + "'");
    fam.source = *s;
    fam.target = *t;
    fam.count = spec.count;
    check(!fam.count || *fam.count >= 1,
          "graph '" + g->name_ + "': edge '" + spec.name + "' has zero cardinality");
    FamilyIx ix = static_cast<FamilyIx>(g->families_.size());
    check(g->family_by_name_.emplace(fam.name, ix).second,
          "graph '" + g->name_ + "': duplicate edge id '" + fam.name + "'");
    g->families_.push_back(std::move(fam));
  }
  return g;
}

std::optional<VertexIx> Graph::find_vertex(const std::string& name) const {
  auto it = vertex_by_name_.find(name);
  if (it == vertex_by_name_.end()) return std::nullopt;
  return it->second;
}

std::optional<FamilyIx> Graph::find_family(const std::string& name) const {
  auto it = family_by_name_.find(name);
  if (it == family_by_name_.end()) return std::nullopt;
  return it->second;
}

VertexIx Graph::vertex(const std::string& name) const {
  auto v = find_vertex(name);
  check(v.has_value(), "graph '" + name_ + "': unknown vertex '" + name + "'");
  return *v;
}

FamilyIx Graph::family_ix(const std::string& name) const {
  auto f = find_family(name);
  check(f.has_value(), "graph '" + name_ + "': unknown edge '" + name + "'");
  return *f;
}

EdgeRef Graph::edge(const std::string& family_name, std::uint32_t index) const {
  EdgeRef e{family_ix(family_name), index};
  check(valid(e), "graph '" + name_ + "': edge index out of range in '" + family_name + "'");
  return e;
}

bool Graph::valid(EdgeRef e) const {
  if (e.family >= families_.size()) return false;
  const auto& fam = families_[e.family];
  return fam.infinite() || e.index < *fam.count;
}

std::string Graph::edge_name(EdgeRef e) const {
  const auto& fam = families_.at(e.family);
  if (fam.count && *fam.count == 1) return fam.name;
  return fam.name + "[" + std::to_string(e.index) + "]";
}

std::vector<FamilyIx> Graph::families_from(VertexIx v) const {
  std::vector<FamilyIx> out;
  for (FamilyIx f = 0; f < families_.size(); ++f)
    if (families_[f].source == v) out.push_back(f);
  return out;
}

std::vector<EdgeRef> Graph::listed_edges() const {
  std::vector<EdgeRef> out;
  for (FamilyIx f = 0; f < families_.size(); ++f) {
    const auto& fam = families_[f];
    std::uint32_t n = fam.infinite() ? 1u : *fam.count;
    for (std::uint32_t i = 0; i < n; ++i) out.push_back({f, i});
  }
  return out;
}

std::vector<EdgeRef> Graph::listed_out_edges(VertexIx v) const {
  std::vector<EdgeRef> out;
  for (FamilyIx f : families_from(v)) {
    const auto& fam = families_[f];
    std::uint32_t n = fam.infinite() ? 1u : *fam.count;
    for (std::uint32_t i = 0; i < n; ++i) out.push_back({f, i});
  }
  return out;
}

bool Graph::has_infinite_family() const {
  for (const auto& fam : families_)
    if (fam.infinite()) return true;
  return false;
}

bool Graph::same_shape(const Graph& other) const {
  if (vertices_ != other.vertices_) return false;
  if (families_.size() != other.families_.size()) return false;
  for (std::size_t i = 0; i < families_.size(); ++i) {
    const auto& a = families_[i];
    const auto& b = other.families_[i];
    if (a.name != b.name || a.source != b.source || a.target != b.target || a.count != b.count)
      return false;
  }
  return true;
}

bool graphs_compatible(const Graph& a, const Graph& b) {
  return &a == &b || a.same_shape(b);
}

Path Path::at_vertex(VertexIx v) {
  Path p;
  p.source_ = p.target_ = v;
  return p;
}

Path Path::of_edges(const Graph& g, std::vector<EdgeRef> edges) {
  check(!edges.empty(), "path of edges must contain at least one edge");
  for (const auto& e : edges) check(g.valid(e), "path contains an invalid edge reference");
  for (std::size_t i = 0; i + 1 < edges.size(); ++i)
    check(g.target(edges[i]) == g.source(edges[i + 1]),
          "path edges '" + g.edge_name(edges[i]) + "' and '" + g.edge_name(edges[i + 1]) +
              "' do not meet");
  Path p;
  p.source_ = g.source(edges.front());
  p.target_ = g.target(edges.back());
  p.edges_ = std::move(edges);
  return p;
}

Path Path::prefix(const Graph& g, std::size_t k) const {
  check(k <= length(), "path prefix longer than the path");
  if (k == 0) return at_vertex(source_);
  return of_edges(g, std::vector<EdgeRef>(edges_.begin(), edges_.begin() + k));
}

Path Path::suffix(const Graph& g, std::size_t k) const {
  check(k <= length(), "path suffix offset beyond the path");
  if (k == length()) return at_vertex(target_);
  return of_edges(g, std::vector<EdgeRef>(edges_.begin() + k, edges_.end()));
}

PathOrder compare_paths(const Path& p, const Path& q) {
  if (p.source() != q.source()) return PathOrder::Incomparable;
  const auto& a = p.edges();
  const auto& b = q.edges();
  std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i)
    if (a[i] != b[i]) return PathOrder::Incomparable;
  if (a.size() == b.size()) return PathOrder::Equal;
  return a.size() < b.size() ? PathOrder::Prefix : PathOrder::Extension;
}

bool comparable(const Path& p, const Path& q) {
  return compare_paths(p, q) != PathOrder::Incomparable;
}

bool prefix_leq(const Path& p, const Path& q) {
  auto o = compare_paths(p, q);
  return o == PathOrder::Equal || o == PathOrder::Prefix;
}

Path concat(const Graph& g, const Path& p, const Path& q) {
  check(p.target() == q.source(), "paths do not compose: target '" +
                                      g.vertex_name(p.target()) + "' vs source '" +
                                      g.vertex_name(q.source()) + "'");
  if (p.is_vertex()) return q;
  if (q.is_vertex()) return p;
  std::vector<EdgeRef> edges = p.edges();
  edges.insert(edges.end(), q.edges().begin(), q.edges().end());
  return Path::of_edges(g, std::move(edges));
}

std::optional<Path> strip_prefix(const Graph& g, const Path& p, const Path& q) {
  if (!prefix_leq(p, q)) return std::nullopt;
  return q.suffix(g, p.length());
}

std::string print_path(const Graph& g, const Path& p) {
  if (p.is_vertex()) return g.vertex_name(p.source());
  std::string out;
  for (std::size_t i = 0; i < p.edges().size(); ++i) {
    if (i) out += ".";
    out += g.edge_name(p.edges()[i]);
  }
  return out;
}

namespace {

// Accepts "name" or "name[index]".
std::pair<std::string, std::optional<std::uint32_t>> split_indexed(const std::string& tok) {
  auto lb = tok.find('[');
  if (lb == std::string::npos) return {tok, std::nullopt};
  check(tok.back() == ']', "malformed edge token '" + tok + "'");
  std::string base = tok.substr(0, lb);
  std::string num = tok.substr(lb + 1, tok.size() - lb - 2);
  check(!num.empty() && num.find_first_not_of("0123456789") == std::string::npos,
        "malformed edge index in '" + tok + "'");
  return {base, static_cast<std::uint32_t>(std::stoul(num))};
}

}  // namespace

Path parse_path(const Graph& g, const std::string& text) {
  check(!text.empty(), "empty path");
  std::vector<std::string> toks;
  std::size_t start = 0;
  while (true) {
    auto dot = text.find('.', start);
    toks.push_back(text.substr(start, dot == std::string::npos ? dot : dot - start));
    if (dot == std::string::npos) break;
    start = dot + 1;
  }
  if (toks.size() == 1) {
    auto [base, ix] = split_indexed(toks[0]);
    if (!ix) {
      if (auto v = g.find_vertex(base)) return Path::at_vertex(*v);
    }
    // fall through: single-edge path
  }
  std::vector<EdgeRef> edges;
  for (const auto& tok : toks) {
    auto [base, ix] = split_indexed(tok);
    auto fam = g.find_family(base);
    check(fam.has_value(), "graph '" + g.name() + "': unknown path segment '" + tok + "'");
    const auto& f = g.family(*fam);
    if (!ix) {
      check(f.count && *f.count == 1,
            "edge '" + base + "' needs an explicit index, as in '" + base + "[0]'");
      ix = 0;
    }
    EdgeRef e{*fam, *ix};
    check(g.valid(e), "graph '" + g.name() + "': edge index out of range in '" + tok + "'");
    edges.push_back(e);
  }
  return Path::of_edges(g, std::move(edges));
}

bool VertexClasses::is_regular(VertexIx v) const {
  return std::find(regular.begin(), regular.end(), v) != regular.end();
}

bool VertexClasses::is_single_loop(VertexIx v) const {
  return std::find(single_loop.begin(), single_loop.end(), v) != single_loop.end();
}

VertexClasses classify_vertices(const Graph& g) {
  VertexClasses out;
  for (VertexIx v = 0; v < g.vertex_count(); ++v) {
    bool infinite = false;
    std::uint64_t degree = 0;
    bool lone_loop = false;
    for (FamilyIx f : g.families_from(v)) {
      const auto& fam = g.family(f);
      if (fam.infinite()) {
        infinite = true;
        break;
      }
      degree += *fam.count;
      lone_loop = (degree == 1) && fam.target == v;
    }
    if (infinite) {
      out.infinite_emitters.push_back(v);
      out.row_finite = false;
    } else if (degree == 0) {
      out.sinks.push_back(v);
    } else {
      out.regular.push_back(v);
      if (degree == 1 && lone_loop) out.single_loop.push_back(v);
    }
  }
  return out;
}

std::vector<Path> paths_from(const Graph& g, VertexIx v, std::size_t max_len) {
  check(v < g.vertex_count(), "paths_from: vertex index out of range");
  std::vector<Path> out{Path::at_vertex(v)};
  std::size_t layer_begin = 0;
  for (std::size_t len = 1; len <= max_len; ++len) {
    std::size_t layer_end = out.size();
    for (std::size_t i = layer_begin; i < layer_end; ++i) {
      Path base = out[i];
      for (EdgeRef e : g.listed_out_edges(base.target())) {
        std::vector<EdgeRef> edges = base.edges();
        edges.push_back(e);
        out.push_back(Path::of_edges(g, std::move(edges)));
      }
    }
    if (out.size() == layer_end) break;  // no extension exists
    layer_begin = layer_end;
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Path> all_paths(const Graph& g, std::size_t max_len) {
  std::vector<Path> out;
  for (VertexIx v = 0; v < g.vertex_count(); ++v) {
    auto part = paths_from(g, v, max_len);
    out.insert(out.end(), part.begin(), part.end());
  }
  std::sort(out.begin(), out.end());
  return out;
}

GraphPtr extended_graph(const Graph& g) {
  check(!g.has_infinite_family(), "extended graph requires a graph without infinite families");
  std::vector<std::string> vertices;
  for (VertexIx v = 0; v < g.vertex_count(); ++v) vertices.push_back(g.vertex_name(v));
  std::vector<EdgeFamilySpec> fams;
  for (FamilyIx f = 0; f < g.family_count(); ++f) {
    const auto& fam = g.family(f);
    fams.push_back({fam.name, g.vertex_name(fam.source), g.vertex_name(fam.target), fam.count});
  }
  for (FamilyIx f = 0; f < g.family_count(); ++f) {
    const auto& fam = g.family(f);
    // ghost family: same members, endpoints swapped
    fams.push_back(
        {fam.name + "*", g.vertex_name(fam.target), g.vertex_name(fam.source), fam.count});
  }
  return Graph::build(std::move(vertices), std::move(fams), g.name() + "*");
}

}  // namespace qv
