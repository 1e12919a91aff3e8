#include "qv/algebra.hpp"

#include <algorithm>

namespace qv {

std::string to_string(Level level) {
  switch (level) {
    case Level::Path: return "path";
    case Level::Cohn: return "cohn";
    case Level::Leavitt: return "leavitt";
  }
  return "?";
}

SpecialEdges default_special_edges(const Graph& g) {
  SpecialEdges out(g.vertex_count());
  auto classes = classify_vertices(g);
  for (VertexIx v : classes.regular) out[v] = g.listed_out_edges(v).front();
  return out;
}

namespace {

void validate_monomial(const Graph& g, const Monomial& m) {
  check(m.x.target() == m.y.target(), "monomial halves must share their target");
  for (EdgeRef e : m.x.edges()) check(g.valid(e), "monomial path has an invalid edge");
  for (EdgeRef e : m.y.edges()) check(g.valid(e), "monomial ghost path has an invalid edge");
}

bool reducible(const Graph& g, const SpecialEdges& special, const Monomial& m) {
  if (m.x.is_vertex() || m.y.is_vertex()) return false;
  EdgeRef last = m.x.edges().back();
  if (m.y.edges().back() != last) return false;
  VertexIx v = g.source(last);
  return special[v].has_value() && *special[v] == last;
}

}  // namespace

AlgebraElement normalize(Level level, GraphPtr g,
                         std::vector<std::pair<Rational, Monomial>> raw,
                         const SpecialEdges* special, const RedexPicker& pick) {
  check(g != nullptr, "element without a graph");
  std::map<Monomial, Rational> acc;
  auto add = [&](const Monomial& m, const Rational& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = acc.emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) acc.erase(it);
    }
  };

  for (auto& [c, m] : raw) {
    if (level == Level::Path)
      check(m.y.is_vertex(), "path-level monomial with a ghost half");
    validate_monomial(*g, m);
    add(m, c);
  }

  if (level == Level::Leavitt) {
    SpecialEdges defaults;
    if (!special) {
      defaults = default_special_edges(*g);
      special = &defaults;
    }
    while (true) {
      std::vector<Monomial> redexes;
      for (const auto& [m, c] : acc)
        if (reducible(*g, *special, m)) redexes.push_back(m);
      if (redexes.empty()) break;
      std::size_t which = pick ? pick(redexes) % redexes.size() : 0;
      Monomial m = redexes[which];
      Rational c = acc.at(m);
      acc.erase(m);
      // S_{x^ e} S_{(y^ e)*} = S_{x^} S_{y^*} - sum over the siblings of e.
      EdgeRef e = m.x.edges().back();
      VertexIx v = g->source(e);
      Path xh = m.x.prefix(*g, m.x.length() - 1);
      Path yh = m.y.prefix(*g, m.y.length() - 1);
      add({xh, yh}, c);
      for (EdgeRef sib : g->listed_out_edges(v)) {
        if (sib == e) continue;
        Path sibPath = Path::of_edges(*g, {sib});
        add({concat(*g, xh, sibPath), concat(*g, yh, sibPath)}, -c);
      }
    }
  }

  AlgebraElement out;
  out.level_ = level;
  out.graph_ = std::move(g);
  out.terms_ = std::move(acc);
  return out;
}

AlgebraElement AlgebraElement::zero(Level level, GraphPtr g) {
  return normalize(level, std::move(g), {}, nullptr, {});
}

AlgebraElement AlgebraElement::vertex(Level level, GraphPtr g, VertexIx v) {
  Path p = Path::at_vertex(v);
  return normalize(level, std::move(g), {{Rational(1), {p, p}}}, nullptr, {});
}

AlgebraElement AlgebraElement::from_path(Level level, GraphPtr g, const Path& x) {
  Monomial m{x, Path::at_vertex(x.target())};
  return normalize(level, std::move(g), {{Rational(1), m}}, nullptr, {});
}

AlgebraElement AlgebraElement::ghost(Level level, GraphPtr g, const Path& y) {
  check(level != Level::Path, "ghost paths do not exist at the path level");
  Monomial m{Path::at_vertex(y.target()), y};
  return normalize(level, std::move(g), {{Rational(1), m}}, nullptr, {});
}

AlgebraElement AlgebraElement::monomial(Level level, GraphPtr g, const Path& x, const Path& y,
                                        const Rational& c) {
  return normalize(level, std::move(g), {{c, {x, y}}}, nullptr, {});
}

AlgebraElement operator+(const AlgebraElement& a, const AlgebraElement& b) {
  check(a.level_ == b.level_, "mixed-level addition");
  check(a.graph_ && b.graph_ && graphs_compatible(*a.graph_, *b.graph_),
        "addition across different graphs");
  std::vector<std::pair<Rational, Monomial>> raw;
  for (const auto& [m, c] : a.terms_) raw.push_back({c, m});
  for (const auto& [m, c] : b.terms_) raw.push_back({c, m});
  return normalize(a.level_, a.graph_, std::move(raw), nullptr, {});
}

AlgebraElement operator-(const AlgebraElement& a, const AlgebraElement& b) {
  return a + (Rational(-1) * b);
}

AlgebraElement operator*(const Rational& c, const AlgebraElement& a) {
  std::vector<std::pair<Rational, Monomial>> raw;
  for (const auto& [m, k] : a.terms_) raw.push_back({c * k, m});
  return normalize(a.level_, a.graph_, std::move(raw), nullptr, {});
}

bool operator==(const AlgebraElement& a, const AlgebraElement& b) {
  return a.level_ == b.level_ && a.graph_ && b.graph_ &&
         graphs_compatible(*a.graph_, *b.graph_) && a.terms_ == b.terms_;
}

namespace {

// Product of two monomials: zero or a single monomial. The ghost half of the
// left factor must swallow the plain half of the right factor or conversely.
std::optional<Monomial> mono_mul(const Graph& g, const Monomial& a, const Monomial& b) {
  if (auto rest = strip_prefix(g, a.y, b.x))
    return Monomial{concat(g, a.x, *rest), b.y};
  if (auto rest = strip_prefix(g, b.x, a.y))
    return Monomial{a.x, concat(g, b.y, *rest)};
  return std::nullopt;
}

}  // namespace

AlgebraElement mul(const AlgebraElement& a, const AlgebraElement& b) {
  check(a.level() == b.level(), "mixed-level multiplication");
  check(a.graph() && b.graph() && graphs_compatible(*a.graph(), *b.graph()),
        "multiplication across different graphs");
  std::vector<std::pair<Rational, Monomial>> raw;
  for (const auto& [ma, ca] : a.terms())
    for (const auto& [mb, cb] : b.terms())
      if (auto m = mono_mul(*a.graph(), ma, mb)) raw.push_back({ca * cb, *m});
  return normalize(a.level(), a.graph(), std::move(raw), nullptr, {});
}

AlgebraElement star(const AlgebraElement& a) {
  check(a.level() != Level::Path, "the involution is not defined at the path level");
  std::vector<std::pair<Rational, Monomial>> raw;
  for (const auto& [m, c] : a.terms()) raw.push_back({c, {m.y, m.x}});
  return normalize(a.level(), a.graph(), std::move(raw), nullptr, {});
}

std::string to_string(const AlgebraElement& a) {
  if (a.is_zero()) return "0";
  const Graph& g = *a.graph();
  std::string out;
  bool first = true;
  for (const auto& [m, c] : a.terms()) {
    Rational k = c;
    if (first) {
      if (k < Rational(0)) {
        out += "-";
        k = -k;
      }
    } else {
      out += k < Rational(0) ? " - " : " + ";
      if (k < Rational(0)) k = -k;
    }
    if (!k.is_one()) out += k.str() + "*";
    out += "S(" + print_path(g, m.x);
    if (!m.y.is_vertex()) out += "|" + print_path(g, m.y);
    out += ")";
    first = false;
  }
  return out;
}

std::string gen_name(const Graph& g, const GenSymbol& s) {
  switch (s.kind) {
    case GenSymbol::Kind::Vertex: return "S(" + g.vertex_name(s.v) + ")";
    case GenSymbol::Kind::Edge: return "S(" + g.edge_name(s.e) + ")";
    case GenSymbol::Kind::Ghost: return "S(" + g.edge_name(s.e) + ")*";
  }
  return "?";
}

namespace {

GenSymbol sym_vertex(VertexIx v) { return {GenSymbol::Kind::Vertex, v, {}}; }
GenSymbol sym_edge(EdgeRef e) { return {GenSymbol::Kind::Edge, 0, e}; }
GenSymbol sym_ghost(EdgeRef e) { return {GenSymbol::Kind::Ghost, 0, e}; }

}  // namespace

std::vector<Relator> relators(Level level, const Graph& g) {
  std::vector<Relator> out;
  const Rational one(1);

  // Vertex orthogonality and idempotence: S_v S_w = delta_{vw} S_v.
  for (VertexIx v = 0; v < g.vertex_count(); ++v)
    for (VertexIx w = 0; w < g.vertex_count(); ++w) {
      Relator r;
      r.name = "V(" + g.vertex_name(v) + "," + g.vertex_name(w) + ")";
      r.terms.push_back({one, {sym_vertex(v), sym_vertex(w)}});
      if (v == w) r.terms.push_back({-one, {sym_vertex(v)}});
      out.push_back(std::move(r));
    }

  auto listed = g.listed_edges();
  // Also cover a second member of each infinite family, so the
  // distinct-members-of-one-family cases of the relations appear.
  std::vector<EdgeRef> covered = listed;
  for (FamilyIx f = 0; f < g.family_count(); ++f)
    if (g.family(f).infinite()) covered.push_back({f, 1});

  // Edge endpoint relations: S_{s(e)} S_e = S_e = S_e S_{t(e)}.
  for (EdgeRef e : covered) {
    Relator l, r;
    l.name = "E1L(" + g.edge_name(e) + ")";
    l.terms.push_back({one, {sym_vertex(g.source(e)), sym_edge(e)}});
    l.terms.push_back({-one, {sym_edge(e)}});
    out.push_back(std::move(l));
    r.name = "E1R(" + g.edge_name(e) + ")";
    r.terms.push_back({one, {sym_edge(e), sym_vertex(g.target(e))}});
    r.terms.push_back({-one, {sym_edge(e)}});
    out.push_back(std::move(r));
  }

  if (level == Level::Path) return out;

  // Ghost endpoint relations: S_{t(e)} S_{e*} = S_{e*} = S_{e*} S_{s(e)}.
  for (EdgeRef e : covered) {
    Relator l, r;
    l.name = "E2L(" + g.edge_name(e) + ")";
    l.terms.push_back({one, {sym_vertex(g.target(e)), sym_ghost(e)}});
    l.terms.push_back({-one, {sym_ghost(e)}});
    out.push_back(std::move(l));
    r.name = "E2R(" + g.edge_name(e) + ")";
    r.terms.push_back({one, {sym_ghost(e), sym_vertex(g.source(e))}});
    r.terms.push_back({-one, {sym_ghost(e)}});
    out.push_back(std::move(r));
  }

  // Ghost-edge orthogonality: S_{e*} S_{e'} = delta_{ee'} S_{t(e)}.
  for (EdgeRef e : covered)
    for (EdgeRef f : covered) {
      Relator r;
      r.name = "CK1(" + g.edge_name(e) + "," + g.edge_name(f) + ")";
      r.terms.push_back({one, {sym_ghost(e), sym_edge(f)}});
      if (e == f) r.terms.push_back({-one, {sym_vertex(g.target(e))}});
      out.push_back(std::move(r));
    }

  if (level == Level::Cohn) return out;

  // Range decomposition at every regular vertex: S_v = sum S_e S_{e*}.
  auto classes = classify_vertices(g);
  for (VertexIx v : classes.regular) {
    Relator r;
    r.name = "CK2(" + g.vertex_name(v) + ")";
    r.terms.push_back({one, {sym_vertex(v)}});
    for (EdgeRef e : g.listed_out_edges(v))
      r.terms.push_back({-one, {sym_edge(e), sym_ghost(e)}});
    out.push_back(std::move(r));
  }
  return out;
}

AlgebraElement evaluate_relator(Level level, GraphPtr target, const Relator& r,
                                const std::function<AlgebraElement(const GenSymbol&)>& image) {
  AlgebraElement sum = AlgebraElement::zero(level, target);
  for (const auto& [c, word] : r.terms) {
    check(!word.empty(), "empty generator word");
    AlgebraElement prod = image(word[0]);
    for (std::size_t i = 1; i < word.size(); ++i) prod = mul(prod, image(word[i]));
    sum = sum + (c * prod);
  }
  return sum;
}

AlgebraElement identity_image(Level level, GraphPtr g, const GenSymbol& s) {
  switch (s.kind) {
    case GenSymbol::Kind::Vertex: return AlgebraElement::vertex(level, g, s.v);
    case GenSymbol::Kind::Edge:
      return AlgebraElement::from_path(level, g, Path::of_edges(*g, {s.e}));
    case GenSymbol::Kind::Ghost:
      return AlgebraElement::ghost(level, g, Path::of_edges(*g, {s.e}));
  }
  fail("unknown generator symbol");
}

namespace {

bool is_acyclic(const Graph& g) {
  // Colors: 0 unvisited, 1 on stack, 2 done.
  std::vector<int> color(g.vertex_count(), 0);
  std::function<bool(VertexIx)> visit = [&](VertexIx v) {
    color[v] = 1;
    for (FamilyIx f : g.families_from(v)) {
      VertexIx w = g.family(f).target;
      if (color[w] == 1) return false;
      if (color[w] == 0 && !visit(w)) return false;
    }
    color[v] = 2;
    return true;
  };
  for (VertexIx v = 0; v < g.vertex_count(); ++v)
    if (color[v] == 0 && !visit(v)) return false;
  return true;
}

}  // namespace

std::vector<Monomial> acyclic_basis(Level level, GraphPtr g) {
  check(!g->has_infinite_family(), "basis enumeration requires finitely many edges");
  check(is_acyclic(*g), "basis enumeration requires an acyclic graph");
  // In an acyclic graph no path revisits a vertex, so lengths stay below the
  // vertex count.
  auto paths = all_paths(*g, g->vertex_count());
  std::vector<Monomial> out;
  if (level == Level::Path) {
    for (const Path& x : paths) out.push_back({x, Path::at_vertex(x.target())});
    return out;
  }
  SpecialEdges special = default_special_edges(*g);
  for (const Path& x : paths)
    for (const Path& y : paths) {
      if (x.target() != y.target()) continue;
      Monomial m{x, y};
      if (level == Level::Leavitt && reducible(*g, special, m)) continue;
      out.push_back(m);
    }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace qv
