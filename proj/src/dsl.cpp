#include "qv/dsl.hpp"

#include <cctype>
#include <sstream>

namespace qv {

namespace {

struct Tok {
  enum Type { Id, Punct, End };
  Type type = End;
  std::string text;
  int line = 0, col = 0;
};

[[noreturn]] void parse_fail(const Tok& at, const std::string& msg) {
  fail("line " + std::to_string(at.line) + ", col " + std::to_string(at.col) + ": " + msg);
}

bool id_start(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

std::vector<Tok> lex(const std::string& text) {
  std::vector<Tok> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < text.size()) {
    char c = text[i];
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') advance(1);
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    Tok t;
    t.line = line;
    t.col = col;
    if (id_start(c)) {
      std::size_t j = i;
      while (j < text.size() && id_start(text[j])) ++j;
      while (j < text.size() && text[j] == '\'') ++j;  // trailing primes: e, e', e''
      if (j < text.size() && text[j] == '[') {          // member index: w[3]
        std::size_t k = j + 1;
        while (k < text.size() && std::isdigit(static_cast<unsigned char>(text[k]))) ++k;
        if (k > j + 1 && k < text.size() && text[k] == ']') j = k + 1;
      }
      t.type = Tok::Id;
      t.text = text.substr(i, j - i);
      advance(j - i);
    } else if (c == '-' && i + 1 < text.size() && text[i + 1] == '>') {
      t.type = Tok::Punct;
      t.text = "->";
      advance(2);
    } else if (std::string("{}():;,.*|+-/").find(c) != std::string::npos) {
      t.type = Tok::Punct;
      t.text = std::string(1, c);
      advance(1);
    } else {
      parse_fail(t, std::string("unexpected character '") + c + "'");
    }
    out.push_back(std::move(t));
  }
  Tok end;
  end.line = line;
  end.col = col;
  out.push_back(end);
  return out;
}

class Parser {
 public:
  explicit Parser(const std::string& text) : toks_(lex(text)) {}

  Document run() {
    Document doc;
    while (peek().type != Tok::End) {
      const Tok& t = peek();
      if (t.type != Tok::Id) parse_fail(t, "expected a declaration");
      if (t.text == "graph") {
        doc.add(parse_graph());
      } else if (t.text == "hom") {
        parse_hom(doc);
      } else if (t.text == "relation") {
        doc.add(parse_relation(doc));
      } else {
        parse_fail(t, "expected 'graph', 'hom' or 'relation', got '" + t.text + "'");
      }
    }
    return doc;
  }

 private:
  const Tok& peek() const { return toks_[pos_]; }
  Tok take() { return toks_[pos_++]; }
  bool accept(const std::string& punct) {
    if (peek().type == Tok::Punct && peek().text == punct) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(const std::string& punct) {
    if (!accept(punct)) parse_fail(peek(), "expected '" + punct + "'");
  }
  std::string ident(const char* what) {
    if (peek().type != Tok::Id) parse_fail(peek(), std::string("expected ") + what);
    return take().text;
  }
  bool accept_key(const std::string& kw) {
    if (peek().type == Tok::Id && peek().text == kw) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect_key(const std::string& kw) {
    if (!accept_key(kw)) parse_fail(peek(), "expected '" + kw + "'");
  }

  // path := id ('.' id)*
  std::string path_text() {
    std::string out = ident("a path segment");
    while (accept(".")) out += "." + ident("a path segment");
    return out;
  }

  GraphPtr parse_graph() {
    expect_key("graph");
    std::string name = ident("a graph name");
    expect("{");
    expect_key("vertices");
    expect(":");
    std::vector<std::string> vertices;
    while (peek().type == Tok::Id) vertices.push_back(take().text);
    if (vertices.empty()) parse_fail(peek(), "expected at least one vertex");
    expect(";");
    std::vector<EdgeFamilySpec> fams;
    if (accept_key("edges")) {
      expect(":");
      while (peek().type == Tok::Id) {
        EdgeFamilySpec spec;
        spec.name = take().text;
        expect(":");
        spec.source = ident("a source vertex");
        expect("->");
        spec.target = ident("a target vertex");
        if (accept("*")) {
          if (accept_key("inf")) {
            spec.count = std::nullopt;
          } else {
            Tok n = take();
            if (n.type != Tok::Id ||
                n.text.find_first_not_of("0123456789") != std::string::npos)
              parse_fail(n, "expected a cardinality or 'inf'");
            spec.count = static_cast<std::uint32_t>(std::stoul(n.text));
          }
        }
        expect(";");
        fams.push_back(std::move(spec));
      }
    }
    expect("}");
    return Graph::build(std::move(vertices), std::move(fams), name);
  }

  void parse_hom(Document& doc) {
    expect_key("hom");
    std::string name = ident("a hom name");
    expect(":");
    std::string dom_name = ident("a graph name");
    expect("->");
    std::string cod_name = ident("a graph name");
    bool is_path;
    if (accept_key("graph")) {
      is_path = false;
    } else if (accept_key("path")) {
      is_path = true;
    } else {
      parse_fail(peek(), "expected 'graph' or 'path'");
    }
    GraphPtr dom = lookup_graph(doc, dom_name);
    GraphPtr cod = lookup_graph(doc, cod_name);
    std::vector<std::pair<std::string, std::string>> vmap, emap;
    expect("{");
    while (peek().type == Tok::Id) {
      std::string key = take().text;
      expect("->");
      std::string rhs = path_text();
      expect(";");
      // A key naming a vertex is a vertex entry; anything else must resolve
      // as an edge token when the hom is built.
      if (dom->find_vertex(key))
        vmap.emplace_back(std::move(key), std::move(rhs));
      else
        emap.emplace_back(std::move(key), std::move(rhs));
    }
    expect("}");
    if (is_path)
      doc.add(make_path_hom(dom, cod, vmap, emap, name));
    else
      doc.add(make_graph_hom(dom, cod, vmap, emap, name));
  }

  RelationMorphism parse_relation(Document& doc) {
    expect_key("relation");
    std::string name = ident("a relation name");
    expect(":");
    GraphPtr dom = lookup_graph(doc, ident("a graph name"));
    expect("->");
    GraphPtr cod = lookup_graph(doc, ident("a graph name"));
    expect("{");
    expect_key("vertices");
    expect(":");
    std::vector<std::pair<std::string, std::string>> gv, ge, gf;
    while (accept("(")) {
      std::string u = ident("a vertex");
      expect(",");
      std::string v = ident("a vertex");
      expect(")");
      gv.emplace_back(std::move(u), std::move(v));
    }
    expect(";");
    if (accept_key("edges")) {
      expect(":");
      while (accept("(")) {
        std::string x = path_text();
        expect(",");
        std::string f = ident("an edge");
        expect(")");
        ge.emplace_back(std::move(x), std::move(f));
      }
      expect(";");
    }
    if (accept_key("families")) {
      expect(":");
      while (accept("(")) {
        std::string a = ident("a family");
        expect(",");
        std::string b = ident("a family");
        expect(")");
        gf.emplace_back(std::move(a), std::move(b));
      }
      expect(";");
    }
    expect("}");
    return from_generators(name, dom, cod, gv, ge, gf);
  }

  GraphPtr lookup_graph(const Document& doc, const std::string& name) {
    auto it = doc.graphs.find(name);
    if (it == doc.graphs.end()) parse_fail(peek(), "unknown graph '" + name + "'");
    return it->second;
  }

  std::vector<Tok> toks_;
  std::size_t pos_ = 0;
};

}  // namespace

void Document::add(GraphPtr g) {
  check(g && !g->name().empty(), "document: graphs must be named");
  check(!graphs.count(g->name()), "document: duplicate name '" + g->name() + "'");
  decls.emplace_back(Kind::Graph, g->name());
  graphs.emplace(g->name(), std::move(g));
}

void Document::add(GraphHom h) {
  check(!h.name().empty(), "document: homs must be named");
  check(!graph_homs.count(h.name()) && !path_homs.count(h.name()),
        "document: duplicate name '" + h.name() + "'");
  decls.emplace_back(Kind::GraphHomDecl, h.name());
  graph_homs.emplace(h.name(), std::move(h));
}

void Document::add(PathHom h) {
  check(!h.name().empty(), "document: homs must be named");
  check(!graph_homs.count(h.name()) && !path_homs.count(h.name()),
        "document: duplicate name '" + h.name() + "'");
  decls.emplace_back(Kind::PathHomDecl, h.name());
  path_homs.emplace(h.name(), std::move(h));
}

void Document::add(RelationMorphism r) {
  check(!r.name().empty(), "document: relations must be named");
  check(!relations.count(r.name()), "document: duplicate name '" + r.name() + "'");
  decls.emplace_back(Kind::Relation, r.name());
  relations.emplace(r.name(), std::move(r));
}

Document parse_document(const std::string& text) { return Parser(text).run(); }

namespace {

void print_graph(std::ostringstream& os, const Graph& g) {
  os << "graph " << g.name() << " {\n  vertices:";
  for (VertexIx v = 0; v < g.vertex_count(); ++v) os << " " << g.vertex_name(v);
  os << ";\n";
  if (g.family_count() > 0) {
    os << "  edges:\n";
    for (FamilyIx f = 0; f < g.family_count(); ++f) {
      const auto& fam = g.family(f);
      os << "    " << fam.name << ": " << g.vertex_name(fam.source) << " -> "
         << g.vertex_name(fam.target);
      if (fam.infinite())
        os << " * inf";
      else if (*fam.count != 1)
        os << " * " << *fam.count;
      os << ";\n";
    }
  }
  os << "}\n";
}

template <typename Hom>
void print_hom(std::ostringstream& os, const Hom& h, const char* kind) {
  const Graph& dom = *h.dom();
  const Graph& cod = *h.cod();
  os << "hom " << h.name() << " : " << dom.name() << " -> " << cod.name() << " " << kind
     << " {\n";
  for (VertexIx v = 0; v < dom.vertex_count(); ++v)
    os << "  " << dom.vertex_name(v) << " -> " << cod.vertex_name(h.vertex_image(v)) << ";\n";
  for (FamilyIx f = 0; f < dom.family_count(); ++f) {
    const auto& fam = dom.family(f);
    if (fam.infinite()) {
      os << "  " << fam.name << " -> " << cod.family(h.family_image(f)).name << ";\n";
      continue;
    }
    for (std::uint32_t i = 0; i < *fam.count; ++i) {
      os << "  " << dom.edge_name({f, i}) << " -> ";
      if constexpr (std::is_same_v<Hom, GraphHom>)
        os << cod.edge_name(h.edge_image({f, i}));
      else
        os << print_path(cod, h.edge_image({f, i}));
      os << ";\n";
    }
  }
  os << "}\n";
}

void print_relation(std::ostringstream& os, const RelationMorphism& r) {
  os << "relation " << r.name() << " : " << r.dom()->name() << " -> " << r.cod()->name()
     << " {\n  vertices:";
  for (const auto& p : r.gen_v()) os << " " << print_vertex_pair(r, p);
  os << ";\n";
  if (!r.gen_e().empty()) {
    os << "  edges:";
    for (const auto& p : r.gen_e()) os << " " << print_edge_pair(r, p);
    os << ";\n";
  }
  if (!r.gen_fam().empty()) {
    os << "  families:";
    for (const auto& p : r.gen_fam())
      os << " (" << r.dom()->family(p.a).name << "," << r.cod()->family(p.b).name << ")";
    os << ";\n";
  }
  os << "}\n";
}

}  // namespace

std::string print_document(const Document& doc) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [kind, name] : doc.decls) {
    if (!first) os << "\n";
    first = false;
    switch (kind) {
      case Document::Kind::Graph: print_graph(os, *doc.graphs.at(name)); break;
      case Document::Kind::GraphHomDecl: print_hom(os, doc.graph_homs.at(name), "graph"); break;
      case Document::Kind::PathHomDecl: print_hom(os, doc.path_homs.at(name), "path"); break;
      case Document::Kind::Relation: print_relation(os, doc.relations.at(name)); break;
    }
  }
  return os.str();
}

namespace {

bool homs_equal(const GraphHom& a, const GraphHom& b) {
  if (a.name() != b.name() || !graphs_compatible(*a.dom(), *b.dom()) ||
      !graphs_compatible(*a.cod(), *b.cod()))
    return false;
  for (VertexIx v = 0; v < a.dom()->vertex_count(); ++v)
    if (a.vertex_image(v) != b.vertex_image(v)) return false;
  return a.edge_images() == b.edge_images();
}

bool homs_equal(const PathHom& a, const PathHom& b) {
  if (a.name() != b.name() || !graphs_compatible(*a.dom(), *b.dom()) ||
      !graphs_compatible(*a.cod(), *b.cod()))
    return false;
  for (VertexIx v = 0; v < a.dom()->vertex_count(); ++v)
    if (a.vertex_image(v) != b.vertex_image(v)) return false;
  return a.edge_images() == b.edge_images();
}

}  // namespace

bool documents_equal(const Document& a, const Document& b) {
  if (a.decls != b.decls) return false;
  for (const auto& [kind, name] : a.decls) {
    switch (kind) {
      case Document::Kind::Graph:
        if (!a.graphs.at(name)->same_shape(*b.graphs.at(name))) return false;
        break;
      case Document::Kind::GraphHomDecl:
        if (!homs_equal(a.graph_homs.at(name), b.graph_homs.at(name))) return false;
        break;
      case Document::Kind::PathHomDecl:
        if (!homs_equal(a.path_homs.at(name), b.path_homs.at(name))) return false;
        break;
      case Document::Kind::Relation:
        if (a.relations.at(name).name() != b.relations.at(name).name() ||
            !relations_equal(a.relations.at(name), b.relations.at(name)))
          return false;
        break;
    }
  }
  return true;
}

AlgebraElement parse_element(Level level, GraphPtr g, const std::string& text) {
  auto toks = lex(text);
  std::size_t pos = 0;
  auto peek = [&]() -> const Tok& { return toks[pos]; };
  auto accept = [&](const std::string& p) {
    if (peek().type == Tok::Punct && peek().text == p) {
      ++pos;
      return true;
    }
    return false;
  };
  auto expect = [&](const std::string& p) {
    if (!accept(p)) parse_fail(peek(), "expected '" + p + "'");
  };
  auto number = [&]() -> long long {
    if (peek().type != Tok::Id || peek().text.find_first_not_of("0123456789") != std::string::npos)
      parse_fail(peek(), "expected a number");
    return std::stoll(toks[pos++].text);
  };
  auto path_text = [&]() {
    if (peek().type != Tok::Id) parse_fail(peek(), "expected a path");
    std::string out = toks[pos++].text;
    while (accept(".")) {
      if (peek().type != Tok::Id) parse_fail(peek(), "expected a path segment");
      out += "." + toks[pos++].text;
    }
    return out;
  };

  auto term = [&]() -> AlgebraElement {
    Rational coeff(1);
    bool have_coeff = false;
    if (peek().type == Tok::Id && peek().text != "S" &&
        peek().text.find_first_not_of("0123456789") == std::string::npos) {
      long long num = number();
      long long den = accept("/") ? number() : 1;
      coeff = Rational(num, den);
      have_coeff = true;
    }
    if (have_coeff) expect("*");
    if (peek().type != Tok::Id || peek().text != "S")
      parse_fail(peek(), "expected 'S(' term");
    ++pos;
    expect("(");
    Path x = parse_path(*g, path_text());
    Path y = Path::at_vertex(x.target());
    if (accept("|")) y = parse_path(*g, path_text());
    expect(")");
    return AlgebraElement::monomial(level, g, x, y, coeff);
  };

  AlgebraElement out = AlgebraElement::zero(level, g);
  bool negate = accept("-");
  out = out + (negate ? Rational(-1) : Rational(1)) * term();
  while (peek().type != Tok::End) {
    if (accept("+"))
      out = out + term();
    else if (accept("-"))
      out = out - term();
    else
      parse_fail(peek(), "expected '+' or '-'");
  }
  return out;
}

std::string export_dot(const Graph& g) {
  std::ostringstream os;
  os << "digraph \"" << g.name() << "\" {\n  rankdir=LR;\n";
  for (VertexIx v = 0; v < g.vertex_count(); ++v)
    os << "  \"" << g.vertex_name(v) << "\" [shape=circle];\n";
  for (FamilyIx f = 0; f < g.family_count(); ++f) {
    const auto& fam = g.family(f);
    std::string arrow = "  \"" + g.vertex_name(fam.source) + "\" -> \"" +
                        g.vertex_name(fam.target) + "\"";
    if (fam.infinite()) {
      os << arrow << " [label=\"" << fam.name << " ∞\", style=dashed];\n";
    } else {
      for (std::uint32_t i = 0; i < *fam.count; ++i)
        os << arrow << " [label=\"" << g.edge_name({f, i}) << "\"];\n";
    }
  }
  os << "}\n";
  return os.str();
}

}  // namespace qv
