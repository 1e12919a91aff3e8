#include <doctest.h>

#include <algorithm>
#include <set>

#include "helpers.hpp"
#include "qv/algebra.hpp"
#include "qv/dsl.hpp"
#include "qv/fixtures.hpp"

using namespace qv;
using qvtest::Rng;

namespace {

GraphPtr two_edge_graph() {
  // u with two parallel edges to v, so u is regular with siblings.
  return Graph::build({"u", "v"}, {{"a", "u", "v", 1}, {"b", "u", "v", 1}}, "G");
}

AlgebraElement el(Level level, GraphPtr g, const std::string& text) {
  return parse_element(level, std::move(g), text);
}

}  // namespace

TEST_CASE("element printing follows the coefficient conventions") {
  const Fixture fx = get_fixture("sec4");
  GraphPtr E = fx.graph("E");
  CHECK(to_string(Level::Path) == "path");
  CHECK(to_string(Level::Cohn) == "cohn");
  CHECK(to_string(Level::Leavitt) == "leavitt");

  CHECK(to_string(AlgebraElement::zero(Level::Path, E)) == "0");
  CHECK(to_string(el(Level::Path, E, "S(e)")) == "S(e)");
  CHECK(to_string(el(Level::Path, E, "2*S(e)")) == "2*S(e)");
  CHECK(to_string(el(Level::Path, E, "-S(e)")) == "-S(e)");
  CHECK(to_string(el(Level::Path, E, "1/2*S(e) - S(1)")) == "-S(1) + 1/2*S(e)");
  CHECK(to_string(el(Level::Cohn, E, "S(e|e)")) == "S(e|e)");
  CHECK(to_string(el(Level::Cohn, E, "S(2|e)")) == "S(2|e)");
}

TEST_CASE("monomial construction enforces the word shape") {
  const Fixture fx = get_fixture("sec4");
  GraphPtr E = fx.graph("E");
  Path e = parse_path(*E, "e");
  Path ep = parse_path(*E, "e'");

  // Halves of S_x S_{y*} must end at the same vertex.
  CHECK_THROWS_WITH(AlgebraElement::monomial(Level::Cohn, E, e, ep),
                    doctest::Contains("share their target"));
  // The path level has no ghost half at all.
  CHECK_THROWS_WITH(AlgebraElement::monomial(Level::Path, E, e, e),
                    doctest::Contains("ghost half"));
  CHECK_THROWS_WITH(AlgebraElement::ghost(Level::Path, E, e),
                    doctest::Contains("path level"));
  CHECK_NOTHROW(AlgebraElement::monomial(Level::Cohn, E, e, e));

  // Zero coefficients vanish on construction.
  CHECK(AlgebraElement::monomial(Level::Cohn, E, e, e, Rational(0)).is_zero());
}

TEST_CASE("addition merges terms and scalars distribute") {
  const Fixture fx = get_fixture("sec4");
  GraphPtr E = fx.graph("E");
  AlgebraElement a = el(Level::Path, E, "S(e) + 2*S(e.e'')");
  AlgebraElement b = el(Level::Path, E, "S(e)");

  CHECK(a + b == b + a);
  CHECK((a - a).is_zero());
  CHECK((Rational(0) * a).is_zero());
  CHECK(b + b == el(Level::Path, E, "2*S(e)"));
  CHECK(a + b == el(Level::Path, E, "2*S(e) + 2*S(e.e'')"));
  CHECK(Rational(1, 2) * (a + a) == a);
  CHECK(Rational(3) * (a + b) == Rational(3) * a + Rational(3) * b);
  CHECK(a - b == el(Level::Path, E, "2*S(e.e'')"));

  // Mixing levels or graphs is rejected.
  GraphPtr F = fx.graph("F");
  CHECK_THROWS_WITH(a + el(Level::Cohn, E, "S(e)"), doctest::Contains("mixed-level"));
  CHECK_THROWS_WITH(a + el(Level::Path, F, "S(f)"), doctest::Contains("different graphs"));
}

TEST_CASE("multiplication concatenates paths and kills mismatches") {
  const Fixture fx = get_fixture("sec4");
  GraphPtr E = fx.graph("E");
  auto P = [&](const std::string& t) { return el(Level::Path, E, t); };

  CHECK(mul(P("S(e)"), P("S(e'')")) == P("S(e.e'')"));
  CHECK(mul(P("S(e)"), P("S(e')")) == P("S(e.e')"));
  CHECK(mul(P("S(e')"), P("S(e)")).is_zero());    // t(e') = 3, s(e) = 1
  CHECK(mul(P("S(1)"), P("S(e)")) == P("S(e)"));  // source vertex acts on the left
  CHECK(mul(P("S(e)"), P("S(2)")) == P("S(e)"));  // target vertex acts on the right
  CHECK(mul(P("S(2)"), P("S(e)")).is_zero());
  CHECK(mul(P("S(1)"), P("S(2)")).is_zero());
  CHECK(mul(P("S(2)"), P("S(2)")) == P("S(2)"));
}

TEST_CASE("ghost halves multiply by prefix cancellation") {
  const Fixture fx = get_fixture("sec4");
  GraphPtr E = fx.graph("E");
  auto C = [&](const std::string& t) { return el(Level::Cohn, E, t); };

  // S_{e*} S_e = S_{t(e)} and S_{e*} S_{e'} = 0 for distinct edges.
  CHECK(mul(C("S(2|e)"), C("S(e)")) == C("S(2)"));
  CHECK(mul(C("S(2|e'')"), C("S(e)")).is_zero());
  // A ghost swallows a longer plain path edge by edge.
  CHECK(mul(C("S(2|e)"), C("S(e.e'')")) == C("S(e'')"));
  // The leftover can also land on the ghost side.
  CHECK(mul(C("S(2|e.e'')"), C("S(e)")) == C("S(2|e'')"));
  // At Cohn, S_e S_{e*} stays a normal-form word even at a regular vertex.
  CHECK(to_string(mul(C("S(e)"), C("S(2|e)"))) == "S(e|e)");
}

TEST_CASE("multiplication is associative and bilinear on random elements") {
  Rng rng(909);
  for (const char* id : {"sec4", "tclose", "cuntz(2,2)", "qsph(2)"}) {
    const Fixture fx = get_fixture(id);
    GraphPtr E = fx.graph("E");
    for (Level level : {Level::Path, Level::Cohn, Level::Leavitt}) {
      for (int i = 0; i < 25; ++i) {
        AlgebraElement a = qvtest::random_element(rng, level, E);
        AlgebraElement b = qvtest::random_element(rng, level, E);
        AlgebraElement c = qvtest::random_element(rng, level, E);
        CHECK(mul(mul(a, b), c) == mul(a, mul(b, c)));
        CHECK(mul(a, b + c) == mul(a, b) + mul(a, c));
        CHECK(mul(a + b, c) == mul(a, c) + mul(b, c));
        CHECK(mul(Rational(2) * a, b) == Rational(2) * mul(a, b));
      }
    }
  }
}

TEST_CASE("star is an antimultiplicative involution") {
  Rng rng(910);
  const Fixture fx = get_fixture("sec4");
  GraphPtr E = fx.graph("E");
  for (Level level : {Level::Cohn, Level::Leavitt}) {
    for (int i = 0; i < 40; ++i) {
      AlgebraElement a = qvtest::random_element(rng, level, E);
      AlgebraElement b = qvtest::random_element(rng, level, E);
      CHECK(star(star(a)) == a);
      CHECK(star(a + b) == star(a) + star(b));
      CHECK(star(mul(a, b)) == mul(star(b), star(a)));
      CHECK(star(Rational(3, 2) * a) == Rational(3, 2) * star(a));
    }
  }
  CHECK(star(el(Level::Cohn, E, "S(e.e''|e)")) == el(Level::Cohn, E, "S(e|e.e'')"));
  CHECK_THROWS_WITH(star(el(Level::Path, E, "S(e)")), doctest::Contains("path level"));
}

TEST_CASE("the vertex sum is a two-sided unit") {
  Rng rng(911);
  for (const char* id : {"sec4", "tclose"}) {
    const Fixture fx = get_fixture(id);
    GraphPtr E = fx.graph("E");
    for (Level level : {Level::Path, Level::Cohn, Level::Leavitt}) {
      AlgebraElement unit = AlgebraElement::zero(level, E);
      for (VertexIx v = 0; v < E->vertex_count(); ++v)
        unit = unit + AlgebraElement::vertex(level, E, v);
      for (int i = 0; i < 10; ++i) {
        AlgebraElement a = qvtest::random_element(rng, level, E);
        CHECK(mul(unit, a) == a);
        CHECK(mul(a, unit) == a);
      }
    }
  }
}

TEST_CASE("relator families carry the documented names") {
  GraphPtr G = parse_document("graph G { vertices: u v; edges: a: u -> v; b: u -> v; }")
                   .graphs.at("G");
  auto names = [&](Level level) {
    std::set<std::string> out;
    for (const auto& r : relators(level, *G)) out.insert(r.name);
    return out;
  };

  auto path = names(Level::Path);
  CHECK(path.size() == 8);  // 4 vertex pairs + E1L/E1R per edge
  CHECK(path.count("V(u,u)") == 1);
  CHECK(path.count("V(u,v)") == 1);
  CHECK(path.count("E1L(a)") == 1);
  CHECK(path.count("E1R(b)") == 1);
  CHECK(path.count("E2L(a)") == 0);

  auto cohn = names(Level::Cohn);
  CHECK(cohn.size() == 16);  // adds E2L/E2R per edge and 4 CK1 pairs
  CHECK(cohn.count("E2R(a)") == 1);
  CHECK(cohn.count("CK1(a,b)") == 1);
  CHECK(cohn.count("CK2(u)") == 0);

  auto leavitt = names(Level::Leavitt);
  CHECK(leavitt.size() == 17);  // u is the only regular vertex
  CHECK(leavitt.count("CK2(u)") == 1);
  CHECK(leavitt.count("CK2(v)") == 0);
}

TEST_CASE("relators cover two members of an infinite family") {
  GraphPtr G = parse_document("graph G { vertices: u v; edges: w: u -> v * inf; }")
                   .graphs.at("G");
  std::set<std::string> names;
  for (const auto& r : relators(Level::Leavitt, *G)) names.insert(r.name);
  CHECK(names.count("E1L(w[0])") == 1);
  CHECK(names.count("E1L(w[1])") == 1);
  CHECK(names.count("CK1(w[0],w[1])") == 1);
  CHECK(names.count("CK2(u)") == 0);  // infinite emitters are not regular
}

TEST_CASE("relators evaluate to zero under the identity assignment") {
  for (const char* id : {"sec4", "tclose", "cuntz(2,2)", "qsph(1)", "nopull"}) {
    const Fixture fx = get_fixture(id);
    for (const auto& [name, g] : fx.graphs) {
      for (Level level : {Level::Path, Level::Cohn, Level::Leavitt}) {
        auto image = [&](const GenSymbol& s) { return identity_image(level, g, s); };
        for (const auto& r : relators(level, *g)) {
          AlgebraElement residue = evaluate_relator(level, g, r, image);
          CHECK_MESSAGE(residue.is_zero(),
                        fx.id << " " << g->name() << " " << to_string(level) << " " << r.name);
        }
      }
    }
  }
}

TEST_CASE("leavitt normalization rewrites at the special edge only") {
  GraphPtr G = two_edge_graph();
  Path a = parse_path(*G, "a");
  Path b = parse_path(*G, "b");
  // Default special edge at u is a (first declared). S_a S_{a*} rewrites to
  // S_u - S_b S_{b*}; the sibling word S_b S_{b*} is already normal.
  AlgebraElement aa = AlgebraElement::monomial(Level::Leavitt, G, a, a);
  CHECK(to_string(aa) == "S(u) - S(b|b)");
  AlgebraElement bb = AlgebraElement::monomial(Level::Leavitt, G, b, b);
  CHECK(to_string(bb) == "S(b|b)");
  // The rewrite fires under any scalar and inside sums.
  CHECK(aa + bb == AlgebraElement::vertex(Level::Leavitt, G, G->vertex("u")));
  // At Cohn the same word is already normal.
  CHECK(to_string(AlgebraElement::monomial(Level::Cohn, G, a, a)) == "S(a|a)");
}

TEST_CASE("normalization value is independent of reduction choices") {
  Rng rng(912);
  const Fixture fx = get_fixture("cuntz(2,2)");
  GraphPtr E = fx.graph("E");
  auto paths = qvtest::finite_paths(*E, 2);

  // Alternate special-edge choice: last outgoing edge per regular vertex.
  SpecialEdges alt(E->vertex_count());
  for (VertexIx v : classify_vertices(*E).regular) alt[v] = E->listed_out_edges(v).back();
  SpecialEdges def = default_special_edges(*E);

  for (int trial = 0; trial < 30; ++trial) {
    std::vector<std::pair<Rational, Monomial>> raw;
    int terms = 1 + static_cast<int>(qvtest::pick(rng, 4));
    for (int i = 0; i < terms; ++i) {
      const Path& x = paths[qvtest::pick(rng, paths.size())];
      std::vector<Path> mates;
      for (const auto& p : paths)
        if (p.target() == x.target()) mates.push_back(p);
      const Path& y = mates[qvtest::pick(rng, mates.size())];
      raw.push_back({Rational(static_cast<long long>(qvtest::pick(rng, 7)) - 3),
                     Monomial{x, y}});
    }
    AlgebraElement base = normalize(Level::Leavitt, E, raw);

    // Same basis, randomized redex order: identical normal form.
    for (int run = 0; run < 5; ++run) {
      Rng inner(1000 + trial * 10 + run);
      RedexPicker pickr = [&inner](const std::vector<Monomial>& v) {
        return static_cast<std::size_t>(inner() % v.size());
      };
      CHECK(normalize(Level::Leavitt, E, raw, &def, pickr) == base);
    }

    // Different basis: possibly different terms, same value. Renormalizing
    // the alternate form against the default basis recovers the base form.
    AlgebraElement other = normalize(Level::Leavitt, E, raw, &alt);
    std::vector<std::pair<Rational, Monomial>> back;
    for (const auto& [m, c] : other.terms()) back.push_back({c, m});
    CHECK(normalize(Level::Leavitt, E, back, &def) == base);
  }
}

TEST_CASE("acyclic basis counts and contents") {
  // The n-vertex line has n(n+1)/2 paths, sum of squares many Cohn words,
  // and an n-by-n matrix algebra at the Leavitt level.
  for (long n : {2L, 3L, 4L}) {
    const Fixture fx = get_fixture("line(" + std::to_string(n) + ")");
    GraphPtr E = fx.graph("E");
    auto path_basis = acyclic_basis(Level::Path, E);
    auto cohn_basis = acyclic_basis(Level::Cohn, E);
    auto leav_basis = acyclic_basis(Level::Leavitt, E);
    CHECK(static_cast<long>(path_basis.size()) == n * (n + 1) / 2);
    long squares = 0;
    for (long k = 1; k <= n; ++k) squares += k * k;
    CHECK(static_cast<long>(cohn_basis.size()) == squares);
    CHECK(static_cast<long>(leav_basis.size()) == n * n);
    CHECK(std::is_sorted(leav_basis.begin(), leav_basis.end()));
    CHECK(std::adjacent_find(cohn_basis.begin(), cohn_basis.end()) == cohn_basis.end());

    // Every basis word is a genuine monomial and, at Leavitt, irreducible:
    // halves never both end in the unique outgoing edge of their source.
    SpecialEdges special = default_special_edges(*E);
    for (const auto& m : leav_basis) {
      CHECK(m.x.target() == m.y.target());
      if (!m.x.is_vertex() && !m.y.is_vertex())
        CHECK(!(m.x.edges().back() == m.y.edges().back()));
    }
  }

  const Fixture line2 = get_fixture("line(2)");
  GraphPtr E2 = line2.graph("E");
  Path v1 = parse_path(*E2, "1");
  Path v2 = parse_path(*E2, "2");
  Path e1 = parse_path(*E2, "e1");
  std::vector<Monomial> expected = {{v1, v1}, {v2, v2}, {e1, v2}, {v2, e1}};
  std::sort(expected.begin(), expected.end());
  CHECK(acyclic_basis(Level::Leavitt, E2) == expected);

  const Fixture sec4 = get_fixture("sec4");
  CHECK_THROWS_WITH(acyclic_basis(Level::Leavitt, sec4.graph("E")),
                    doctest::Contains("acyclic"));
  const Fixture nopull = get_fixture("nopull");
  CHECK_THROWS_WITH(acyclic_basis(Level::Path, nopull.graph("F")),
                    doctest::Contains("finitely many"));
}

TEST_CASE("element parsing accepts the documented grammar and rejects the rest") {
  const Fixture fx = get_fixture("sec4");
  GraphPtr E = fx.graph("E");
  Path e = parse_path(*E, "e");
  Path eepp = parse_path(*E, "e.e''");

  CHECK(el(Level::Path, E, "S(e)") == AlgebraElement::from_path(Level::Path, E, e));
  CHECK(el(Level::Path, E, " 2*S( e ) ") ==
        AlgebraElement::monomial(Level::Path, E, e, Path::at_vertex(e.target()), Rational(2)));
  CHECK(el(Level::Path, E, "3/6*S(e)") ==
        AlgebraElement::monomial(Level::Path, E, e, Path::at_vertex(e.target()),
                                 Rational(1, 2)));
  CHECK(el(Level::Path, E, "S(e) - S(e)").is_zero());
  CHECK(el(Level::Cohn, E, "S(e.e''|e)") ==
        AlgebraElement::monomial(Level::Cohn, E, eepp, e));
  CHECK(el(Level::Path, E, "-S(e) + 2*S(e)") == el(Level::Path, E, "S(e)"));

  for (const char* bad : {"", "S(", "S(e", "2*", "S(e|)", "+S(e)", "S(e) S(e)",
                          "S(zz)", "S(e)+", "2/0*S(e)", "S(e.f')", "*S(e)"}) {
    CHECK_THROWS_AS(el(Level::Path, E, bad), Error);
  }
  // Ghost halves need a level that has them.
  CHECK_THROWS_WITH(el(Level::Path, E, "S(e|e)"), doctest::Contains("ghost half"));
  // Paths must chain: t(e') = 3 but s(e) = 1.
  CHECK_THROWS_AS(el(Level::Path, E, "S(e'.e)"), Error);
}
