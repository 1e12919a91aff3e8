#include "doctest.h"

#include <set>

#include "helpers.hpp"
#include "qv/fixtures.hpp"
#include "qv/relations.hpp"

using namespace qv;
using qvtest::Rng;

namespace {

// Thins a path list to at most cap entries, keeping a deterministic spread.
std::vector<Path> thin(std::vector<Path> v, std::size_t cap) {
  if (v.size() <= cap) return v;
  std::vector<Path> out;
  const std::size_t stride = v.size() / cap + 1;
  for (std::size_t i = 0; i < v.size(); i += stride) out.push_back(v[i]);
  return out;
}

// Compares member() and preimage() against the brute-force generator closure
// on the window |y| <= ly (and |x| <= ly * longest generator, which bounds
// every preimage). Enumeration of candidate pairs is capped; the closure
// itself is checked in full.
void check_against_closure(const RelationMorphism& r, std::size_t ly) {
  std::size_t maxgen = 1;
  for (const auto& g : r.gen_e()) maxgen = std::max(maxgen, g.x.length());
  const std::size_t lx = ly * maxgen;
  auto closure = qvtest::closure_pairs(r, lx, ly);

  for (const auto& [x, y] : closure) {
    if (y.length() > ly) continue;
    CHECK_MESSAGE(member(r, x, y),
                  r.name() << ": closure pair (" << print_path(*r.dom(), x) << ", "
                           << print_path(*r.cod(), y) << ") not a member");
  }

  auto xs = thin(all_paths(*r.dom(), std::min<std::size_t>(lx, 4)), 300);
  auto ys = all_paths(*r.cod(), ly);
  auto ys_thin = thin(ys, 120);
  for (const auto& x : xs)
    for (const auto& y : ys_thin) {
      bool expect = closure.count({x, y}) > 0;
      CHECK_MESSAGE(member(r, x, y) == expect,
                    r.name() << ": (" << print_path(*r.dom(), x) << ", "
                             << print_path(*r.cod(), y) << ") expected " << expect);
    }
  for (const auto& y : ys_thin) {
    std::vector<Path> expect;
    for (const auto& [a, b] : closure)
      if (b == y) expect.push_back(a);
    std::sort(expect.begin(), expect.end());
    CHECK(preimage(r, y) == expect);
  }
}

}  // namespace

TEST_CASE("from_generators validates and canonicalizes") {
  GraphPtr E = Graph::build({"1", "2"}, {{"e", "1", "2", 1}}, "E");
  GraphPtr F = Graph::build({"a", "b"}, {{"f", "a", "b", 1}}, "F");
  RelationMorphism r = from_generators(
      "R", E, F, {{"2", "b"}, {"1", "a"}, {"2", "b"}}, {{"e", "f"}, {"e", "f"}});
  CHECK(r.gen_v().size() == 2);  // deduplicated
  CHECK(r.gen_e().size() == 1);
  CHECK(r.gen_v()[0].u == 0);  // sorted
  CHECK(r.has_vertex_pair(0, 0));
  CHECK(r.has_vertex_pair(1, 1));
  CHECK(!r.has_vertex_pair(0, 1));
  // Generator endpoints must appear among the vertex pairs.
  CHECK_THROWS_AS(from_generators("R", E, F, {{"1", "a"}}, {{"e", "f"}}), Error);
  // Unknown names are rejected with the graph's message.
  CHECK_THROWS_AS(from_generators("R", E, F, {{"9", "a"}}, {}), Error);
  CHECK_THROWS_AS(from_generators("R", E, F, {{"1", "a"}, {"2", "b"}}, {{"zzz", "f"}}), Error);
}

TEST_CASE("membership and preimages match the generator closure on the corpus") {
  for (const auto& fx : corpus()) {
    if (fx.id == "cuntz(2,2)" || fx.id == "qsph(3)") continue;  // larger; spot-checked below
    for (const auto& [name, r] : fx.relations) {
      CAPTURE(fx.id);
      CAPTURE(name);
      check_against_closure(r, 3);
    }
  }
  check_against_closure(get_fixture("cuntz(2,2)").relation("R"), 2);
  check_against_closure(get_fixture("qsph(3)").relation("R"), 2);
}

TEST_CASE("membership matches the generator closure on random relations") {
  Rng rng(421);
  int done = 0;
  while (done < 40) {
    GraphPtr E = qvtest::random_graph(rng, 4, 4, true, "E");
    GraphPtr F = qvtest::random_graph(rng, 4, 4, true, "F");
    auto r = qvtest::random_relation(rng, E, F, done % 3 != 0);
    if (!r) continue;
    CAPTURE(done);
    check_against_closure(*r, 3);
    ++done;
  }
}

TEST_CASE("infinite families relate member by member") {
  const Fixture fx = get_fixture("nopull");
  const RelationMorphism& r = fx.relation("R");
  const Graph& E = *r.dom();
  const Graph& F = *r.cod();
  // R relates only the finite edge; the infinite family of F is unmatched.
  CHECK(!member(r, Path::at_vertex(0), Path::of_edges(F, {{1, 0}})));

  // The reconstructed pushout relation matches w member-wise.
  const RelationMorphism& rt = fx.relation("Rthetap");  // H -> F
  const Graph& H = *rt.dom();
  CHECK(member(rt, Path::of_edges(H, {{2, 7}}), Path::of_edges(F, {{1, 7}})));
  CHECK(!member(rt, Path::of_edges(H, {{2, 7}}), Path::of_edges(F, {{1, 8}})));
  (void)E;
}

TEST_CASE("vertex-path generator pieces repeat freely") {
  // In the closure-of-two example, (v, h^n) holds for every n >= 1 because
  // the piece (v, h) never advances the domain side.
  const Fixture fx = get_fixture("tclose");
  const RelationMorphism& r = fx.relation("R");
  const Graph& E = *r.dom();
  const Graph& F = *r.cod();
  Path v = parse_path(E, "v");
  Path h3 = parse_path(F, "h.h.h");
  CHECK(member(r, v, h3));
  Path e3 = parse_path(E, "e.e.e");
  CHECK(member(r, e3, h3));
  CHECK(!member(r, parse_path(E, "w"), parse_path(F, "h")));
}

TEST_CASE("lift and lower membership characterizations") {
  Rng rng(88);
  int done = 0;
  while (done < 25) {
    GraphPtr A = qvtest::random_graph(rng, 4, 5, false, "A");
    GraphPtr B = qvtest::random_graph(rng, 4, 5, false, "B");
    auto ph = qvtest::random_graph_hom(rng, A, B);
    auto th = qvtest::random_path_hom(rng, A, B);
    if (ph) {
      RelationMorphism lifted = lift_graph_hom(*ph);
      for (const auto& x : thin(all_paths(*A, 3), 120))
        for (const auto& y : thin(all_paths(*B, 3), 120))
          CHECK(member(lifted, x, y) == (ph->apply(x) == y));
    }
    if (th) {
      RelationMorphism lowered = lower_path_hom(*th);
      for (const auto& y : thin(all_paths(*A, 2), 80))
        for (const auto& x : thin(all_paths(*B, 3 * 2), 120))
          CHECK(member(lowered, x, y) == (th->apply(y) == x));
    }
    if (ph || th) ++done;
  }
}

TEST_CASE("identity relation is an identity for composition") {
  const Fixture fx = get_fixture("sec4");
  const RelationMorphism& r = fx.relation("R");
  RelationMorphism idE = identity_relation(r.dom());
  RelationMorphism idF = identity_relation(r.cod());
  CHECK(relations_equal(compose_relations(r, idE), r));
  CHECK(relations_equal(compose_relations(idF, r), r));
}

TEST_CASE("composition is associative") {
  Rng rng(3003);
  int done = 0;
  while (done < 20) {
    GraphPtr A = qvtest::random_graph(rng, 3, 4, false, "A");
    GraphPtr B = qvtest::random_graph(rng, 3, 4, false, "B");
    GraphPtr C = qvtest::random_graph(rng, 3, 4, false, "C");
    GraphPtr D = qvtest::random_graph(rng, 3, 4, false, "D");
    auto r = qvtest::random_relation(rng, A, B);
    auto s = qvtest::random_relation(rng, B, C);
    auto t = qvtest::random_relation(rng, C, D);
    if (!r || !s || !t) continue;
    RelationMorphism lhs = compose_relations(*t, compose_relations(*s, *r));
    RelationMorphism rhs = compose_relations(compose_relations(*t, *s), *r);
    CHECK(relations_equal(lhs, rhs));
    ++done;
  }
}

TEST_CASE("composition agrees with relational composition of members") {
  Rng rng(515);
  int done = 0;
  while (done < 15) {
    GraphPtr A = qvtest::random_graph(rng, 3, 4, false, "A");
    GraphPtr B = qvtest::random_graph(rng, 3, 4, false, "B");
    GraphPtr C = qvtest::random_graph(rng, 3, 4, false, "C");
    auto r = qvtest::random_relation(rng, A, B);
    auto s = qvtest::random_relation(rng, B, C);
    if (!r || !s) continue;
    RelationMorphism sr = compose_relations(*s, *r);
    // (x, z) in s.r iff some y joins them; any join for |z| <= 2 has
    // |y| <= 2 * (longest generator path of s). Work from the closures so
    // each relation is expanded once.
    std::size_t maxgen_s = 1, maxgen_r = 1;
    for (const auto& g : s->gen_e()) maxgen_s = std::max(maxgen_s, g.x.length());
    for (const auto& g : r->gen_e()) maxgen_r = std::max(maxgen_r, g.x.length());
    const std::size_t ylen = 2 * maxgen_s;
    auto cl_r = qvtest::closure_pairs(*r, ylen * maxgen_r, ylen);
    auto cl_s = qvtest::closure_pairs(*s, ylen, 2);
    std::set<std::pair<Path, Path>> expect_xz;
    for (const auto& [x, y] : cl_r) {
      for (const auto& [y2, z] : cl_s)
        if (y == y2) expect_xz.insert({x, z});
    }
    for (const auto& x : thin(all_paths(*A, 3), 80))
      for (const auto& z : thin(all_paths(*C, 2), 60))
        CHECK(member(sr, x, z) == (expect_xz.count({x, z}) > 0));
    ++done;
  }
}

TEST_CASE("admissibility flags across the corpus match their distinguishing facts") {
  const Fixture o2 = get_fixture("o2");
  AdmissibilityReport rep = admissibility_report(o2.relation("Rthetap"));
  CHECK(rep.category() == RelationCategory::CRG);
  CHECK(!rep.regular);
  AdmissibilityReport full = admissibility_report(o2.relation("R"));
  CHECK(full.category() == RelationCategory::ARG);
  CHECK(full.admissible());

  // Lifting loses target surjectivity for the bouquet quotient.
  AdmissibilityReport lifted = admissibility_report(o2.relation("Rphip"));
  CHECK(!lifted.target_surjective);
}

TEST_CASE("pullback factorization composes back to the relation") {
  for (const auto& fx : corpus()) {
    for (const auto& [name, r] : fx.relations) {
      CAPTURE(fx.id);
      CAPTURE(name);
      if (!admissibility_report(r).vertex_disjoint) continue;
      Factorization f = pullback_factorize(r);
      CHECK(relations_equal(compose_relations(lift_graph_hom(f.phi), lower_path_hom(f.theta)), r));
    }
  }
}

TEST_CASE("mediator rejects pairs that do not factor the relation") {
  const Fixture fx = get_fixture("pi");
  const RelationMorphism& r = fx.relation("R");
  // A factorization of a different relation is rejected up front.
  const Fixture other = get_fixture("tclose");
  CHECK_THROWS_AS(
      universal_mediator(r, other.path_hom("theta"), other.graph_hom("phi")), Error);
  Mediator m = universal_mediator(r, fx.path_hom("thetap"), fx.graph_hom("phip"));
  CHECK(m.surjective);
  CHECK(!m.injective);
  CHECK(m.pi.dom()->name() == "Gp");
}

TEST_CASE("lifts and lowers are transitively closed") {
  Rng rng(2211);
  int done = 0;
  while (done < 25) {
    GraphPtr A = qvtest::random_graph(rng, 4, 5, false, "A");
    GraphPtr B = qvtest::random_graph(rng, 4, 5, false, "B");
    auto ph = qvtest::random_graph_hom(rng, A, B);
    auto th = qvtest::random_path_hom(rng, A, B);
    if (ph) CHECK(!transitive_closure_check(lift_graph_hom(*ph), 2).has_value());
    if (th) CHECK(!transitive_closure_check(lower_path_hom(*th), 2).has_value());
    if (ph || th) ++done;
  }
}

TEST_CASE("pushout obstruction finds the shortest mixed pair") {
  const Fixture fx = get_fixture("ex313");
  const RelationMorphism& r = fx.relation("R");
  auto w = pushout_obstruction(r);
  REQUIRE(w.has_value());
  CHECK(r.cod()->edge_name(w->f) == "f");
  CHECK(print_path(*r.dom(), w->shorter) == "e");
  CHECK(print_path(*r.dom(), w->longer) == "e'.e''");
  CHECK(!pushout_obstruction(get_fixture("last").relation("R")).has_value());
}
