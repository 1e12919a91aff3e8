#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>

#include "qv/fixtures.hpp"
#include "qv/graph.hpp"
#include "qv/rational.hpp"

using namespace qv;

namespace {

GraphPtr two_cycle() {
  return Graph::build({"a", "b"}, {{"e", "a", "b", 1}, {"f", "b", "a", 1}}, "C2");
}

}  // namespace

TEST_CASE("graph construction and lookup") {
  GraphPtr g = Graph::build({"1", "2"}, {{"e", "1", "2", 2}, {"w", "2", "2", std::nullopt}}, "G");
  CHECK(g->vertex_count() == 2);
  CHECK(g->family_count() == 2);
  CHECK(g->find_vertex("2") == VertexIx{1});
  CHECK(!g->find_vertex("3").has_value());
  CHECK(g->find_family("w") == FamilyIx{1});
  CHECK(g->family(0).count == 2);
  CHECK(g->family(1).infinite());
  CHECK(g->edge_name({0, 1}) == "e[1]");
  CHECK(g->edge_name({1, 0}) == "w[0]");
  // Shape comparison keys on vertex and edge names, not the graph name.
  GraphPtr h = Graph::build({"1", "2"}, {{"e", "1", "2", 2}, {"w", "2", "2", std::nullopt}}, "H");
  CHECK(g->same_shape(*h));
  GraphPtr renamed =
      Graph::build({"x", "y"}, {{"e", "x", "y", 2}, {"w", "y", "y", std::nullopt}}, "H");
  CHECK(!g->same_shape(*renamed));
  CHECK(!g->same_shape(*two_cycle()));
}

TEST_CASE("graph construction rejects bad input") {
  CHECK_THROWS_WITH_AS(Graph::build({"1", "1"}, {}, "G"),
                       doctest::Contains("duplicate vertex"), Error);
  CHECK_THROWS_WITH_AS(Graph::build({"1"}, {{"e", "1", "1", 1}, {"e", "1", "1", 1}}, "G"),
                       doctest::Contains("duplicate"), Error);
  CHECK_THROWS_WITH_AS(Graph::build({"1"}, {{"e", "2", "1", 1}}, "G"),
                       doctest::Contains("dangling endpoint"), Error);
  CHECK_THROWS_WITH_AS(Graph::build({"1"}, {{"e", "1", "9", 1}}, "G"),
                       doctest::Contains("dangling endpoint"), Error);
  CHECK_THROWS_WITH_AS(Graph::build({"1"}, {{"e", "1", "1", 0}}, "G"),
                       doctest::Contains("zero"), Error);
}

TEST_CASE("vertex classification") {
  // v emits two finite edges, w emits one loop, s is a sink, i emits an
  // infinite family.
  GraphPtr g = Graph::build(
      {"v", "w", "s", "i"},
      {{"a", "v", "w", 1}, {"b", "v", "s", 1}, {"l", "w", "w", 1}, {"m", "i", "s", std::nullopt}},
      "G");
  VertexClasses c = classify_vertices(*g);
  CHECK(c.sinks == std::vector<VertexIx>{2});
  CHECK(c.infinite_emitters == std::vector<VertexIx>{3});
  CHECK(c.regular == std::vector<VertexIx>{0, 1});
  CHECK(c.single_loop == std::vector<VertexIx>{1});
  CHECK(!c.row_finite);
  CHECK(c.is_regular(0));
  CHECK(!c.is_regular(3));
  CHECK(c.is_single_loop(1));
  CHECK(!c.is_single_loop(0));

  VertexClasses lc = classify_vertices(*get_fixture("line(3)").graph("E"));
  CHECK(lc.row_finite);
  CHECK(lc.sinks == std::vector<VertexIx>{2});
  CHECK(lc.regular == std::vector<VertexIx>{0, 1});
}

TEST_CASE("paths parse, print and concatenate") {
  GraphPtr g = two_cycle();
  Path p = parse_path(*g, "e.f.e");
  CHECK(p.length() == 3);
  CHECK(p.source() == g->find_vertex("a"));
  CHECK(p.target() == g->find_vertex("b"));
  CHECK(print_path(*g, p) == "e.f.e");
  Path v = parse_path(*g, "a");
  CHECK(v.is_vertex());
  CHECK(print_path(*g, v) == "a");
  CHECK(parse_path(*g, print_path(*g, p)) == p);
  CHECK(concat(*g, v, p) == p);
  CHECK(concat(*g, p, Path::at_vertex(p.target())) == p);
  CHECK_THROWS_AS(concat(*g, p, p), Error);  // p ends at b, p starts at a
  CHECK_THROWS_AS(parse_path(*g, "e.e"), Error);
  CHECK_THROWS_AS(parse_path(*g, "nope"), Error);
  CHECK_THROWS_AS(parse_path(*g, ""), Error);
}

TEST_CASE("path member indices print and parse") {
  GraphPtr g = Graph::build({"1", "2"}, {{"e", "1", "2", 2}, {"w", "2", "1", std::nullopt}}, "G");
  Path p = parse_path(*g, "e[1].w[3].e[0]");
  CHECK(p.length() == 3);
  CHECK(print_path(*g, p) == "e[1].w[3].e[0]");
  CHECK(p.edges()[0] == EdgeRef{0, 1});
  CHECK(p.edges()[1] == EdgeRef{1, 3});
  CHECK(p.edges()[2] == EdgeRef{0, 0});
  CHECK_THROWS_AS(parse_path(*g, "e[2]"), Error);  // member out of range
  CHECK_THROWS_AS(parse_path(*g, "e"), Error);     // index required when count > 1
}

TEST_CASE("prefix order") {
  GraphPtr g = two_cycle();
  Path p = parse_path(*g, "e.f");
  Path q = parse_path(*g, "e.f.e");
  Path r = parse_path(*g, "e");
  CHECK(compare_paths(p, q) == PathOrder::Prefix);
  CHECK(compare_paths(q, p) == PathOrder::Extension);
  CHECK(compare_paths(p, p) == PathOrder::Equal);
  CHECK(comparable(r, q));
  CHECK(prefix_leq(r, q));
  CHECK(!prefix_leq(q, r));
  CHECK(prefix_leq(Path::at_vertex(q.source()), q));
  Path f = parse_path(*g, "f");
  CHECK(compare_paths(r, f) == PathOrder::Incomparable);
  CHECK(!comparable(r, f));
  CHECK(p.prefix(*g, 1) == r);
  CHECK(q.suffix(*g, 1) == parse_path(*g, "f.e"));
  CHECK(strip_prefix(*g, r, q) == parse_path(*g, "f.e"));
  CHECK(!strip_prefix(*g, f, q).has_value());
}

TEST_CASE("path enumeration is canonical and representative-only") {
  GraphPtr g = two_cycle();
  auto all = all_paths(*g, 3);
  // 2 vertices + 2 + 2 + 2 paths of lengths 1..3 on the 2-cycle.
  CHECK(all.size() == 8);
  CHECK(std::is_sorted(all.begin(), all.end()));
  CHECK(std::adjacent_find(all.begin(), all.end()) == all.end());
  auto from_a = paths_from(*g, 0, 3);
  for (const auto& p : from_a) CHECK(p.source() == VertexIx{0});
  CHECK(from_a.size() == 4);

  GraphPtr inf = Graph::build({"1", "4"}, {{"w", "1", "4", std::nullopt}}, "F");
  auto ps = all_paths(*inf, 2);
  REQUIRE(ps.size() == 3);  // two vertices and the representative member
  CHECK(print_path(*inf, ps[2]) == "w[0]");
}

TEST_CASE("rational arithmetic") {
  Rational a(1, 2), b(1, 3);
  CHECK((a + b) == Rational(5, 6));
  CHECK((a - b) == Rational(1, 6));
  CHECK((a * b) == Rational(1, 6));
  CHECK((a / b) == Rational(3, 2));
  CHECK((-a) == Rational(-1, 2));
  CHECK(Rational(2, -4) == Rational(-1, 2));
  CHECK(Rational(0, 5).is_zero());
  CHECK(Rational(7, 7).is_one());
  CHECK(Rational(5, 6).str() == "5/6");
  CHECK(Rational(-3).str() == "-3");
  CHECK(a < Rational(2, 3));
  CHECK_THROWS_AS(Rational(1, 0), Error);
  Rational big(std::numeric_limits<long long>::max());
  CHECK_THROWS_AS(big + Rational(1), Error);
  CHECK_THROWS_AS(big * Rational(2), Error);
}
