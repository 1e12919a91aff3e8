#pragma once

// Worked examples used across the tests and the CLI `demo` command. Each
// fixture bundles the graphs, homs and relations of one construction together
// with a table of externally checkable values. A row's `compute` re-derives
// the value from the live objects so `demo` can replay the table and diff it
// against `expected`. Provenance is one of:
//   given                  stated directly by the source construction
//   derived                follows from the definitions by a short computation
//   derived-reconstruction objects rebuilt from formulas (no explicit listing)

#include <functional>

#include "qv/dsl.hpp"
#include "qv/relations.hpp"

namespace qv {

struct ExpectedRow {
  std::string key;
  std::string expected;
  std::string provenance;
  std::function<std::string()> compute;
};

struct Fixture {
  std::string id;
  std::string title;
  std::map<std::string, GraphPtr> graphs;
  std::map<std::string, GraphHom> graph_homs;
  std::map<std::string, PathHom> path_homs;
  std::map<std::string, RelationMorphism> relations;
  std::vector<ExpectedRow> expected;

  const GraphPtr& graph(const std::string& n) const;
  const GraphHom& graph_hom(const std::string& n) const;
  const PathHom& path_hom(const std::string& n) const;
  const RelationMorphism& relation(const std::string& n) const;
};

// Accepted ids: line(n) [n>=2], sec4, ex313, o2, qsph(n) [1<=n<=3],
// cuntz(n,k) [n>=2, k>=1], nopull, last, fdec, tclose, pi. A bare
// parameterized name picks the default: line(3), qsph(1), cuntz(2,2).
Fixture get_fixture(const std::string& id);

// Ids of the default corpus, in a stable order.
std::vector<std::string> fixture_ids();
std::vector<Fixture> corpus();

// All of a fixture's objects as one parseable document.
Document to_document(const Fixture& fx);

}  // namespace qv
