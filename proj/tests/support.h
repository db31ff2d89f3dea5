#ifndef STAKETOW_TESTS_SUPPORT_H_
#define STAKETOW_TESTS_SUPPORT_H_

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "staketow/graph.h"
#include "staketow/tree.h"

namespace staketow::testing {

std::string DataPath(const std::string& name);

struct NamedTree {
  std::string name;
  BoundaryPaymentGraph graph;
};

// Small hand-made boards plus `random_count` seeded random trees.
std::vector<NamedTree> Corpus(int random_count = 10);
std::vector<NamedTree> RandomTrees(int count, std::uint64_t first_seed,
                                   int max_vertices = 40);

// Breadth-first distances from `source`.
std::vector<int> BfsDistances(const BoundaryPaymentGraph& g, int source);

// d_+ and d_- straight from the definitions, using only BFS distances.
std::pair<int, int> OracleDPlusMinus(const BoundaryPaymentGraph& g, int root,
                                     int v);

// Children of v minimizing the distance to a non-reward leaf below them.
std::vector<int> OracleMinChildren(const BoundaryPaymentGraph& g, int root,
                                   int v);

// Subtree as (root, span, sorted edge list with (min, max) endpoints).
struct OracleSubtree {
  int root;
  int span;
  std::vector<std::pair<int, int>> edges;
  bool operator<(const OracleSubtree& o) const {
    return std::tie(root, span, edges) < std::tie(o.root, o.span, o.edges);
  }
  bool operator==(const OracleSubtree& o) const = default;
};

// Basic partition by repeated shortest-path extraction and component
// splitting on explicit edge sets.
std::vector<OracleSubtree> OraclePartition(const BoundaryPaymentGraph& g,
                                           int root);

// Journey data read off an oracle partition.
std::vector<JourneyPair> OracleJourney(const BoundaryPaymentGraph& g, int root,
                                       const std::vector<OracleSubtree>& parts,
                                       int v);

// Normalizes a library partition into the oracle format.
std::vector<OracleSubtree> Normalize(const BasicPartition& p);

}  // namespace staketow::testing

#endif  // STAKETOW_TESTS_SUPPORT_H_
