#include "staketow/random_tree.h"

#include <string>
#include <vector>

#include "staketow/errors.h"
#include "staketow/rng.h"

namespace staketow {

BoundaryPaymentGraph RandomRootRewardGraph(std::uint64_t seed,
                                           int max_vertices) {
  if (max_vertices < 3) {
    throw Error(ErrorCode::kIndexOutOfRange, "need at least 3 vertices");
  }
  CounterRng rng(seed, 0);
  const int n = 3 + static_cast<int>(rng.Below(max_vertices - 2));
  std::vector<int> degree(n, 0);
  std::vector<std::pair<std::string, std::string>> edges;
  auto name = [](int i) { return "v" + std::to_string(i); };
  for (int v = 1; v < n; ++v) {
    std::vector<int> open;
    for (int u = 0; u < v; ++u) {
      if (degree[u] < 4) open.push_back(u);
    }
    int u = open[rng.Below(open.size())];
    ++degree[u];
    ++degree[v];
    edges.push_back({name(u), name(v)});
  }
  std::vector<std::string> vertices;
  std::vector<std::string> leaves;
  for (int v = 0; v < n; ++v) {
    vertices.push_back(name(v));
    if (degree[v] == 1) leaves.push_back(name(v));
  }
  std::string root = leaves[rng.Below(leaves.size())];
  return BoundaryPaymentGraph::Create(vertices, edges, leaves, {}, root);
}

}  // namespace staketow
