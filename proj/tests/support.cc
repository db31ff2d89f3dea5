#include "support.h"

#include <algorithm>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <tuple>

#include "staketow/random_tree.h"

namespace staketow::testing {

std::string DataPath(const std::string& name) {
  return std::string(STAKETOW_DATA_DIR) + "/" + name;
}

std::vector<NamedTree> RandomTrees(int count, std::uint64_t first_seed,
                                   int max_vertices) {
  std::vector<NamedTree> out;
  for (int i = 0; i < count; ++i) {
    std::uint64_t seed = first_seed + i;
    out.push_back({"random-" + std::to_string(seed),
                   RandomRootRewardGraph(seed, max_vertices)});
  }
  return out;
}

std::vector<NamedTree> Corpus(int random_count) {
  std::vector<NamedTree> out = {
      {"L2", LineGraph(2)},
      {"L3", LineGraph(3)},
      {"L5", LineGraph(5)},
      {"H3", HalfLadder(3)},
      {"H4", HalfLadder(4)},
      {"figure", LoadGraph(DataPath("essence_figure.json"))},
      {"T-root0", LoadGraph(DataPath("tgraph_root0.json"))},
      {"T-root2", LoadGraph(DataPath("tgraph_root2.json"))},
  };
  for (auto& t : RandomTrees(random_count, 1000)) out.push_back(std::move(t));
  return out;
}

std::vector<int> BfsDistances(const BoundaryPaymentGraph& g, int source) {
  std::vector<int> dist(g.num_vertices(), -1);
  std::vector<int> queue = {source};
  dist[source] = 0;
  for (size_t i = 0; i < queue.size(); ++i) {
    for (int w : g.neighbors(queue[i])) {
      if (dist[w] < 0) {
        dist[w] = dist[queue[i]] + 1;
        queue.push_back(w);
      }
    }
  }
  return dist;
}

namespace {

std::vector<int> NonRewardLeaves(const BoundaryPaymentGraph& g, int root) {
  std::vector<int> out;
  for (int v = 0; v < g.num_vertices(); ++v) {
    if (v != root && g.neighbors(v).size() == 1) out.push_back(v);
  }
  return out;
}

// Leaf below v in the tree rooted at root: root-to-leaf path passes v.
bool Below(const std::vector<int>& from_root, const std::vector<int>& from_v,
           int v, int leaf) {
  return from_root[leaf] == from_root[v] + from_v[leaf];
}

}  // namespace

std::pair<int, int> OracleDPlusMinus(const BoundaryPaymentGraph& g, int root,
                                     int v) {
  auto from_root = BfsDistances(g, root);
  auto from_v = BfsDistances(g, v);
  int best = -1;
  for (int leaf : NonRewardLeaves(g, root)) {
    if (Below(from_root, from_v, v, leaf)) {
      if (best < 0 || from_v[leaf] < best) best = from_v[leaf];
    }
  }
  return {from_root[v], best};
}

std::vector<int> OracleMinChildren(const BoundaryPaymentGraph& g, int root,
                                   int v) {
  auto from_root = BfsDistances(g, root);
  std::map<int, int> down;
  for (int c : g.neighbors(v)) {
    if (from_root[c] != from_root[v] + 1) continue;
    down[c] = OracleDPlusMinus(g, root, c).second;
  }
  int best = -1;
  for (auto [c, d] : down) {
    if (best < 0 || d < best) best = d;
  }
  std::vector<int> out;
  for (auto [c, d] : down) {
    if (d == best) out.push_back(c);
  }
  return out;
}

std::vector<OracleSubtree> OraclePartition(const BoundaryPaymentGraph& g,
                                           int root) {
  using Edge = std::pair<int, int>;
  std::vector<OracleSubtree> out;
  std::function<void(int, std::set<Edge>)> split = [&](int r,
                                                       std::set<Edge> edges) {
    // Adjacency restricted to the component.
    std::map<int, std::vector<int>> adj;
    for (auto [u, w] : edges) {
      adj[u].push_back(w);
      adj[w].push_back(u);
    }
    std::map<int, int> dist = {{r, 0}};
    std::map<int, int> parent = {{r, -1}};
    std::vector<int> queue = {r};
    for (size_t i = 0; i < queue.size(); ++i) {
      for (int w : adj[queue[i]]) {
        if (!dist.count(w)) {
          dist[w] = dist[queue[i]] + 1;
          parent[w] = queue[i];
          queue.push_back(w);
        }
      }
    }
    int span = -1;
    std::vector<int> leaves;
    for (auto& [u, nb] : adj) {
      if (u != r && nb.size() == 1) leaves.push_back(u);
    }
    for (int leaf : leaves) {
      if (span < 0 || dist[leaf] < span) span = dist[leaf];
    }
    std::set<Edge> chosen;
    std::set<int> members = {r};
    for (int leaf : leaves) {
      if (dist[leaf] != span) continue;
      for (int u = leaf; u != r; u = parent[u]) {
        chosen.insert({std::min(u, parent[u]), std::max(u, parent[u])});
        members.insert(u);
      }
    }
    out.push_back({r, span, {chosen.begin(), chosen.end()}});
    std::set<Edge> rest;
    for (const auto& e : edges) {
      if (!chosen.count(e)) rest.insert(e);
    }
    // Components of the rest, each grown from one member vertex.
    while (!rest.empty()) {
      std::set<int> comp_vertices = {rest.begin()->first};
      std::set<Edge> comp;
      bool grew = true;
      while (grew) {
        grew = false;
        for (const auto& e : rest) {
          if (comp.count(e)) continue;
          if (comp_vertices.count(e.first) || comp_vertices.count(e.second)) {
            comp.insert(e);
            comp_vertices.insert(e.first);
            comp_vertices.insert(e.second);
            grew = true;
          }
        }
      }
      std::vector<int> anchors;
      for (int u : comp_vertices) {
        if (members.count(u)) anchors.push_back(u);
      }
      if (anchors.size() != 1) {
        throw std::logic_error("component does not meet the subtree once");
      }
      for (const auto& e : comp) rest.erase(e);
      split(anchors[0], comp);
    }
  };
  std::set<Edge> all;
  for (auto e : g.Edges()) all.insert(e);
  split(root, all);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<JourneyPair> OracleJourney(const BoundaryPaymentGraph& g, int root,
                                       const std::vector<OracleSubtree>& parts,
                                       int v) {
  auto from_root = BfsDistances(g, root);
  if (v == root) {
    int s0 = OracleDPlusMinus(g, root, root).second;
    return {{s0, 0}};
  }
  // Path from the root to v.
  std::vector<int> path = {v};
  while (path.back() != root) {
    for (int w : g.neighbors(path.back())) {
      if (from_root[w] == from_root[path.back()] - 1) {
        path.push_back(w);
        break;
      }
    }
  }
  std::reverse(path.begin(), path.end());
  std::vector<JourneyPair> out;
  int current = -1;
  for (size_t i = 1; i < path.size(); ++i) {
    std::pair<int, int> e = {std::min(path[i - 1], path[i]),
                             std::max(path[i - 1], path[i])};
    int which = -1;
    for (size_t k = 0; k < parts.size(); ++k) {
      if (std::binary_search(parts[k].edges.begin(), parts[k].edges.end(),
                             e)) {
        which = static_cast<int>(k);
      }
    }
    if (which != current) {
      out.push_back({parts[which].span, 0});
      current = which;
    }
    ++out.back().depth;
  }
  return out;
}

std::vector<OracleSubtree> Normalize(const BasicPartition& p) {
  std::vector<OracleSubtree> out;
  for (const auto& s : p.subtrees) {
    OracleSubtree o{s.root, s.span, {}};
    for (auto [c, par] : s.edges) {
      o.edges.push_back({std::min(c, par), std::max(c, par)});
    }
    std::sort(o.edges.begin(), o.edges.end());
    out.push_back(std::move(o));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace staketow::testing
