#include "staketow/tree.h"

#include <algorithm>
#include <deque>
#include <map>
#include <stdexcept>

#include "staketow/errors.h"

namespace staketow {

RootRewardTree::RootRewardTree(const BoundaryPaymentGraph& g) : graph_(g) {
  const int n = g.num_vertices();
  if (!g.IsTree()) throw Error(ErrorCode::kNotATree, "graph has a cycle");
  for (int v = 0; v < n; ++v) {
    bool leaf = g.neighbors(v).size() == 1;
    if (leaf != g.is_boundary(v)) {
      throw Error(ErrorCode::kNotATree,
                  "boundary must be the leaf set (vertex " + g.id(v) + ")");
    }
  }
  for (int v : g.boundary_vertices()) {
    double p = g.payment(v);
    if (p == 1.0) {
      if (root_ >= 0) {
        throw Error(ErrorCode::kNotIndicatorPayment, "two reward leaves");
      }
      root_ = v;
    } else if (p != 0.0) {
      throw Error(ErrorCode::kNotIndicatorPayment,
                  "payment at " + g.id(v) + " is neither 0 nor 1");
    }
  }
  if (root_ < 0) {
    throw Error(ErrorCode::kNotIndicatorPayment, "no reward leaf");
  }
  if (g.neighbors(root_).size() != 1) {
    throw Error(ErrorCode::kRootNotLeaf, g.id(root_));
  }

  parent_.assign(n, -1);
  children_.assign(n, {});
  depth_.assign(n, 0);
  std::vector<int> order = {root_};
  for (size_t i = 0; i < order.size(); ++i) {
    int u = order[i];
    for (int w : g.neighbors(u)) {
      if (w == parent_[u]) continue;
      parent_[w] = u;
      depth_[w] = depth_[u] + 1;
      children_[u].push_back(w);
      order.push_back(w);
    }
  }
  down_.assign(n, 0);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    int u = *it;
    if (children_[u].empty()) continue;
    int best = -1;
    for (int c : children_[u]) {
      if (best < 0 || down_[c] < best) best = down_[c];
    }
    down_[u] = best + 1;
  }
  BuildPartition();
}

void RootRewardTree::CheckOpen(int v) const {
  if (v < 0 || v >= num_vertices() || !graph_.is_open(v)) {
    throw Error(ErrorCode::kVertexNotOpen,
                v >= 0 && v < num_vertices() ? graph_.id(v) : "?");
  }
}

void RootRewardTree::BuildPartition() {
  const int n = num_vertices();
  owner_.assign(n, -1);
  // A pending component: its root and the children of the root whose
  // branches belong to it.
  std::deque<std::pair<int, std::vector<int>>> pending;
  pending.push_back({root_, children_[root_]});
  while (!pending.empty()) {
    auto [x, branches] = pending.front();
    pending.pop_front();
    int span = -1;
    for (int c : branches) {
      if (span < 0 || down_[c] + 1 < span) span = down_[c] + 1;
    }
    BasicSubtree sub;
    sub.root = x;
    sub.span = span;
    const int index = static_cast<int>(partition_.subtrees.size());

    std::vector<int> members = {x};
    std::vector<std::vector<int>> rest(1);
    for (int c : branches) {
      (down_[c] + 1 == span ? members : rest[0]).push_back(c);
    }
    // members[1..] are the chosen children of x; expand breadth first.
    std::vector<int> frontier(members.begin() + 1, members.end());
    members.resize(1);
    for (size_t i = 0; i < frontier.size(); ++i) {
      int y = frontier[i];
      members.push_back(y);
      rest.push_back({});
      sub.edges.push_back({y, parent_[y]});
      owner_[y] = index;
      for (int c : children_[y]) {
        if (down_[c] + 1 == down_[y]) {
          frontier.push_back(c);
        } else {
          rest.back().push_back(c);
        }
      }
    }
    partition_.subtrees.push_back(std::move(sub));
    for (size_t i = 0; i < members.size(); ++i) {
      if (!rest[i].empty()) pending.push_back({members[i], rest[i]});
    }
  }

  journeys_.assign(n, {});
  for (int v = 0; v < n; ++v) {
    JourneyData& jd = journeys_[v];
    if (v == root_) {
      jd.pairs.push_back({down_[root_], 0});
      jd.junctions = {root_, root_};
      continue;
    }
    std::vector<int> path;
    for (int u = v; u != -1; u = parent_[u]) path.push_back(u);
    std::reverse(path.begin(), path.end());
    int current = -1;
    for (size_t i = 1; i < path.size(); ++i) {
      int sub = owner_[path[i]];
      if (sub != current) {
        const BasicSubtree& s = partition_.subtrees[sub];
        if (s.root != path[i - 1]) {
          throw std::logic_error("path enters a basic subtree off its root");
        }
        jd.pairs.push_back({s.span, 0});
        jd.junctions.push_back(path[i - 1]);
        current = sub;
      }
      ++jd.pairs.back().depth;
    }
    jd.junctions.push_back(v);
  }
}

RootRewardTree AsRootRewardTree(const BoundaryPaymentGraph& g) {
  return RootRewardTree(g);
}

std::vector<int> MinChildren(const RootRewardTree& t, int v) {
  t.CheckOpen(v);
  std::vector<int> out;
  for (int c : t.children(v)) {
    if (t.down_distance(c) + 1 == t.down_distance(v)) out.push_back(c);
  }
  return out;
}

const JourneyData& GetJourneyData(const RootRewardTree& t, int v) {
  return t.journey_data(v);
}

const BasicPartition& GetBasicPartition(const RootRewardTree& t) {
  return t.basic_partition();
}

EssenceMap Essence(const RootRewardTree& t) {
  const auto& subs = t.basic_partition().subtrees;
  const int n = t.num_vertices();
  // names[s][i-1] is the essence id of position i on the line of subtree s.
  std::vector<std::vector<std::string>> names(subs.size());
  for (size_t s = 0; s < subs.size(); ++s) {
    names[s].assign(subs[s].span, "");
  }
  for (int v = 0; v < n; ++v) {
    int s = t.owner(v);
    if (s < 0) continue;
    int pos = t.depth(v) - t.depth(subs[s].root);
    std::string& name = names[s][pos - 1];
    if (name.empty() || t.id(v) < name) name = t.id(v);
  }
  auto image_id = [&](int v) -> const std::string& {
    int s = t.owner(v);
    if (s < 0) return t.id(v);
    return names[s][t.depth(v) - t.depth(subs[s].root) - 1];
  };

  std::vector<std::string> vertices = {t.id(t.root())};
  std::vector<std::pair<std::string, std::string>> edges;
  std::vector<std::string> boundary = {t.id(t.root())};
  for (size_t s = 0; s < subs.size(); ++s) {
    std::string prev = image_id(subs[s].root);
    for (const auto& name : names[s]) {
      vertices.push_back(name);
      edges.push_back({prev, name});
      prev = name;
    }
    boundary.push_back(prev);
  }
  BoundaryPaymentGraph eg = BoundaryPaymentGraph::Create(
      vertices, edges, boundary, {}, t.id(t.root()));
  EssenceMap out{RootRewardTree(eg), std::vector<int>(n, -1)};
  for (int v = 0; v < n; ++v) {
    out.phi[v] = out.essence_tree.Index(image_id(v));
  }
  return out;
}

std::pair<int, int> DPlusMinus(const RootRewardTree& t, int v) {
  return {t.depth(v), t.down_distance(v)};
}

}  // namespace staketow
