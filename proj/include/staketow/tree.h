#ifndef STAKETOW_TREE_H_
#define STAKETOW_TREE_H_

#include <string>
#include <utility>
#include <vector>

#include "staketow/graph.h"

namespace staketow {

struct JourneyPair {
  int span = 0;
  int depth = 0;
  bool operator==(const JourneyPair&) const = default;
};

// Pairs (s_i, d_i), i = 0..k. junctions[i] is the root of the i-th basic
// subtree crossed on the way from the root; junctions.back() is the vertex.
struct JourneyData {
  std::vector<JourneyPair> pairs;
  std::vector<int> junctions;
};

struct BasicSubtree {
  int root = -1;
  int span = 0;
  // Edges stored as (child, parent).
  std::vector<std::pair<int, int>> edges;
};

struct BasicPartition {
  std::vector<BasicSubtree> subtrees;
};

// Tree whose payment is the indicator of a leaf r. Built from a graph;
// immutable afterwards.
class RootRewardTree {
 public:
  explicit RootRewardTree(const BoundaryPaymentGraph& g);

  const BoundaryPaymentGraph& graph() const { return graph_; }
  int num_vertices() const { return graph_.num_vertices(); }
  int Index(const std::string& id) const { return graph_.Index(id); }
  const std::string& id(int v) const { return graph_.id(v); }

  int root() const { return root_; }
  // -1 at the root.
  int parent(int v) const { return parent_[v]; }
  // Lexicographic order.
  const std::vector<int>& children(int v) const { return children_[v]; }
  bool is_open(int v) const { return graph_.is_open(v); }
  // Distance to the root.
  int depth(int v) const { return depth_[v]; }
  // Distance to the nearest non-reward leaf among the descendants of v.
  int down_distance(int v) const { return down_[v]; }

  const BasicPartition& basic_partition() const { return partition_; }
  // Index into basic_partition().subtrees of the subtree holding the edge
  // from v to its parent; -1 at the root.
  int owner(int v) const { return owner_[v]; }
  const JourneyData& journey_data(int v) const { return journeys_[v]; }

  // Throws kVertexNotOpen unless v is open.
  void CheckOpen(int v) const;

 private:
  void BuildPartition();

  BoundaryPaymentGraph graph_;
  int root_ = -1;
  std::vector<int> parent_;
  std::vector<std::vector<int>> children_;
  std::vector<int> depth_;
  std::vector<int> down_;
  BasicPartition partition_;
  std::vector<int> owner_;
  std::vector<JourneyData> journeys_;
};

struct EssenceMap {
  RootRewardTree essence_tree;
  // Source vertex index -> essence vertex index.
  std::vector<int> phi;
};

RootRewardTree AsRootRewardTree(const BoundaryPaymentGraph& g);

// V_-(v): children with minimal down_distance, lexicographic order.
std::vector<int> MinChildren(const RootRewardTree& t, int v);
const JourneyData& GetJourneyData(const RootRewardTree& t, int v);
const BasicPartition& GetBasicPartition(const RootRewardTree& t);
EssenceMap Essence(const RootRewardTree& t);
// (d_+, d_-).
std::pair<int, int> DPlusMinus(const RootRewardTree& t, int v);

}  // namespace staketow

#endif  // STAKETOW_TREE_H_
