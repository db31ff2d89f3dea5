#ifndef STAKETOW_GRAPH_H_
#define STAKETOW_GRAPH_H_

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace staketow {

// Finite connected simple graph with a boundary set and a payment on it.
// Vertices are stored in lexicographic id order; integer handles index that
// order, so iterating 0..n-1 visits ids lexicographically.
class BoundaryPaymentGraph {
 public:
  // Validates and builds. Payments must be given for exactly the boundary.
  static BoundaryPaymentGraph Create(
      std::vector<std::string> vertices,
      const std::vector<std::pair<std::string, std::string>>& edges,
      const std::vector<std::string>& boundary,
      const std::map<std::string, double>& payments,
      std::optional<std::string> root = std::nullopt);

  int num_vertices() const { return static_cast<int>(ids_.size()); }
  int num_edges() const { return num_edges_; }
  const std::string& id(int v) const { return ids_[v]; }
  const std::vector<std::string>& ids() const { return ids_; }

  // Throws kMalformedInput for unknown ids.
  int Index(const std::string& id) const;
  bool HasVertex(const std::string& id) const;

  const std::vector<int>& neighbors(int v) const { return adjacency_[v]; }
  bool Adjacent(int u, int v) const;
  bool is_boundary(int v) const { return boundary_[v]; }
  bool is_open(int v) const { return !boundary_[v]; }
  // Zero on open vertices.
  double payment(int v) const { return payment_[v]; }
  const std::vector<int>& open_vertices() const { return open_; }
  const std::vector<int>& boundary_vertices() const { return boundary_list_; }
  const std::optional<std::string>& root_hint() const { return root_; }

  // Edges as (u, v) with u < v, sorted.
  std::vector<std::pair<int, int>> Edges() const;
  bool IsTree() const { return num_edges_ == num_vertices() - 1; }

  // Same graph and boundary with a different payment.
  BoundaryPaymentGraph WithPayments(
      const std::map<std::string, double>& payments) const;

 private:
  BoundaryPaymentGraph() = default;

  std::vector<std::string> ids_;
  std::map<std::string, int> index_;
  std::vector<std::vector<int>> adjacency_;
  std::vector<bool> boundary_;
  std::vector<double> payment_;
  std::vector<int> open_;
  std::vector<int> boundary_list_;
  std::optional<std::string> root_;
  int num_edges_ = 0;
};

BoundaryPaymentGraph ParseGraph(const std::string& json_text);
BoundaryPaymentGraph LoadGraph(const std::string& path);
std::string GraphToJson(const BoundaryPaymentGraph& g);

// Builders for the standard boards. Line L_n on 0..n with p = 1 at n.
BoundaryPaymentGraph LineGraph(int n);
// Half-ladder H_n: spine 0..n, rungs i--i* for i >= 1, reward at 0.
BoundaryPaymentGraph HalfLadder(int n);
// T graph 0--S--N, N--1, N--2 with payment equal to the leaf label.
BoundaryPaymentGraph TGraph();

}  // namespace staketow

#endif  // STAKETOW_GRAPH_H_
