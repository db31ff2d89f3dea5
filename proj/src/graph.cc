#include "staketow/graph.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "staketow/errors.h"

namespace staketow {

namespace {

using json = nlohmann::json;

std::string IdFromJson(const json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return std::to_string(j.get<long long>());
  throw Error(ErrorCode::kMalformedInput,
              "vertex id must be a string or integer: " + j.dump());
}

}  // namespace

BoundaryPaymentGraph BoundaryPaymentGraph::Create(
    std::vector<std::string> vertices,
    const std::vector<std::pair<std::string, std::string>>& edges,
    const std::vector<std::string>& boundary,
    const std::map<std::string, double>& payments,
    std::optional<std::string> root) {
  BoundaryPaymentGraph g;
  std::sort(vertices.begin(), vertices.end());
  if (vertices.empty()) {
    throw Error(ErrorCode::kMalformedInput, "no vertices");
  }
  for (size_t i = 0; i < vertices.size(); ++i) {
    if (vertices[i].empty()) {
      throw Error(ErrorCode::kMalformedInput, "empty vertex id");
    }
    if (i > 0 && vertices[i] == vertices[i - 1]) {
      throw Error(ErrorCode::kMalformedInput,
                  "duplicate vertex " + vertices[i]);
    }
    g.index_[vertices[i]] = static_cast<int>(i);
  }
  g.ids_ = std::move(vertices);
  const int n = g.num_vertices();
  g.adjacency_.assign(n, {});

  std::set<std::pair<int, int>> seen;
  for (const auto& [a, b] : edges) {
    int u = g.Index(a);
    int v = g.Index(b);
    if (u == v) throw Error(ErrorCode::kMalformedInput, "loop at " + a);
    if (!seen.insert({std::min(u, v), std::max(u, v)}).second) {
      throw Error(ErrorCode::kMalformedInput,
                  "repeated edge " + a + "--" + b);
    }
    g.adjacency_[u].push_back(v);
    g.adjacency_[v].push_back(u);
  }
  g.num_edges_ = static_cast<int>(seen.size());
  for (auto& nb : g.adjacency_) std::sort(nb.begin(), nb.end());

  // Connectivity.
  std::vector<bool> reached(n, false);
  std::vector<int> stack = {0};
  reached[0] = true;
  int count = 1;
  while (!stack.empty()) {
    int u = stack.back();
    stack.pop_back();
    for (int w : g.adjacency_[u]) {
      if (!reached[w]) {
        reached[w] = true;
        ++count;
        stack.push_back(w);
      }
    }
  }
  if (count != n) {
    throw Error(ErrorCode::kDisconnectedGraph, "graph is not connected");
  }

  g.boundary_.assign(n, false);
  for (const auto& b : boundary) {
    int v = g.Index(b);
    if (g.boundary_[v]) {
      throw Error(ErrorCode::kMalformedInput, "duplicate boundary " + b);
    }
    g.boundary_[v] = true;
  }
  for (int v = 0; v < n; ++v) {
    (g.boundary_[v] ? g.boundary_list_ : g.open_).push_back(v);
  }
  if (g.boundary_list_.empty()) {
    throw Error(ErrorCode::kMalformedInput, "boundary is empty");
  }
  if (g.open_.empty()) {
    throw Error(ErrorCode::kDisconnectedGraph, "no open vertices");
  }

  if (root.has_value()) {
    int r = g.Index(*root);
    if (!g.boundary_[r]) {
      throw Error(ErrorCode::kMalformedInput, "root is not a boundary vertex");
    }
    g.root_ = root;
  }

  g.payment_.assign(n, 0.0);
  std::map<std::string, double> pay = payments;
  if (pay.empty() && root.has_value()) {
    for (int v : g.boundary_list_) pay[g.ids_[v]] = g.ids_[v] == *root;
  }
  for (const auto& [id, value] : pay) {
    int v = g.Index(id);
    if (!g.boundary_[v]) {
      throw Error(ErrorCode::kMalformedInput,
                  "payment on open vertex " + id);
    }
    if (!(value >= 0.0) || !std::isfinite(value)) {
      throw Error(ErrorCode::kMalformedInput, "bad payment at " + id);
    }
    g.payment_[v] = value;
  }
  for (int v : g.boundary_list_) {
    if (!pay.count(g.ids_[v])) {
      throw Error(ErrorCode::kMissingPayment, "no payment at " + g.ids_[v]);
    }
  }
  return g;
}

int BoundaryPaymentGraph::Index(const std::string& id) const {
  auto it = index_.find(id);
  if (it == index_.end()) {
    throw Error(ErrorCode::kMalformedInput, "unknown vertex " + id);
  }
  return it->second;
}

bool BoundaryPaymentGraph::HasVertex(const std::string& id) const {
  return index_.count(id) > 0;
}

bool BoundaryPaymentGraph::Adjacent(int u, int v) const {
  const auto& nb = adjacency_[u];
  return std::binary_search(nb.begin(), nb.end(), v);
}

std::vector<std::pair<int, int>> BoundaryPaymentGraph::Edges() const {
  std::vector<std::pair<int, int>> out;
  for (int u = 0; u < num_vertices(); ++u) {
    for (int v : adjacency_[u]) {
      if (u < v) out.push_back({u, v});
    }
  }
  return out;
}

BoundaryPaymentGraph BoundaryPaymentGraph::WithPayments(
    const std::map<std::string, double>& payments) const {
  std::vector<std::pair<std::string, std::string>> edges;
  for (auto [u, v] : Edges()) edges.push_back({ids_[u], ids_[v]});
  std::vector<std::string> boundary;
  for (int v : boundary_list_) boundary.push_back(ids_[v]);
  return Create(ids_, edges, boundary, payments);
}

BoundaryPaymentGraph ParseGraph(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kMalformedInput, e.what());
  }
  if (!doc.is_object()) {
    throw Error(ErrorCode::kMalformedInput, "top level must be an object");
  }
  for (const char* key : {"vertices", "edges", "boundary"}) {
    if (!doc.contains(key) || !doc[key].is_array()) {
      throw Error(ErrorCode::kMalformedInput,
                  std::string("missing array \"") + key + "\"");
    }
  }
  std::vector<std::string> vertices;
  for (const auto& v : doc["vertices"]) vertices.push_back(IdFromJson(v));
  std::vector<std::pair<std::string, std::string>> edges;
  for (const auto& e : doc["edges"]) {
    if (!e.is_array() || e.size() != 2) {
      throw Error(ErrorCode::kMalformedInput, "edge must be a pair");
    }
    edges.push_back({IdFromJson(e[0]), IdFromJson(e[1])});
  }
  std::vector<std::string> boundary;
  for (const auto& b : doc["boundary"]) boundary.push_back(IdFromJson(b));
  std::map<std::string, double> payments;
  if (doc.contains("payments")) {
    if (!doc["payments"].is_object()) {
      throw Error(ErrorCode::kMalformedInput, "payments must be an object");
    }
    for (const auto& [k, val] : doc["payments"].items()) {
      if (!val.is_number()) {
        throw Error(ErrorCode::kMalformedInput, "payment must be a number");
      }
      payments[k] = val.get<double>();
    }
  }
  std::optional<std::string> root;
  if (doc.contains("root")) root = IdFromJson(doc["root"]);
  if (payments.empty() && !root.has_value()) {
    throw Error(ErrorCode::kMissingPayment, "no payments and no root");
  }
  return BoundaryPaymentGraph::Create(vertices, edges, boundary, payments,
                                      root);
}

BoundaryPaymentGraph LoadGraph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kMalformedInput, "cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ParseGraph(ss.str());
}

std::string GraphToJson(const BoundaryPaymentGraph& g) {
  json doc;
  doc["vertices"] = g.ids();
  json edges = json::array();
  for (auto [u, v] : g.Edges()) edges.push_back({g.id(u), g.id(v)});
  doc["edges"] = edges;
  json boundary = json::array();
  json payments = json::object();
  for (int v : g.boundary_vertices()) {
    boundary.push_back(g.id(v));
    payments[g.id(v)] = g.payment(v);
  }
  doc["boundary"] = boundary;
  doc["payments"] = payments;
  if (g.root_hint()) doc["root"] = *g.root_hint();
  return doc.dump();
}

BoundaryPaymentGraph LineGraph(int n) {
  if (n < 2) throw Error(ErrorCode::kIndexOutOfRange, "line needs n >= 2");
  std::vector<std::string> vertices;
  std::vector<std::pair<std::string, std::string>> edges;
  for (int i = 0; i <= n; ++i) {
    vertices.push_back(std::to_string(i));
    if (i > 0) edges.push_back({std::to_string(i - 1), std::to_string(i)});
  }
  std::string top = std::to_string(n);
  return BoundaryPaymentGraph::Create(vertices, edges, {"0", top},
                                      {{"0", 0.0}, {top, 1.0}}, top);
}

BoundaryPaymentGraph HalfLadder(int n) {
  if (n < 1) throw Error(ErrorCode::kIndexOutOfRange, "half-ladder needs n >= 1");
  std::vector<std::string> vertices = {"0"};
  std::vector<std::pair<std::string, std::string>> edges;
  std::vector<std::string> boundary = {"0"};
  for (int i = 1; i <= n; ++i) {
    std::string s = std::to_string(i);
    vertices.push_back(s);
    vertices.push_back(s + "*");
    edges.push_back({std::to_string(i - 1), s});
    edges.push_back({s, s + "*"});
  }
  for (int i = 1; i <= n; ++i) boundary.push_back(std::to_string(i) + "*");
  std::map<std::string, double> pay;
  for (const auto& b : boundary) pay[b] = b == "0" ? 1.0 : 0.0;
  return BoundaryPaymentGraph::Create(vertices, edges, boundary, pay, "0");
}

BoundaryPaymentGraph TGraph() {
  return BoundaryPaymentGraph::Create(
      {"0", "1", "2", "N", "S"},
      {{"0", "S"}, {"S", "N"}, {"N", "1"}, {"N", "2"}}, {"0", "1", "2"},
      {{"0", 0.0}, {"1", 1.0}, {"2", 2.0}});
}

}  // namespace staketow
