#pragma once

#include "gbsn/error.hpp"
#include "gbsn/exact.hpp"

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <string>
#include <vector>

namespace gbsn {

/// An edge of the underlying graph. Column k of iota_from (iota_to) is the
/// image of the k-th edge-group basis vector in the from (to) vertex group.
/// Loops and multi-edges are allowed.
struct Edge {
  std::string id;
  std::string from;
  std::string to;
  IntMatrix iota_from;
  IntMatrix iota_to;
};

/// A finite graph of Z^n groups. Plain data: construct freely, then
/// `validate` before handing it to any computation.
struct GbsGraph {
  std::size_t rank = 0;
  std::vector<std::string> vertices;
  std::vector<Edge> edges;
};

struct Violation {
  std::string subject;  // offending vertex/edge id, or "graph"
  std::string rule;
  std::string detail;
};

inline std::vector<Violation> validate(const GbsGraph& g) {
  std::vector<Violation> out;
  if (g.rank < 1) out.push_back({"graph", "rank", "rank must be at least 1"});
  if (g.vertices.empty())
    out.push_back({"graph", "nonempty", "graph has no vertices"});

  std::set<std::string> vertex_set;
  for (const auto& v : g.vertices)
    if (!vertex_set.insert(v).second)
      out.push_back({v, "duplicate-vertex", "vertex id appears twice"});

  std::set<std::string> edge_set;
  for (const auto& e : g.edges) {
    if (!edge_set.insert(e.id).second)
      out.push_back({e.id, "duplicate-edge", "edge id appears twice"});
    if (!vertex_set.count(e.from))
      out.push_back({e.id, "unknown-endpoint", "from vertex '" + e.from + "' not in graph"});
    if (!vertex_set.count(e.to))
      out.push_back({e.id, "unknown-endpoint", "to vertex '" + e.to + "' not in graph"});
    auto check = [&](const IntMatrix& m, const char* side) {
      if (m.rows() != g.rank || m.cols() != g.rank) {
        out.push_back({e.id, std::string("shape-") + side,
                       std::string(side) + " must be " + std::to_string(g.rank) + "x" +
                           std::to_string(g.rank)});
        return;
      }
      if (determinant(m) == 0)
        out.push_back({e.id, std::string("singular-") + side,
                       std::string(side) + " has zero determinant"});
    };
    check(e.iota_from, "iota_from");
    check(e.iota_to, "iota_to");
  }

  if (!g.vertices.empty()) {
    std::map<std::string, std::vector<std::string>> adj;
    for (const auto& e : g.edges)
      if (vertex_set.count(e.from) && vertex_set.count(e.to)) {
        adj[e.from].push_back(e.to);
        adj[e.to].push_back(e.from);
      }
    std::set<std::string> seen{*vertex_set.begin()};
    std::vector<std::string> stack{*vertex_set.begin()};
    while (!stack.empty()) {
      auto v = stack.back();
      stack.pop_back();
      for (const auto& w : adj[v])
        if (seen.insert(w).second) stack.push_back(w);
    }
    for (const auto& v : vertex_set)
      if (!seen.count(v))
        out.push_back({v, "connected", "vertex not reachable from '" + *vertex_set.begin() + "'"});
  }
  return out;
}

inline void require_valid(const GbsGraph& g) {
  auto violations = validate(g);
  if (violations.empty()) return;
  std::string msg = "invalid graph:";
  for (const auto& v : violations) msg += " [" + v.subject + ": " + v.rule + "]";
  throw InvalidGraph(msg);
}

/// Index structure over a validated graph: sorted ids, the deterministic
/// spanning tree, and parent links toward the base (smallest) vertex.
class GraphLayout {
 public:
  explicit GraphLayout(GbsGraph graph) : graph_(std::move(graph)) {
    const GbsGraph& g = graph_;
    require_valid(g);
    vertex_ids_ = g.vertices;
    std::sort(vertex_ids_.begin(), vertex_ids_.end());
    for (std::size_t i = 0; i < vertex_ids_.size(); ++i) vertex_index_[vertex_ids_[i]] = i;

    edge_order_.resize(g.edges.size());
    for (std::size_t i = 0; i < edge_order_.size(); ++i) edge_order_[i] = i;
    std::sort(edge_order_.begin(), edge_order_.end(),
              [&](std::size_t a, std::size_t b) { return g.edges[a].id < g.edges[b].id; });
    for (std::size_t i = 0; i < g.edges.size(); ++i) edge_index_[g.edges[i].id] = i;

    const std::size_t nv = vertex_ids_.size();
    parent_edge_.assign(nv, std::nullopt);
    parent_.assign(nv, 0);
    depth_.assign(nv, 0);
    is_tree_edge_.assign(g.edges.size(), false);
    std::vector<bool> seen(nv, false);
    std::queue<std::size_t> queue;
    seen[0] = true;
    queue.push(0);
    while (!queue.empty()) {
      std::size_t v = queue.front();
      queue.pop();
      bfs_order_.push_back(v);
      for (std::size_t ei : edge_order_) {
        const Edge& e = g.edges[ei];
        std::size_t a = vertex_index_.at(e.from), b = vertex_index_.at(e.to);
        std::size_t other;
        if (a == v)
          other = b;
        else if (b == v)
          other = a;
        else
          continue;
        if (seen[other]) continue;
        seen[other] = true;
        is_tree_edge_[ei] = true;
        parent_edge_[other] = ei;
        parent_[other] = v;
        depth_[other] = depth_[v] + 1;
        queue.push(other);
      }
    }
    for (std::size_t ei : edge_order_)
      if (!is_tree_edge_[ei]) non_tree_edges_.push_back(ei);
  }

  const GbsGraph& graph() const { return graph_; }
  std::size_t rank() const { return graph_.rank; }
  std::size_t vertex_count() const { return vertex_ids_.size(); }
  const std::vector<std::string>& vertex_ids() const { return vertex_ids_; }
  const std::string& vertex_id(std::size_t i) const { return vertex_ids_[i]; }
  std::size_t base() const { return 0; }
  const std::string& base_id() const { return vertex_ids_[0]; }

  std::optional<std::size_t> find_vertex(const std::string& id) const {
    auto it = vertex_index_.find(id);
    if (it == vertex_index_.end()) return std::nullopt;
    return it->second;
  }
  std::size_t vertex(const std::string& id) const {
    auto v = find_vertex(id);
    if (!v) throw UnknownSymbol("unknown vertex '" + id + "'");
    return *v;
  }
  std::optional<std::size_t> find_edge(const std::string& id) const {
    auto it = edge_index_.find(id);
    if (it == edge_index_.end()) return std::nullopt;
    return it->second;
  }
  std::size_t edge(const std::string& id) const {
    auto e = find_edge(id);
    if (!e) throw UnknownSymbol("unknown edge '" + id + "'");
    return *e;
  }
  const Edge& edge_at(std::size_t ei) const { return graph_.edges[ei]; }
  std::size_t from_vertex(std::size_t ei) const { return vertex_index_.at(edge_at(ei).from); }
  std::size_t to_vertex(std::size_t ei) const { return vertex_index_.at(edge_at(ei).to); }

  /// Edge indices sorted by id.
  const std::vector<std::size_t>& edge_order() const { return edge_order_; }
  bool is_tree_edge(std::size_t ei) const { return is_tree_edge_[ei]; }
  /// Non-tree edge indices sorted by id; these carry the stable letters.
  const std::vector<std::size_t>& non_tree_edges() const { return non_tree_edges_; }
  std::optional<std::size_t> parent_edge(std::size_t v) const { return parent_edge_[v]; }
  std::size_t parent(std::size_t v) const { return parent_[v]; }
  std::size_t depth(std::size_t v) const { return depth_[v]; }
  const std::vector<std::size_t>& bfs_order() const { return bfs_order_; }

 private:
  GbsGraph graph_;
  std::vector<std::string> vertex_ids_;
  std::map<std::string, std::size_t> vertex_index_;
  std::map<std::string, std::size_t> edge_index_;
  std::vector<std::size_t> edge_order_;
  std::vector<bool> is_tree_edge_;
  std::vector<std::size_t> non_tree_edges_;
  std::vector<std::optional<std::size_t>> parent_edge_;
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> depth_;
  std::vector<std::size_t> bfs_order_;
};

/// Breadth-first from the smallest vertex id, edges taken in id order.
inline std::set<std::string> spanning_tree(const GbsGraph& g) {
  GraphLayout layout(g);
  std::set<std::string> out;
  for (std::size_t ei = 0; ei < g.edges.size(); ++ei)
    if (layout.is_tree_edge(ei)) out.insert(g.edges[ei].id);
  return out;
}

}  // namespace gbsn
