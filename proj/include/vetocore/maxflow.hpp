#pragma once

#include <algorithm>
#include <optional>
#include <queue>
#include <vector>

namespace vetocore {

/// Edmonds-Karp over an arbitrary ordered field (used with exact rationals).
/// Edges may be uncapacitated; such an edge never saturates.
template <class Cap>
class MaxFlow {
 public:
  explicit MaxFlow(int nodes) : adj_(nodes) {}

  int add_edge(int from, int to, std::optional<Cap> capacity) {
    int id = static_cast<int>(edges_.size());
    edges_.push_back(Edge{to, capacity, Cap(0)});
    adj_[from].push_back(id);
    edges_.push_back(Edge{from, Cap(0), Cap(0)});
    adj_[to].push_back(id + 1);
    return id;
  }

  Cap run(int source, int sink) {
    Cap total(0);
    const int n = static_cast<int>(adj_.size());
    for (;;) {
      std::vector<int> via(n, -1);
      std::vector<bool> seen(n, false);
      std::queue<int> q;
      q.push(source);
      seen[source] = true;
      while (!q.empty() && !seen[sink]) {
        int u = q.front();
        q.pop();
        for (int id : adj_[u]) {
          const Edge& e = edges_[id];
          if (!seen[e.to] && has_residual(id)) {
            seen[e.to] = true;
            via[e.to] = id;
            q.push(e.to);
          }
        }
      }
      if (!seen[sink]) return total;

      // An augmenting path of only uncapacitated edges would mean unbounded
      // flow; callers always cap the source edges, so `bottleneck` gets set.
      std::optional<Cap> bottleneck;
      for (int v = sink; v != source; v = edges_[via[v] ^ 1].to) {
        if (auto r = residual(via[v])) bottleneck = bottleneck ? std::min(*bottleneck, *r) : *r;
      }
      for (int v = sink; v != source; v = edges_[via[v] ^ 1].to) {
        edges_[via[v]].flow += *bottleneck;
        edges_[via[v] ^ 1].flow -= *bottleneck;
      }
      total += *bottleneck;
    }
  }

  /// Nodes reachable from `source` in the residual graph after run().
  std::vector<bool> source_side(int source) const {
    std::vector<bool> seen(adj_.size(), false);
    std::queue<int> q;
    q.push(source);
    seen[source] = true;
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      for (int id : adj_[u]) {
        if (!seen[edges_[id].to] && has_residual(id)) {
          seen[edges_[id].to] = true;
          q.push(edges_[id].to);
        }
      }
    }
    return seen;
  }

  const Cap& flow(int edge_id) const { return edges_[edge_id].flow; }

 private:
  struct Edge {
    int to;
    std::optional<Cap> capacity;  // nullopt = uncapacitated
    Cap flow;
  };

  std::optional<Cap> residual(int id) const {
    const Edge& e = edges_[id];
    if (!e.capacity) return std::nullopt;
    return *e.capacity - e.flow;
  }
  bool has_residual(int id) const {
    auto r = residual(id);
    return !r || *r > 0;
  }

  std::vector<std::vector<int>> adj_;
  std::vector<Edge> edges_;
};

}  // namespace vetocore
