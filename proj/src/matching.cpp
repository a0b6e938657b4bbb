#include "vetocore/matching.hpp"

#include <limits>
#include <queue>

namespace vetocore {

namespace {

constexpr int kUnreached = std::numeric_limits<int>::max();

class HopcroftKarp {
 public:
  explicit HopcroftKarp(const BipartiteGraph& g)
      : g_(g), left_mate_(g.left_size, -1), right_mate_(g.right_size, -1), dist_(g.left_size) {}

  MaximumMatching run() {
    int size = 0;
    while (layer()) {
      for (int u = 0; u < g_.left_size; ++u) {
        if (left_mate_[u] == -1 && augment(u)) ++size;
      }
    }
    return MaximumMatching{std::move(left_mate_), std::move(right_mate_), size};
  }

 private:
  bool layer() {
    std::queue<int> q;
    for (int u = 0; u < g_.left_size; ++u) {
      if (left_mate_[u] == -1) {
        dist_[u] = 0;
        q.push(u);
      } else {
        dist_[u] = kUnreached;
      }
    }
    bool found = false;
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      for (int r : g_.adjacency[u]) {
        int next = right_mate_[r];
        if (next == -1) {
          found = true;
        } else if (dist_[next] == kUnreached) {
          dist_[next] = dist_[u] + 1;
          q.push(next);
        }
      }
    }
    return found;
  }

  bool augment(int u) {
    for (int r : g_.adjacency[u]) {
      int next = right_mate_[r];
      if (next == -1 || (dist_[next] == dist_[u] + 1 && augment(next))) {
        left_mate_[u] = r;
        right_mate_[r] = u;
        return true;
      }
    }
    dist_[u] = kUnreached;
    return false;
  }

  const BipartiteGraph& g_;
  std::vector<int> left_mate_;
  std::vector<int> right_mate_;
  std::vector<int> dist_;
};

}  // namespace

MaximumMatching hopcroft_karp(const BipartiteGraph& g) { return HopcroftKarp(g).run(); }

HallSet hall_violator(const BipartiteGraph& g, const MaximumMatching& matching) {
  std::vector<std::vector<int>> reverse(g.right_size);
  for (int u = 0; u < g.left_size; ++u) {
    for (int r : g.adjacency[u]) reverse[r].push_back(u);
  }
  std::vector<bool> right_seen(g.right_size, false);
  std::vector<bool> left_seen(g.left_size, false);
  std::queue<int> q;
  for (int r = 0; r < g.right_size; ++r) {
    if (matching.right_mate[r] == -1) {
      right_seen[r] = true;
      q.push(r);
    }
  }
  while (!q.empty()) {
    int r = q.front();
    q.pop();
    for (int u : reverse[r]) {
      if (left_seen[u]) continue;
      left_seen[u] = true;
      int mate = matching.left_mate[u];
      if (mate != -1 && !right_seen[mate]) {
        right_seen[mate] = true;
        q.push(mate);
      }
    }
  }
  HallSet out;
  for (int r = 0; r < g.right_size; ++r) {
    if (right_seen[r]) out.right_nodes.push_back(r);
  }
  for (int u = 0; u < g.left_size; ++u) {
    if (left_seen[u]) out.neighborhood.push_back(u);
  }
  return out;
}

}  // namespace vetocore
