#pragma once

#include <vector>

namespace vetocore {

/// Bipartite graph given as adjacency from left nodes to right node indices.
struct BipartiteGraph {
  int left_size = 0;
  int right_size = 0;
  std::vector<std::vector<int>> adjacency;
};

struct MaximumMatching {
  std::vector<int> left_mate;   // right node or -1
  std::vector<int> right_mate;  // left node or -1
  int size = 0;
};

/// Hopcroft-Karp.
MaximumMatching hopcroft_karp(const BipartiteGraph& g);

/// Given a maximum matching, the right nodes reachable by alternating paths
/// from unmatched right nodes. Their neighborhood is exactly the reachable left
/// nodes, all matched into the set, so it is smaller than the set by the
/// number of unmatched right nodes. Empty when every right node is matched.
struct HallSet {
  std::vector<int> right_nodes;
  std::vector<int> neighborhood;
};
HallSet hall_violator(const BipartiteGraph& g, const MaximumMatching& matching);

}  // namespace vetocore
