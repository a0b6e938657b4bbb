#pragma once

#include <map>
#include <utility>
#include <vector>

#include "vetocore/core.hpp"
#include "vetocore/election.hpp"
#include "vetocore/rational.hpp"

namespace vetocore {

/// N[i] is a permutation of the voters; candidate[i][v] is the candidate the
/// i-th copy of v is matched to, and it lies in top_k(N[i][v]).
struct MatchingDecomposition {
  std::vector<std::vector<VoterId>> N;
  std::vector<std::vector<CandidateId>> candidate;
};

/// Splits a perfect matching of D_k(w) into k voter-to-voter permutations.
/// Throws Error(not_perfect) if `matching` is not a perfect matching of the
/// domination graph, Error(decomposition_failure) if peeling fails.
MatchingDecomposition decompose_regular_matchings(const Election& e, int k, CandidateId w, const Matching& matching);

/// Grid graph on V x C: preference edges (v,c) -> (v,c') for c above c', and
/// sideways edges (v,c) <-> (v',c) for v != v'. Node (v,c) has id v*m + c.
class FlowNetwork {
 public:
  explicit FlowNetwork(const Election& e) : e_(e) {}

  int n() const { return e_.n(); }
  int m() const { return e_.m(); }
  int node(VoterId v, CandidateId c) const { return v * e_.m() + c; }
  VoterId voter_of(int node) const { return node / e_.m(); }
  CandidateId candidate_of(int node) const { return node % e_.m(); }
  bool has_edge(int from, int to) const;
  bool is_sideways(int from, int to) const;

 private:
  Election e_;
};

FlowNetwork build_flow_network(const Election& e);

struct Circulation {
  CandidateId w = 0;
  CandidateId c_star = 0;
  std::map<std::pair<int, int>, Rational> flow;  // (from node, to node) -> amount
  std::vector<Rational> origination;             // per node
  std::vector<Rational> absorption;              // per node
  Rational stage1_total;
  std::vector<Rational> stage2_receipts;         // per voter, into (v, w)
};

/// Routes one unit from every (v, w) to the nodes (., c*) in two stages:
/// 1/k-units along the decomposition paths, then the remainder spread evenly
/// over the voters weakly preferring w to c*.
/// Throws Error(coalition_bound_violated) if fewer than apv_k(c*)/k voters
/// weakly prefer w to c*, Error(missing_edge) if a routed edge is absent.
Circulation construct_distortion_flow(const Election& e, int k, CandidateId w, CandidateId c_star,
                                      const Matching& matching);

struct FlowCostReport {
  std::vector<Rational> per_voter;
  Rational max_cost;
  std::vector<Rational> sideways_received;  // per voter, over c != c*
  std::vector<Rational> sideways_sent;      // per voter, over c != c*
};

/// Checks non-negativity, edge membership, source and sink placement and
/// conservation, then evaluates the per-voter cost.
/// Throws Error(conservation_violated), Error(missing_edge), or
/// Error(cost_exceeded) if some voter's cost is above 2k + 1.
FlowCostReport verify_flow(const FlowNetwork& net, const Circulation& f, int k);

}  // namespace vetocore
