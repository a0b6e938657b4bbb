#include "vetocore/flow_verify.hpp"

#include <algorithm>

#include "vetocore/error.hpp"
#include "vetocore/matching.hpp"

namespace vetocore {

MatchingDecomposition decompose_regular_matchings(const Election& e, int k, CandidateId w, const Matching& matching) {
  check_k(e, k);
  if (!is_perfect_matching(build_domination_graph(e, k, w), matching)) {
    throw Error(ErrorCode::not_perfect, "not a perfect matching of the domination graph");
  }
  const int n = e.n();
  std::vector<std::vector<CandidateId>> matched(n, std::vector<CandidateId>(k, -1));
  for (const MatchedPair& p : matching.pairs) matched[p.voter][p.voter_copy] = p.candidate;

  // Pair the voter copies matched to c with the top-k slots holding c; both
  // lists have apv_k(c) entries. Contracting copies gives a k-regular
  // bipartite multigraph on voters.
  std::vector<std::vector<std::pair<VoterId, int>>> copies_at(e.m()), slots_at(e.m());
  for (VoterId v = 0; v < n; ++v) {
    for (int i = 0; i < k; ++i) copies_at[matched[v][i]].emplace_back(v, i);
    for (int j = 0; j < k; ++j) slots_at[e.ranking(v)[j]].emplace_back(v, j);
  }
  std::vector<std::vector<std::pair<VoterId, int>>> edges(n);  // v -> (u, copy of v)
  for (CandidateId c = 0; c < e.m(); ++c) {
    if (copies_at[c].size() != slots_at[c].size()) {
      throw Error(ErrorCode::decomposition_failure, "copy count differs from apv_k");
    }
    for (std::size_t t = 0; t < copies_at[c].size(); ++t) {
      edges[copies_at[c][t].first].emplace_back(slots_at[c][t].first, copies_at[c][t].second);
    }
  }

  MatchingDecomposition out;
  for (int round = 0; round < k; ++round) {
    BipartiteGraph g{n, n, std::vector<std::vector<int>>(n)};
    for (VoterId v = 0; v < n; ++v) {
      for (const auto& [u, copy] : edges[v]) g.adjacency[v].push_back(u);
      std::sort(g.adjacency[v].begin(), g.adjacency[v].end());
      g.adjacency[v].erase(std::unique(g.adjacency[v].begin(), g.adjacency[v].end()), g.adjacency[v].end());
    }
    const MaximumMatching mm = hopcroft_karp(g);
    if (mm.size != n) throw Error(ErrorCode::decomposition_failure, "regular multigraph has no perfect matching");
    std::vector<VoterId> N(n);
    std::vector<CandidateId> cand(n);
    for (VoterId v = 0; v < n; ++v) {
      const VoterId u = mm.left_mate[v];
      auto it = std::find_if(edges[v].begin(), edges[v].end(), [&](const auto& edge) { return edge.first == u; });
      N[v] = u;
      cand[v] = matched[v][it->second];
      edges[v].erase(it);
      if (!e.in_top_k(u, cand[v], k)) throw Error(ErrorCode::decomposition_failure, "slot condition fails");
    }
    out.N.push_back(std::move(N));
    out.candidate.push_back(std::move(cand));
  }
  return out;
}

bool FlowNetwork::has_edge(int from, int to) const {
  const int size = n() * m();
  if (from < 0 || to < 0 || from >= size || to >= size || from == to) return false;
  const VoterId v = voter_of(from);
  const CandidateId c = candidate_of(from);
  if (v == voter_of(to)) return e_.prefers(v, c, candidate_of(to));
  return c == candidate_of(to);
}

bool FlowNetwork::is_sideways(int from, int to) const {
  return voter_of(from) != voter_of(to) && candidate_of(from) == candidate_of(to);
}

FlowNetwork build_flow_network(const Election& e) { return FlowNetwork(e); }

namespace {

class FlowBuilder {
 public:
  FlowBuilder(const Election& e, CandidateId w, CandidateId c_star) : net_(e) {
    f_.w = w;
    f_.c_star = c_star;
    const int size = e.n() * e.m();
    f_.origination.assign(size, 0);
    f_.absorption.assign(size, 0);
    f_.stage2_receipts.assign(e.n(), 0);
    for (VoterId v = 0; v < e.n(); ++v) f_.origination[net_.node(v, w)] = 1;
  }

  // Sends `amount` through the given nodes, skipping repeated nodes, and
  // absorbs it at the last one.
  void route(const std::vector<int>& path, const Rational& amount) {
    int at = path.front();
    for (std::size_t i = 1; i < path.size(); ++i) {
      if (path[i] == at) continue;
      if (!net_.has_edge(at, path[i])) {
        throw Error(ErrorCode::missing_edge, "no edge from node " + std::to_string(at) + " to " + std::to_string(path[i]));
      }
      f_.flow[{at, path[i]}] += amount;
      at = path[i];
    }
    f_.absorption[at] += amount;
  }

  const FlowNetwork& net() const { return net_; }
  Circulation& result() { return f_; }

 private:
  FlowNetwork net_;
  Circulation f_;
};

}  // namespace

Circulation construct_distortion_flow(const Election& e, int k, CandidateId w, CandidateId c_star,
                                      const Matching& matching) {
  if (c_star == w || c_star < 0 || c_star >= e.m()) throw Error(ErrorCode::invalid_argument, "c* must differ from w");
  const MatchingDecomposition dec = decompose_regular_matchings(e, k, w, matching);
  const int n = e.n();
  const Rational unit(1, k);
  FlowBuilder fb(e, w, c_star);
  const FlowNetwork& net = fb.net();

  std::vector<Rational> remaining(n, 1);
  for (int i = 0; i < k; ++i) {
    for (VoterId v = 0; v < n; ++v) {
      const VoterId u = dec.N[i][v];
      const CandidateId c = dec.candidate[i][v];
      if (c != e.top(u) && e.in_top_k(u, c_star, k)) continue;
      fb.route({net.node(v, w), net.node(v, c), net.node(u, c), net.node(u, c_star)}, unit);
      remaining[v] -= unit;
      fb.result().stage1_total += unit;
    }
  }

  VoterSet v_star;
  for (VoterId v = 0; v < n; ++v) {
    if (e.prefers_weak(v, w, c_star)) v_star.push_back(v);
  }
  const int apv = k_approval_scores(e, k)[c_star];
  if (static_cast<long long>(v_star.size()) * k < apv) {
    throw Error(ErrorCode::coalition_bound_violated, "fewer than apv_k(c*)/k voters weakly prefer w to c*");
  }
  if (!v_star.empty()) {
    const Rational share_count(static_cast<long>(v_star.size()));
    for (VoterId v = 0; v < n; ++v) {
      if (sgn(remaining[v]) == 0) continue;
      const Rational share = remaining[v] / share_count;
      for (VoterId target : v_star) {
        fb.route({net.node(v, w), net.node(target, w), net.node(target, c_star)}, share);
        fb.result().stage2_receipts[target] += share;
      }
    }
  }
  return std::move(fb.result());
}

FlowCostReport verify_flow(const FlowNetwork& net, const Circulation& f, int k) {
  const int n = net.n();
  const int m = net.m();
  const int size = n * m;
  if (static_cast<int>(f.origination.size()) != size || static_cast<int>(f.absorption.size()) != size) {
    throw Error(ErrorCode::dimension_mismatch, "circulation does not match the network");
  }
  auto node_name = [&](int node) {
    return "(" + std::to_string(net.voter_of(node) + 1) + "," + std::to_string(net.candidate_of(node) + 1) + ")";
  };
  std::vector<Rational> balance(size);
  for (const auto& [edge, amount] : f.flow) {
    if (!net.has_edge(edge.first, edge.second)) {
      throw Error(ErrorCode::missing_edge, "flow on non-edge " + node_name(edge.first) + "->" + node_name(edge.second));
    }
    if (sgn(amount) < 0) throw Error(ErrorCode::conservation_violated, "negative flow out of " + node_name(edge.first));
    balance[edge.first] -= amount;
    balance[edge.second] += amount;
  }
  for (int node = 0; node < size; ++node) {
    const Rational expected_origin = net.candidate_of(node) == f.w ? 1 : 0;
    if (f.origination[node] != expected_origin) {
      throw Error(ErrorCode::conservation_violated, "wrong origination at " + node_name(node));
    }
    if (sgn(f.absorption[node]) < 0 || (sgn(f.absorption[node]) != 0 && net.candidate_of(node) != f.c_star)) {
      throw Error(ErrorCode::conservation_violated, "absorption outside c* at " + node_name(node));
    }
    if (balance[node] + f.origination[node] != f.absorption[node]) {
      throw Error(ErrorCode::conservation_violated, "conservation fails at " + node_name(node));
    }
  }

  FlowCostReport report;
  report.per_voter.assign(n, 0);
  report.sideways_received.assign(n, 0);
  report.sideways_sent.assign(n, 0);
  for (VoterId v = 0; v < n; ++v) report.per_voter[v] = f.absorption[net.node(v, f.c_star)];
  for (const auto& [edge, amount] : f.flow) {
    if (!net.is_sideways(edge.first, edge.second) || net.candidate_of(edge.first) == f.c_star) continue;
    report.sideways_sent[net.voter_of(edge.first)] += amount;
    report.sideways_received[net.voter_of(edge.second)] += amount;
  }
  const Rational bound = 2 * k + 1;
  report.max_cost = 0;
  for (VoterId v = 0; v < n; ++v) {
    report.per_voter[v] += report.sideways_sent[v] + report.sideways_received[v];
    if (report.per_voter[v] > report.max_cost) report.max_cost = report.per_voter[v];
  }
  for (VoterId v = 0; v < n; ++v) {
    if (report.per_voter[v] > bound) {
      throw Error(ErrorCode::cost_exceeded,
                  "voter " + std::to_string(v + 1) + " has cost " + to_string(report.per_voter[v]));
    }
  }
  return report;
}

}  // namespace vetocore
