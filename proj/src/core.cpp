#include "vetocore/core.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "vetocore/error.hpp"
#include "vetocore/matching.hpp"
#include "vetocore/maxflow.hpp"

namespace vetocore {

DominationGraph build_domination_graph(const Election& e, int k, CandidateId w) {
  const std::vector<int> apv = k_approval_scores(e, k);
  DominationGraph g;
  g.w = w;
  g.k = k;
  std::vector<std::vector<int>> copies_of(e.m());
  for (CandidateId c = 0; c < e.m(); ++c) {
    for (int i = 0; i < apv[c]; ++i) {
      copies_of[c].push_back(static_cast<int>(g.candidate_copies.size()));
      g.candidate_copies.emplace_back(c, i);
    }
  }
  for (VoterId v = 0; v < e.n(); ++v) {
    // All copies of a voter share one neighborhood.
    std::vector<int> neighbors;
    for (CandidateId c = 0; c < e.m(); ++c) {
      if (e.prefers_weak(v, w, c)) neighbors.insert(neighbors.end(), copies_of[c].begin(), copies_of[c].end());
    }
    for (int i = 0; i < k; ++i) {
      g.voter_copies.emplace_back(v, i);
      g.adjacency.push_back(neighbors);
    }
  }
  return g;
}

namespace {

BipartiteGraph as_bipartite(const DominationGraph& g) {
  return BipartiteGraph{static_cast<int>(g.voter_copies.size()), static_cast<int>(g.candidate_copies.size()),
                        g.adjacency};
}

}  // namespace

std::variant<Matching, HallViolator> maximum_bipartite_matching(const DominationGraph& g) {
  const BipartiteGraph bg = as_bipartite(g);
  const MaximumMatching mm = hopcroft_karp(bg);
  if (mm.size == bg.left_size && mm.size == bg.right_size) {
    Matching out;
    for (int u = 0; u < bg.left_size; ++u) {
      auto [v, vc] = g.voter_copies[u];
      auto [c, cc] = g.candidate_copies[mm.left_mate[u]];
      out.pairs.push_back(MatchedPair{v, vc, c, cc});
    }
    return out;
  }
  HallSet hs = hall_violator(bg, mm);
  return HallViolator{std::move(hs.right_nodes), std::move(hs.neighborhood)};
}

bool is_perfect_matching(const DominationGraph& g, const Matching& matching) {
  if (matching.pairs.size() != g.voter_copies.size() || g.voter_copies.size() != g.candidate_copies.size()) {
    return false;
  }
  std::map<std::pair<int, int>, int> voter_index, candidate_index;
  for (std::size_t i = 0; i < g.voter_copies.size(); ++i) voter_index[g.voter_copies[i]] = static_cast<int>(i);
  for (std::size_t i = 0; i < g.candidate_copies.size(); ++i) {
    candidate_index[g.candidate_copies[i]] = static_cast<int>(i);
  }
  std::set<int> used_voters, used_candidates;
  for (const MatchedPair& p : matching.pairs) {
    auto vi = voter_index.find({p.voter, p.voter_copy});
    auto ci = candidate_index.find({p.candidate, p.candidate_copy});
    if (vi == voter_index.end() || ci == candidate_index.end()) return false;
    const auto& adj = g.adjacency[vi->second];
    if (std::find(adj.begin(), adj.end(), ci->second) == adj.end()) return false;
    if (!used_voters.insert(vi->second).second || !used_candidates.insert(ci->second).second) return false;
  }
  return true;
}

bool is_hall_violator(const DominationGraph& g, const HallViolator& violator) {
  std::set<int> members(violator.candidate_copies.begin(), violator.candidate_copies.end());
  std::set<int> neighborhood;
  for (std::size_t u = 0; u < g.adjacency.size(); ++u) {
    for (int r : g.adjacency[u]) {
      if (members.count(r)) {
        neighborhood.insert(static_cast<int>(u));
        break;
      }
    }
  }
  return !members.empty() && neighborhood.size() < members.size();
}

bool verify_blocking(const Election& e, int k, CandidateId w, const BlockingCertificate& cert) {
  const std::vector<int> apv = k_approval_scores(e, k);
  for (VoterId v : cert.T) {
    if (v < 0 || v >= e.n()) return false;
    for (CandidateId c : cert.S) {
      if (c < 0 || c >= e.m() || !e.prefers(v, c, w)) return false;
    }
  }
  long long apv_s = 0;
  for (CandidateId c : cert.S) apv_s += apv[c];
  // |T|/n > 1 - apv_k(S)/(nk)  <=>  |T| k + apv_k(S) > n k
  const long long n = e.n();
  return static_cast<long long>(cert.T.size()) * k + apv_s > n * k;
}

CoreCertificate core_membership(const Election& e, int k, CandidateId w) {
  check_k(e, k);
  const DominationGraph g = build_domination_graph(e, k, w);
  auto result = maximum_bipartite_matching(g);
  if (auto* m = std::get_if<Matching>(&result)) return CoreCertificate{w, std::move(*m)};

  // The violator is closed under copies, so it names whole candidates S; its
  // neighborhood is every copy of the voters outside T, giving
  // k (n - |T|) < apv_k(S).
  const auto& violator = std::get<HallViolator>(result);
  std::set<CandidateId> s_set;
  for (int r : violator.candidate_copies) s_set.insert(g.candidate_copies[r].first);
  BlockingCertificate cert;
  cert.S.assign(s_set.begin(), s_set.end());
  for (VoterId v = 0; v < e.n(); ++v) {
    bool all_above = std::all_of(cert.S.begin(), cert.S.end(), [&](CandidateId c) { return e.prefers(v, c, w); });
    if (all_above) cert.T.push_back(v);
  }
  return CoreCertificate{w, std::move(cert)};
}

bool verify_certificate(const Election& e, int k, const CoreCertificate& cert) {
  if (const auto* m = std::get_if<Matching>(&cert.witness)) {
    return is_perfect_matching(build_domination_graph(e, k, cert.candidate), *m);
  }
  return verify_blocking(e, k, cert.candidate, std::get<BlockingCertificate>(cert.witness));
}

std::vector<CoreCertificate> core_certificates(const Election& e, int k, Execution exec) {
  check_k(e, k);
  std::vector<CoreCertificate> out(e.m());
  for_each_index(static_cast<std::size_t>(e.m()), exec, [&](std::size_t c) {
    out[c] = core_membership(e, k, static_cast<CandidateId>(c));
  });
  return out;
}

CandidateSet compute_core_set(const Election& e, int k, Execution exec) {
  CandidateSet core;
  for (const CoreCertificate& cert : core_certificates(e, k, exec)) {
    if (cert.is_member()) core.push_back(cert.candidate);
  }
  return core;
}

void validate_weights(const Election& e, const WeightVectors& weights) {
  if (static_cast<int>(weights.p.size()) != e.n() || static_cast<int>(weights.q.size()) != e.m()) {
    throw Error(ErrorCode::invalid_weights, "weight vectors must have n and m entries");
  }
  Rational sum_p = 0, sum_q = 0;
  for (const Rational& x : weights.p) {
    if (x < 0) throw Error(ErrorCode::invalid_weights, "negative voter weight");
    sum_p += x;
  }
  for (const Rational& x : weights.q) {
    if (x < 0) throw Error(ErrorCode::invalid_weights, "negative candidate weight");
    sum_q += x;
  }
  if (sum_p != 1 || sum_q != 1) throw Error(ErrorCode::invalid_weights, "weights must sum to 1");
}

WeightVectors k_approval_weights(const Election& e, int k) {
  const std::vector<int> apv = k_approval_scores(e, k);
  WeightVectors w;
  w.p.assign(e.n(), Rational(1, e.n()));
  for (int score : apv) {
    Rational q(score, e.n() * k);
    q.canonicalize();
    w.q.push_back(q);
  }
  return w;
}

WeightVectors proportional_weights(const Election& e) {
  WeightVectors w;
  w.p.assign(e.n(), Rational(1, e.n()));
  w.q.assign(e.m(), Rational(1, e.m()));
  return w;
}

PqMembership pq_core_membership(const Election& e, const WeightVectors& weights, CandidateId w) {
  validate_weights(e, weights);
  const int source = e.n() + e.m();
  const int sink = source + 1;
  MaxFlow<Rational> flow(sink + 1);
  for (VoterId v = 0; v < e.n(); ++v) flow.add_edge(source, v, weights.p[v]);
  for (VoterId v = 0; v < e.n(); ++v) {
    for (CandidateId c = 0; c < e.m(); ++c) {
      if (e.prefers_weak(v, w, c)) flow.add_edge(v, e.n() + c, std::nullopt);
    }
  }
  for (CandidateId c = 0; c < e.m(); ++c) flow.add_edge(e.n() + c, sink, weights.q[c]);

  PqMembership out;
  out.flow_value = flow.run(source, sink);
  out.member = out.flow_value == 1;
  if (!out.member) {
    // Cut capacity p(V \ T) + q(C \ S) < 1 with T = voters on the source side,
    // S = candidates on the sink side; uncapacitated edges cannot cross the
    // cut, so every voter of T ranks all of S above w.
    const std::vector<bool> side = flow.source_side(source);
    for (VoterId v = 0; v < e.n(); ++v) {
      if (side[v]) out.witness.T.push_back(v);
    }
    for (CandidateId c = 0; c < e.m(); ++c) {
      if (!side[e.n() + c]) out.witness.S.push_back(c);
    }
  }
  return out;
}

bool verify_pq_blocking(const Election& e, const WeightVectors& weights, CandidateId w,
                        const BlockingCertificate& cert) {
  Rational p_t = 0, q_s = 0;
  for (VoterId v : cert.T) {
    p_t += weights.p[v];
    for (CandidateId c : cert.S) {
      if (!e.prefers(v, c, w)) return false;
    }
  }
  for (CandidateId c : cert.S) q_s += weights.q[c];
  return p_t > 1 - q_s;
}

}  // namespace vetocore
