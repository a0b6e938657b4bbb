#pragma once

#include <utility>
#include <variant>
#include <vector>

#include "vetocore/election.hpp"
#include "vetocore/execution.hpp"
#include "vetocore/rational.hpp"

namespace vetocore {

/// k copies of each voter on one side, apv_k(c) copies of each candidate c on
/// the other; a voter copy sees a candidate copy iff w is weakly preferred to
/// that candidate by the voter. Both sides have n*k nodes.
struct DominationGraph {
  CandidateId w = 0;
  int k = 0;
  std::vector<std::pair<VoterId, int>> voter_copies;          // (voter, copy index)
  std::vector<std::pair<CandidateId, int>> candidate_copies;  // (candidate, copy index)
  std::vector<std::vector<int>> adjacency;                    // voter copy -> candidate copies
};

DominationGraph build_domination_graph(const Election& e, int k, CandidateId w);

struct MatchedPair {
  VoterId voter;
  int voter_copy;
  CandidateId candidate;
  int candidate_copy;

  friend bool operator==(const MatchedPair&, const MatchedPair&) = default;
};

/// Perfect matching of a domination graph, one entry per voter copy, ordered
/// by (voter, voter_copy).
struct Matching {
  std::vector<MatchedPair> pairs;
};

/// Candidate copies (indices into DominationGraph::candidate_copies) whose
/// neighborhood is strictly smaller than the set itself.
struct HallViolator {
  std::vector<int> candidate_copies;
  std::vector<int> neighborhood;
};

std::variant<Matching, HallViolator> maximum_bipartite_matching(const DominationGraph& g);

/// Every voter copy matched, candidate copies used at most once, all pairs are edges.
bool is_perfect_matching(const DominationGraph& g, const Matching& matching);
bool is_hall_violator(const DominationGraph& g, const HallViolator& violator);

/// Coalition T and witness set S with S above w for every voter of T and
/// |T|/n > 1 - apv_k(S)/(nk).
struct BlockingCertificate {
  VoterSet T;
  CandidateSet S;
};

bool verify_blocking(const Election& e, int k, CandidateId w, const BlockingCertificate& cert);

struct CoreCertificate {
  CandidateId candidate = 0;
  std::variant<Matching, BlockingCertificate> witness;

  bool is_member() const { return std::holds_alternative<Matching>(witness); }
};

CoreCertificate core_membership(const Election& e, int k, CandidateId w);

/// Re-checks a certificate from scratch against the election.
bool verify_certificate(const Election& e, int k, const CoreCertificate& cert);

/// Membership decided per candidate; candidates are independent, so the
/// parallel path runs them concurrently.
std::vector<CoreCertificate> core_certificates(const Election& e, int k, Execution exec = Execution::parallel);
CandidateSet compute_core_set(const Election& e, int k, Execution exec = Execution::parallel);

/// Voter weights p and candidate weights q, both non-negative and summing to 1.
struct WeightVectors {
  std::vector<Rational> p;
  std::vector<Rational> q;
};

void validate_weights(const Election& e, const WeightVectors& weights);

/// p(v) = 1/n, q(c) = apv_k(c)/(nk).
WeightVectors k_approval_weights(const Election& e, int k);
/// p(v) = 1/n, q(c) = 1/m.
WeightVectors proportional_weights(const Election& e);

struct PqMembership {
  bool member = false;
  Rational flow_value;
  BlockingCertificate witness;  // meaningful only when !member
};

/// Max-flow on source -> voter (p) -> candidate weakly below w (uncapacitated)
/// -> sink (q). Member iff the flow saturates at 1; otherwise the minimum cut
/// yields T with p(T) > 1 - q(S).
PqMembership pq_core_membership(const Election& e, const WeightVectors& weights, CandidateId w);

bool verify_pq_blocking(const Election& e, const WeightVectors& weights, CandidateId w,
                        const BlockingCertificate& cert);

}  // namespace vetocore
