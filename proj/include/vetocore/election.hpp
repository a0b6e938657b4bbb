#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace vetocore {

using CandidateId = int;
using VoterId = int;

/// Candidates best first; always a permutation of [0, m).
using Ranking = std::vector<CandidateId>;

/// Sorted ascending, no duplicates.
using CandidateSet = std::vector<CandidateId>;
using VoterSet = std::vector<VoterId>;

/// n voters with strict total rankings over m candidates. Immutable once built.
class Election {
 public:
  /// Validates every ranking; throws Error(not_a_permutation) or Error(empty_election).
  Election(int num_candidates, std::vector<Ranking> rankings, std::vector<std::string> names = {});

  int n() const noexcept { return static_cast<int>(rankings_.size()); }
  int m() const noexcept { return m_; }

  const Ranking& ranking(VoterId v) const { return rankings_[v]; }
  const std::vector<Ranking>& rankings() const noexcept { return rankings_; }

  /// 0 for the top choice, m-1 for the bottom choice.
  int position(VoterId v, CandidateId c) const { return position_[v][c]; }

  CandidateId top(VoterId v) const { return rankings_[v].front(); }
  CandidateId bottom(VoterId v) const { return rankings_[v].back(); }

  /// a strictly above b in v's ranking.
  bool prefers(VoterId v, CandidateId a, CandidateId b) const { return position_[v][a] < position_[v][b]; }
  /// a == b or a strictly above b.
  bool prefers_weak(VoterId v, CandidateId a, CandidateId b) const { return position_[v][a] <= position_[v][b]; }

  bool in_top_k(VoterId v, CandidateId c, int k) const { return position_[v][c] < k; }
  CandidateSet top_k(VoterId v, int k) const;

  /// Least preferred member of `subset` for voter v. Throws Error(empty_subset).
  CandidateId bottom_of(VoterId v, std::span<const CandidateId> subset) const;
  /// Same, with the subset given as a membership mask over all candidates.
  CandidateId bottom_of(VoterId v, const std::vector<bool>& members) const;

  const std::vector<std::string>& names() const noexcept { return names_; }
  std::string label(CandidateId c) const;

  friend bool operator==(const Election& a, const Election& b) {
    return a.m_ == b.m_ && a.rankings_ == b.rankings_;
  }

 private:
  int m_;
  std::vector<Ranking> rankings_;
  std::vector<std::vector<int>> position_;
  std::vector<std::string> names_;
};

/// Reads the plain-text ballot format: '#' comments, a "n m" header, then one
/// ranking per line (1-based, best first), optionally prefixed with "count:".
Election parse_election(std::string_view text);
Election read_election_file(const std::filesystem::path& path);

/// Canonical form: header plus one line per voter, no count prefixes.
std::string write_election(const Election& e);

/// apv_k(c) for every candidate. Throws Error(k_out_of_range) unless 1 <= k <= m.
std::vector<int> k_approval_scores(const Election& e, int k);
std::vector<int> plurality_scores(const Election& e);

void check_k(const Election& e, int k);

}  // namespace vetocore
