#pragma once

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "vetocore/election.hpp"
#include "vetocore/execution.hpp"
#include "vetocore/lp.hpp"
#include "vetocore/rational.hpp"

namespace vetocore {

/// Voter-to-candidate distances, row-major by voter.
class DistanceAssignment {
 public:
  DistanceAssignment() = default;
  DistanceAssignment(int n, int m, const Rational& fill = 0) : n_(n), m_(m), x_(static_cast<std::size_t>(n) * m, fill) {}

  int n() const noexcept { return n_; }
  int m() const noexcept { return m_; }
  Rational& at(VoterId v, CandidateId c) { return x_[static_cast<std::size_t>(v) * m_ + c]; }
  const Rational& at(VoterId v, CandidateId c) const { return x_[static_cast<std::size_t>(v) * m_ + c]; }

  friend bool operator==(const DistanceAssignment&, const DistanceAssignment&) = default;

 private:
  int n_ = 0;
  int m_ = 0;
  std::vector<Rational> x_;
};

struct Violation {
  enum class Kind { negative, consistency, quadruple };
  Kind kind;
  VoterId voter;
  VoterId other_voter;          // quadruple only, else -1
  CandidateId candidate;
  CandidateId other_candidate;  // -1 for negative entries

  friend bool operator==(const Violation&, const Violation&) = default;
};

/// Empty when x is a consistent pseudo-metric restriction for e: non-negative,
/// monotone along each ranking, and satisfying
/// x[v][c] <= x[v][c'] + x[v'][c'] + x[v'][c]. Throws Error(dimension_mismatch).
std::vector<Violation> check_assignment(const Election& e, const DistanceAssignment& x);

/// Distances over V followed by C (candidate c is node n + c).
struct PseudoMetric {
  int n = 0;
  int m = 0;
  std::vector<std::vector<Rational>> d;

  const Rational& voter_candidate(VoterId v, CandidateId c) const { return d[v][n + c]; }
  const Rational& candidates(CandidateId a, CandidateId b) const { return d[n + a][n + b]; }
  const Rational& voters(VoterId a, VoterId b) const { return d[a][b]; }
};

/// Shortest-path closure of the complete bipartite graph weighted by x.
/// Throws Error(invalid_assignment) if x is negative somewhere or the closure
/// shortens a direct voter-candidate distance.
PseudoMetric extend_assignment(const DistanceAssignment& x);

struct Utilitarian {};
struct Percentile {
  Rational alpha;
};
struct Egalitarian {};
using Objective = std::variant<Utilitarian, Percentile, Egalitarian>;

const char* objective_name(const Objective& obj);

/// floor(alpha n + 1). Throws Error(invalid_argument) unless 0 <= alpha < 1.
int percentile_index(const Rational& alpha, int n);

Rational social_cost(const Election& e, const DistanceAssignment& x, CandidateId c, const Objective& obj);

/// One linear program of a distortion computation.
struct SubproblemRecord {
  CandidateId c_star = 0;
  VoterSet A;               // percentile: voters held within distance 1 of c_star
  VoterSet B;               // percentile: voters held at distance >= t from w
  VoterId worst_voter = -1; // egalitarian: the maximized voter
  LpStatus status = LpStatus::optimal;
  Rational value;
};

struct DistortionResult {
  Objective objective;
  CandidateId candidate = 0;
  bool unbounded = false;
  Rational value;                              // meaningful when !unbounded
  std::optional<DistanceAssignment> witness;   // present when !unbounded
  CandidateId optimal_candidate = 0;           // the c* attaining the value
  std::vector<SubproblemRecord> log;
};

struct DistortionOptions {
  LpEngine engine = LpEngine::exact;
  Execution exec = Execution::parallel;
  std::uint64_t subset_cap = 100000;
  /// Skip remaining subproblems once one is unbounded.
  bool stop_on_unbounded = true;
};

DistortionResult distortion_utilitarian(const Election& e, CandidateId w, const DistortionOptions& opts = {});

/// Throws Error(subset_budget_exceeded) when C(n, r) C(n, n - r + 1) (m - 1)
/// exceeds opts.subset_cap.
DistortionResult distortion_percentile(const Election& e, CandidateId w, const Rational& alpha,
                                       const DistortionOptions& opts = {});

DistortionResult distortion_egalitarian(const Election& e, CandidateId w, const DistortionOptions& opts = {});

DistortionResult distortion(const Election& e, CandidateId w, const Objective& obj, const DistortionOptions& opts = {});

/// Number of percentile subproblems, saturated at UINT64_MAX.
std::uint64_t percentile_subproblem_count(int n, int m, const Rational& alpha);

/// A candidate preferred to c by every voter, if any.
std::optional<CandidateId> pareto_dominator(const Election& e, CandidateId c);

}  // namespace vetocore
