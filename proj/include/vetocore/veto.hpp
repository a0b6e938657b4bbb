#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "vetocore/election.hpp"
#include "vetocore/execution.hpp"

namespace vetocore {

/// n*k voter ids; each voter appears exactly k times.
using VetoOrder = std::vector<VoterId>;

struct ScoreState {
  std::vector<bool> eligible;
  std::vector<int> score;

  friend bool operator==(const ScoreState&, const ScoreState&) = default;
};

struct VetoEvent {
  enum class Kind { eliminate, decrement };
  Kind kind;
  CandidateId candidate;
  int veto_index;  // 0-based position in the veto order

  friend bool operator==(const VetoEvent&, const VetoEvent&) = default;
};

struct VetoTrace {
  ScoreState initial;
  std::vector<VetoEvent> events;
  ScoreState final_state;
};

struct VetoRun {
  CandidateSet winners;
  VetoTrace trace;
};

void validate_veto_order(const Election& e, int k, std::span<const VoterId> order);

/// k-ApprovalVeto under a fixed veto order. Each veto vote walks up from the
/// voter's bottom eligible candidate, eliminating zero-score candidates, and
/// decrements the first one with positive score. A candidate decremented to
/// zero stays eligible until a later veto passes over it.
VetoRun run_k_approval_veto(const Election& e, int k, std::span<const VoterId> order);

/// Applies the events of `trace` to its initial state.
ScoreState replay_trace(const VetoTrace& trace);

/// One line per event; identical runs give identical bytes.
std::string format_trace(const VetoTrace& trace);

/// Single line of 1-based voter indices.
VetoOrder parse_veto_order(std::string_view text);
std::string write_veto_order(std::span<const VoterId> order);

/// (nk)! / (k!)^n, saturated at UINT64_MAX.
std::uint64_t count_distinct_orders(int n, int k);

inline constexpr std::uint64_t kDefaultOrderCap = 100000;

struct Exhaustive {
  std::uint64_t cap = kDefaultOrderCap;
};
struct Sample {
  std::uint64_t count;
  std::uint64_t seed;
};
using EnumerationBudget = std::variant<Exhaustive, Sample>;

/// Union of winners over veto orders. Exhaustive mode is exact and throws
/// Error(budget_exceeded) when the number of distinct orders exceeds the cap;
/// sample mode returns a subset of the exact union.
CandidateSet enumerate_possible_winners(const Election& e, int k, const EnumerationBudget& budget,
                                        Execution exec = Execution::parallel);

}  // namespace vetocore
