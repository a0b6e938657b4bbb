#include "vetocore/veto.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <set>

#include "vetocore/error.hpp"
#include "vetocore/random.hpp"
#include "vetocore/rational.hpp"

namespace vetocore {

namespace {

ScoreState initial_state(const Election& e, int k) {
  return ScoreState{std::vector<bool>(e.m(), true), k_approval_scores(e, k)};
}

// One pass of the inner while-loop plus the decrement. Total remaining score
// before veto i is n*k - i > 0 and eliminated candidates all have score 0, so
// the walk always stops at an eligible candidate with positive score.
template <class OnEvent>
void apply_veto(const Election& e, ScoreState& state, VoterId v, int veto_index, OnEvent&& on_event) {
  const Ranking& r = e.ranking(v);
  for (auto it = r.rbegin(); it != r.rend(); ++it) {
    CandidateId c = *it;
    if (!state.eligible[c]) continue;
    if (state.score[c] == 0) {
      state.eligible[c] = false;
      on_event(VetoEvent{VetoEvent::Kind::eliminate, c, veto_index});
      continue;
    }
    --state.score[c];
    on_event(VetoEvent{VetoEvent::Kind::decrement, c, veto_index});
    return;
  }
  throw Error(ErrorCode::invalid_order, "veto vote found no candidate with positive score");
}

CandidateSet eligible_set(const ScoreState& state) {
  CandidateSet out;
  for (std::size_t c = 0; c < state.eligible.size(); ++c) {
    if (state.eligible[c]) out.push_back(static_cast<CandidateId>(c));
  }
  return out;
}

}  // namespace

void validate_veto_order(const Election& e, int k, std::span<const VoterId> order) {
  check_k(e, k);
  if (order.size() != static_cast<std::size_t>(e.n()) * static_cast<std::size_t>(k)) {
    throw Error(ErrorCode::invalid_order, "veto order must have n*k = " + std::to_string(e.n() * k) + " entries");
  }
  std::vector<int> seen(e.n(), 0);
  for (VoterId v : order) {
    if (v < 0 || v >= e.n()) throw Error(ErrorCode::invalid_order, "voter index out of range in veto order");
    ++seen[v];
  }
  for (int v = 0; v < e.n(); ++v) {
    if (seen[v] != k) {
      throw Error(ErrorCode::invalid_order,
                  "voter " + std::to_string(v + 1) + " appears " + std::to_string(seen[v]) + " times, expected k");
    }
  }
}

VetoRun run_k_approval_veto(const Election& e, int k, std::span<const VoterId> order) {
  validate_veto_order(e, k, order);
  VetoRun run;
  run.trace.initial = initial_state(e, k);
  ScoreState state = run.trace.initial;
  for (std::size_t i = 0; i < order.size(); ++i) {
    apply_veto(e, state, order[i], static_cast<int>(i),
               [&](const VetoEvent& ev) { run.trace.events.push_back(ev); });
  }
  run.winners = eligible_set(state);
  run.trace.final_state = std::move(state);
  return run;
}

ScoreState replay_trace(const VetoTrace& trace) {
  ScoreState state = trace.initial;
  for (const VetoEvent& ev : trace.events) {
    if (ev.kind == VetoEvent::Kind::eliminate) {
      state.eligible[ev.candidate] = false;
    } else {
      --state.score[ev.candidate];
    }
  }
  return state;
}

std::string format_trace(const VetoTrace& trace) {
  std::string out;
  for (const VetoEvent& ev : trace.events) {
    out += std::to_string(ev.veto_index + 1);
    out += ev.kind == VetoEvent::Kind::eliminate ? " eliminate " : " decrement ";
    out += std::to_string(ev.candidate + 1);
    out += '\n';
  }
  return out;
}

VetoOrder parse_veto_order(std::string_view text) {
  VetoOrder order;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    std::size_t start = i;
    while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    if (i == start) break;
    int v = 0;
    auto [ptr, ec] = std::from_chars(text.data() + start, text.data() + i, v);
    if (ec != std::errc() || ptr != text.data() + i || v < 1) {
      throw Error(ErrorCode::invalid_order, "bad voter index '" + std::string(text.substr(start, i - start)) + "'");
    }
    order.push_back(v - 1);
  }
  return order;
}

std::string write_veto_order(std::span<const VoterId> order) {
  std::string out;
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(order[i] + 1);
  }
  out += '\n';
  return out;
}

std::uint64_t count_distinct_orders(int n, int k) {
  // Product of C(jk, k) for j = 1..n, i.e. choose the slots of each voter in turn.
  mpz_class total = 1;
  for (int j = 1; j <= n; ++j) {
    mpz_class binom;
    mpz_bin_uiui(binom.get_mpz_t(), static_cast<unsigned long>(j) * k, static_cast<unsigned long>(k));
    total *= binom;
    if (total > mpz_class(std::to_string(UINT64_MAX))) return UINT64_MAX;
  }
  return std::stoull(total.get_str());
}

namespace {

// Depth-first search over veto sequences. Two prefixes reaching the same
// (eligible set, scores, remaining vetoes per voter) have identical futures,
// so each such state is expanded once.
class WinnerSearch {
 public:
  explicit WinnerSearch(const Election& e) : e_(e), winners_(e.m(), false) {}

  void explore(ScoreState state, std::vector<int> remaining, int done) {
    std::vector<int> key;
    key.reserve(state.score.size() + remaining.size());
    for (std::size_t c = 0; c < state.score.size(); ++c) key.push_back(state.eligible[c] ? state.score[c] : -1);
    key.insert(key.end(), remaining.begin(), remaining.end());
    if (!seen_.insert(std::move(key)).second) return;

    bool leaf = true;
    for (VoterId v = 0; v < e_.n(); ++v) {
      if (remaining[v] == 0) continue;
      leaf = false;
      ScoreState next = state;
      apply_veto(e_, next, v, done, [](const VetoEvent&) {});
      --remaining[v];
      explore(std::move(next), remaining, done + 1);
      ++remaining[v];
    }
    if (leaf) {
      for (std::size_t c = 0; c < state.eligible.size(); ++c) {
        if (state.eligible[c]) winners_[c] = true;
      }
    }
  }

  const std::vector<bool>& winners() const { return winners_; }

 private:
  const Election& e_;
  std::vector<bool> winners_;
  std::set<std::vector<int>> seen_;
};

CandidateSet to_set(const std::vector<bool>& mask) {
  CandidateSet out;
  for (std::size_t c = 0; c < mask.size(); ++c) {
    if (mask[c]) out.push_back(static_cast<CandidateId>(c));
  }
  return out;
}

}  // namespace

CandidateSet enumerate_possible_winners(const Election& e, int k, const EnumerationBudget& budget, Execution exec) {
  check_k(e, k);
  const ScoreState start = initial_state(e, k);

  if (const auto* sample = std::get_if<Sample>(&budget)) {
    std::mt19937_64 rng(sample->seed);
    VetoOrder order;
    for (VoterId v = 0; v < e.n(); ++v) order.insert(order.end(), k, v);
    std::vector<bool> winners(e.m(), false);
    for (std::uint64_t s = 0; s < sample->count; ++s) {
      portable_shuffle(order, rng);
      for (CandidateId c : run_k_approval_veto(e, k, order).winners) winners[c] = true;
    }
    return to_set(winners);
  }

  const auto& exhaustive = std::get<Exhaustive>(budget);
  const std::uint64_t orders = count_distinct_orders(e.n(), k);
  if (orders > exhaustive.cap) {
    throw Error(ErrorCode::budget_exceeded, std::to_string(orders) + " distinct veto orders exceed the cap of " +
                                                std::to_string(exhaustive.cap));
  }

  const std::vector<int> remaining(e.n(), k);
  if (exec == Execution::serial) {
    WinnerSearch search(e);
    search.explore(start, remaining, 0);
    return to_set(search.winners());
  }

  // Fan out on the first veto vote; each subtree keeps its own memo table and
  // the result is the union, independent of scheduling.
  std::vector<std::vector<bool>> partial(e.n());
  for_each_index(static_cast<std::size_t>(e.n()), exec, [&](std::size_t first) {
    WinnerSearch search(e);
    ScoreState next = start;
    apply_veto(e, next, static_cast<VoterId>(first), 0, [](const VetoEvent&) {});
    std::vector<int> rem = remaining;
    --rem[first];
    search.explore(std::move(next), std::move(rem), 1);
    partial[first] = search.winners();
  });
  std::vector<bool> winners(e.m(), false);
  for (const auto& mask : partial) {
    for (std::size_t c = 0; c < mask.size(); ++c) {
      if (mask[c]) winners[c] = true;
    }
  }
  return to_set(winners);
}

}  // namespace vetocore
