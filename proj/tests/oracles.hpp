#pragma once

// Brute-force reference computations written straight from the definitions.
// None of them call into the library's algorithms; they only read rankings.

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <vector>

#include "vetocore/distortion.hpp"
#include "vetocore/election.hpp"

namespace oracle {

using vetocore::CandidateId;
using vetocore::CandidateSet;
using vetocore::Election;
using vetocore::Ranking;
using vetocore::Rational;
using vetocore::VoterId;

inline int rank_of(const Election& e, VoterId v, CandidateId c) {
  const Ranking& r = e.ranking(v);
  return static_cast<int>(std::find(r.begin(), r.end(), c) - r.begin());
}

inline std::vector<int> approval(const Election& e, int k) {
  std::vector<int> s(e.m(), 0);
  for (VoterId v = 0; v < e.n(); ++v) {
    for (int j = 0; j < k; ++j) ++s[e.ranking(v)[j]];
  }
  return s;
}

/// Calls f on every election with n voters over m candidates.
inline void for_each_profile(int n, int m, const std::function<void(const Election&)>& f) {
  std::vector<Ranking> perms;
  Ranking r(m);
  std::iota(r.begin(), r.end(), 0);
  do perms.push_back(r);
  while (std::next_permutation(r.begin(), r.end()));
  std::vector<int> idx(n, 0);
  for (;;) {
    std::vector<Ranking> rankings;
    for (int i : idx) rankings.push_back(perms[i]);
    f(Election(m, rankings));
    int i = n - 1;
    while (i >= 0 && idx[i] == static_cast<int>(perms.size()) - 1) idx[i--] = 0;
    if (i < 0) return;
    ++idx[i];
  }
}

/// Some T, S with S above w for all of T and |T| k + apv_k(S) > n k.
inline bool k_blocked(const Election& e, int k, CandidateId w) {
  const int n = e.n();
  const int m = e.m();
  const std::vector<int> apv = approval(e, k);
  for (unsigned s = 1; s < (1u << m); ++s) {
    if (s >> w & 1u) continue;
    int apv_s = 0;
    for (int c = 0; c < m; ++c) {
      if (s >> c & 1u) apv_s += apv[c];
    }
    // The largest T for this S is every voter ranking all of S above w.
    int t = 0;
    for (VoterId v = 0; v < n; ++v) {
      bool all = true;
      for (int c = 0; c < m; ++c) {
        if ((s >> c & 1u) && rank_of(e, v, c) > rank_of(e, v, w)) all = false;
      }
      t += all;
    }
    if (t * k + apv_s > n * k) return true;
  }
  return false;
}

inline CandidateSet core_by_blocking(const Election& e, int k) {
  CandidateSet out;
  for (CandidateId c = 0; c < e.m(); ++c) {
    if (!k_blocked(e, k, c)) out.push_back(c);
  }
  return out;
}

/// Algorithm 1 as printed: the while loop strips zero-score bottoms, then the
/// bottom eligible candidate loses a point.
inline CandidateSet run_algorithm1(const Election& e, int k, const std::vector<VoterId>& order) {
  std::set<CandidateId> W;
  for (CandidateId c = 0; c < e.m(); ++c) W.insert(c);
  std::vector<int> score = approval(e, k);
  auto bottom = [&](VoterId v) {
    CandidateId best = -1;
    for (CandidateId c : W) {
      if (best < 0 || rank_of(e, v, c) > rank_of(e, v, best)) best = c;
    }
    return best;
  };
  for (VoterId v : order) {
    while (score[bottom(v)] == 0) W.erase(bottom(v));
    --score[bottom(v)];
  }
  return CandidateSet(W.begin(), W.end());
}

/// Union of winners over every distinct veto order.
inline CandidateSet all_order_winners(const Election& e, int k) {
  std::set<CandidateId> winners;
  std::vector<VoterId> order;
  for (VoterId v = 0; v < e.n(); ++v) order.insert(order.end(), k, v);
  do {
    for (CandidateId c : run_algorithm1(e, k, order)) winners.insert(c);
  } while (std::next_permutation(order.begin(), order.end()));
  return CandidateSet(winners.begin(), winners.end());
}

/// Some T, S with S above w on T and p(T) > 1 - q(S).
inline bool pq_blocked(const Election& e, const std::vector<Rational>& p, const std::vector<Rational>& q,
                       CandidateId w) {
  const int m = e.m();
  for (unsigned s = 1; s < (1u << m); ++s) {
    if (s >> w & 1u) continue;
    Rational qs = 0, pt = 0;
    for (int c = 0; c < m; ++c) {
      if (s >> c & 1u) qs += q[c];
    }
    for (VoterId v = 0; v < e.n(); ++v) {
      bool all = true;
      for (int c = 0; c < m; ++c) {
        if ((s >> c & 1u) && rank_of(e, v, c) > rank_of(e, v, w)) all = false;
      }
      if (all) pt += p[v];
    }
    if (pt > 1 - qs) return true;
  }
  return false;
}

/// Triangle inequality, symmetry and zero diagonal on a full distance matrix.
inline bool is_pseudo_metric(const std::vector<std::vector<Rational>>& d) {
  const std::size_t size = d.size();
  for (std::size_t i = 0; i < size; ++i) {
    if (d[i][i] != 0) return false;
    for (std::size_t j = 0; j < size; ++j) {
      if (d[i][j] != d[j][i] || d[i][j] < 0) return false;
      for (std::size_t k = 0; k < size; ++k) {
        if (d[i][j] > d[i][k] + d[k][j]) return false;
      }
    }
  }
  return true;
}

inline Rational column_cost(const vetocore::DistanceAssignment& x, CandidateId c, const vetocore::Objective& obj) {
  std::vector<Rational> col;
  for (VoterId v = 0; v < x.n(); ++v) col.push_back(x.at(v, c));
  std::sort(col.begin(), col.end());
  if (std::holds_alternative<vetocore::Utilitarian>(obj)) return std::accumulate(col.begin(), col.end(), Rational(0));
  if (const auto* p = std::get_if<vetocore::Percentile>(&obj)) {
    const int r = static_cast<int>(vetocore::floor(p->alpha * x.n() + 1).get_si());
    return col[r - 1];
  }
  return col.back();
}

/// Largest cost(w)/min_c cost(c) over assignments with entries in `grid` that
/// are consistent with e and metric. Returns -1 if some grid point makes the
/// ratio infinite.
inline Rational grid_distortion(const Election& e, CandidateId w, const vetocore::Objective& obj,
                                const std::vector<Rational>& grid) {
  const int cells = e.n() * e.m();
  std::vector<int> idx(cells, 0);
  Rational best = 0;
  for (;;) {
    vetocore::DistanceAssignment x(e.n(), e.m());
    for (int i = 0; i < cells; ++i) x.at(i / e.m(), i % e.m()) = grid[idx[i]];
    bool ok = true;
    for (VoterId v = 0; v < e.n() && ok; ++v) {
      for (CandidateId a = 0; a < e.m() && ok; ++a) {
        for (CandidateId b = 0; b < e.m() && ok; ++b) {
          if (rank_of(e, v, a) < rank_of(e, v, b) && x.at(v, a) > x.at(v, b)) ok = false;
          for (VoterId u = 0; u < e.n() && ok; ++u) {
            if (x.at(v, a) > x.at(v, b) + x.at(u, b) + x.at(u, a)) ok = false;
          }
        }
      }
    }
    if (ok) {
      const Rational cw = column_cost(x, w, obj);
      Rational lowest = cw;
      for (CandidateId c = 0; c < e.m(); ++c) lowest = std::min(lowest, column_cost(x, c, obj));
      if (lowest == 0 && cw > 0) return -1;
      if (lowest > 0 && cw / lowest > best) best = cw / lowest;
    }
    int i = cells - 1;
    while (i >= 0 && idx[i] == static_cast<int>(grid.size()) - 1) idx[i--] = 0;
    if (i < 0) return best;
    ++idx[i];
  }
}

}  // namespace oracle
