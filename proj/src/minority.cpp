#include "vetocore/minority.hpp"

#include <algorithm>
#include <map>

#include "vetocore/error.hpp"

namespace vetocore {

std::vector<SolidVeto> enumerate_solid_vetoes(const Election& e) {
  std::map<std::pair<std::size_t, CandidateSet>, VoterSet> found;
  for (VoterId v = 0; v < e.n(); ++v) {
    const Ranking& r = e.ranking(v);
    CandidateSet suffix;
    for (auto it = r.rbegin(); it != r.rend(); ++it) {
      suffix.insert(std::upper_bound(suffix.begin(), suffix.end(), *it), *it);
      found[{suffix.size(), suffix}].push_back(v);
    }
  }
  std::vector<SolidVeto> out;
  out.reserve(found.size());
  for (auto& [key, voters] : found) out.push_back(SolidVeto{key.second, std::move(voters)});
  return out;
}

bool satisfies_mutual_minority(const Election& e, CandidateId c, int l) {
  if (l < 1 || l > e.m() + 1) {
    throw Error(ErrorCode::l_out_of_range, "l=" + std::to_string(l) + " outside [1, m+1]");
  }
  for (const SolidVeto& sv : enumerate_solid_vetoes(e)) {
    if (!std::binary_search(sv.S.begin(), sv.S.end(), c)) continue;
    // |T|/n > |S|/l
    if (static_cast<long long>(sv.T.size()) * l > static_cast<long long>(e.n()) * static_cast<long long>(sv.S.size())) return false;
  }
  return true;
}

Protection minority_protection(const Election& e, CandidateId c) {
  Protection out;
  out.candidate = c;
  // S = C with T = V is always present and gives exactly m, so the minimum
  // never exceeds m and the clamp in the definition is implicit.
  long long best = -1;
  for (SolidVeto& sv : enumerate_solid_vetoes(e)) {
    if (!std::binary_search(sv.S.begin(), sv.S.end(), c)) continue;
    const long long bound = static_cast<long long>(e.n()) * static_cast<long long>(sv.S.size()) /
                            static_cast<long long>(sv.T.size());
    if (best < 0 || bound < best) {
      best = bound;
      out.witness = std::move(sv);
    }
  }
  out.level = static_cast<int>(best);
  return out;
}

std::vector<Protection> protection_report(const Election& e) {
  std::vector<Protection> out;
  for (CandidateId c = 0; c < e.m(); ++c) out.push_back(minority_protection(e, c));
  return out;
}

int brute_force_protection_oracle(const Election& e, CandidateId c) {
  if (e.n() > 10 || e.m() > 5) throw Error(ErrorCode::too_large, "oracle limited to n <= 10, m <= 5");
  const int n = e.n();
  const int m = e.m();
  // Collect every (|T|, |S|) from coalitions T solidly vetoing S with c in S.
  std::vector<std::pair<int, int>> vetoes;
  for (unsigned s_mask = 1; s_mask < (1u << m); ++s_mask) {
    if (!(s_mask >> c & 1u)) continue;
    for (unsigned t_mask = 0; t_mask < (1u << n); ++t_mask) {
      bool solid = true;
      for (VoterId v = 0; v < n && solid; ++v) {
        if (!(t_mask >> v & 1u)) continue;
        for (CandidateId a = 0; a < m && solid; ++a) {
          if (s_mask >> a & 1u) continue;
          for (CandidateId b = 0; b < m && solid; ++b) {
            if ((s_mask >> b & 1u) && !e.prefers(v, a, b)) solid = false;
          }
        }
      }
      if (solid) vetoes.emplace_back(__builtin_popcount(t_mask), __builtin_popcount(s_mask));
    }
  }
  for (int l = m; l >= 1; --l) {
    bool ok = std::all_of(vetoes.begin(), vetoes.end(),
                          [&](const auto& ts) { return ts.first * l <= n * ts.second; });
    if (ok) return l;
  }
  return 1;
}

}  // namespace vetocore
