#pragma once

#include <vector>

#include "vetocore/election.hpp"

namespace vetocore {

/// A candidate set S paired with the largest coalition ranking S below every
/// other candidate, i.e. the voters whose bottom |S| choices are exactly S.
struct SolidVeto {
  CandidateSet S;
  VoterSet T;

  friend bool operator==(const SolidVeto&, const SolidVeto&) = default;
};

/// Every set that is the bottom suffix of at least one ranking, ordered by
/// (|S|, S). At most n*m entries.
std::vector<SolidVeto> enumerate_solid_vetoes(const Election& e);

/// True iff no solidly vetoed S containing c has |T|/n > |S|/l.
/// Throws Error(l_out_of_range) unless 1 <= l <= m + 1.
bool satisfies_mutual_minority(const Election& e, CandidateId c, int l);

struct Protection {
  CandidateId candidate = 0;
  int level = 0;       // largest l whose criterion c satisfies, in [1, m]
  SolidVeto witness;   // a solid veto attaining the minimum
};

/// min(m, min over solid vetoes (S, T) with c in S of floor(n |S| / |T|)).
Protection minority_protection(const Election& e, CandidateId c);
std::vector<Protection> protection_report(const Election& e);

/// Enumerates every (T, S) pair from the definitions; limited to n <= 10 and
/// m <= 5, otherwise throws Error(too_large).
int brute_force_protection_oracle(const Election& e, CandidateId c);

}  // namespace vetocore
