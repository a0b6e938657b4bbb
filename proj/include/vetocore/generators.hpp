#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "vetocore/core.hpp"
#include "vetocore/distortion.hpp"
#include "vetocore/election.hpp"
#include "vetocore/rational.hpp"

namespace vetocore {

struct CoreContains {
  int k;
  CandidateSet candidates;
};
struct CoreEquals {
  int k;
  CandidateSet candidates;
};
struct CoreExcludes {
  int k;
  CandidateSet candidates;
};
/// AVC_k is a subset of `candidates`.
struct CoreWithin {
  int k;
  CandidateSet candidates;
};
struct DistortionAtLeast {
  Objective objective;
  CandidateId candidate;
  Rational bound;
};
/// Every member of AVC_k has unbounded alpha-percentile distortion.
struct PercentileUnboundedOnCore {
  int k;
  Rational alpha;
};
struct ProtectionEquals {
  std::vector<int> levels;
};
struct Blocks {
  int k;
  CandidateId w;
  BlockingCertificate certificate;
};

using Expectation = std::variant<CoreContains, CoreEquals, CoreExcludes, CoreWithin, DistortionAtLeast,
                                 PercentileUnboundedOnCore, ProtectionEquals, Blocks>;

/// Human-readable form with 1-based candidates, e.g. "AVC_2 = {1}".
std::string describe(const Expectation& expectation);

struct NamedInstance {
  std::string family;
  Election election;
  std::optional<DistanceAssignment> witness;
  std::vector<Expectation> expectations;
};

bool check_expectation(const Election& e, const Expectation& expectation, const DistortionOptions& opts = {});

/// Lower-bound family for utilitarian distortion: k+1 voters, A = c_1..c_{k+1}
/// ranked above B = c_{k+2}..c_m, and c_i at the bottom of A for voter i.
/// Throws Error(bad_params) unless 1 <= k < m and the witness is consistent
/// for the given delta >= 0.
NamedInstance gen_util_lower_bound(int k, int m, const Rational& delta);

/// Election on which every core member has unbounded alpha-percentile
/// distortion. Throws Error(bad_params) unless 1/2 <= alpha < k/(k+1).
NamedInstance gen_percentile_unbounded(int k, const Rational& alpha);

/// Cyclic-shift election with n = m voters whose percentile distortion at c_1
/// is at least 5/(1 + (m-1) delta), delta = epsilon/(5m).
/// Throws Error(bad_params) unless 1/2 <= alpha < 1 and epsilon > 0.
NamedInstance gen_percentile_cyclic(const Rational& alpha, const Rational& epsilon);

/// 7 voters a > b > c and 5 voters b > a > c.
NamedInstance gen_remark_example();

/// n independent uniform rankings; identical arguments give identical elections.
Election gen_random(int n, int m, std::uint64_t seed);

}  // namespace vetocore
