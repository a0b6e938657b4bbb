#include "vetocore/generators.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <sstream>

#include "vetocore/error.hpp"
#include "vetocore/minority.hpp"
#include "vetocore/random.hpp"

namespace vetocore {

namespace {

std::string set_string(const std::vector<int>& items) {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < items.size(); ++i) os << (i ? "," : "") << items[i] + 1;
  os << '}';
  return os.str();
}

std::string objective_string(const Objective& obj) {
  if (const auto* p = std::get_if<Percentile>(&obj)) return "percentile(" + to_string(p->alpha) + ")";
  return objective_name(obj);
}

CandidateSet range_set(int from, int to) {
  CandidateSet out(to - from);
  std::iota(out.begin(), out.end(), from);
  return out;
}

void require_witness(const Election& e, const DistanceAssignment& x) {
  if (!check_assignment(e, x).empty()) throw Error(ErrorCode::bad_params, "parameters give an inconsistent witness");
}

}  // namespace

std::string describe(const Expectation& expectation) {
  return std::visit(
      [](const auto& x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, CoreContains>) {
          return set_string(x.candidates) + " within AVC_" + std::to_string(x.k);
        } else if constexpr (std::is_same_v<T, CoreEquals>) {
          return "AVC_" + std::to_string(x.k) + " = " + set_string(x.candidates);
        } else if constexpr (std::is_same_v<T, CoreExcludes>) {
          return set_string(x.candidates) + " disjoint from AVC_" + std::to_string(x.k);
        } else if constexpr (std::is_same_v<T, CoreWithin>) {
          return "AVC_" + std::to_string(x.k) + " within " + set_string(x.candidates);
        } else if constexpr (std::is_same_v<T, DistortionAtLeast>) {
          return objective_string(x.objective) + " distortion of " + std::to_string(x.candidate + 1) +
                 " >= " + to_string(x.bound);
        } else if constexpr (std::is_same_v<T, PercentileUnboundedOnCore>) {
          return "percentile(" + to_string(x.alpha) + ") distortion unbounded on AVC_" + std::to_string(x.k);
        } else if constexpr (std::is_same_v<T, ProtectionEquals>) {
          std::ostringstream os;
          os << "protection = (";
          for (std::size_t i = 0; i < x.levels.size(); ++i) os << (i ? "," : "") << x.levels[i];
          os << ')';
          return os.str();
        } else {
          return set_string(x.certificate.T) + " " + std::to_string(x.k) + "-blocks " + std::to_string(x.w + 1) +
                 " with " + set_string(x.certificate.S);
        }
      },
      expectation);
}

bool check_expectation(const Election& e, const Expectation& expectation, const DistortionOptions& opts) {
  return std::visit(
      [&](const auto& x) -> bool {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, CoreContains>) {
          const CandidateSet core = compute_core_set(e, x.k, opts.exec);
          return std::includes(core.begin(), core.end(), x.candidates.begin(), x.candidates.end());
        } else if constexpr (std::is_same_v<T, CoreEquals>) {
          return compute_core_set(e, x.k, opts.exec) == x.candidates;
        } else if constexpr (std::is_same_v<T, CoreExcludes>) {
          const CandidateSet core = compute_core_set(e, x.k, opts.exec);
          return std::none_of(x.candidates.begin(), x.candidates.end(),
                              [&](CandidateId c) { return std::binary_search(core.begin(), core.end(), c); });
        } else if constexpr (std::is_same_v<T, CoreWithin>) {
          const CandidateSet core = compute_core_set(e, x.k, opts.exec);
          return std::includes(x.candidates.begin(), x.candidates.end(), core.begin(), core.end());
        } else if constexpr (std::is_same_v<T, DistortionAtLeast>) {
          const DistortionResult r = distortion(e, x.candidate, x.objective, opts);
          return r.unbounded || r.value >= x.bound;
        } else if constexpr (std::is_same_v<T, PercentileUnboundedOnCore>) {
          for (CandidateId w : compute_core_set(e, x.k, opts.exec)) {
            if (!distortion_percentile(e, w, x.alpha, opts).unbounded) return false;
          }
          return true;
        } else if constexpr (std::is_same_v<T, ProtectionEquals>) {
          std::vector<int> levels;
          for (const Protection& p : protection_report(e)) levels.push_back(p.level);
          return levels == x.levels;
        } else {
          return verify_blocking(e, x.k, x.w, x.certificate);
        }
      },
      expectation);
}

NamedInstance gen_util_lower_bound(int k, int m, const Rational& delta) {
  if (k < 1 || k >= m) throw Error(ErrorCode::bad_params, "need 1 <= k < m");
  if (delta < 0) throw Error(ErrorCode::bad_params, "delta must be non-negative");
  const int n = k + 1;
  std::vector<Ranking> rankings(n);
  for (int i = 0; i < k; ++i) {
    Ranking& r = rankings[i];
    r.push_back(k);
    for (int j = 0; j < k; ++j) {
      if (j != i) r.push_back(j);
    }
    r.push_back(i);
  }
  for (int j = 0; j <= k; ++j) rankings[k].push_back(j);
  for (Ranking& r : rankings) {
    for (int b = k + 1; b < m; ++b) r.push_back(b);
  }

  NamedInstance inst{"util-lb", Election(m, std::move(rankings)), std::nullopt, {}};
  DistanceAssignment x(n, m);
  for (int i = 0; i < k; ++i) {
    x.at(i, k) = 2 * delta;
    for (int j = 0; j < k; ++j) x.at(i, j) = 2;
    x.at(i, i) += delta;
    x.at(k, i) = 1;
  }
  x.at(k, k) = 1 + delta;
  // B is unspecified beyond lying below A; stack it above every other distance.
  for (VoterId v = 0; v < n; ++v) {
    for (int b = k + 1; b < m; ++b) x.at(v, b) = 2 + delta + (b - k);
  }
  require_witness(inst.election, x);
  inst.witness = std::move(x);

  const Rational bound = Rational(2 * std::min(k + 1, m) - 1) / (1 + 2 * n * delta);
  inst.expectations.push_back(CoreContains{k, range_set(0, k + 1)});
  inst.expectations.push_back(DistortionAtLeast{Utilitarian{}, 0, bound});
  return inst;
}

NamedInstance gen_percentile_unbounded(int k, const Rational& alpha) {
  if (k < 2 || alpha < Rational(1, 2) || alpha >= Rational(k, k + 1)) {
    throw Error(ErrorCode::bad_params, "need k >= 2 and 1/2 <= alpha < k/(k+1)");
  }
  int n = 1;
  for (;; n += 2) {
    const Rational an = alpha * n;
    Rational limit(n * k, k + 1);
    limit.canonicalize();
    if (!is_integer(an) && Rational(ceil(an)) < limit) break;
  }
  const int ell = static_cast<int>(ceil(alpha * n).get_si());
  const CandidateId c_star = k;
  std::vector<Ranking> rankings;
  for (VoterId v = 0; v < n; ++v) {
    Ranking r = range_set(0, k);
    if (v < n - ell) {
      r.push_back(c_star);
    } else {
      r.insert(r.begin(), c_star);
    }
    rankings.push_back(std::move(r));
  }

  NamedInstance inst{"percentile-unbounded", Election(k + 1, std::move(rankings)), std::nullopt, {}};
  DistanceAssignment x(n, k + 1);
  for (VoterId v = 0; v < n; ++v) {
    const bool in_t = v < n - ell;
    for (CandidateId c = 0; c < k; ++c) x.at(v, c) = in_t ? 0 : 1;
    x.at(v, c_star) = in_t ? 1 : 0;
  }
  require_witness(inst.election, x);
  inst.witness = std::move(x);

  inst.expectations.push_back(CoreExcludes{k, {c_star}});
  inst.expectations.push_back(CoreWithin{k, range_set(0, k)});
  inst.expectations.push_back(Blocks{k, c_star, BlockingCertificate{range_set(0, n - ell), range_set(0, k)}});
  inst.expectations.push_back(PercentileUnboundedOnCore{k, alpha});
  return inst;
}

NamedInstance gen_percentile_cyclic(const Rational& alpha, const Rational& epsilon) {
  if (alpha < Rational(1, 2) || alpha >= 1 || epsilon <= 0) {
    throw Error(ErrorCode::bad_params, "need 1/2 <= alpha < 1 and epsilon > 0");
  }
  int m = 1;
  while (m - floor(alpha * m) != 2) ++m;
  const Rational delta = epsilon / (5 * m);
  std::vector<Ranking> rankings(m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) rankings[i].push_back((i + j) % m);
  }

  NamedInstance inst{"percentile-cyclic", Election(m, std::move(rankings)), std::nullopt, {}};
  DistanceAssignment x(m, m);
  for (int j = 0; j < m; ++j) x.at(0, j) = 10 + delta * j;
  for (int i = 1; i < m; ++i) {
    for (int j = 0; j < m; ++j) x.at(i, j) = (j >= i ? 1 : 3) + delta * j;
  }
  if (m > 1) x.at(1, 0) = 5;
  require_witness(inst.election, x);
  inst.witness = std::move(x);

  inst.expectations.push_back(DistortionAtLeast{Percentile{alpha}, 0, 5 / (1 + (m - 1) * delta)});
  return inst;
}

NamedInstance gen_remark_example() {
  std::vector<Ranking> rankings(7, Ranking{0, 1, 2});
  rankings.insert(rankings.end(), 5, Ranking{1, 0, 2});
  NamedInstance inst{"remark", Election(3, std::move(rankings), {"a", "b", "c"}), std::nullopt, {}};
  inst.expectations.push_back(CoreEquals{1, {0}});
  inst.expectations.push_back(CoreEquals{2, {0}});
  inst.expectations.push_back(CoreEquals{3, {0, 1}});
  inst.expectations.push_back(ProtectionEquals{{3, 3, 1}});
  return inst;
}

Election gen_random(int n, int m, std::uint64_t seed) {
  if (n < 1 || m < 1) throw Error(ErrorCode::bad_params, "need n, m >= 1");
  std::mt19937_64 rng(seed);
  std::vector<Ranking> rankings(n);
  for (Ranking& r : rankings) {
    r.resize(m);
    std::iota(r.begin(), r.end(), 0);
    portable_shuffle(r, rng);
  }
  return Election(m, std::move(rankings));
}

}  // namespace vetocore
