#include <doctest.h>

#include "oracles.hpp"
#include "vetocore/core.hpp"
#include "vetocore/error.hpp"
#include "vetocore/generators.hpp"

using namespace vetocore;

TEST_SUITE("core") {
  TEST_CASE("domination graph shape") {
    const Election e = gen_remark_example().election;
    const DominationGraph g = build_domination_graph(e, 1, 1);
    CHECK(g.voter_copies.size() == 12);
    CHECK(g.candidate_copies.size() == 12);
    // a > b > c voters see only b; b > a > c voters see everything.
    for (std::size_t u = 0; u < g.voter_copies.size(); ++u) {
      const VoterId v = g.voter_copies[u].first;
      for (int r : g.adjacency[u]) {
        CHECK(e.prefers_weak(v, 1, g.candidate_copies[r].first));
      }
      CHECK(g.adjacency[u].size() == (v < 7 ? 5u : 12u));
    }
  }

  TEST_CASE("remark election, k=1, w=b has a Hall violator on the a-copies") {
    const Election e = gen_remark_example().election;
    const DominationGraph g = build_domination_graph(e, 1, 1);
    const auto result = maximum_bipartite_matching(g);
    REQUIRE(std::holds_alternative<HallViolator>(result));
    const HallViolator& hv = std::get<HallViolator>(result);
    CHECK(is_hall_violator(g, hv));
    for (int r : hv.candidate_copies) CHECK(g.candidate_copies[r].first == 0);
    CHECK(hv.candidate_copies.size() == 7);
    CHECK(hv.neighborhood.size() == 5);

    const CoreCertificate cert = core_membership(e, 1, 1);
    REQUIRE_FALSE(cert.is_member());
    const auto& block = std::get<BlockingCertificate>(cert.witness);
    CHECK(block.S == CandidateSet{0});
    CHECK(block.T == VoterSet{0, 1, 2, 3, 4, 5, 6});
    CHECK(verify_blocking(e, 1, 1, block));
  }

  TEST_CASE("remark cores") {
    const Election e = gen_remark_example().election;
    CHECK(compute_core_set(e, 1) == CandidateSet{0});
    CHECK(compute_core_set(e, 2) == CandidateSet{0});
    CHECK(compute_core_set(e, 3) == CandidateSet{0, 1});
  }

  TEST_CASE("tampered certificates are rejected") {
    const Election e = gen_remark_example().election;
    CoreCertificate member = core_membership(e, 1, 0);
    REQUIRE(member.is_member());
    CHECK(verify_certificate(e, 1, member));
    auto& pairs = std::get<Matching>(member.witness).pairs;
    pairs[0] = pairs[1];
    CHECK_FALSE(verify_certificate(e, 1, member));

    // Five of the seven a-voters with S = {a} reach exactly n k, which does not block.
    CoreCertificate blocked = core_membership(e, 1, 1);
    REQUIRE_FALSE(blocked.is_member());
    CHECK(verify_certificate(e, 1, blocked));
    std::get<BlockingCertificate>(blocked.witness).T.resize(5);
    CHECK_FALSE(verify_certificate(e, 1, blocked));
  }

  TEST_CASE("every certificate verifies on random elections") {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      const Election e = gen_random(1 + static_cast<int>(seed % 6), 2 + static_cast<int>(seed % 4), seed);
      for (int k = 1; k <= e.m(); ++k) {
        const auto serial = core_certificates(e, k, Execution::serial);
        const auto parallel = core_certificates(e, k, Execution::parallel);
        REQUIRE(serial.size() == static_cast<std::size_t>(e.m()));
        for (CandidateId c = 0; c < e.m(); ++c) {
          CHECK(serial[c].candidate == c);
          CHECK(verify_certificate(e, k, serial[c]));
          CHECK(serial[c].is_member() == parallel[c].is_member());
          if (serial[c].is_member()) {
            CHECK(is_perfect_matching(build_domination_graph(e, k, c), std::get<Matching>(serial[c].witness)));
          }
        }
        CHECK(compute_core_set(e, k) == oracle::core_by_blocking(e, k));
        CHECK_FALSE(compute_core_set(e, k).empty());
      }
    }
  }

  TEST_CASE("matching core equals blocking oracle on every small profile") {
    for (int n = 1; n <= 3; ++n) {
      oracle::for_each_profile(n, 3, [&](const Election& e) {
        for (int k = 1; k <= 3; ++k) CHECK(compute_core_set(e, k, Execution::serial) == oracle::core_by_blocking(e, k));
      });
    }
  }

  TEST_CASE("pq membership agrees with the k-approval core") {
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
      const Election e = gen_random(1 + static_cast<int>(seed % 5), 2 + static_cast<int>(seed % 3), seed);
      for (int k = 1; k <= e.m(); ++k) {
        const WeightVectors wts = k_approval_weights(e, k);
        for (CandidateId c = 0; c < e.m(); ++c) {
          const PqMembership pq = pq_core_membership(e, wts, c);
          CHECK(pq.member == core_membership(e, k, c).is_member());
          CHECK(pq.member == !oracle::pq_blocked(e, wts.p, wts.q, c));
          if (pq.member) {
            CHECK(pq.flow_value == 1);
          } else {
            CHECK(pq.flow_value < 1);
            CHECK(verify_pq_blocking(e, wts, c, pq.witness));
          }
        }
      }
    }
  }

  TEST_CASE("proportional veto core is AVC_m and contains AVC_{m-1}") {
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
      const Election e = gen_random(1 + static_cast<int>(seed % 5), 2 + static_cast<int>(seed % 3), seed);
      const WeightVectors prop = proportional_weights(e);
      CandidateSet pvc;
      for (CandidateId c = 0; c < e.m(); ++c) {
        if (pq_core_membership(e, prop, c).member) pvc.push_back(c);
      }
      CHECK(pvc == compute_core_set(e, e.m()));
      const CandidateSet below = compute_core_set(e, e.m() - 1);
      CHECK(std::includes(pvc.begin(), pvc.end(), below.begin(), below.end()));
    }
  }

  TEST_CASE("weights are validated") {
    const Election e = gen_random(2, 2, 0);
    CHECK_NOTHROW(validate_weights(e, proportional_weights(e)));
    CHECK_THROWS_AS(validate_weights(e, WeightVectors{{1, 0}, {Rational(1, 2)}}), Error);
    CHECK_THROWS_AS(validate_weights(e, WeightVectors{{Rational(1, 2), Rational(1, 3)}, {Rational(1, 2), Rational(1, 2)}}),
                    Error);
    CHECK_THROWS_AS(validate_weights(e, WeightVectors{{2, -1}, {Rational(1, 2), Rational(1, 2)}}), Error);
  }

  TEST_CASE("k out of range") {
    const Election e = gen_random(2, 3, 0);
    CHECK_THROWS_AS(core_membership(e, 0, 0), Error);
    CHECK_THROWS_AS(compute_core_set(e, 4), Error);
  }
}
