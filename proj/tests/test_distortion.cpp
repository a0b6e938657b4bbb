#include <doctest.h>

#include "oracles.hpp"
#include "vetocore/core.hpp"
#include "vetocore/distortion.hpp"
#include "vetocore/error.hpp"
#include "vetocore/generators.hpp"

using namespace vetocore;

namespace {

DistanceAssignment matrix(const std::vector<std::vector<Rational>>& rows) {
  DistanceAssignment x(static_cast<int>(rows.size()), static_cast<int>(rows[0].size()));
  for (std::size_t v = 0; v < rows.size(); ++v) {
    for (std::size_t c = 0; c < rows[v].size(); ++c) x.at(static_cast<int>(v), static_cast<int>(c)) = rows[v][c];
  }
  return x;
}

const std::vector<Objective> kObjectives{Utilitarian{}, Percentile{Rational(1, 2)}, Percentile{Rational(2, 3)},
                                         Egalitarian{}};

// The finite witness must be consistent and realize the reported ratio.
void check_witness(const Election& e, const DistortionResult& r) {
  REQUIRE(r.witness.has_value());
  const DistanceAssignment& x = *r.witness;
  CHECK(check_assignment(e, x).empty());
  CHECK(oracle::is_pseudo_metric(extend_assignment(x).d));
  const Rational cw = social_cost(e, x, r.candidate, r.objective);
  const Rational cs = social_cost(e, x, r.optimal_candidate, r.objective);
  CHECK(r.value >= 1);
  if (std::holds_alternative<Utilitarian>(r.objective)) {
    CHECK(cs == 1);
    CHECK(cw == r.value);
  } else {
    CHECK(cs <= 1);
    CHECK(cw >= r.value);
    if (cs > 0) CHECK(cw / cs <= r.value);
  }
}

}  // namespace

TEST_SUITE("distortion") {
  TEST_CASE("check_assignment") {
    const Election e = gen_percentile_cyclic(Rational(1, 2), Rational(1, 10)).election;
    CHECK(check_assignment(e, DistanceAssignment(3, 3)).empty());
    const Rational d(1, 150);
    const DistanceAssignment table =
        matrix({{10, 10 + d, 10 + 2 * d}, {5, 1 + d, 1 + 2 * d}, {3, 3 + d, 1 + 2 * d}});
    CHECK(check_assignment(e, table).empty());
    CHECK(*gen_percentile_cyclic(Rational(1, 2), Rational(1, 10)).witness == table);

    DistanceAssignment inverted = table;
    inverted.at(0, 0) = 11;
    const std::vector<Violation> bad = check_assignment(e, inverted);
    REQUIRE_FALSE(bad.empty());
    CHECK(bad[0] == Violation{Violation::Kind::consistency, 0, -1, 0, 1});

    DistanceAssignment negative = table;
    negative.at(2, 1) = -1;
    CHECK(check_assignment(e, negative)[0].kind == Violation::Kind::negative);
    CHECK_THROWS_AS(check_assignment(e, DistanceAssignment(2, 3)), Error);
  }

  TEST_CASE("quadruple violations are reported with indices") {
    const Election e(2, {Ranking{0, 1}, Ranking{0, 1}});
    const std::vector<Violation> bad = check_assignment(e, matrix({{0, 5}, {0, 1}}));
    REQUIRE(bad.size() == 1);
    CHECK(bad[0] == Violation{Violation::Kind::quadruple, 0, 1, 1, 0});
  }

  TEST_CASE("extension to a pseudo-metric") {
    const DistanceAssignment x = matrix({{2, 0}, {1, 1}});
    const PseudoMetric pm = extend_assignment(x);
    CHECK(pm.candidates(0, 1) == 2);
    CHECK(pm.voters(0, 1) == 1);
    CHECK(oracle::is_pseudo_metric(pm.d));
    for (const auto& row : extend_assignment(DistanceAssignment(2, 3)).d) {
      for (const Rational& d : row) CHECK(d == 0);
    }
    CHECK_THROWS_AS(extend_assignment(matrix({{0, 5}, {0, 1}})), Error);
    CHECK_THROWS_AS(extend_assignment(matrix({{-1, 0}})), Error);
  }

  TEST_CASE("extension keeps valid assignments on random witnesses") {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      const Election e = gen_random(1 + static_cast<int>(seed % 4), 2 + static_cast<int>(seed % 3), seed);
      const DistortionResult r = distortion_egalitarian(e, static_cast<int>(seed % e.m()));
      if (r.unbounded) continue;
      const PseudoMetric pm = extend_assignment(*r.witness);
      CHECK(oracle::is_pseudo_metric(pm.d));
      for (VoterId v = 0; v < e.n(); ++v) {
        for (CandidateId c = 0; c < e.m(); ++c) CHECK(pm.voter_candidate(v, c) == r.witness->at(v, c));
      }
    }
  }

  TEST_CASE("social costs") {
    const NamedInstance lb = gen_util_lower_bound(1, 2, 0);
    REQUIRE(lb.witness);
    CHECK(*lb.witness == matrix({{2, 0}, {1, 1}}));
    CHECK(social_cost(lb.election, *lb.witness, 0, Utilitarian{}) == 3);
    CHECK(social_cost(lb.election, *lb.witness, 1, Utilitarian{}) == 1);

    const NamedInstance cyc = gen_percentile_cyclic(Rational(1, 2), Rational(1, 10));
    const Rational d(1, 150);
    CHECK(social_cost(cyc.election, *cyc.witness, 2, Percentile{Rational(1, 2)}) == 1 + 2 * d);
    CHECK(social_cost(cyc.election, *cyc.witness, 0, Percentile{Rational(1, 2)}) == 5);
    for (CandidateId c = 0; c < 3; ++c) {
      const Rational egal = social_cost(cyc.election, *cyc.witness, c, Egalitarian{});
      const Rational pct = social_cost(cyc.election, *cyc.witness, c, Percentile{Rational(1, 2)});
      const Rational low = social_cost(cyc.election, *cyc.witness, c, Percentile{0});
      CHECK(egal >= pct);
      CHECK(pct >= low);
    }
    CHECK(percentile_index(Rational(1, 2), 3) == 2);
    CHECK(percentile_index(0, 4) == 1);
    CHECK_THROWS_AS(percentile_index(1, 4), Error);
    CHECK_THROWS_AS(percentile_index(-1, 4), Error);
  }

  TEST_CASE("lower-bound instance reaches 3") {
    const Election e = gen_util_lower_bound(1, 2, 0).election;
    const DistortionResult r = distortion_utilitarian(e, 0);
    REQUIRE_FALSE(r.unbounded);
    CHECK(r.value == 3);
    check_witness(e, r);
  }

  TEST_CASE("single candidate and unanimous loser") {
    const Election lone(1, {Ranking{0}, Ranking{0}});
    for (const Objective& obj : kObjectives) {
      const DistortionResult r = distortion(lone, 0, obj);
      CHECK_FALSE(r.unbounded);
      CHECK(r.value == 1);
    }
    const Election e(2, {Ranking{0, 1}, Ranking{0, 1}});
    CHECK(pareto_dominator(e, 1) == 0);
    CHECK_FALSE(pareto_dominator(e, 0).has_value());
    for (const Objective& obj : kObjectives) {
      CHECK(distortion(e, 1, obj).unbounded);
      CHECK_FALSE(distortion(e, 0, obj).unbounded);
    }
    CHECK_THROWS_AS(distortion_utilitarian(e, 2), Error);
  }

  TEST_CASE("remark election values") {
    const Election e = gen_remark_example().election;
    CHECK(pareto_dominator(e, 2) == 0);
    CHECK_FALSE(pareto_dominator(e, 0));
    CHECK_FALSE(pareto_dominator(e, 1));
    const DistortionResult a = distortion_utilitarian(e, 0);
    const DistortionResult b = distortion_utilitarian(e, 1);
    CHECK(a.value == Rational(17, 7));
    CHECK(b.value == Rational(19, 5));
    CHECK(distortion_utilitarian(e, 2).unbounded);
    check_witness(e, a);
    check_witness(e, b);
  }

  TEST_CASE("witnesses on random elections") {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
      const Election e = gen_random(1 + static_cast<int>(seed % 4), 2 + static_cast<int>(seed % 3), seed);
      for (CandidateId w = 0; w < e.m(); ++w) {
        for (const Objective& obj : kObjectives) {
          const DistortionResult r = distortion(e, w, obj);
          if (!r.unbounded) check_witness(e, r);
        }
      }
    }
  }

  TEST_CASE("lower bound from a coarse grid search") {
    const std::vector<Rational> grid{0, 1, 2, 3};
    const std::vector<Rational> small{0, 1, 2};
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
      const Election e = seed % 2 ? gen_random(2, 3, seed) : gen_random(3, 2, seed);
      for (CandidateId w = 0; w < e.m(); ++w) {
        for (const Objective& obj : kObjectives) {
          const Rational bound = oracle::grid_distortion(e, w, obj, grid);
          const DistortionResult r = distortion(e, w, obj);
          if (bound < 0) {
            CHECK(r.unbounded);
          } else if (!r.unbounded) {
            CHECK(r.value >= bound);
          }
        }
      }
    }
    const Election e = gen_random(3, 3, 7);
    for (CandidateId w = 0; w < 3; ++w) {
      const Rational bound = oracle::grid_distortion(e, w, Utilitarian{}, small);
      const DistortionResult r = distortion_utilitarian(e, w);
      CHECK((bound < 0 ? r.unbounded : (r.unbounded || r.value >= bound)));
    }
  }

  TEST_CASE("serial and parallel paths agree") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const Election e = gen_random(2 + static_cast<int>(seed % 4), 2 + static_cast<int>(seed % 3), seed);
      for (const Objective& obj : kObjectives) {
        DistortionOptions serial;
        serial.exec = Execution::serial;
        const DistortionResult s = distortion(e, 0, obj, serial);
        const DistortionResult p = distortion(e, 0, obj);
        CHECK(s.unbounded == p.unbounded);
        CHECK(s.optimal_candidate == p.optimal_candidate);
        if (!s.unbounded) {
          CHECK(s.value == p.value);
          CHECK(s.log.size() == p.log.size());
        }
      }
    }
  }

  TEST_CASE("floating engine tracks the exact engine") {
    DistortionOptions flt;
    flt.engine = LpEngine::floating;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const Election e = gen_random(2 + static_cast<int>(seed % 4), 2 + static_cast<int>(seed % 3), seed);
      for (const Objective& obj : kObjectives) {
        const DistortionResult x = distortion(e, 0, obj);
        const DistortionResult f = distortion(e, 0, obj, flt);
        CHECK(x.unbounded == f.unbounded);
        if (!x.unbounded) CHECK(std::abs(Rational(x.value - f.value).get_d()) < 1e-4);
      }
    }
  }

  TEST_CASE("every subproblem is logged unless stopped early") {
    const Election e = gen_random(4, 3, 1);
    DistortionOptions all;
    all.stop_on_unbounded = false;
    const DistortionResult r = distortion_percentile(e, 0, Rational(1, 2), all);
    CHECK(r.log.size() == percentile_subproblem_count(4, 3, Rational(1, 2)));
    CHECK(percentile_subproblem_count(4, 3, Rational(1, 2)) == 6 * 4 * 2);
    CHECK(distortion_egalitarian(e, 0, all).log.size() == 8);
    CHECK(distortion_utilitarian(e, 0, all).log.size() == 2);

    DistortionOptions tight;
    tight.subset_cap = 10;
    CHECK_THROWS_AS(distortion_percentile(e, 0, Rational(1, 2), tight), Error);
  }

  TEST_CASE("metric properties on witnesses") {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
      const Election e = gen_random(2 + static_cast<int>(seed % 4), 2 + static_cast<int>(seed % 3), seed);
      for (CandidateId w = 0; w < e.m(); ++w) {
        const DistortionResult r = distortion_utilitarian(e, w);
        if (r.unbounded) continue;
        const PseudoMetric pm = extend_assignment(*r.witness);

        // Preference-count bound between w and the optimum.
        const CandidateId cs = r.optimal_candidate;
        int prefer_w = 0;
        for (VoterId v = 0; v < e.n(); ++v) prefer_w += e.prefers(v, w, cs);
        if (prefer_w > 0) {
          Rational bound(2 * e.n(), prefer_w);
          bound.canonicalize();
          CHECK(r.value <= bound - 1);
        }

        for (const Objective& obj : kObjectives) {
          if (std::holds_alternative<Utilitarian>(obj)) continue;
          for (CandidateId c = 0; c < e.m(); ++c) {
            for (CandidateId d = 0; d < e.m(); ++d) {
              CHECK(social_cost(e, *r.witness, c, obj) <= social_cost(e, *r.witness, d, obj) + pm.candidates(c, d));
            }
          }
        }

        // Half-distance bound for candidates weakly above another voter's top.
        for (VoterId v = 0; v < e.n(); ++v) {
          for (VoterId u = 0; u < e.n(); ++u) {
            for (CandidateId c = 0; c < e.m(); ++c) {
              if (!e.prefers_weak(v, c, e.top(u))) continue;
              for (CandidateId d = 0; d < e.m(); ++d) {
                CHECK(2 * (pm.voter_candidate(v, d) + pm.voter_candidate(u, d)) >= pm.candidates(c, d));
              }
            }
          }
        }
      }
    }
  }
}
