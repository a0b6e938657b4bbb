#include "vetocore/distortion.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <limits>

#include "vetocore/error.hpp"

namespace vetocore {

std::vector<Violation> check_assignment(const Election& e, const DistanceAssignment& x) {
  if (x.n() != e.n() || x.m() != e.m()) {
    throw Error(ErrorCode::dimension_mismatch, "assignment is " + std::to_string(x.n()) + "x" +
                                                   std::to_string(x.m()) + ", election is " + std::to_string(e.n()) +
                                                   "x" + std::to_string(e.m()));
  }
  std::vector<Violation> out;
  const int n = e.n();
  const int m = e.m();
  for (VoterId v = 0; v < n; ++v) {
    for (CandidateId c = 0; c < m; ++c) {
      if (x.at(v, c) < 0) out.push_back({Violation::Kind::negative, v, -1, c, -1});
    }
  }
  for (VoterId v = 0; v < n; ++v) {
    const Ranking& r = e.ranking(v);
    for (int i = 0; i + 1 < m; ++i) {
      if (x.at(v, r[i]) > x.at(v, r[i + 1])) out.push_back({Violation::Kind::consistency, v, -1, r[i], r[i + 1]});
    }
  }
  for (VoterId v = 0; v < n; ++v) {
    for (VoterId u = 0; u < n; ++u) {
      if (u == v) continue;
      for (CandidateId c = 0; c < m; ++c) {
        for (CandidateId d = 0; d < m; ++d) {
          if (d == c) continue;
          if (x.at(v, c) > x.at(v, d) + x.at(u, d) + x.at(u, c)) {
            out.push_back({Violation::Kind::quadruple, v, u, c, d});
          }
        }
      }
    }
  }
  return out;
}

PseudoMetric extend_assignment(const DistanceAssignment& x) {
  const int n = x.n();
  const int m = x.m();
  const int size = n + m;
  PseudoMetric pm;
  pm.n = n;
  pm.m = m;
  pm.d.assign(size, std::vector<Rational>(size));
  std::vector<std::vector<bool>> known(size, std::vector<bool>(size, false));
  for (int i = 0; i < size; ++i) known[i][i] = true;
  for (VoterId v = 0; v < n; ++v) {
    for (CandidateId c = 0; c < m; ++c) {
      if (x.at(v, c) < 0) throw Error(ErrorCode::invalid_assignment, "negative distance");
      pm.d[v][n + c] = pm.d[n + c][v] = x.at(v, c);
      known[v][n + c] = known[n + c][v] = true;
    }
  }
  Rational via;
  for (int k = 0; k < size; ++k) {
    for (int i = 0; i < size; ++i) {
      if (!known[i][k]) continue;
      for (int j = 0; j < size; ++j) {
        if (!known[k][j]) continue;
        via = pm.d[i][k] + pm.d[k][j];
        if (!known[i][j] || via < pm.d[i][j]) {
          pm.d[i][j] = via;
          known[i][j] = true;
        }
      }
    }
  }
  for (VoterId v = 0; v < n; ++v) {
    for (CandidateId c = 0; c < m; ++c) {
      if (pm.d[v][n + c] != x.at(v, c)) {
        throw Error(ErrorCode::invalid_assignment, "voter " + std::to_string(v + 1) + " and candidate " +
                                                       std::to_string(c + 1) + " have a shorter indirect path");
      }
    }
  }
  return pm;
}

const char* objective_name(const Objective& obj) {
  if (std::holds_alternative<Utilitarian>(obj)) return "utilitarian";
  if (std::holds_alternative<Percentile>(obj)) return "percentile";
  return "egalitarian";
}

int percentile_index(const Rational& alpha, int n) {
  if (alpha < 0 || alpha >= 1) throw Error(ErrorCode::invalid_argument, "alpha must lie in [0, 1)");
  return static_cast<int>(floor(alpha * n + 1).get_si());
}

Rational social_cost(const Election& e, const DistanceAssignment& x, CandidateId c, const Objective& obj) {
  std::vector<Rational> column;
  for (VoterId v = 0; v < e.n(); ++v) column.push_back(x.at(v, c));
  if (std::holds_alternative<Utilitarian>(obj)) {
    Rational sum = 0;
    for (const Rational& d : column) sum += d;
    return sum;
  }
  std::sort(column.begin(), column.end());
  if (const auto* p = std::get_if<Percentile>(&obj)) return column[percentile_index(p->alpha, e.n()) - 1];
  return column.back();
}

std::optional<CandidateId> pareto_dominator(const Election& e, CandidateId c) {
  for (CandidateId d = 0; d < e.m(); ++d) {
    if (d == c) continue;
    bool all = true;
    for (VoterId v = 0; v < e.n() && all; ++v) all = e.prefers(v, d, c);
    if (all) return d;
  }
  return std::nullopt;
}

namespace {

int var(const Election& e, VoterId v, CandidateId c) { return v * e.m() + c; }

void check_candidate(const Election& e, CandidateId w) {
  if (w < 0 || w >= e.m()) throw Error(ErrorCode::invalid_argument, "candidate " + std::to_string(w + 1) + " out of range");
}

// Consistency along adjacent ranks, plus the quadruple inequalities that are
// not already implied: those with c' above c for voter v.
std::vector<LinearConstraint> metric_constraints(const Election& e) {
  std::vector<LinearConstraint> out;
  const int n = e.n();
  const int m = e.m();
  for (VoterId v = 0; v < n; ++v) {
    const Ranking& r = e.ranking(v);
    for (int i = 0; i + 1 < m; ++i) {
      out.push_back({{{var(e, v, r[i]), 1}, {var(e, v, r[i + 1]), -1}}, Relation::less_equal, 0});
    }
  }
  for (VoterId v = 0; v < n; ++v) {
    for (VoterId u = 0; u < n; ++u) {
      if (u == v) continue;
      for (CandidateId c = 0; c < m; ++c) {
        for (CandidateId d = 0; d < m; ++d) {
          if (d == c || !e.prefers(v, d, c)) continue;
          out.push_back({{{var(e, v, c), 1}, {var(e, v, d), -1}, {var(e, u, d), -1}, {var(e, u, c), -1}},
                         Relation::less_equal,
                         0});
        }
      }
    }
  }
  return out;
}

struct Job {
  SubproblemRecord record;
  LinearProgram lp;
};

DistanceAssignment assignment_from(const Election& e, const std::vector<Rational>& x) {
  DistanceAssignment out(e.n(), e.m());
  for (VoterId v = 0; v < e.n(); ++v) {
    for (CandidateId c = 0; c < e.m(); ++c) out.at(v, c) = x[var(e, v, c)];
  }
  return out;
}

DistortionResult trivial_result(const Election& e, CandidateId w, const Objective& obj) {
  DistortionResult out;
  out.objective = obj;
  out.candidate = w;
  out.value = 1;
  out.witness = DistanceAssignment(e.n(), e.m(), 1);
  out.optimal_candidate = w;
  return out;
}

// Solves every job and folds to the maximum. With stop_on_unbounded, jobs after
// the first unbounded one (in job order) may be skipped; jobs before it are
// always solved, so the reported c* does not depend on scheduling.
DistortionResult run_jobs(const Election& e, CandidateId w, const Objective& obj, std::vector<Job>& jobs,
                          const DistortionOptions& opts) {
  std::vector<std::optional<LpSolution>> solutions(jobs.size());
  std::atomic<std::size_t> first_unbounded{std::numeric_limits<std::size_t>::max()};
  for_each_index(jobs.size(), opts.exec, [&](std::size_t i) {
    if (opts.stop_on_unbounded && i > first_unbounded.load(std::memory_order_relaxed)) return;
    LpSolution sol = solve_lp(jobs[i].lp, opts.engine);
    if (sol.status == LpStatus::infeasible) {
      throw Error(ErrorCode::infeasible_model, "distortion subproblem infeasible");
    }
    if (sol.status == LpStatus::unbounded) {
      std::size_t seen = first_unbounded.load();
      while (i < seen && !first_unbounded.compare_exchange_weak(seen, i)) {
      }
    }
    solutions[i] = std::move(sol);
  });

  DistortionResult out;
  out.objective = obj;
  out.candidate = w;
  std::optional<std::size_t> best;
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    if (!solutions[i]) continue;
    SubproblemRecord& rec = jobs[i].record;
    rec.status = solutions[i]->status;
    if (rec.status == LpStatus::optimal) rec.value = solutions[i]->value;
    out.log.push_back(rec);
    if (out.unbounded) continue;
    if (rec.status == LpStatus::unbounded) {
      out.unbounded = true;
      out.optimal_candidate = rec.c_star;
      continue;
    }
    if (!best || rec.value > jobs[*best].record.value) best = i;
  }
  if (!out.unbounded) {
    out.value = jobs[*best].record.value;
    out.optimal_candidate = jobs[*best].record.c_star;
    out.witness = assignment_from(e, solutions[*best]->x);
  }
  return out;
}

void for_each_combination(int n, int r, const std::function<void(const VoterSet&)>& f) {
  VoterSet idx(r);
  for (int i = 0; i < r; ++i) idx[i] = i;
  for (;;) {
    f(idx);
    int i = r - 1;
    while (i >= 0 && idx[i] == n - r + i) --i;
    if (i < 0) return;
    ++idx[i];
    for (int j = i + 1; j < r; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace

std::uint64_t percentile_subproblem_count(int n, int m, const Rational& alpha) {
  const int r = percentile_index(alpha, n);
  mpz_class a, b;
  mpz_bin_uiui(a.get_mpz_t(), n, r);
  mpz_bin_uiui(b.get_mpz_t(), n, n - r + 1);
  const mpz_class total = a * b * (m - 1);
  if (total > mpz_class(std::numeric_limits<std::uint64_t>::max())) return std::numeric_limits<std::uint64_t>::max();
  return total.get_ui();
}

DistortionResult distortion_utilitarian(const Election& e, CandidateId w, const DistortionOptions& opts) {
  check_candidate(e, w);
  if (e.m() == 1) return trivial_result(e, w, Utilitarian{});
  const std::vector<LinearConstraint> base = metric_constraints(e);
  std::vector<Job> jobs;
  for (CandidateId cs = 0; cs < e.m(); ++cs) {
    if (cs == w) continue;
    Job job;
    job.record.c_star = cs;
    job.lp.num_vars = e.n() * e.m();
    job.lp.objective.assign(job.lp.num_vars, 0);
    LinearConstraint normalize{{}, Relation::equal, 1};
    for (VoterId v = 0; v < e.n(); ++v) {
      job.lp.objective[var(e, v, w)] = 1;
      normalize.terms.push_back({var(e, v, cs), 1});
    }
    job.lp.constraints = base;
    job.lp.constraints.push_back(std::move(normalize));
    jobs.push_back(std::move(job));
  }
  return run_jobs(e, w, Utilitarian{}, jobs, opts);
}

DistortionResult distortion_percentile(const Election& e, CandidateId w, const Rational& alpha,
                                       const DistortionOptions& opts) {
  check_candidate(e, w);
  const int r = percentile_index(alpha, e.n());
  if (e.m() == 1) return trivial_result(e, w, Percentile{alpha});
  const std::uint64_t count = percentile_subproblem_count(e.n(), e.m(), alpha);
  if (count > opts.subset_cap) {
    throw Error(ErrorCode::subset_budget_exceeded, "percentile needs " + std::to_string(count) +
                                                       " subproblems, cap is " + std::to_string(opts.subset_cap));
  }
  const std::vector<LinearConstraint> base = metric_constraints(e);
  const int n = e.n();
  const int t = n * e.m();
  std::vector<VoterSet> a_sets, b_sets;
  for_each_combination(n, r, [&](const VoterSet& s) { a_sets.push_back(s); });
  for_each_combination(n, n - r + 1, [&](const VoterSet& s) { b_sets.push_back(s); });

  std::vector<Job> jobs;
  jobs.reserve(count);
  for (CandidateId cs = 0; cs < e.m(); ++cs) {
    if (cs == w) continue;
    for (const VoterSet& A : a_sets) {
      for (const VoterSet& B : b_sets) {
        Job job;
        job.record.c_star = cs;
        job.record.A = A;
        job.record.B = B;
        job.lp.num_vars = t + 1;
        job.lp.objective.assign(t + 1, 0);
        job.lp.objective[t] = 1;
        job.lp.constraints = base;
        for (VoterId v : A) job.lp.constraints.push_back({{{var(e, v, cs), 1}}, Relation::less_equal, 1});
        for (VoterId v : B) {
          job.lp.constraints.push_back({{{t, 1}, {var(e, v, w), -1}}, Relation::less_equal, 0});
        }
        jobs.push_back(std::move(job));
      }
    }
  }
  return run_jobs(e, w, Percentile{alpha}, jobs, opts);
}

DistortionResult distortion_egalitarian(const Election& e, CandidateId w, const DistortionOptions& opts) {
  check_candidate(e, w);
  if (e.m() == 1) return trivial_result(e, w, Egalitarian{});
  const std::vector<LinearConstraint> base = metric_constraints(e);
  std::vector<Job> jobs;
  for (CandidateId cs = 0; cs < e.m(); ++cs) {
    if (cs == w) continue;
    for (VoterId worst = 0; worst < e.n(); ++worst) {
      Job job;
      job.record.c_star = cs;
      job.record.worst_voter = worst;
      job.lp.num_vars = e.n() * e.m();
      job.lp.objective.assign(job.lp.num_vars, 0);
      job.lp.objective[var(e, worst, w)] = 1;
      job.lp.constraints = base;
      for (VoterId v = 0; v < e.n(); ++v) {
        job.lp.constraints.push_back({{{var(e, v, cs), 1}}, Relation::less_equal, 1});
      }
      jobs.push_back(std::move(job));
    }
  }
  return run_jobs(e, w, Egalitarian{}, jobs, opts);
}

DistortionResult distortion(const Election& e, CandidateId w, const Objective& obj, const DistortionOptions& opts) {
  if (std::holds_alternative<Utilitarian>(obj)) return distortion_utilitarian(e, w, opts);
  if (const auto* p = std::get_if<Percentile>(&obj)) return distortion_percentile(e, w, p->alpha, opts);
  return distortion_egalitarian(e, w, opts);
}

}  // namespace vetocore
