#pragma once

#include <vector>

#include "vetocore/rational.hpp"

namespace vetocore {

enum class Relation { less_equal, greater_equal, equal };

struct LinearTerm {
  int var;
  Rational coef;
};

struct LinearConstraint {
  std::vector<LinearTerm> terms;
  Relation relation = Relation::less_equal;
  Rational rhs;
};

/// maximize objective . x subject to the constraints and x >= 0.
struct LinearProgram {
  int num_vars = 0;
  std::vector<Rational> objective;
  std::vector<LinearConstraint> constraints;
};

enum class LpStatus { optimal, unbounded, infeasible };

/// `exact` returns the true optimum in rational arithmetic. `floating` runs the
/// same simplex in doubles; its value is accurate to roughly 1e-7.
enum class LpEngine { exact, floating };

struct LpSolution {
  LpStatus status = LpStatus::infeasible;
  Rational value;          // meaningful when optimal
  std::vector<Rational> x; // optimal point when optimal
  bool exact = true;
  int pivots = 0;
};

LpSolution solve_lp(const LinearProgram& lp, LpEngine engine = LpEngine::exact);

/// Pure rational simplex from the slack basis, without the floating warm
/// start. Kept as the reference path for the exact engine.
LpSolution solve_lp_rational_reference(const LinearProgram& lp);

const char* to_string(LpStatus status);

}  // namespace vetocore
