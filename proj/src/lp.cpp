#include "vetocore/lp.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "vetocore/error.hpp"

namespace vetocore {

const char* to_string(LpStatus status) {
  switch (status) {
    case LpStatus::optimal: return "optimal";
    case LpStatus::unbounded: return "unbounded";
    case LpStatus::infeasible: return "infeasible";
  }
  return "?";
}

namespace {

template <class T>
struct Arith;

template <>
struct Arith<double> {
  static constexpr double eps = 1e-9;
  static bool neg(double x) { return x < -eps; }
  static bool pos(double x) { return x > eps; }
  static bool zero(double x) { return std::fabs(x) <= eps; }
  static double from(const Rational& r) { return r.get_d(); }
  // a / b < c / d for b, d > 0
  static bool ratio_less(double a, double b, double c, double d) { return a / b < c / d - eps; }
  static bool ratio_equal(double a, double b, double c, double d) { return std::fabs(a / b - c / d) <= eps; }
};

template <>
struct Arith<Rational> {
  static bool neg(const Rational& x) { return sgn(x) < 0; }
  static bool pos(const Rational& x) { return sgn(x) > 0; }
  static bool zero(const Rational& x) { return sgn(x) == 0; }
  static Rational from(const Rational& r) { return r; }
  static bool ratio_less(const Rational& a, const Rational& b, const Rational& c, const Rational& d) {
    return a * d < c * b;
  }
  static bool ratio_equal(const Rational& a, const Rational& b, const Rational& c, const Rational& d) {
    return a * d == c * b;
  }
};

// Rows of A x <= b after rewriting >= and = constraints.
struct StandardForm {
  int n = 0;
  std::vector<std::vector<std::pair<int, Rational>>> rows;
  std::vector<Rational> rhs;
  std::vector<Rational> objective;
};

StandardForm standardize(const LinearProgram& lp) {
  StandardForm sf;
  sf.n = lp.num_vars;
  sf.objective = lp.objective;
  sf.objective.resize(lp.num_vars);
  for (const LinearConstraint& con : lp.constraints) {
    std::vector<std::pair<int, Rational>> row;
    for (const LinearTerm& t : con.terms) {
      if (t.var < 0 || t.var >= lp.num_vars) throw Error(ErrorCode::invalid_argument, "LP term on unknown variable");
      row.emplace_back(t.var, t.coef);
    }
    auto negated = [&] {
      auto r = row;
      for (auto& [var, coef] : r) coef = -coef;
      return r;
    };
    if (con.relation != Relation::greater_equal) {
      sf.rows.push_back(row);
      sf.rhs.push_back(con.rhs);
    }
    if (con.relation != Relation::less_equal) {
      sf.rows.push_back(negated());
      sf.rhs.push_back(-con.rhs);
    }
  }
  return sf;
}

// Dictionary simplex in the layout of the KACTL solver: rows 0..m-1 hold the
// basic variables, row m the objective, row m+1 the phase-one objective;
// column n is the phase-one artificial variable and column n+1 the rhs.
// Variable ids: 0..n-1 structural, n..n+m-1 slacks, -1 artificial.
// Entering columns follow Dantzig's rule and fall back to Bland's rule during
// runs of degenerate pivots, which rules out cycling.
template <class T>
class Simplex {
  using A = Arith<T>;

 public:
  explicit Simplex(const StandardForm& sf)
      : m_(static_cast<int>(sf.rows.size())), n_(sf.n), N_(n_ + 1), B_(m_), D_(m_ + 2, std::vector<T>(n_ + 2)) {
    for (int i = 0; i < m_; ++i) {
      for (const auto& [var, coef] : sf.rows[i]) D_[i][var] += A::from(coef);
      B_[i] = n_ + i;
      D_[i][n_] = -1;
      D_[i][n_ + 1] = A::from(sf.rhs[i]);
    }
    for (int j = 0; j < n_; ++j) {
      N_[j] = j;
      D_[m_][j] = -A::from(sf.objective[j]);
    }
    N_[n_] = -1;
    D_[m_ + 1][n_] = 1;
  }

  LpStatus solve() {
    int r = 0;
    for (int i = 1; i < m_; ++i) {
      if (D_[i][n_ + 1] < D_[r][n_ + 1]) r = i;
    }
    if (m_ > 0 && A::neg(D_[r][n_ + 1])) {
      pivot(r, n_);
      if (!simplex(2) || A::neg(D_[m_ + 1][n_ + 1])) return LpStatus::infeasible;
      for (int i = 0; i < m_; ++i) {
        if (B_[i] != -1) continue;
        int s = -1;
        for (int j = 0; j < n_ + 1; ++j) {
          if (N_[j] == -1) continue;
          if (!A::zero(D_[i][j]) && (s == -1 || N_[j] < N_[s])) s = j;
        }
        if (s != -1) pivot(i, s);
      }
    }
    return simplex(1) ? LpStatus::optimal : LpStatus::unbounded;
  }

  /// Pivots the structural variables of a known basis into this dictionary,
  /// replacing slacks of the rows that basis keeps tight. Returns false if the
  /// resulting dictionary is not primal feasible.
  bool crash(const std::vector<int>& basic_structurals, const std::vector<int>& tight_rows) {
    std::vector<bool> tight(m_, false);
    for (int row : tight_rows) tight[row] = true;
    for (int var : basic_structurals) {
      int s = static_cast<int>(std::find(N_.begin(), N_.end(), var) - N_.begin());
      if (s >= n_ + 1) continue;
      int r = -1;
      for (int i = 0; i < m_; ++i) {
        if (B_[i] >= n_ && tight[B_[i] - n_] && !A::zero(D_[i][s])) {
          r = i;
          break;
        }
      }
      if (r != -1) pivot(r, s);
    }
    for (int i = 0; i < m_; ++i) {
      if (A::neg(D_[i][n_ + 1])) return false;
    }
    return true;
  }

  /// Continues phase two from the current (feasible) dictionary.
  LpStatus resume() { return simplex(1) ? LpStatus::optimal : LpStatus::unbounded; }

  T value() const { return D_[m_][n_ + 1]; }

  std::vector<T> point() const {
    std::vector<T> x(n_);
    for (int i = 0; i < m_; ++i) {
      if (B_[i] >= 0 && B_[i] < n_) x[B_[i]] = D_[i][n_ + 1];
    }
    return x;
  }

  std::vector<int> basic_structurals() const {
    std::vector<int> out;
    for (int b : B_) {
      if (b >= 0 && b < n_) out.push_back(b);
    }
    return out;
  }

  std::vector<int> tight_rows() const {
    std::vector<int> out;
    for (int v : N_) {
      if (v >= n_) out.push_back(v - n_);
    }
    return out;
  }

  int pivots() const { return pivots_; }

 private:
  void pivot(int r, int s) {
    ++pivots_;
    const T inv = T(1) / D_[r][s];
    std::vector<int> nz;
    for (int j = 0; j < n_ + 2; ++j) {
      if (j != s && !A::zero(D_[r][j])) nz.push_back(j);
    }
    T f;
    for (int i = 0; i < m_ + 2; ++i) {
      if (i == r || A::zero(D_[i][s])) continue;
      f = D_[i][s] * inv;
      std::vector<T>& row = D_[i];
      const std::vector<T>& prow = D_[r];
      for (int j : nz) row[j] -= prow[j] * f;
      row[s] = -f;
    }
    for (int j : nz) D_[r][j] *= inv;
    D_[r][s] = inv;
    std::swap(B_[r], N_[s]);
  }

  bool simplex(int phase) {
    const int x = m_ + phase - 1;
    int degenerate_run = 0;
    for (;;) {
      const bool bland = degenerate_run > 8;
      int s = -1;
      for (int j = 0; j < n_ + 1; ++j) {
        if (N_[j] == -phase || !A::neg(D_[x][j])) continue;
        if (s == -1) {
          s = j;
        } else if (bland ? N_[j] < N_[s] : (D_[x][j] < D_[x][s] || (D_[x][j] == D_[x][s] && N_[j] < N_[s]))) {
          s = j;
        }
      }
      if (s == -1) return true;
      int r = -1;
      for (int i = 0; i < m_; ++i) {
        if (!A::pos(D_[i][s])) continue;
        if (r == -1) {
          r = i;
          continue;
        }
        const T& a = D_[i][n_ + 1];
        const T& b = D_[i][s];
        const T& c = D_[r][n_ + 1];
        const T& d = D_[r][s];
        if (A::ratio_less(a, b, c, d) || (A::ratio_equal(a, b, c, d) && B_[i] < B_[r])) r = i;
      }
      if (r == -1) return false;
      degenerate_run = A::zero(D_[r][n_ + 1]) ? degenerate_run + 1 : 0;
      pivot(r, s);
    }
  }

  int m_, n_;
  std::vector<int> N_, B_;
  std::vector<std::vector<T>> D_;
  int pivots_ = 0;
};

LpSolution finish_exact(Simplex<Rational>& sx, LpStatus status) {
  LpSolution out;
  out.status = status;
  out.pivots = sx.pivots();
  if (status == LpStatus::optimal) {
    out.value = sx.value();
    out.x = sx.point();
  }
  return out;
}

// Solves M z = rhs in place by Gauss-Jordan elimination; false if singular.
bool solve_square(std::vector<std::vector<Rational>> M, std::vector<Rational>& rhs) {
  const int s = static_cast<int>(M.size());
  for (int col = 0; col < s; ++col) {
    int piv = col;
    while (piv < s && sgn(M[piv][col]) == 0) ++piv;
    if (piv == s) return false;
    std::swap(M[piv], M[col]);
    std::swap(rhs[piv], rhs[col]);
    const Rational inv = 1 / M[col][col];
    for (int j = col; j < s; ++j) M[col][j] *= inv;
    rhs[col] *= inv;
    for (int i = 0; i < s; ++i) {
      if (i == col || sgn(M[i][col]) == 0) continue;
      const Rational f = M[i][col];
      for (int j = col; j < s; ++j) {
        if (sgn(M[col][j]) != 0) M[i][j] -= f * M[col][j];
      }
      rhs[i] -= f * rhs[col];
    }
  }
  return true;
}

// Given the basis a floating solve ended on (basic structurals J, tight rows
// T), recomputes the vertex and its dual multipliers exactly. If the vertex is
// primal feasible and the multipliers are dual feasible, weak duality proves
// it optimal and no rational pivoting is needed.
std::optional<LpSolution> certify_basis(const StandardForm& sf, const std::vector<int>& J, const std::vector<int>& T) {
  const int s = static_cast<int>(J.size());
  if (static_cast<int>(T.size()) != s) return std::nullopt;
  std::vector<int> col_of(sf.n, -1);
  for (int j = 0; j < s; ++j) col_of[J[j]] = j;

  std::vector<std::vector<Rational>> M(s, std::vector<Rational>(s));
  std::vector<Rational> x_basic(s);
  for (int i = 0; i < s; ++i) {
    for (const auto& [var, coef] : sf.rows[T[i]]) {
      if (col_of[var] >= 0) M[i][col_of[var]] += coef;
    }
    x_basic[i] = sf.rhs[T[i]];
  }
  std::vector<std::vector<Rational>> Mt(s, std::vector<Rational>(s));
  std::vector<Rational> y(s);
  for (int i = 0; i < s; ++i) {
    for (int j = 0; j < s; ++j) Mt[j][i] = M[i][j];
  }
  for (int j = 0; j < s; ++j) y[j] = sf.objective[J[j]];
  if (!solve_square(std::move(M), x_basic) || !solve_square(std::move(Mt), y)) return std::nullopt;

  LpSolution out;
  out.status = LpStatus::optimal;
  out.x.assign(sf.n, 0);
  for (int j = 0; j < s; ++j) {
    if (sgn(x_basic[j]) < 0) return std::nullopt;
    out.x[J[j]] = x_basic[j];
  }
  for (const Rational& yi : y) {
    if (sgn(yi) < 0) return std::nullopt;
  }
  Rational lhs;
  for (std::size_t r = 0; r < sf.rows.size(); ++r) {
    lhs = 0;
    for (const auto& [var, coef] : sf.rows[r]) lhs += coef * out.x[var];
    if (lhs > sf.rhs[r]) return std::nullopt;
  }
  std::vector<Rational> reduced = sf.objective;
  for (int i = 0; i < s; ++i) {
    if (sgn(y[i]) == 0) continue;
    for (const auto& [var, coef] : sf.rows[T[i]]) reduced[var] -= y[i] * coef;
  }
  for (int j = 0; j < sf.n; ++j) {
    if (col_of[j] < 0 && sgn(reduced[j]) > 0) return std::nullopt;
  }
  out.value = 0;
  for (int j = 0; j < sf.n; ++j) out.value += sf.objective[j] * out.x[j];
  return out;
}

}  // namespace

LpSolution solve_lp_rational_reference(const LinearProgram& lp) {
  const StandardForm sf = standardize(lp);
  Simplex<Rational> sx(sf);
  LpStatus status = sx.solve();
  return finish_exact(sx, status);
}

LpSolution solve_lp(const LinearProgram& lp, LpEngine engine) {
  const StandardForm sf = standardize(lp);
  Simplex<double> approx(sf);
  const LpStatus approx_status = approx.solve();

  if (engine == LpEngine::floating) {
    LpSolution out;
    out.status = approx_status;
    out.exact = false;
    out.pivots = approx.pivots();
    if (approx_status == LpStatus::optimal) {
      out.value = Rational(approx.value());
      for (double v : approx.point()) out.x.emplace_back(v);
    }
    return out;
  }

  // Exact engine: first try to certify the floating basis directly. Failing
  // that, rebuild it in rational arithmetic and let the exact simplex finish
  // from there; every decision after the crash is exact.
  if (approx_status == LpStatus::optimal) {
    if (auto certified = certify_basis(sf, approx.basic_structurals(), approx.tight_rows())) {
      certified->pivots = approx.pivots();
      return *std::move(certified);
    }
  }
  if (approx_status != LpStatus::infeasible) {
    Simplex<Rational> sx(sf);
    if (sx.crash(approx.basic_structurals(), approx.tight_rows())) {
      const LpStatus status = sx.resume();
      return finish_exact(sx, status);
    }
  }
  Simplex<Rational> sx(sf);
  const LpStatus status = sx.solve();
  return finish_exact(sx, status);
}

}  // namespace vetocore
