#pragma once

// Brute-force LP oracle for cross-checking the simplex engine on small
// instances: enumerates candidate vertices from all square active-constraint
// subsystems, decides feasibility, unboundedness via the normalized recession
// cone, and the optimum as the best feasible vertex. Exact arithmetic
// throughout and entirely independent of the solver under test.

#include <optional>
#include <vector>

#include "nsbox/lp.hpp"

namespace nsbox::testing {

struct OracleRow {
  std::vector<Rational> coeffs;
  Relation rel;
  Rational rhs;
};

inline std::optional<std::vector<Rational>> solve_square(
    std::vector<std::vector<Rational>> m, std::vector<Rational> rhs) {
  const int n = static_cast<int>(rhs.size());
  for (int c = 0; c < n; ++c) {
    int pr = -1;
    for (int r = c; r < n; ++r)
      if (sgn(m[r][c]) != 0) { pr = r; break; }
    if (pr < 0) return std::nullopt;
    std::swap(m[c], m[pr]);
    std::swap(rhs[c], rhs[pr]);
    for (int r = 0; r < n; ++r) {
      if (r == c || sgn(m[r][c]) == 0) continue;
      const Rational f = m[r][c] / m[c][c];
      for (int j = c; j < n; ++j) m[r][j] -= f * m[c][j];
      rhs[r] -= f * rhs[c];
    }
  }
  std::vector<Rational> x(n);
  for (int i = 0; i < n; ++i) x[i] = rhs[i] / m[i][i];
  return x;
}

struct BruteForceResult {
  LPStatus status;
  Rational objective;
};

inline BruteForceResult brute_force_lp(const LPProblem& lp) {
  const int n = lp.nvars;
  std::vector<OracleRow> cons;
  for (const auto& r : lp.rows) cons.push_back({r.coeffs, r.rel, r.rhs});
  for (int j = 0; j < n; ++j) {
    std::vector<Rational> e(n, Rational(0));
    e[j] = 1;
    cons.push_back({e, Relation::ge, lp.lower[j]});
    if (lp.upper[j]) cons.push_back({e, Relation::le, *lp.upper[j]});
  }

  auto feasible = [&](const std::vector<Rational>& x) {
    for (const auto& c : cons) {
      Rational v = 0;
      for (int j = 0; j < n; ++j) v += c.coeffs[j] * x[j];
      if (c.rel == Relation::le && v > c.rhs) return false;
      if (c.rel == Relation::ge && v < c.rhs) return false;
      if (c.rel == Relation::eq && v != c.rhs) return false;
    }
    return true;
  };

  std::vector<std::vector<Rational>> vertices;
  std::vector<int> pick(n, 0);
  const int m = static_cast<int>(cons.size());
  // all n-subsets of the constraint list
  std::vector<int> idx(n);
  auto recurse = [&](auto&& self, int pos, int start) -> void {
    if (pos == n) {
      std::vector<std::vector<Rational>> mat(n, std::vector<Rational>(n));
      std::vector<Rational> rhs(n);
      for (int i = 0; i < n; ++i) {
        mat[i] = cons[idx[i]].coeffs;
        rhs[i] = cons[idx[i]].rhs;
      }
      if (auto x = solve_square(mat, rhs); x && feasible(*x)) vertices.push_back(*x);
      return;
    }
    for (int i = start; i < m; ++i) {
      idx[pos] = i;
      self(self, pos + 1, i + 1);
    }
  };
  if (n == 0) return {LPStatus::optimal, Rational(0)};
  recurse(recurse, 0, 0);

  if (vertices.empty()) return {LPStatus::infeasible, Rational(0)};

  // Recession directions: vertices of {r >= 0, sum r = 1, homogeneous rows}.
  LPProblem cone = LPProblem::make(n, lp.sense);
  for (const auto& r : lp.rows) {
    Relation rel = r.rel;
    cone.add_row(r.coeffs, rel, Rational(0));
  }
  for (int j = 0; j < n; ++j)
    if (lp.upper[j]) {
      std::vector<Rational> e(n, Rational(0));
      e[j] = 1;
      cone.add_row(std::move(e), Relation::eq, Rational(0));
    }
  std::vector<OracleRow> cone_cons;
  for (const auto& r : cone.rows) cone_cons.push_back({r.coeffs, r.rel, r.rhs});
  {
    std::vector<Rational> ones(n, Rational(1));
    cone_cons.push_back({ones, Relation::eq, Rational(1)});
  }
  for (int j = 0; j < n; ++j) {
    std::vector<Rational> e(n, Rational(0));
    e[j] = 1;
    cone_cons.push_back({e, Relation::ge, Rational(0)});
  }
  auto cone_feasible = [&](const std::vector<Rational>& x) {
    for (const auto& c : cone_cons) {
      Rational v = 0;
      for (int j = 0; j < n; ++j) v += c.coeffs[j] * x[j];
      if (c.rel == Relation::le && v > c.rhs) return false;
      if (c.rel == Relation::ge && v < c.rhs) return false;
      if (c.rel == Relation::eq && v != c.rhs) return false;
    }
    return true;
  };
  const int cm = static_cast<int>(cone_cons.size());
  bool unbounded = false;
  std::vector<int> cidx(n);
  auto crec = [&](auto&& self, int pos, int start) -> void {
    if (unbounded) return;
    if (pos == n) {
      std::vector<std::vector<Rational>> mat(n, std::vector<Rational>(n));
      std::vector<Rational> rhs(n);
      for (int i = 0; i < n; ++i) {
        mat[i] = cone_cons[cidx[i]].coeffs;
        rhs[i] = cone_cons[cidx[i]].rhs;
      }
      if (auto r = solve_square(mat, rhs); r && cone_feasible(*r)) {
        Rational gain = 0;
        for (int j = 0; j < n; ++j) gain += lp.objective[j] * (*r)[j];
        if ((lp.sense == Sense::maximize && sgn(gain) > 0) ||
            (lp.sense == Sense::minimize && sgn(gain) < 0))
          unbounded = true;
      }
      return;
    }
    for (int i = start; i < cm; ++i) {
      cidx[pos] = i;
      self(self, pos + 1, i + 1);
    }
  };
  crec(crec, 0, 0);
  if (unbounded) return {LPStatus::unbounded, Rational(0)};

  Rational best = 0;
  bool first = true;
  for (const auto& x : vertices) {
    Rational v = 0;
    for (int j = 0; j < n; ++j) v += lp.objective[j] * x[j];
    if (first || (lp.sense == Sense::maximize ? v > best : v < best)) {
      best = v;
      first = false;
    }
  }
  return {LPStatus::optimal, best};
}

}  // namespace nsbox::testing
