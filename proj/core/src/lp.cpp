#include "nsbox/lp.hpp"

#include <algorithm>
#include <cassert>

#include "nsbox/errors.hpp"

namespace nsbox {

namespace {

// Internal canonical form: min c.xv subject to  A xv (le|eq|ge) rhs, xv >= 0,
// with rhs >= 0 after row sign normalization. Columns: structurals, then one
// slack/surplus per inequality row, then one artificial per row lacking a
// slack that can start basic. Bland's rule prices columns in that order.
struct Tableau {
  int nrows = 0;
  int nstruct = 0;              // shifted structural variables
  int ncols = 0;                // structurals + slacks (artificials excluded)
  std::vector<std::vector<Rational>> cols;  // ncols dense columns of length nrows
  std::vector<Rational> rhs;                // >= 0
  std::vector<int> slack_of_row;            // column id or -1
  std::vector<int> sigma;                   // +1 / -1 row normalization
  std::vector<int> basis;                   // column id per row; >= ncols means artificial for that row
  std::vector<std::vector<Rational>> binv;  // nrows x nrows
  std::vector<Rational> xb;                 // current basic values

  bool is_artificial(int col) const { return col >= ncols; }
  int artificial_row(int col) const { return col - ncols; }

  std::vector<Rational> column(int col) const {
    if (is_artificial(col)) {
      std::vector<Rational> e(nrows, Rational(0));
      e[artificial_row(col)] = 1;
      return e;
    }
    return cols[col];
  }
};

std::vector<Rational> mat_vec(const std::vector<std::vector<Rational>>& m,
                              const std::vector<Rational>& v) {
  std::vector<Rational> out(m.size(), Rational(0));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j)
      if (sgn(m[i][j]) != 0 && sgn(v[j]) != 0) out[i] += m[i][j] * v[j];
  return out;
}

// y = c_B^T binv for the given per-row basic costs.
std::vector<Rational> basic_duals(const Tableau& t, const std::vector<Rational>& cb) {
  std::vector<Rational> y(t.nrows, Rational(0));
  for (int i = 0; i < t.nrows; ++i) {
    if (sgn(cb[i]) == 0) continue;
    for (int j = 0; j < t.nrows; ++j)
      if (sgn(t.binv[i][j]) != 0) y[j] += cb[i] * t.binv[i][j];
  }
  return y;
}

Rational dot(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (sgn(a[i]) != 0 && sgn(b[i]) != 0) s += a[i] * b[i];
  return s;
}

void pivot(Tableau& t, int row, int col, const std::vector<Rational>& direction) {
  const Rational piv = direction[row];
  assert(sgn(piv) > 0);
  const Rational theta = t.xb[row] / piv;
  for (int i = 0; i < t.nrows; ++i) {
    if (i == row) continue;
    if (sgn(direction[i]) == 0) continue;
    const Rational f = direction[i] / piv;
    for (int j = 0; j < t.nrows; ++j)
      if (sgn(t.binv[row][j]) != 0) t.binv[i][j] -= f * t.binv[row][j];
    t.xb[i] -= theta * direction[i];
  }
  for (int j = 0; j < t.nrows; ++j) t.binv[row][j] /= piv;
  t.xb[row] = theta;
  t.basis[row] = col;
}

enum class IterResult { optimal, unbounded };

// Bland's rule: enter the lowest-index column with negative reduced cost,
// leave on the minimum ratio breaking ties by lowest basic column id.
// `costs` covers the non-artificial columns; artificials cost `art_cost`.
IterResult iterate(Tableau& t, const std::vector<Rational>& costs, const Rational& art_cost,
                   int* unbounded_col = nullptr, std::vector<Rational>* unbounded_dir = nullptr) {
  for (;;) {
    std::vector<Rational> cb(t.nrows);
    for (int i = 0; i < t.nrows; ++i)
      cb[i] = t.is_artificial(t.basis[i]) ? art_cost : costs[t.basis[i]];
    const std::vector<Rational> y = basic_duals(t, cb);

    int entering = -1;
    for (int j = 0; j < t.ncols && entering < 0; ++j) {
      bool basic = false;
      for (int i = 0; i < t.nrows; ++i)
        if (t.basis[i] == j) { basic = true; break; }
      if (basic) continue;
      Rational rc = costs[j] - dot(y, t.cols[j]);
      if (sgn(rc) < 0) entering = j;
    }
    if (entering < 0) return IterResult::optimal;

    const std::vector<Rational> d = mat_vec(t.binv, t.cols[entering]);
    int leave = -1;
    Rational best_theta = 0;
    for (int i = 0; i < t.nrows; ++i) {
      if (sgn(d[i]) <= 0) continue;
      Rational theta = t.xb[i] / d[i];
      if (leave < 0 || theta < best_theta ||
          (theta == best_theta && t.basis[i] < t.basis[leave])) {
        leave = i;
        best_theta = theta;
      }
    }
    if (leave < 0) {
      if (unbounded_col) *unbounded_col = entering;
      if (unbounded_dir) *unbounded_dir = d;
      return IterResult::unbounded;
    }
    pivot(t, leave, entering, d);
  }
}

// Exact inverse via Gauss-Jordan; the matrix is a basis so it is invertible.
std::vector<std::vector<Rational>> invert(std::vector<std::vector<Rational>> m) {
  const int n = static_cast<int>(m.size());
  std::vector<std::vector<Rational>> inv(n, std::vector<Rational>(n, Rational(0)));
  for (int i = 0; i < n; ++i) inv[i][i] = 1;
  for (int c = 0; c < n; ++c) {
    int pr = -1;
    for (int r = c; r < n; ++r)
      if (sgn(m[r][c]) != 0) { pr = r; break; }
    assert(pr >= 0 && "basis matrix must be invertible");
    std::swap(m[c], m[pr]);
    std::swap(inv[c], inv[pr]);
    const Rational piv = m[c][c];
    for (int j = 0; j < n; ++j) {
      m[c][j] /= piv;
      inv[c][j] /= piv;
    }
    for (int r = 0; r < n; ++r) {
      if (r == c || sgn(m[r][c]) == 0) continue;
      const Rational f = m[r][c];
      for (int j = 0; j < n; ++j) {
        m[r][j] -= f * m[c][j];
        inv[r][j] -= f * inv[c][j];
      }
    }
  }
  return inv;
}

struct CanonicalRow {
  std::vector<Rational> coeffs;  // in shifted x-space
  Relation rel;
  Rational rhs;
  int orig_row;   // index into lp.rows, or -1
  int bound_var;  // variable id for upper-bound rows, or -1
};

}  // namespace

LPOutcome solve(const LPProblem& lp) {
  if (static_cast<int>(lp.objective.size()) != lp.nvars ||
      static_cast<int>(lp.lower.size()) != lp.nvars ||
      static_cast<int>(lp.upper.size()) != lp.nvars)
    throw Error(ErrorCode::shape_mismatch, "objective/bounds size != nvars");
  for (const auto& r : lp.rows)
    if (static_cast<int>(r.coeffs.size()) != lp.nvars)
      throw Error(ErrorCode::shape_mismatch, "row length != nvars");

  const bool maximize = lp.sense == Sense::maximize;
  const int n = lp.nvars;

  // Shift to xv = x - lower >= 0 and append upper bounds as rows.
  std::vector<CanonicalRow> canon;
  canon.reserve(lp.rows.size() + n);
  for (std::size_t i = 0; i < lp.rows.size(); ++i) {
    CanonicalRow cr{lp.rows[i].coeffs, lp.rows[i].rel,
                    lp.rows[i].rhs - dot(lp.rows[i].coeffs, lp.lower),
                    static_cast<int>(i), -1};
    canon.push_back(std::move(cr));
  }
  for (int j = 0; j < n; ++j) {
    if (!lp.upper[j]) continue;
    CanonicalRow cr;
    cr.coeffs.assign(n, Rational(0));
    cr.coeffs[j] = 1;
    cr.rel = Relation::le;
    cr.rhs = *lp.upper[j] - lp.lower[j];
    cr.orig_row = -1;
    cr.bound_var = j;
    canon.push_back(std::move(cr));
  }

  const int m = static_cast<int>(canon.size());
  Tableau t;
  t.nrows = m;
  t.nstruct = n;
  t.sigma.assign(m, 1);
  t.rhs.resize(m);
  t.slack_of_row.assign(m, -1);

  std::vector<Relation> nrel(m);
  for (int i = 0; i < m; ++i) {
    nrel[i] = canon[i].rel;
    t.rhs[i] = canon[i].rhs;
    if (sgn(t.rhs[i]) < 0) {
      t.sigma[i] = -1;
      t.rhs[i] = -t.rhs[i];
      for (auto& v : canon[i].coeffs) v = -v;
      if (nrel[i] == Relation::le) nrel[i] = Relation::ge;
      else if (nrel[i] == Relation::ge) nrel[i] = Relation::le;
    }
  }

  // Structural columns.
  t.cols.reserve(n + m);
  for (int j = 0; j < n; ++j) {
    std::vector<Rational> col(m, Rational(0));
    for (int i = 0; i < m; ++i) col[i] = canon[i].coeffs[j];
    t.cols.push_back(std::move(col));
  }
  // Slack / surplus columns.
  for (int i = 0; i < m; ++i) {
    if (nrel[i] == Relation::eq) continue;
    std::vector<Rational> col(m, Rational(0));
    col[i] = nrel[i] == Relation::le ? 1 : -1;
    t.slack_of_row[i] = static_cast<int>(t.cols.size());
    t.cols.push_back(std::move(col));
  }
  t.ncols = static_cast<int>(t.cols.size());

  // Initial basis: slack where available, else an artificial (id ncols+row).
  t.basis.resize(m);
  t.binv.assign(m, std::vector<Rational>(m, Rational(0)));
  t.xb = t.rhs;
  bool any_artificial = false;
  for (int i = 0; i < m; ++i) {
    t.binv[i][i] = 1;
    if (nrel[i] == Relation::le) {
      t.basis[i] = t.slack_of_row[i];
    } else {
      t.basis[i] = t.ncols + i;
      any_artificial = true;
    }
  }

  std::vector<Rational> cost_phase2(t.ncols, Rational(0));
  for (int j = 0; j < n; ++j)
    cost_phase2[j] = maximize ? -lp.objective[j] : lp.objective[j];

  LPOutcome out;

  // Phase 1: minimize the artificial sum.
  if (any_artificial) {
    std::vector<Rational> zero(t.ncols, Rational(0));
    iterate(t, zero, Rational(1));
    Rational infeas = 0;
    for (int i = 0; i < m; ++i)
      if (t.is_artificial(t.basis[i])) infeas += t.xb[i];
    if (sgn(infeas) > 0) {
      std::vector<Rational> cb(m, Rational(0));
      for (int i = 0; i < m; ++i)
        if (t.is_artificial(t.basis[i])) cb[i] = 1;
      const std::vector<Rational> y = basic_duals(t, cb);
      // External multipliers: -sigma_i * y_i, split into rows and bound tail.
      out.status = LPStatus::infeasible;
      out.farkas.assign(lp.rows.size() + n, Rational(0));
      for (int i = 0; i < m; ++i) {
        const Rational v = -t.sigma[i] * y[i];
        if (canon[i].orig_row >= 0) out.farkas[canon[i].orig_row] = v;
        else out.farkas[lp.rows.size() + canon[i].bound_var] = v;
      }
      return out;
    }
    // Drive residual artificials out of the basis; drop dependent rows.
    std::vector<bool> dead(m, false);
    for (int i = 0; i < m; ++i) {
      if (!t.is_artificial(t.basis[i])) continue;
      int entering = -1;
      std::vector<Rational> dir;
      for (int j = 0; j < t.ncols && entering < 0; ++j) {
        bool basic = false;
        for (int r = 0; r < m; ++r)
          if (t.basis[r] == j) { basic = true; break; }
        if (basic) continue;
        Rational piv = dot(t.binv[i], t.cols[j]);
        if (sgn(piv) != 0) {
          entering = j;
          dir = mat_vec(t.binv, t.cols[j]);
        }
      }
      if (entering >= 0) {
        // xb[i] == 0, so this pivot is degenerate and keeps feasibility even
        // when the pivot element is negative.
        const Rational piv = dir[i];
        for (int r = 0; r < m; ++r) {
          if (r == i || sgn(dir[r]) == 0) continue;
          const Rational f = dir[r] / piv;
          for (int c = 0; c < m; ++c)
            if (sgn(t.binv[i][c]) != 0) t.binv[r][c] -= f * t.binv[i][c];
        }
        for (int c = 0; c < m; ++c) t.binv[i][c] /= piv;
        t.basis[i] = entering;
      } else {
        dead[i] = true;
      }
    }
    if (std::find(dead.begin(), dead.end(), true) != dead.end()) {
      // Rebuild the tableau without the dependent rows.
      std::vector<int> keep;
      for (int i = 0; i < m; ++i)
        if (!dead[i]) keep.push_back(i);
      Tableau t2;
      t2.nrows = static_cast<int>(keep.size());
      t2.nstruct = t.nstruct;
      t2.ncols = t.ncols;
      t2.rhs.resize(t2.nrows);
      t2.sigma.resize(t2.nrows);
      t2.slack_of_row.resize(t2.nrows);
      for (int k = 0; k < t2.nrows; ++k) {
        t2.rhs[k] = t.rhs[keep[k]];
        t2.sigma[k] = t.sigma[keep[k]];
        t2.slack_of_row[k] = t.slack_of_row[keep[k]];
      }
      t2.cols.resize(t.ncols);
      for (int j = 0; j < t.ncols; ++j) {
        t2.cols[j].resize(t2.nrows);
        for (int k = 0; k < t2.nrows; ++k) t2.cols[j][k] = t.cols[j][keep[k]];
      }
      t2.basis.resize(t2.nrows);
      std::vector<std::vector<Rational>> bmat(t2.nrows, std::vector<Rational>(t2.nrows));
      for (int k = 0; k < t2.nrows; ++k) {
        t2.basis[k] = t.basis[keep[k]];
        for (int r = 0; r < t2.nrows; ++r) bmat[r][k] = t2.cols[t2.basis[k]][r];
      }
      t2.binv = invert(std::move(bmat));
      t2.xb = mat_vec(t2.binv, t2.rhs);
      std::vector<CanonicalRow> canon2;
      for (int k = 0; k < t2.nrows; ++k) canon2.push_back(canon[keep[k]]);
      canon = std::move(canon2);
      t = std::move(t2);
    }
  }

  // Phase 2.
  int unbounded_col = -1;
  std::vector<Rational> unbounded_dir;
  const IterResult res =
      iterate(t, cost_phase2, Rational(0), &unbounded_col, &unbounded_dir);

  // Structural extraction (valid for optimal and unbounded feasible point).
  std::vector<Rational> xhat(n, Rational(0));
  for (int i = 0; i < t.nrows; ++i)
    if (!t.is_artificial(t.basis[i]) && t.basis[i] < n) xhat[t.basis[i]] = t.xb[i];
  out.primal.resize(n);
  for (int j = 0; j < n; ++j) out.primal[j] = lp.lower[j] + xhat[j];
  out.objective_value = dot(lp.objective, out.primal);

  if (res == IterResult::unbounded) {
    out.status = LPStatus::unbounded;
    out.ray.assign(n, Rational(0));
    if (unbounded_col < n) out.ray[unbounded_col] = 1;
    for (int i = 0; i < t.nrows; ++i)
      if (!t.is_artificial(t.basis[i]) && t.basis[i] < n)
        out.ray[t.basis[i]] -= unbounded_dir[i];
    return out;
  }

  out.status = LPStatus::optimal;

  // Dual extraction: y_int = c_B binv, reduced costs for bound multipliers.
  std::vector<Rational> cb(t.nrows);
  for (int i = 0; i < t.nrows; ++i)
    cb[i] = t.is_artificial(t.basis[i]) ? Rational(0) : cost_phase2[t.basis[i]];
  const std::vector<Rational> y = basic_duals(t, cb);

  out.dual.assign(lp.rows.size(), Rational(0));
  out.reduced_upper.assign(n, Rational(0));
  for (int i = 0; i < t.nrows; ++i) {
    const Rational w = Rational(t.sigma[i]) * y[i];  // min-form row dual
    if (canon[i].orig_row >= 0)
      out.dual[canon[i].orig_row] = maximize ? -w : w;
    else
      out.reduced_upper[canon[i].bound_var] = -w;  // le-row dual is <= 0
  }
  out.reduced_lower.assign(n, Rational(0));
  for (int j = 0; j < n; ++j) {
    bool basic = false;
    for (int i = 0; i < t.nrows; ++i)
      if (t.basis[i] == j) { basic = true; break; }
    if (!basic) out.reduced_lower[j] = cost_phase2[j] - dot(y, t.cols[j]);
  }
  if (maximize) {
    // min-form certificate for -c maps to the max conventions directly;
    // reduced_lower/reduced_upper keep their (nonnegative) values.
  }
  return out;
}

bool verify(const LPProblem& lp, const LPOutcome& out) {
  const int n = lp.nvars;
  const std::size_t nrows = lp.rows.size();
  const bool maximize = lp.sense == Sense::maximize;

  auto row_value = [&](std::size_t i, const std::vector<Rational>& x) {
    Rational s = 0;
    for (int j = 0; j < n; ++j)
      if (sgn(lp.rows[i].coeffs[j]) != 0) s += lp.rows[i].coeffs[j] * x[j];
    return s;
  };
  auto primal_feasible = [&](const std::vector<Rational>& x) {
    for (int j = 0; j < n; ++j) {
      if (x[j] < lp.lower[j]) return false;
      if (lp.upper[j] && x[j] > *lp.upper[j]) return false;
    }
    for (std::size_t i = 0; i < nrows; ++i) {
      const Rational v = row_value(i, x);
      if (lp.rows[i].rel == Relation::le && v > lp.rows[i].rhs) return false;
      if (lp.rows[i].rel == Relation::ge && v < lp.rows[i].rhs) return false;
      if (lp.rows[i].rel == Relation::eq && v != lp.rows[i].rhs) return false;
    }
    return true;
  };

  switch (out.status) {
    case LPStatus::optimal: {
      if (out.primal.size() != static_cast<std::size_t>(n) || out.dual.size() != nrows ||
          out.reduced_lower.size() != static_cast<std::size_t>(n) ||
          out.reduced_upper.size() != static_cast<std::size_t>(n))
        throw Error(ErrorCode::shape_mismatch, "optimal certificate sizes");
      if (!primal_feasible(out.primal)) return false;
      if (out.objective_value != dot(lp.objective, out.primal)) return false;
      // Dual signs.
      for (std::size_t i = 0; i < nrows; ++i) {
        const int s = sgn(out.dual[i]);
        if (lp.rows[i].rel == Relation::le && (maximize ? s < 0 : s > 0)) return false;
        if (lp.rows[i].rel == Relation::ge && (maximize ? s > 0 : s < 0)) return false;
      }
      for (int j = 0; j < n; ++j) {
        if (sgn(out.reduced_lower[j]) < 0) return false;
        if (sgn(out.reduced_upper[j]) < 0) return false;
        if (!lp.upper[j] && sgn(out.reduced_upper[j]) != 0) return false;
      }
      // Stationarity.
      for (int j = 0; j < n; ++j) {
        Rational s = 0;
        for (std::size_t i = 0; i < nrows; ++i)
          if (sgn(out.dual[i]) != 0 && sgn(lp.rows[i].coeffs[j]) != 0)
            s += out.dual[i] * lp.rows[i].coeffs[j];
        if (maximize) s += -out.reduced_lower[j] + out.reduced_upper[j];
        else s += out.reduced_lower[j] - out.reduced_upper[j];
        if (s != lp.objective[j]) return false;
      }
      // Strong duality.
      Rational dual_obj = 0;
      for (std::size_t i = 0; i < nrows; ++i)
        if (sgn(out.dual[i]) != 0) dual_obj += out.dual[i] * lp.rows[i].rhs;
      for (int j = 0; j < n; ++j) {
        Rational lo = out.reduced_lower[j] * lp.lower[j];
        Rational hi = lp.upper[j] ? out.reduced_upper[j] * *lp.upper[j] : Rational(0);
        dual_obj += maximize ? hi - lo : lo - hi;
      }
      return dual_obj == out.objective_value;
    }
    case LPStatus::infeasible: {
      if (out.farkas.size() != nrows + static_cast<std::size_t>(n))
        throw Error(ErrorCode::shape_mismatch, "farkas size");
      for (std::size_t i = 0; i < nrows; ++i) {
        const int s = sgn(out.farkas[i]);
        if (lp.rows[i].rel == Relation::le && s < 0) return false;
        if (lp.rows[i].rel == Relation::ge && s > 0) return false;
      }
      Rational t = 0;
      for (std::size_t i = 0; i < nrows; ++i)
        if (sgn(out.farkas[i]) != 0) t += out.farkas[i] * lp.rows[i].rhs;
      Rational floor_val = 0;
      for (int j = 0; j < n; ++j) {
        const Rational& nu = out.farkas[nrows + j];
        if (sgn(nu) < 0) return false;
        if (!lp.upper[j]) {
          if (sgn(nu) != 0) return false;
        } else {
          t += nu * *lp.upper[j];
        }
        Rational sj = nu;
        for (std::size_t i = 0; i < nrows; ++i)
          if (sgn(out.farkas[i]) != 0 && sgn(lp.rows[i].coeffs[j]) != 0)
            sj += out.farkas[i] * lp.rows[i].coeffs[j];
        if (sgn(sj) < 0) return false;
        floor_val += sj * lp.lower[j];
      }
      return floor_val > t;
    }
    case LPStatus::unbounded: {
      if (out.primal.size() != static_cast<std::size_t>(n) ||
          out.ray.size() != static_cast<std::size_t>(n))
        throw Error(ErrorCode::shape_mismatch, "unbounded certificate sizes");
      if (!primal_feasible(out.primal)) return false;
      for (int j = 0; j < n; ++j) {
        if (sgn(out.ray[j]) < 0) return false;
        if (lp.upper[j] && sgn(out.ray[j]) != 0) return false;
      }
      for (std::size_t i = 0; i < nrows; ++i) {
        Rational rv = 0;
        for (int j = 0; j < n; ++j)
          if (sgn(out.ray[j]) != 0 && sgn(lp.rows[i].coeffs[j]) != 0)
            rv += out.ray[j] * lp.rows[i].coeffs[j];
        if (lp.rows[i].rel == Relation::le && sgn(rv) > 0) return false;
        if (lp.rows[i].rel == Relation::ge && sgn(rv) < 0) return false;
        if (lp.rows[i].rel == Relation::eq && sgn(rv) != 0) return false;
      }
      const Rational gain = dot(lp.objective, out.ray);
      return maximize ? sgn(gain) > 0 : sgn(gain) < 0;
    }
  }
  return false;
}

}  // namespace nsbox
