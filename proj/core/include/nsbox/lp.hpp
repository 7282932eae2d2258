#pragma once

#include <optional>
#include <vector>

#include "nsbox/rational.hpp"

namespace nsbox {

enum class Sense { minimize, maximize };
enum class Relation { le, eq, ge };

struct LPConstraint {
  std::vector<Rational> coeffs;
  Relation rel = Relation::le;
  Rational rhs = 0;
};

/// Exact rational linear program over variables with finite lower bounds
/// (default 0) and optional upper bounds.
struct LPProblem {
  int nvars = 0;
  Sense sense = Sense::minimize;
  std::vector<Rational> objective;               // size nvars
  std::vector<LPConstraint> rows;
  std::vector<Rational> lower;                   // size nvars
  std::vector<std::optional<Rational>> upper;    // size nvars

  static LPProblem make(int nvars, Sense sense) {
    LPProblem lp;
    lp.nvars = nvars;
    lp.sense = sense;
    lp.objective.assign(nvars, Rational(0));
    lp.lower.assign(nvars, Rational(0));
    lp.upper.assign(nvars, std::nullopt);
    return lp;
  }

  void add_row(std::vector<Rational> coeffs, Relation rel, Rational rhs) {
    rows.push_back({std::move(coeffs), rel, std::move(rhs)});
  }
};

enum class LPStatus { optimal, infeasible, unbounded };

/// Outcome with exact certificates.
///
/// Dual conventions, for sense == minimize:
///   y_i <= 0 on le-rows, y_i >= 0 on ge-rows, free on eq-rows;
///   stationarity  c_j = sum_i y_i a_ij + reduced_lower_j - reduced_upper_j;
///   strong duality  c.x = y.b + reduced_lower.l - reduced_upper.u.
/// For sense == maximize the row-dual signs flip and
///   c_j = sum_i y_i a_ij - reduced_lower_j + reduced_upper_j,
///   c.x = y.b - reduced_lower.l + reduced_upper.u.
///
/// Farkas convention (status == infeasible), independent of sense: the first
/// rows.size() entries are row multipliers (>= 0 on le, <= 0 on ge, free on
/// eq) and the remaining nvars entries are multipliers >= 0 on the upper
/// bounds. With s = sum_i y_i a_i + tail and t = sum_i y_i b_i + tail.u, the
/// certificate asserts s >= 0 componentwise and s.l > t, which no point with
/// x >= l can satisfy.
///
/// When unbounded, `primal` is a feasible point and `ray` an improving
/// recession direction.
struct LPOutcome {
  LPStatus status = LPStatus::optimal;
  std::vector<Rational> primal;
  std::vector<Rational> dual;
  std::vector<Rational> reduced_lower;
  std::vector<Rational> reduced_upper;
  Rational objective_value = 0;
  std::vector<Rational> farkas;
  std::vector<Rational> ray;
};

/// Two-phase revised primal simplex with Bland's pivoting rule on exact
/// rationals. Deterministic: identical inputs give identical outcomes.
LPOutcome solve(const LPProblem& lp);

/// Re-checks every certificate identity of `out` against `lp` by exact
/// substitution. Throws Error{shape_mismatch} when vector sizes do not fit
/// the problem; returns false when any identity fails.
bool verify(const LPProblem& lp, const LPOutcome& out);

}  // namespace nsbox
