#pragma once

#include <utility>
#include <vector>

#include "nsbox/rational.hpp"
#include "nsbox/setting.hpp"

namespace nsbox {

/// A no-signaling behaviour: the table P(ab|xy) in canonical index order.
///
/// Construction always runs the exact validity check (positivity, per-input
/// normalization, both no-signaling families), so a Behaviour in hand is a
/// certified point of the no-signaling polytope. Instances are immutable;
/// every operation on them is a pure function.
class Behaviour {
 public:
  /// Checks the three invariant families with exact rational comparisons and
  /// throws Error{negative_entry | not_normalized | signaling_a_to_b |
  /// signaling_b_to_a | shape_mismatch} pinpointing the first violation.
  static Behaviour validated(Setting setting, std::vector<Rational> table);

  const Setting& setting() const { return setting_; }
  const std::vector<Rational>& table() const { return table_; }

  const Rational& at(int a, int b, int x, int y) const {
    return table_[setting_.index(a, b, x, y)];
  }

  /// P(a|x); well-defined because construction checked no-signaling.
  Rational marginal_a(int a, int x) const;
  /// P(b|y).
  Rational marginal_b(int b, int y) const;

  bool operator==(const Behaviour& other) const = default;

 private:
  Behaviour(Setting setting, std::vector<Rational> table)
      : setting_(setting), table_(std::move(table)) {}

  Setting setting_;
  std::vector<Rational> table_;
};

/// Both one-party marginal tables, as dense vectors indexed a*mA+x and b*mB+y.
struct Marginals {
  Setting setting;
  std::vector<Rational> alice;  ///< alice[a*m_a + x] = P(a|x)
  std::vector<Rational> bob;    ///< bob[b*m_b + y] = P(b|y)
};

Marginals marginals(const Behaviour& p);

/// P(ab|xy) = [a == f[x]] * [b == g[y]]; f, g use 0-based outputs.
Behaviour deterministic_point(const Setting& setting, const std::vector<int>& f,
                              const std::vector<int>& g);

/// Uniform behaviour P(ab|xy) = 1/(dA*dB).
Behaviour uniform_behaviour(const Setting& setting);

/// The two-input extremal family: P(aa|11)=P(aa|21)=P(aa|12)=P(a,a+1|22)=1/k
/// for a = 0..k-1 (addition mod k), zero elsewhere. Requires mA=mB=2 and
/// 2 <= k <= min(dA,dB); larger output alphabets are zero-padded.
Behaviour pr_box(const Setting& setting, int k = 2);

/// Entrywise convex combination. Weights must be >= 0 and sum to 1 exactly,
/// and all behaviours must share one setting.
Behaviour mix(const std::vector<std::pair<Rational, Behaviour>>& terms);

/// Zero-pads the output alphabets to d_a2 x d_b2 (no-op when equal).
Behaviour embed_outputs(const Behaviour& p, int d_a2, int d_b2);

}  // namespace nsbox
