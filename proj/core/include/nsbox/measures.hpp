#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nsbox/behaviour.hpp"
#include "nsbox/local_polytope.hpp"
#include "nsbox/wiring.hpp"

namespace nsbox {

// ---- Bell-violation measures -------------------------------------------

enum class BellMode { relabelings, all_wirings };

struct BellValueResult {
  Rational value;  ///< max{best - bound, 0}
  Rational best;   ///< unclamped maximum of s.O(p) over the operation pool
  LocalWiring op;  ///< first operation attaining `best`
};

/// max{max_O (s.O(p) - S), 0} with O ranging over relabelings or over all
/// same-setting wirings. In all_wirings mode the maximization is factorized
/// per party (Alice wirings outer, Bob per-input choices inner), which scans
/// the same finite set; ties resolve to the first maximizer in that order.
BellValueResult bell_value(const Behaviour& p, const BellFunctional& functional,
                           BellMode mode, std::uint64_t cap = kDefaultWiringCap);

/// The CHSH functional for a two-input setting: outputs 1 and 2 carry values
/// +1 and -1, any further outputs value 0; bound 2.
BellFunctional chsh_functional(const Setting& s);

/// bell_value with the CHSH functional in relabelings mode.
BellValueResult chsh(const Behaviour& p, std::uint64_t cap = kDefaultWiringCap);

// ---- EPR2 and robustness -------------------------------------------------

struct Epr2Result {
  Rational value;  ///< 1 - P_L
  Rational local_weight;
  std::vector<std::pair<std::size_t, Rational>> local_part;  ///< mu over vertices
};

/// Nonlocal content: 1 - max{sum mu : sum mu_i d_i <= p entrywise, mu >= 0}.
Epr2Result epr2(const Behaviour& p, const VertexSet& vertices);

struct RobustnessResult {
  Rational value;  ///< minimal local-noise fraction q
  std::vector<std::pair<std::size_t, Rational>> noise_weights;   ///< sum = q
  std::vector<std::pair<std::size_t, Rational>> target_weights;  ///< sum = 1
};

/// min q in [0,1] with (1-q) p + q L local for some local L.
RobustnessResult robustness(const Behaviour& p, const VertexSet& vertices);

// ---- detection efficiency -------------------------------------------------

/// Lossy-detector model: each party's measurement yields a conclusive result
/// with probability eta, independently; the inconclusive event is a fresh
/// output appended after the original alphabet. Conclusive block eta^2 P,
/// single no-click rows eta(1-eta) times the other party's marginal, double
/// no-click (1-eta)^2. Identical to an unfold followed by partial merges.
Behaviour detector_model(const Behaviour& p, const Rational& eta);

struct EtaStarResult {
  bool nonlocal = false;      ///< false: p was local, eta* = 1, N_eff = 0
  Rational eta_lo, eta_hi;    ///< bracket: model local at eta_lo, nonlocal at eta_hi
  Rational neff_lo, neff_hi;  ///< 1 - eta bracket, same width
  int probes = 0;
};

/// Threshold efficiency by dyadic bisection with an exact membership LP at
/// each probe. The returned bracket has width <= precision.
EtaStarResult eta_star(const Behaviour& p, const Rational& precision = make_rational(1, 1 << 20),
                       std::uint64_t vertex_cap = kDefaultVertexCap);

/// eta_star against pre-enumerated vertex sets: `own` for the behaviour's
/// setting, `enlarged` for the setting with the extra no-click outputs.
EtaStarResult eta_star(const Behaviour& p, const Rational& precision,
                       const VertexSet& own, const VertexSet& enlarged);

// ---- communication cost ----------------------------------------------------

/// Deterministic signaling strategy a = f(x,y), b = g(x,y), flattened with
/// x*m_b + y. Cost model: one simultaneous round; Alice announces a message
/// computed from x, Bob one computed from y, and each output may depend on
/// the own input and the received message. The cost in bits is then
///   ceil(log2 #distinct x-rows of g) + ceil(log2 #distinct y-columns of f),
/// the minimum over all protocols realizing (f,g). Cost 0 iff the point is
/// local deterministic.
struct CommStrategy {
  std::vector<int> f;
  std::vector<int> g;
  int cost = 0;

  std::vector<Rational> table(const Setting& s) const;
};

int strategy_cost(const Setting& s, const std::vector<int>& f, const std::vector<int>& g);

/// Total bits available in the protocol model: enough to reveal both inputs.
int max_strategy_bits(const Setting& s);

inline constexpr std::uint64_t kDefaultStrategyCap = 1'000'000;

/// All strategies of cost <= max_bits, in lexicographic (f,g) order.
std::vector<CommStrategy> enumerate_strategies(const Setting& s, int max_bits,
                                               std::uint64_t cap = kDefaultStrategyCap);

struct CommCostResult {
  Rational value;  ///< average bits (comm_cost_avg) or the integer c (worst)
  std::vector<std::pair<std::size_t, Rational>> weights;  ///< over the strategy list
};

/// Average communication cost: LP over the full strategy set.
CommCostResult comm_cost_avg(const Behaviour& p, std::uint64_t cap = kDefaultStrategyCap);

/// Worst-case cost: the smallest c whose cost<=c hull contains p.
CommCostResult comm_cost_worst(const Behaviour& p, std::uint64_t cap = kDefaultStrategyCap);

// ---- statistical distance ---------------------------------------------------

/// Kullback-Leibler distance in bits, summed over all inputs and outputs;
/// 0 log(0/q) = 0 and +infinity when the support of p1 escapes p2.
double kl_divergence(const Behaviour& p1, const Behaviour& p2);

struct RelEntropyResult {
  double value = 0;  ///< upper end of the certified bracket [value-gap, value]
  double gap = 0;    ///< final duality gap
  int iterations = 0;
  std::vector<std::pair<std::size_t, double>> weights;  ///< optimal local model
};

/// min_L D(p || L) over the local polytope by pairwise conditional-gradient
/// descent with exact line search; the linear subproblem is an exact sweep
/// over the vertex list. Stops once the duality gap drops below gap_tol.
/// With per_input_average the objective is divided by m_a * m_b.
RelEntropyResult relative_entropy_nl(const Behaviour& p, const VertexSet& vertices,
                                     double gap_tol = 1e-9, int max_iterations = 10000,
                                     bool per_input_average = false);

}  // namespace nsbox
