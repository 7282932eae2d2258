#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "nsbox/behaviour.hpp"
#include "nsbox/local_polytope.hpp"

namespace nsbox {

inline constexpr std::uint64_t kDefaultWiringCap = 100'000;

enum class Party { alice, bob };

/// One party's half of a deterministic same-setting wiring: an arbitrary
/// self-map of the inputs plus, per displayed input, an arbitrary self-map of
/// the outputs.
struct PartyWiring {
  std::vector<int> input_map;                 // displayed x -> queried input
  std::vector<std::vector<int>> output_maps;  // output_maps[x][raw a] = shown a

  static PartyWiring identity(int n_inputs, int n_outputs);
  bool is_identity() const;
  bool is_relabeling() const;  // all maps bijective

  bool operator==(const PartyWiring&) const = default;
};

/// Canonical deterministic single-copy operation. Acting on a behaviour:
///   P'(ab|xy) = sum over a',b' with hA[x](a')=a, hB[y](b')=b
///               of P(a'b' | gA(x), gB(y)).
/// Relabelings, output coarse grainings and input substitutions are all of
/// this form, and the form is closed under composition.
struct LocalWiring {
  Setting setting;
  PartyWiring alice;
  PartyWiring bob;

  static LocalWiring identity(const Setting& s);
  bool is_relabeling() const { return alice.is_relabeling() && bob.is_relabeling(); }

  bool operator==(const LocalWiring&) const = default;
};

/// Applies `w` to `p`; the result is validated (it is always a valid
/// no-signaling behaviour). Throws Error{setting_mismatch}.
Behaviour apply_wiring(const LocalWiring& w, const Behaviour& p);

/// Wiring whose action is outer after inner: compose(o, i)(p) = o(i(p)).
LocalWiring compose(const LocalWiring& outer, const LocalWiring& inner);

/// Checks that the maps are total on the alphabets of `s`.
void check_wiring_shape(const LocalWiring& w);

// ---- named operations -------------------------------------------------

/// P'(ab|xy) = P(piA_out[x](a) piB_out[y](b) | piA_in(x) piB_in(y)).
/// All maps must be permutations (Error{not_bijective}).
Behaviour relabel(const Behaviour& p, const std::vector<int>& pi_a_in,
                  const std::vector<int>& pi_b_in,
                  const std::vector<std::vector<int>>& pi_a_out,
                  const std::vector<std::vector<int>>& pi_b_out);

LocalWiring wiring_from_relabeling(const Setting& s, const std::vector<int>& pi_a_in,
                                   const std::vector<int>& pi_b_in,
                                   const std::vector<std::vector<int>>& pi_a_out,
                                   const std::vector<std::vector<int>>& pi_b_out);

/// Output coarse graining: for each input x of `party`, the outputs in
/// sets[x] are merged into the representative reps[x] (which must belong to
/// sets[x]); other outputs are untouched, merged-away outputs get zero mass.
Behaviour coarse_grain(const Behaviour& p, Party party,
                       const std::vector<std::vector<int>>& sets,
                       const std::vector<int>& reps);

LocalWiring wiring_from_coarse_graining(const Setting& s, Party party,
                                        const std::vector<std::vector<int>>& sets,
                                        const std::vector<int>& reps);

/// Input substitution: the row of input x2 is replaced by the row of x1.
Behaviour substitute_input(const Behaviour& p, Party party, int x1, int x2);

LocalWiring wiring_from_substitution(const Setting& s, Party party, int x1, int x2);

// ---- setting-changing operations --------------------------------------

/// Splits output `a` of `party` at input `x`: the kept output retains a
/// fraction q of its mass, a fresh output (appended last) gets the rest.
/// Merging the two back recovers the embedded original.
Behaviour unfold_output(const Behaviour& p, Party party, int x, int a, const Rational& q);

/// Regards output a2 as a1 with probability q at input x of `party`;
/// identical to (1-q) p + q G(p) for the merging coarse graining G.
Behaviour partial_merge(const Behaviour& p, Party party, int x, int a1, int a2,
                        const Rational& q);

/// Removes the listed inputs of `party`; at least one input must remain.
Behaviour shorten_input(const Behaviour& p, Party party, const std::vector<int>& drop);

/// Appends one input whose outcome is deterministic (value) and uncorrelated
/// with the other party.
Behaviour enlarge_input_uncorrelated(const Behaviour& p, Party party, int value);

/// Appends one input that behaves exactly like the existing input `source`.
Behaviour enlarge_input_correlated(const Behaviour& p, Party party, int source);

// ---- enumeration and the ordering oracle ------------------------------

std::uint64_t wiring_count(const Setting& s);

/// All same-setting wirings, identity first, the rest in mixed-radix order
/// over per-input (g(x), h[x]) blocks (Alice major). The list is closed
/// under composition. Throws Error{cap_exceeded}.
std::vector<LocalWiring> enumerate_wirings(const Setting& s,
                                           std::uint64_t cap = kDefaultWiringCap);

std::uint64_t party_wiring_count(int n_inputs, int n_outputs);
std::vector<PartyWiring> enumerate_party_wirings(int n_inputs, int n_outputs,
                                                 std::uint64_t cap = kDefaultWiringCap);

std::uint64_t relabeling_count(const Setting& s);
/// All relabelings (input permutation + per-input output permutations per
/// party), identity first (lexicographic enumeration starts at it).
std::vector<LocalWiring> enumerate_relabelings(const Setting& s,
                                               std::uint64_t cap = kDefaultWiringCap);

/// Witness or refutation for "p2 is reachable from p1", i.e. whether
/// p2 = p0 L + sum_i q_i O_i(p1) for convex weights, a local L and
/// same-setting wirings O_i.
struct OrderingVerdict {
  bool holds = false;
  /// Reachable branch: weights over local vertices (p0 L expanded) and over
  /// wiring indices in enumerate_wirings order. Together they are convex and
  /// reproduce p2 exactly.
  std::vector<std::pair<std::size_t, Rational>> vertex_weights;
  std::vector<std::pair<std::size_t, Rational>> wiring_weights;
  /// Unreachable branch: Farkas multipliers, one per table entry plus one for
  /// the weight-sum row; for every column c of the feasibility system,
  /// dot(farkas, [c;1]) >= 0 while dot(farkas, [p2;1]) < 0.
  std::vector<Rational> farkas;
};

OrderingVerdict compare(const Behaviour& p1, const Behaviour& p2,
                        std::uint64_t wiring_cap = kDefaultWiringCap,
                        std::uint64_t vertex_cap = kDefaultVertexCap);

/// compare against pre-enumerated vertices and wirings (cache-friendly).
OrderingVerdict compare(const Behaviour& p1, const Behaviour& p2,
                        const VertexSet& vertices,
                        const std::vector<LocalWiring>& wirings);

/// compare in both directions.
bool equally_nonlocal(const Behaviour& p1, const Behaviour& p2,
                      std::uint64_t wiring_cap = kDefaultWiringCap,
                      std::uint64_t vertex_cap = kDefaultVertexCap);

}  // namespace nsbox
