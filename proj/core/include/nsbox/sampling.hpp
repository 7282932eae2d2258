#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "nsbox/behaviour.hpp"
#include "nsbox/local_polytope.hpp"
#include "nsbox/wiring.hpp"

namespace nsbox {

/// Seeded generator of exactly-representable test behaviours and operations.
/// Mixtures use small-integer weights normalized to rationals, so every
/// sample is exact; no-signaling samples mix deterministic points with the
/// extremal two-input family embedded into the requested setting. The
/// distribution is convenient, not uniform.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  std::uint64_t next() { return rng_(); }
  int below(int n) { return static_cast<int>(rng_() % static_cast<std::uint64_t>(n)); }

  /// n nonnegative rationals summing to 1, at least one positive.
  std::vector<Rational> convex_weights(int n);

  Behaviour local_mixture(const VertexSet& vertices, int support = 3);

  /// Convex mixture over vertices plus `extremals` (one extremal always gets
  /// positive weight when available).
  Behaviour ns_mixture(const VertexSet& vertices, const std::vector<Behaviour>& extremals,
                       int support = 3);

  /// Rejection-samples ns_mixture until the membership oracle reports
  /// nonlocal; throws Error{cap_exceeded} after max_tries rejections.
  Behaviour nonlocal_mixture(const VertexSet& vertices,
                             const std::vector<Behaviour>& extremals, int max_tries = 64);

  PartyWiring random_party_wiring(int n_inputs, int n_outputs);
  LocalWiring random_wiring(const Setting& s);
  LocalWiring random_relabeling(const Setting& s);
  /// Merges a random nonempty output set at a random input of a random party.
  LocalWiring random_coarse_graining(const Setting& s);
  LocalWiring random_substitution(const Setting& s);

  std::mt19937_64& rng() { return rng_; }

 private:
  std::vector<int> random_permutation(int n);
  std::mt19937_64 rng_;
};

/// The extremal two-input boxes P_PR^(k), k = 2..min(dA,dB), embedded into
/// `s` by zero-padding outputs and duplicating input 1 (correlated input
/// largening) up to the requested input counts. Empty when the setting has a
/// trivial party (every behaviour is then local).
std::vector<Behaviour> pr_family_embeddings(const Setting& s);

}  // namespace nsbox
