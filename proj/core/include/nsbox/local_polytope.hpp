#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "nsbox/behaviour.hpp"
#include "nsbox/lp.hpp"

namespace nsbox {

inline constexpr std::uint64_t kDefaultVertexCap = 1'000'000;

/// Local deterministic strategy pair: a = f[x], b = g[y] (0-based).
struct DeterministicPoint {
  std::vector<int> f;
  std::vector<int> g;

  bool operator==(const DeterministicPoint&) const = default;

  std::vector<Rational> table(const Setting& s) const;
  Behaviour to_behaviour(const Setting& s) const;
};

/// All d_A^m_A * d_B^m_B deterministic points in lexicographic (f,g) order.
/// Throws Error{cap_exceeded} when the count exceeds `cap`.
std::vector<DeterministicPoint> enumerate_deterministic(
    const Setting& setting, std::uint64_t cap = kDefaultVertexCap);

std::uint64_t deterministic_count(const Setting& setting);

/// Vertex list together with the dense tables used as LP columns.
struct VertexSet {
  Setting setting;
  std::vector<DeterministicPoint> points;
  std::vector<std::vector<Rational>> tables;

  static VertexSet make(const Setting& setting, std::uint64_t cap = kDefaultVertexCap);
};

/// Linear functional s with local bound S: s.L <= S for every local L.
struct BellFunctional {
  std::vector<Rational> s;
  Rational bound = 0;

  Rational value(const std::vector<Rational>& table) const;
  Rational value(const Behaviour& p) const { return value(p.table()); }
};

/// Exact maximum of s over the deterministic points.
Rational local_bound(const std::vector<Rational>& s, const VertexSet& vertices);

/// Result of the membership test. Exactly one of the two branches is filled.
struct LocalityVerdict {
  bool local = false;
  /// Local branch: sparse convex weights over vertex indices, reproducing p
  /// entrywise exactly.
  std::vector<std::pair<std::size_t, Rational>> weights;
  /// Nonlocal branch: certificate with s.p - bound = violation > 0, where the
  /// bound was recomputed by an exact sweep over all vertices.
  BellFunctional certificate;
  Rational violation = 0;
};

LocalityVerdict is_local(const Behaviour& p, const VertexSet& vertices);
LocalityVerdict is_local(const Behaviour& p, std::uint64_t cap = kDefaultVertexCap);

/// The weights of a Local verdict; throws Error{not_local} otherwise.
std::vector<std::pair<std::size_t, Rational>> local_decomposition(
    const Behaviour& p, const VertexSet& vertices);

enum class CertNormalization {
  unit_bound,  ///< scale so S = 1 (S > 0), else unit sup-norm
  chsh,        ///< scale so S = 2 (S > 0), else unit sup-norm
};

/// Removes from `s` its component inside the span of the per-block
/// normalization indicators and the no-signaling rows. Functionals in that
/// span are constant on the no-signaling affine hull, so this changes no
/// violation; it picks a canonical representative of the equivalence class.
std::vector<Rational> project_functional(const Setting& s, const std::vector<Rational>& f);

/// Gauge-fixes via project_functional, tightens the bound by a vertex sweep,
/// and rescales by a positive rational; violating and tight vertex sets are
/// preserved. Throws Error{not_violating} unless s.p > S to begin with.
BellFunctional normalize_certificate(const BellFunctional& c, const Behaviour& p,
                                     const VertexSet& vertices,
                                     CertNormalization mode = CertNormalization::unit_bound);

}  // namespace nsbox
