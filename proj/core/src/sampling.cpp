#include "nsbox/sampling.hpp"

#include <algorithm>
#include <numeric>

#include "nsbox/errors.hpp"

namespace nsbox {

std::vector<Rational> Sampler::convex_weights(int n) {
  std::vector<long> raw(n);
  long total = 0;
  for (auto& v : raw) {
    v = below(16);
    total += v;
  }
  if (total == 0) {
    raw[below(n)] = 1;
    total = 1;
  }
  std::vector<Rational> w(n);
  for (int i = 0; i < n; ++i) w[i] = make_rational(raw[i], total);
  return w;
}

Behaviour Sampler::local_mixture(const VertexSet& vertices, int support) {
  const int k = std::min<int>(support, static_cast<int>(vertices.points.size()));
  const auto w = convex_weights(k);
  std::vector<std::pair<Rational, Behaviour>> terms;
  for (int i = 0; i < k; ++i) {
    const auto& d = vertices.points[below(static_cast<int>(vertices.points.size()))];
    terms.emplace_back(w[i], d.to_behaviour(vertices.setting));
  }
  return mix(terms);
}

Behaviour Sampler::ns_mixture(const VertexSet& vertices,
                              const std::vector<Behaviour>& extremals, int support) {
  if (extremals.empty()) return local_mixture(vertices, support);
  const int k = std::min<int>(support, static_cast<int>(vertices.points.size()));
  const auto w = convex_weights(k + 1);
  std::vector<std::pair<Rational, Behaviour>> terms;
  terms.emplace_back(w[0], extremals[below(static_cast<int>(extremals.size()))]);
  for (int i = 0; i < k; ++i) {
    const auto& d = vertices.points[below(static_cast<int>(vertices.points.size()))];
    terms.emplace_back(w[i + 1], d.to_behaviour(vertices.setting));
  }
  return mix(terms);
}

Behaviour Sampler::nonlocal_mixture(const VertexSet& vertices,
                                    const std::vector<Behaviour>& extremals,
                                    int max_tries) {
  if (extremals.empty())
    throw Error(ErrorCode::bad_setting, "no nonlocal extremal exists for this setting");
  for (int t = 0; t < max_tries; ++t) {
    // Bias the extremal weight above 1/2 so rejections are rare.
    const Behaviour& q = extremals[below(static_cast<int>(extremals.size()))];
    const Rational lambda = make_rational(8 + below(8), 16);
    const Behaviour noise = local_mixture(vertices);
    const Behaviour candidate = mix({{lambda, q}, {1 - lambda, noise}});
    if (!is_local(candidate, vertices).local) return candidate;
  }
  throw Error(ErrorCode::cap_exceeded, "nonlocal rejection sampling exhausted its tries");
}

std::vector<int> Sampler::random_permutation(int n) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  for (int i = n - 1; i > 0; --i) std::swap(p[i], p[below(i + 1)]);
  return p;
}

PartyWiring Sampler::random_party_wiring(int n_inputs, int n_outputs) {
  PartyWiring w;
  w.input_map.resize(n_inputs);
  for (auto& v : w.input_map) v = below(n_inputs);
  w.output_maps.assign(n_inputs, std::vector<int>(n_outputs));
  for (auto& h : w.output_maps)
    for (auto& v : h) v = below(n_outputs);
  return w;
}

LocalWiring Sampler::random_wiring(const Setting& s) {
  return {s, random_party_wiring(s.m_a, s.d_a), random_party_wiring(s.m_b, s.d_b)};
}

LocalWiring Sampler::random_relabeling(const Setting& s) {
  LocalWiring w = LocalWiring::identity(s);
  w.alice.input_map = random_permutation(s.m_a);
  w.bob.input_map = random_permutation(s.m_b);
  for (int x = 0; x < s.m_a; ++x) w.alice.output_maps[x] = random_permutation(s.d_a);
  for (int y = 0; y < s.m_b; ++y) w.bob.output_maps[y] = random_permutation(s.d_b);
  return w;
}

LocalWiring Sampler::random_coarse_graining(const Setting& s) {
  const Party party = below(2) == 0 ? Party::alice : Party::bob;
  const int m = party == Party::alice ? s.m_a : s.m_b;
  const int d = party == Party::alice ? s.d_a : s.d_b;
  std::vector<std::vector<int>> sets(m);
  std::vector<int> reps(m);
  for (int x = 0; x < m; ++x) {
    sets[x] = {below(d)};
    reps[x] = sets[x][0];
  }
  const int x = below(m);
  std::vector<int> members;
  for (int a = 0; a < d; ++a)
    if (below(2) == 1) members.push_back(a);
  if (members.size() < 2 && d >= 2) {
    members = {below(d)};
    int other = below(d);
    while (other == members[0]) other = below(d);
    members.push_back(other);
  }
  sets[x] = members;
  reps[x] = members[below(static_cast<int>(members.size()))];
  return wiring_from_coarse_graining(s, party, sets, reps);
}

LocalWiring Sampler::random_substitution(const Setting& s) {
  const Party party = below(2) == 0 ? Party::alice : Party::bob;
  const int m = party == Party::alice ? s.m_a : s.m_b;
  return wiring_from_substitution(s, party, below(m), below(m));
}

std::vector<Behaviour> pr_family_embeddings(const Setting& s) {
  if (s.m_a < 2 || s.m_b < 2 || s.d_a < 2 || s.d_b < 2) return {};
  std::vector<Behaviour> out;
  for (int k = 2; k <= std::min(s.d_a, s.d_b); ++k) {
    Behaviour b = pr_box(Setting(2, 2, s.d_a, s.d_b), k);
    while (b.setting().m_a < s.m_a) b = enlarge_input_correlated(b, Party::alice, 0);
    while (b.setting().m_b < s.m_b) b = enlarge_input_correlated(b, Party::bob, 0);
    out.push_back(std::move(b));
  }
  return out;
}

}  // namespace nsbox
