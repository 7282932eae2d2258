#include <doctest.h>

#include "nsbox/errors.hpp"
#include "nsbox/local_polytope.hpp"
#include "nsbox/measures.hpp"
#include "nsbox/sampling.hpp"
#include "nsbox/wiring.hpp"

using namespace nsbox;

namespace {
Rational R(const char* s) { return parse_rational(s); }

Behaviour reconstruct(const VertexSet& vs,
                      const std::vector<std::pair<std::size_t, Rational>>& weights) {
  std::vector<std::pair<Rational, Behaviour>> terms;
  for (const auto& [i, w] : weights)
    terms.emplace_back(w, vs.points[i].to_behaviour(vs.setting));
  return mix(terms);
}
}  // namespace

TEST_CASE("deterministic point counts") {
  CHECK(enumerate_deterministic(Setting(2, 2, 2, 2)).size() == 16);
  CHECK(enumerate_deterministic(Setting(3, 3, 2, 2)).size() == 64);
  CHECK(enumerate_deterministic(Setting(2, 2, 3, 3)).size() == 81);
  CHECK(enumerate_deterministic(Setting(1, 1, 1, 1)).size() == 1);
  CHECK_THROWS_AS(enumerate_deterministic(Setting(2, 2, 2, 2), 10), Error);
}

TEST_CASE("enumeration is lexicographic in (f,g)") {
  const auto pts = enumerate_deterministic(Setting(2, 2, 2, 2));
  CHECK(pts.front().f == std::vector<int>{0, 0});
  CHECK(pts.front().g == std::vector<int>{0, 0});
  CHECK(pts[1].g == std::vector<int>{0, 1});
  CHECK(pts[4].f == std::vector<int>{0, 1});
  CHECK(pts.back().f == std::vector<int>{1, 1});
  CHECK(pts.back().g == std::vector<int>{1, 1});
}

TEST_CASE("every deterministic point is local with a unit weight") {
  const Setting s(2, 2, 2, 2);
  const VertexSet vs = VertexSet::make(s);
  for (std::size_t i = 0; i < vs.points.size(); ++i) {
    const auto verdict = is_local(vs.points[i].to_behaviour(s), vs);
    REQUIRE(verdict.local);
    REQUIRE(verdict.weights.size() == 1);
    CHECK(verdict.weights[0].first == i);
    CHECK(verdict.weights[0].second == 1);
  }
}

TEST_CASE("the PR box is nonlocal with a self-verifying certificate") {
  const Setting s(2, 2, 2, 2);
  const VertexSet vs = VertexSet::make(s);
  const Behaviour pr = pr_box(s);
  const auto verdict = is_local(pr, vs);
  REQUIRE_FALSE(verdict.local);
  CHECK(verdict.violation > 0);
  CHECK(verdict.certificate.value(pr) - verdict.certificate.bound == verdict.violation);
  for (const auto& t : vs.tables)
    CHECK(verdict.certificate.value(t) <= verdict.certificate.bound);

  SUBCASE("CHSH-mode normalization reproduces the hand-built functional's violation") {
    const BellFunctional n =
        normalize_certificate(verdict.certificate, pr, vs, CertNormalization::chsh);
    CHECK(n.bound == 2);
    CHECK(n.value(pr) - n.bound == 2);
    const BellFunctional hand = chsh_functional(s);
    CHECK(hand.value(pr) - hand.bound == 2);
  }
}

TEST_CASE("locality flips exactly at the isotropic boundary") {
  const Setting s(2, 2, 2, 2);
  const VertexSet vs = VertexSet::make(s);
  const Behaviour pr = pr_box(s);
  const Behaviour u = uniform_behaviour(s);
  auto iso = [&](const Rational& lam) { return mix({{lam, pr}, {1 - lam, u}}); };

  CHECK(is_local(iso(R("1/2")), vs).local);
  CHECK_FALSE(is_local(iso(R("1/2") + R("1/1024")), vs).local);
  CHECK(is_local(iso(R("1/4")), vs).local);
  CHECK_FALSE(is_local(iso(R("1")), vs).local);
}

TEST_CASE("PR boxes are nonlocal for every k") {
  const Setting s(2, 2, 3, 3);
  const VertexSet vs = VertexSet::make(s);
  CHECK_FALSE(is_local(pr_box(s, 2), vs).local);
  CHECK_FALSE(is_local(pr_box(s, 3), vs).local);
}

TEST_CASE("completeness on random vertex mixtures") {
  const Setting s(2, 2, 2, 2);
  const VertexSet vs = VertexSet::make(s);
  Sampler sampler(17);
  for (int t = 0; t < 25; ++t) {
    const Behaviour p = sampler.local_mixture(vs, 4);
    const auto verdict = is_local(p, vs);
    REQUIRE(verdict.local);
    CHECK(reconstruct(vs, verdict.weights) == p);
  }
}

TEST_CASE("local decompositions") {
  const Setting s(2, 2, 2, 2);
  const VertexSet vs = VertexSet::make(s);

  SUBCASE("uniform behaviour reconstructs exactly") {
    const Behaviour u = uniform_behaviour(s);
    const auto w = local_decomposition(u, vs);
    CHECK(reconstruct(vs, w) == u);
  }
  SUBCASE("deterministic point gets a unit weight") {
    const auto w = local_decomposition(deterministic_point(s, {1, 0}, {0, 1}), vs);
    REQUIRE(w.size() == 1);
    CHECK(w[0].second == 1);
  }
  SUBCASE("boundary mixture has a basic-solution support") {
    const Behaviour m = mix({{R("1/2"), pr_box(s)}, {R("1/2"), uniform_behaviour(s)}});
    const auto w = local_decomposition(m, vs);
    CHECK(w.size() <= s.table_size() + 1);
    CHECK(reconstruct(vs, w) == m);
  }
  SUBCASE("nonlocal input throws") {
    CHECK_THROWS_AS(local_decomposition(pr_box(s), vs), Error);
  }
}

TEST_CASE("certificate normalization modes") {
  const Setting s(2, 2, 2, 2);
  const VertexSet vs = VertexSet::make(s);
  const Behaviour pr = pr_box(s);
  const BellFunctional hand = chsh_functional(s);

  SUBCASE("a scaled CHSH comes back to bound 2 with the same violating set") {
    BellFunctional tripled = hand;
    for (auto& v : tripled.s) v *= 3;
    tripled.bound *= 3;
    const BellFunctional back =
        normalize_certificate(tripled, pr, vs, CertNormalization::chsh);
    CHECK(back.bound == 2);
    CHECK(back.s == hand.s);
  }
  SUBCASE("unit-bound mode scales to S = 1") {
    const BellFunctional n = normalize_certificate(hand, pr, vs);
    CHECK(n.bound == 1);
    CHECK(n.value(pr) - n.bound == 1);
  }
  SUBCASE("non-violating certificate is refused") {
    CHECK_THROWS_AS(
        normalize_certificate(hand, uniform_behaviour(s), vs, CertNormalization::chsh),
        Error);
  }
}

TEST_CASE("gauge projection never changes violations") {
  const Setting s(2, 2, 2, 2);
  const VertexSet vs = VertexSet::make(s);
  const Behaviour pr = pr_box(s);
  Sampler sampler(5);
  for (int t = 0; t < 10; ++t) {
    std::vector<Rational> f(s.table_size());
    for (auto& v : f) v = Rational(sampler.below(7) - 3);
    const std::vector<Rational> g = project_functional(s, f);
    const BellFunctional bf{f, 0}, bg{g, 0};
    // differences of hull points see the projected and raw functional alike
    const Behaviour q = sampler.local_mixture(vs);
    CHECK(bf.value(pr) - bf.value(q) == bg.value(pr) - bg.value(q));
  }
}

TEST_CASE("locality is preserved by output coarse graining") {
  const Setting s(2, 2, 3, 3);
  const VertexSet vs = VertexSet::make(s);
  Sampler sampler(23);
  for (int t = 0; t < 8; ++t) {
    const Behaviour p = sampler.local_mixture(vs, 4);
    REQUIRE(is_local(p, vs).local);
    const LocalWiring g = sampler.random_coarse_graining(s);
    CHECK(is_local(apply_wiring(g, p), vs).local);
  }
}

TEST_CASE("settings with a trivial party are always local") {
  const Setting s(1, 2, 3, 2);
  const VertexSet vs = VertexSet::make(s);
  Sampler sampler(3);
  for (int t = 0; t < 5; ++t) CHECK(is_local(sampler.ns_mixture(vs, {}), vs).local);
}
