#include <doctest.h>

#include <algorithm>
#include <set>
#include <unordered_set>

#include "nsbox/errors.hpp"
#include "nsbox/sampling.hpp"
#include "nsbox/wiring.hpp"

using namespace nsbox;

namespace {

Rational R(const char* s) { return parse_rational(s); }

Rational correlator(const Behaviour& p, int x, int y) {
  Rational c = 0;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) c += Rational(((a + b) % 2 == 0) ? 1 : -1) * p.at(a, b, x, y);
  return c;
}

std::uint64_t wiring_code(const LocalWiring& w) {
  std::uint64_t code = 0;
  auto party = [&](const PartyWiring& pw, int m, int d) {
    for (int x = 0; x < m; ++x) {
      code = code * m + pw.input_map[x];
      for (int a = 0; a < d; ++a) code = code * d + pw.output_maps[x][a];
    }
  };
  party(w.alice, w.setting.m_a, w.setting.d_a);
  party(w.bob, w.setting.m_b, w.setting.d_b);
  return code;
}

}  // namespace

TEST_CASE("identity wiring leaves behaviours unchanged") {
  const Setting s(2, 2, 3, 3);
  const Behaviour pr = pr_box(s, 3);
  CHECK(apply_wiring(LocalWiring::identity(s), pr) == pr);
}

TEST_CASE("wiring counts") {
  CHECK(party_wiring_count(2, 2) == 64);
  CHECK(wiring_count(Setting(2, 2, 2, 2)) == 4096);
  CHECK(wiring_count(Setting(1, 1, 1, 1)) == 1);
  CHECK(relabeling_count(Setting(2, 2, 2, 2)) == 64);
  CHECK(relabeling_count(Setting(2, 2, 3, 3)) == 5184);
}

TEST_CASE("enumeration: size, identity first, no duplicates") {
  const Setting s(2, 2, 2, 2);
  const auto ws = enumerate_wirings(s);
  REQUIRE(ws.size() == 4096);
  CHECK(ws.front() == LocalWiring::identity(s));
  std::set<std::uint64_t> codes;
  for (const auto& w : ws) codes.insert(wiring_code(w));
  CHECK(codes.size() == 4096);
  CHECK(enumerate_wirings(Setting(1, 1, 1, 1)).size() == 1);
  CHECK_THROWS_AS(enumerate_wirings(Setting(2, 2, 3, 3)), Error);  // default cap
}

TEST_CASE("composition stays inside the enumerated set (sampled)") {
  const Setting s(2, 2, 2, 2);
  const auto ws = enumerate_wirings(s);
  std::unordered_set<std::uint64_t> codes;
  for (const auto& w : ws) codes.insert(wiring_code(w));
  Sampler sampler(7);
  const Behaviour pr = pr_box(s);
  for (int t = 0; t < 60; ++t) {
    const LocalWiring& u = ws[sampler.below(4096)];
    const LocalWiring& v = ws[sampler.below(4096)];
    const LocalWiring c = compose(u, v);
    CHECK(codes.count(wiring_code(c)) == 1);
    // the composite acts as the two-step application
    CHECK(apply_wiring(c, pr) == apply_wiring(u, apply_wiring(v, pr)));
  }
}

TEST_CASE("generators reach the whole monoid by BFS") {
  const Setting s(2, 2, 2, 2);
  std::vector<LocalWiring> gens;
  for (const auto& r : enumerate_relabelings(s)) gens.push_back(r);
  for (const Party party : {Party::alice, Party::bob})
    for (int x = 0; x < 2; ++x)
      for (int rep = 0; rep < 2; ++rep) {
        std::vector<std::vector<int>> sets{{0}, {0}};
        std::vector<int> reps{0, 0};
        sets[x] = {0, 1};
        reps[x] = rep;
        gens.push_back(wiring_from_coarse_graining(s, party, sets, reps));
      }
  for (const Party party : {Party::alice, Party::bob})
    for (int x1 = 0; x1 < 2; ++x1)
      for (int x2 = 0; x2 < 2; ++x2)
        if (x1 != x2) gens.push_back(wiring_from_substitution(s, party, x1, x2));

  std::unordered_set<std::uint64_t> reached;
  std::vector<LocalWiring> frontier{LocalWiring::identity(s)};
  reached.insert(wiring_code(frontier[0]));
  while (!frontier.empty()) {
    std::vector<LocalWiring> next;
    for (const auto& w : frontier)
      for (const auto& g : gens) {
        const LocalWiring c = compose(g, w);
        if (reached.insert(wiring_code(c)).second) next.push_back(c);
      }
    frontier = std::move(next);
  }
  CHECK(reached.size() == 4096);
}

TEST_CASE("relabeling acts as stated and is involutive when built from swaps") {
  const Setting s(2, 2, 2, 2);
  const Behaviour pr = pr_box(s);
  // swap Alice's outputs at her second input only
  const std::vector<int> id_in{0, 1};
  const std::vector<std::vector<int>> swap_second{{0, 1}, {1, 0}};
  const std::vector<std::vector<int>> id_out{{0, 1}, {0, 1}};
  const Behaviour q = relabel(pr, id_in, id_in, swap_second, id_out);

  CHECK(correlator(pr, 0, 0) == 1);
  CHECK(correlator(pr, 1, 1) == -1);
  CHECK(correlator(q, 0, 0) == 1);
  CHECK(correlator(q, 0, 1) == 1);
  CHECK(correlator(q, 1, 0) == -1);
  CHECK(correlator(q, 1, 1) == 1);

  CHECK(relabel(q, id_in, id_in, swap_second, id_out) == pr);
  CHECK_THROWS_AS(relabel(pr, {0, 0}, id_in, id_out, id_out), Error);
}

TEST_CASE("relabelings preserve local verdicts") {
  const Setting s(2, 2, 2, 2);
  const VertexSet vs = VertexSet::make(s);
  Sampler sampler(19);
  for (int t = 0; t < 6; ++t) {
    const Behaviour p = sampler.local_mixture(vs);
    CHECK(is_local(apply_wiring(sampler.random_relabeling(s), p), vs).local);
  }
}

TEST_CASE("named constructors agree with their wiring forms") {
  const Setting s(2, 2, 3, 3);
  Sampler sampler(11);
  const VertexSet vs = VertexSet::make(s);
  for (int t = 0; t < 6; ++t) {
    const Behaviour p = sampler.ns_mixture(vs, pr_family_embeddings(s));

    std::vector<int> pa{1, 0}, pb{0, 1};
    std::vector<std::vector<int>> oa{{2, 0, 1}, {0, 1, 2}}, ob{{1, 0, 2}, {2, 1, 0}};
    CHECK(relabel(p, pa, pb, oa, ob) ==
          apply_wiring(wiring_from_relabeling(s, pa, pb, oa, ob), p));

    std::vector<std::vector<int>> sets{{0, 2}, {1}};
    std::vector<int> reps{0, 1};
    CHECK(coarse_grain(p, Party::alice, sets, reps) ==
          apply_wiring(wiring_from_coarse_graining(s, Party::alice, sets, reps), p));

    CHECK(substitute_input(p, Party::bob, 0, 1) ==
          apply_wiring(wiring_from_substitution(s, Party::bob, 0, 1), p));
  }
}

TEST_CASE("coarse graining edge cases") {
  const Setting s(2, 2, 3, 3);
  const Behaviour pr = pr_box(s, 3);
  SUBCASE("singleton sets are the identity") {
    const std::vector<std::vector<int>> sets{{1}, {2}};
    const std::vector<int> reps{1, 2};
    CHECK(coarse_grain(pr, Party::alice, sets, reps) == pr);
  }
  SUBCASE("merging all Alice outputs makes her side deterministic and local") {
    const std::vector<std::vector<int>> sets{{0, 1, 2}, {0, 1, 2}};
    const std::vector<int> reps{0, 0};
    const Behaviour q = coarse_grain(pr, Party::alice, sets, reps);
    for (int x = 0; x < 2; ++x) CHECK(q.marginal_a(0, x) == 1);
    CHECK(is_local(q, VertexSet::make(s)).local);
  }
  SUBCASE("representative must belong to its set") {
    const std::vector<std::vector<int>> sets{{0, 1}, {0}};
    const std::vector<int> reps{2, 0};
    CHECK_THROWS_AS(coarse_grain(pr, Party::alice, sets, reps), Error);
  }
}

TEST_CASE("input substitution on the PR box gives a local behaviour") {
  const Setting s(2, 2, 2, 2);
  const Behaviour pr = pr_box(s);
  const VertexSet vs = VertexSet::make(s);
  CHECK(substitute_input(pr, Party::alice, 0, 0) == pr);
  CHECK(is_local(substitute_input(pr, Party::alice, 0, 1), vs).local);
  CHECK(is_local(substitute_input(pr, Party::bob, 1, 0), vs).local);
  const Behaviour d = deterministic_point(s, {0, 1}, {1, 0});
  CHECK(substitute_input(d, Party::alice, 0, 1) ==
        deterministic_point(s, {0, 0}, {1, 0}));
}

TEST_CASE("output unfolding and its inverse") {
  const Setting s(2, 2, 2, 2);
  const Behaviour pr = pr_box(s);

  SUBCASE("q=1 keeps the original rows, the new output is empty") {
    const Behaviour u = unfold_output(pr, Party::alice, 0, 0, Rational(1));
    CHECK(u == embed_outputs(pr, 3, 2));
  }
  SUBCASE("q=1/2 splits the mass and re-merging restores the embedding") {
    const Behaviour u = unfold_output(pr, Party::alice, 0, 0, R("1/2"));
    CHECK(u.at(0, 0, 0, 0) == R("1/4"));
    CHECK(u.at(2, 0, 0, 0) == R("1/4"));
    CHECK(u.at(0, 0, 1, 0) == R("1/2"));
    const std::vector<std::vector<int>> sets{{0, 2}, {0, 2}};
    const std::vector<int> reps{0, 0};
    CHECK(coarse_grain(u, Party::alice, sets, reps) == embed_outputs(pr, 3, 2));
  }
  SUBCASE("unfold then merge into another output equals a partial merge") {
    const Behaviour u = unfold_output(pr, Party::alice, 0, 1, R("2/3"));
    const std::vector<std::vector<int>> sets{{0, 2}, {0}};
    const std::vector<int> reps{0, 0};
    const Behaviour merged = coarse_grain(u, Party::alice, sets, reps);
    const Behaviour direct = partial_merge(pr, Party::alice, 0, 0, 1, R("1/3"));
    CHECK(merged == embed_outputs(direct, 3, 2));
  }
  SUBCASE("bad fraction") {
    CHECK_THROWS_AS(unfold_output(pr, Party::alice, 0, 0, R("3/2")), Error);
  }
}

TEST_CASE("partial merge endpoints") {
  const Setting s(2, 2, 3, 3);
  const Behaviour pr = pr_box(s, 3);
  const std::vector<std::vector<int>> sets{{0, 1}, {0}};
  const std::vector<int> reps{0, 0};
  CHECK(partial_merge(pr, Party::alice, 0, 0, 1, Rational(0)) == pr);
  CHECK(partial_merge(pr, Party::alice, 0, 0, 1, Rational(1)) ==
        coarse_grain(pr, Party::alice, sets, reps));
  CHECK_THROWS_AS(partial_merge(pr, Party::alice, 0, 1, 1, R("1/2")), Error);

  const VertexSet vs = VertexSet::make(s);
  Sampler sampler(29);
  const Behaviour loc = sampler.local_mixture(vs);
  CHECK(is_local(partial_merge(loc, Party::bob, 1, 2, 0, R("1/3")), vs).local);
}

TEST_CASE("input shortening") {
  const Setting s(2, 2, 2, 2);
  const Behaviour pr = pr_box(s);
  SUBCASE("dropping nothing is the identity") {
    CHECK(shorten_input(pr, Party::alice, {}) == pr);
  }
  SUBCASE("single-input margins of the PR box are local") {
    const Behaviour q = shorten_input(pr, Party::alice, {1});
    CHECK(q.setting() == Setting(1, 2, 2, 2));
    CHECK(is_local(q, VertexSet::make(q.setting())).local);
  }
  SUBCASE("cannot drop everything") {
    CHECK_THROWS_AS(shorten_input(pr, Party::bob, {0, 1}), Error);
  }
}

TEST_CASE("input largening") {
  const Setting s(2, 2, 2, 2);
  const Behaviour pr = pr_box(s);

  SUBCASE("uncorrelated largening then shortening the new input restores p") {
    const Behaviour e = enlarge_input_uncorrelated(pr, Party::alice, 1);
    CHECK(e.setting() == Setting(3, 2, 2, 2));
    CHECK(e.at(1, 0, 2, 0) == R("1/2"));
    CHECK(e.at(0, 0, 2, 0) == 0);
    CHECK(shorten_input(e, Party::alice, {2}) == pr);
  }
  SUBCASE("correlated copy keeps nonlocality") {
    const Behaviour e = enlarge_input_correlated(pr, Party::alice, 0);
    CHECK(shorten_input(e, Party::alice, {2}) == pr);
    CHECK_FALSE(is_local(e, VertexSet::make(e.setting())).local);
  }
  SUBCASE("correlated copy of a local behaviour stays local") {
    const VertexSet vs = VertexSet::make(s);
    Sampler sampler(31);
    const Behaviour loc = sampler.local_mixture(vs);
    const Behaviour e = enlarge_input_correlated(loc, Party::bob, 1);
    CHECK(is_local(e, VertexSet::make(e.setting())).local);
  }
  SUBCASE("shorten then correlated largening back is an input substitution") {
    const Behaviour sub = substitute_input(pr, Party::alice, 0, 1);
    const Behaviour round =
        enlarge_input_correlated(shorten_input(pr, Party::alice, {1}), Party::alice, 0);
    CHECK(round == sub);
  }
  SUBCASE("bad source") {
    CHECK_THROWS_AS(enlarge_input_correlated(pr, Party::alice, 5), Error);
    CHECK_THROWS_AS(enlarge_input_uncorrelated(pr, Party::bob, 7), Error);
  }
}

TEST_CASE("wirings map deterministic points to deterministic points") {
  const Setting s(2, 2, 2, 2);
  const VertexSet vs = VertexSet::make(s);
  Sampler sampler(13);
  for (int t = 0; t < 40; ++t) {
    const LocalWiring w = sampler.random_wiring(s);
    const auto& d = vs.points[sampler.below(16)];
    const Behaviour img = apply_wiring(w, d.to_behaviour(s));
    int units = 0;
    for (const auto& v : img.table()) {
      CHECK((v == 0 || v == 1));
      if (v == 1) ++units;
    }
    CHECK(units == 4);
  }
}

TEST_CASE("ordering oracle") {
  const Setting s(2, 2, 2, 2);
  const Behaviour pr = pr_box(s);
  const Behaviour u = uniform_behaviour(s);
  const VertexSet vs = VertexSet::make(s);

  SUBCASE("reflexivity") {
    const auto v = compare(pr, pr);
    REQUIRE(v.holds);
  }
  SUBCASE("everything local is below PR") {
    Sampler sampler(37);
    for (int t = 0; t < 5; ++t) CHECK(compare(pr, sampler.local_mixture(vs)).holds);
  }
  SUBCASE("PR is not reachable from the uniform behaviour; the farkas checks out") {
    const auto v = compare(u, pr);
    REQUIRE_FALSE(v.holds);
    REQUIRE(v.farkas.size() == s.table_size() + 1);
    const Rational& ysum = v.farkas[s.table_size()];
    for (const auto& t : vs.tables) {
      Rational dot = ysum;
      for (std::size_t e = 0; e < t.size(); ++e) dot += v.farkas[e] * t[e];
      CHECK(dot >= 0);
    }
    for (const auto& w : enumerate_wirings(s)) {
      const Behaviour img = apply_wiring(w, u);
      Rational dot = ysum;
      for (std::size_t e = 0; e < img.table().size(); ++e)
        dot += v.farkas[e] * img.table()[e];
      CHECK(dot >= 0);
    }
    Rational target = ysum;
    for (std::size_t e = 0; e < pr.table().size(); ++e)
      target += v.farkas[e] * pr.table()[e];
    CHECK(target < 0);
  }
  SUBCASE("mixtures below PR are reachable, with an exact witness") {
    Sampler sampler(41);
    const auto ws = enumerate_wirings(s);
    for (int t = 0; t < 4; ++t) {
      const Rational lam = make_rational(sampler.below(17), 16);
      const Behaviour target = mix({{lam, pr}, {1 - lam, sampler.local_mixture(vs)}});
      const auto v = compare(pr, target);
      REQUIRE(v.holds);
      std::vector<std::pair<Rational, Behaviour>> terms;
      for (const auto& [i, wt] : v.vertex_weights)
        terms.emplace_back(wt, vs.points[i].to_behaviour(s));
      for (const auto& [i, wt] : v.wiring_weights)
        terms.emplace_back(wt, apply_wiring(ws[i], pr));
      CHECK(mix(terms) == target);
    }
  }
  SUBCASE("setting mismatch is refused") {
    CHECK_THROWS_AS(compare(pr, uniform_behaviour(Setting(2, 2, 3, 3))), Error);
  }
}

TEST_CASE("equally nonlocal") {
  const Setting s(2, 2, 2, 2);
  const Behaviour pr = pr_box(s);
  Sampler sampler(43);
  const LocalWiring r = sampler.random_relabeling(s);
  CHECK(equally_nonlocal(pr, apply_wiring(r, pr)));
  CHECK_FALSE(equally_nonlocal(pr, uniform_behaviour(s)));
  const Behaviour d1 = deterministic_point(s, {0, 1}, {1, 1});
  const Behaviour d2 = deterministic_point(s, {1, 1}, {0, 1});
  CHECK(equally_nonlocal(d1, d2));
}
