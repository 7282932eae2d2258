#include <doctest.h>

#include <cmath>

#include "nsbox/errors.hpp"
#include "nsbox/measures.hpp"
#include "nsbox/sampling.hpp"

using namespace nsbox;

namespace {
Rational R(const char* s) { return parse_rational(s); }

Behaviour isotropic(const Rational& lam) {
  const Setting s(2, 2, 2, 2);
  return mix({{lam, pr_box(s)}, {1 - lam, uniform_behaviour(s)}});
}
}  // namespace

TEST_CASE("CHSH values") {
  const Setting s(2, 2, 2, 2);
  CHECK(chsh(pr_box(s)).value == 2);
  CHECK(chsh(deterministic_point(s, {0, 0}, {0, 0})).value == 0);
  CHECK(chsh(uniform_behaviour(s)).value == 0);
  CHECK(chsh(isotropic(R("3/4"))).value == 1);
  CHECK(chsh(isotropic(R("1/2"))).value == 0);
  CHECK_THROWS_AS(chsh(uniform_behaviour(Setting(3, 2, 2, 2))), Error);
}

TEST_CASE("CHSH functional structure") {
  const Setting s(2, 2, 3, 3);
  const BellFunctional f = chsh_functional(s);
  CHECK(f.bound == 2);
  CHECK(f.s[s.index(0, 0, 0, 0)] == 1);
  CHECK(f.s[s.index(0, 1, 0, 0)] == -1);
  CHECK(f.s[s.index(2, 0, 0, 0)] == 0);  // third outputs carry value 0
  CHECK(f.s[s.index(0, 0, 1, 1)] == -1);
  // the stated bound is tight over the 81 deterministic points
  CHECK(local_bound(f.s, VertexSet::make(s)) == 2);
}

TEST_CASE("the coarse-graining counterexample on the three-output box") {
  const Setting s(2, 2, 3, 3);
  const Behaviour pr3 = pr_box(s, 3);
  const BellFunctional f = chsh_functional(s);

  CHECK(bell_value(pr3, f, BellMode::relabelings).value == R("1/3"));
  CHECK(bell_value(pr3, f, BellMode::all_wirings).value == R("4/3"));

  const std::vector<std::vector<int>> sets{{0, 2}, {0, 2}};
  const std::vector<int> reps{0, 0};
  const Behaviour merged =
      coarse_grain(coarse_grain(pr3, Party::alice, sets, reps), Party::bob, sets, reps);
  CHECK(bell_value(merged, f, BellMode::relabelings).value == R("4/3"));
}

TEST_CASE("bell_value witnesses reproduce the reported maximum") {
  const Setting s(2, 2, 3, 3);
  const Behaviour pr3 = pr_box(s, 3);
  const BellFunctional f = chsh_functional(s);
  for (const BellMode mode : {BellMode::relabelings, BellMode::all_wirings}) {
    const BellValueResult r = bell_value(pr3, f, mode);
    CHECK(f.value(apply_wiring(r.op, pr3)) == r.best);
  }
}

TEST_CASE("bell_value in all-wirings mode dominates the relabelings mode") {
  const Setting s(2, 2, 2, 2);
  const BellFunctional f = chsh_functional(s);
  Sampler sampler(57);
  const VertexSet vs = VertexSet::make(s);
  const auto prs = pr_family_embeddings(s);
  for (int t = 0; t < 5; ++t) {
    const Behaviour p = sampler.ns_mixture(vs, prs);
    CHECK(bell_value(p, f, BellMode::all_wirings).best >=
          bell_value(p, f, BellMode::relabelings).best);
  }
}

TEST_CASE("EPR2") {
  const Setting s(2, 2, 2, 2);
  const VertexSet vs = VertexSet::make(s);
  CHECK(epr2(pr_box(s), vs).value == 1);
  CHECK(epr2(uniform_behaviour(s), vs).value == 0);
  CHECK(epr2(deterministic_point(s, {1, 0}, {0, 0}), vs).value == 0);

  SUBCASE("exact values along the isotropic line: 2*lam - 1 above the boundary") {
    for (int num = 0; num <= 10; ++num) {
      const Rational lam = make_rational(num, 10);
      const Rational expected = lam <= R("1/2") ? Rational(0) : 2 * lam - 1;
      CHECK(epr2(isotropic(lam), vs).value == expected);
    }
  }
  SUBCASE("witness: the local part stays below p entrywise and has weight P_L") {
    const Epr2Result r = epr2(isotropic(R("3/4")), vs);
    CHECK(r.local_weight == R("1/2"));
    std::vector<Rational> acc(s.table_size(), Rational(0));
    Rational total = 0;
    for (const auto& [i, w] : r.local_part) {
      total += w;
      for (std::size_t e = 0; e < acc.size(); ++e) acc[e] += w * vs.tables[i][e];
    }
    CHECK(total == r.local_weight);
    const Behaviour p = isotropic(R("3/4"));
    for (std::size_t e = 0; e < acc.size(); ++e) CHECK(acc[e] <= p.table()[e]);
  }
}

TEST_CASE("robustness") {
  const Setting s(2, 2, 2, 2);
  const VertexSet vs = VertexSet::make(s);
  CHECK(robustness(pr_box(s), vs).value == R("1/3"));
  CHECK(robustness(uniform_behaviour(s), vs).value == 0);
  CHECK(robustness(isotropic(R("1/2")), vs).value == 0);
  CHECK(robustness(isotropic(R("1/4")), vs).value == 0);

  SUBCASE("witness: remixing with the returned noise makes the behaviour local") {
    const Behaviour pr = pr_box(s);
    const RobustnessResult r = robustness(pr, vs);
    const Rational q = r.value;
    std::vector<std::pair<Rational, Behaviour>> terms{{1 - q, pr}};
    for (const auto& [i, w] : r.noise_weights)
      terms.emplace_back(w, vs.points[i].to_behaviour(s));
    const Behaviour mixed = mix(terms);
    CHECK(is_local(mixed, vs).local);
    // and the target decomposition reproduces it exactly
    std::vector<std::pair<Rational, Behaviour>> target;
    for (const auto& [i, w] : r.target_weights)
      target.emplace_back(w, vs.points[i].to_behaviour(s));
    CHECK(mix(target) == mixed);
  }
}

TEST_CASE("detector model") {
  const Setting s(2, 2, 2, 2);
  const Behaviour pr = pr_box(s);

  SUBCASE("eta = 1 embeds the behaviour with silent extra outputs") {
    CHECK(detector_model(pr, Rational(1)) == embed_outputs(pr, 3, 3));
  }
  SUBCASE("eta = 0 is the deterministic double no-click point") {
    const Behaviour q = detector_model(pr, Rational(0));
    for (int x = 0; x < 2; ++x)
      for (int y = 0; y < 2; ++y) CHECK(q.at(2, 2, x, y) == 1);
    CHECK(is_local(q, VertexSet::make(q.setting())).local);
  }
  SUBCASE("eta = 1/2 block scales") {
    const Behaviour q = detector_model(pr, R("1/2"));
    CHECK(q.at(0, 0, 0, 0) == R("1/8"));  // eta^2 * 1/2
    CHECK(q.at(2, 2, 0, 0) == R("1/4"));  // (1-eta)^2
    CHECK(q.at(0, 2, 0, 0) == R("1/8"));  // eta(1-eta) * P(a|x)
    CHECK(q.at(2, 1, 1, 0) == R("1/8"));
  }
  SUBCASE("factorizes into an unfold followed by partial merges") {
    Sampler sampler(61);
    const VertexSet vs = VertexSet::make(s);
    for (const char* eta_text : {"1/3", "3/5", "15/16"}) {
      const Rational eta = R(eta_text);
      const Behaviour p = sampler.ns_mixture(vs, pr_family_embeddings(s));
      // Alice side: split output 1 at input 1 keeping eta, then bleed every
      // other (input, output) cell into the new inconclusive output.
      Behaviour step = unfold_output(p, Party::alice, 0, 0, eta);
      for (int x = 0; x < 2; ++x)
        for (int a = 0; a < 2; ++a) {
          if (x == 0 && a == 0) continue;
          step = partial_merge(step, Party::alice, x, 2, a, 1 - eta);
        }
      step = unfold_output(step, Party::bob, 0, 0, eta);
      for (int y = 0; y < 2; ++y)
        for (int b = 0; b < 2; ++b) {
          if (y == 0 && b == 0) continue;
          step = partial_merge(step, Party::bob, y, 2, b, 1 - eta);
        }
      CHECK(step == detector_model(p, eta));
    }
  }
  SUBCASE("bad efficiency") {
    CHECK_THROWS_AS(detector_model(pr, R("7/5")), Error);
  }
}

TEST_CASE("threshold efficiency of the PR box brackets 2/3") {
  const Behaviour pr = pr_box(Setting(2, 2, 2, 2));
  const EtaStarResult r = eta_star(pr);
  REQUIRE(r.nonlocal);
  CHECK(r.eta_hi - r.eta_lo <= make_rational(1, 1 << 20));
  CHECK(r.eta_lo <= R("2/3"));
  CHECK(R("2/3") <= r.eta_hi);
  CHECK(r.neff_lo == 1 - r.eta_hi);
  CHECK(r.neff_hi == 1 - r.eta_lo);
  // bracket endpoints carry exact membership verdicts
  const VertexSet enlarged = VertexSet::make(Setting(2, 2, 3, 3));
  CHECK(is_local(detector_model(pr, r.eta_lo), enlarged).local);
  CHECK_FALSE(is_local(detector_model(pr, r.eta_hi), enlarged).local);
}

TEST_CASE("local behaviours have threshold one") {
  const Setting s(2, 2, 2, 2);
  const EtaStarResult r = eta_star(uniform_behaviour(s));
  CHECK_FALSE(r.nonlocal);
  CHECK(r.neff_hi == 0);
}

TEST_CASE("locality of the lossy model is monotone in eta (nesting)") {
  const Setting s(2, 2, 2, 2);
  const VertexSet enlarged = VertexSet::make(Setting(2, 2, 3, 3));
  Sampler sampler(67);
  const VertexSet vs = VertexSet::make(s);
  const auto prs = pr_family_embeddings(s);
  for (int t = 0; t < 6; ++t) {
    const Behaviour p = sampler.ns_mixture(vs, prs);
    const Rational eta = make_rational(1 + sampler.below(15), 16);
    const Rational eta2 = eta * make_rational(1 + sampler.below(7), 8);
    if (is_local(detector_model(p, eta), enlarged).local)
      CHECK(is_local(detector_model(p, eta2), enlarged).local);
  }
}

TEST_CASE("strategy costs in the simultaneous-message model") {
  const Setting s(2, 2, 2, 2);
  // f(x,y) = y, g = 1: one bit from Bob suffices
  CHECK(strategy_cost(s, {0, 1, 0, 1}, {0, 0, 0, 0}) == 1);
  // local strategies cost zero
  CHECK(strategy_cost(s, {0, 0, 1, 1}, {1, 0, 1, 0}) == 0);
  // both outputs fully input-dependent: one bit each way
  CHECK(strategy_cost(s, {0, 1, 1, 0}, {1, 0, 0, 1}) == 2);
  CHECK(max_strategy_bits(s) == 2);

  SUBCASE("cost zero exactly on the local deterministic points") {
    const auto d0 = enumerate_strategies(s, 0);
    CHECK(d0.size() == 16);
    for (const auto& st : d0) {
      for (int x = 0; x < 2; ++x) CHECK(st.f[x * 2] == st.f[x * 2 + 1]);
      for (int y = 0; y < 2; ++y) CHECK(st.g[y] == st.g[2 + y]);
    }
  }
  SUBCASE("full pool size and the cap") {
    CHECK(enumerate_strategies(s, 2).size() == 256);
    CHECK_THROWS_AS(enumerate_strategies(s, 2, 100), Error);
  }
}

TEST_CASE("communication costs") {
  const Setting s(2, 2, 2, 2);
  const VertexSet vs = VertexSet::make(s);
  const Behaviour pr = pr_box(s);

  CHECK(comm_cost_avg(pr).value == 1);
  CHECK(comm_cost_worst(pr).value == 1);
  CHECK(comm_cost_avg(uniform_behaviour(s)).value == 0);
  CHECK(comm_cost_worst(uniform_behaviour(s)).value == 0);
  CHECK(comm_cost_avg(isotropic(R("1/2"))).value == 0);

  SUBCASE("witness decomposition reproduces p and its stated cost") {
    const CommCostResult r = comm_cost_avg(pr);
    const auto pool = enumerate_strategies(s, max_strategy_bits(s));
    std::vector<Rational> acc(s.table_size(), Rational(0));
    Rational cost = 0, total = 0;
    for (const auto& [i, w] : r.weights) {
      total += w;
      cost += w * pool[i].cost;
      const auto t = pool[i].table(s);
      for (std::size_t e = 0; e < acc.size(); ++e) acc[e] += w * t[e];
    }
    CHECK(total == 1);
    CHECK(cost == r.value);
    CHECK(acc == pr.table());
  }
  SUBCASE("CHSH lower bound on every average-cost witness") {
    Sampler sampler(71);
    const auto prs = pr_family_embeddings(s);
    for (int t = 0; t < 6; ++t) {
      const Behaviour p = sampler.ns_mixture(vs, prs);
      const Rational bound = chsh(p).value / 2;
      CHECK(comm_cost_avg(p).value >= bound);
    }
  }
  SUBCASE("every 2222 no-signaling behaviour needs at most 2 bits worst case") {
    Sampler sampler(73);
    const auto prs = pr_family_embeddings(s);
    for (int t = 0; t < 6; ++t)
      CHECK(comm_cost_worst(sampler.ns_mixture(vs, prs)).value <= 2);
  }
}

TEST_CASE("degenerate settings carry no resource") {
  const Setting s(1, 2, 3, 2);
  const VertexSet vs = VertexSet::make(s);
  Sampler sampler(79);
  for (int t = 0; t < 4; ++t) {
    const Behaviour p = sampler.ns_mixture(vs, {});
    CHECK(epr2(p, vs).value == 0);
    CHECK(robustness(p, vs).value == 0);
    CHECK(eta_star(p, make_rational(1, 16)).neff_hi == 0);
    CHECK(comm_cost_avg(p).value == 0);
    CHECK(comm_cost_worst(p).value == 0);
  }
}

TEST_CASE("exact relabeling invariance of the rational measures") {
  const Setting s(2, 2, 2, 2);
  const VertexSet vs = VertexSet::make(s);
  Sampler sampler(83);
  const auto prs = pr_family_embeddings(s);
  for (int t = 0; t < 5; ++t) {
    const Behaviour p = sampler.ns_mixture(vs, prs);
    const Behaviour q = apply_wiring(sampler.random_relabeling(s), p);
    CHECK(chsh(p).value == chsh(q).value);
    CHECK(epr2(p, vs).value == epr2(q, vs).value);
    CHECK(robustness(p, vs).value == robustness(q, vs).value);
    CHECK(comm_cost_avg(p).value == comm_cost_avg(q).value);
    CHECK(comm_cost_worst(p).value == comm_cost_worst(q).value);
  }
}

TEST_CASE("reachability implies measure ordering (cross-module)") {
  const Setting s(2, 2, 2, 2);
  const VertexSet vs = VertexSet::make(s);
  Sampler sampler(89);
  const auto prs = pr_family_embeddings(s);
  const auto wirings = enumerate_wirings(s);
  for (int t = 0; t < 5; ++t) {
    const Behaviour p1 = sampler.ns_mixture(vs, prs);
    const auto w = sampler.convex_weights(3);
    const Behaviour p2 =
        mix({{w[0], sampler.local_mixture(vs)},
             {w[1], apply_wiring(wirings[sampler.below(4096)], p1)},
             {w[2], apply_wiring(wirings[sampler.below(4096)], p1)}});
    REQUIRE(compare(p1, p2, vs, wirings).holds);
    CHECK(epr2(p1, vs).value >= epr2(p2, vs).value);
    CHECK(robustness(p1, vs).value >= robustness(p2, vs).value);
    CHECK(comm_cost_avg(p1).value >= comm_cost_avg(p2).value);
    CHECK(comm_cost_worst(p1).value >= comm_cost_worst(p2).value);
  }
}

TEST_CASE("KL distance") {
  const Setting s(2, 2, 2, 2);
  const Behaviour pr = pr_box(s);
  CHECK(kl_divergence(pr, pr) == 0);
  CHECK(kl_divergence(deterministic_point(s, {0, 0}, {0, 0}), uniform_behaviour(s)) == 8);
  CHECK(std::isinf(kl_divergence(pr, deterministic_point(s, {0, 0}, {0, 0}))));
  CHECK_THROWS_AS(kl_divergence(pr, uniform_behaviour(Setting(2, 2, 3, 3))), Error);
}
