#include "nsbox/measures.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "nsbox/errors.hpp"

namespace nsbox {

namespace {

// One-sided application of an Alice party wiring, without validation:
// q(a b | x y) = sum_{a': h[x](a')=a} p(a' b | g[x], y).
std::vector<Rational> apply_alice_side(const PartyWiring& wa, const Behaviour& p) {
  const Setting& s = p.setting();
  std::vector<Rational> q(s.table_size(), Rational(0));
  for (int x = 0; x < s.m_a; ++x) {
    const int qx = wa.input_map[x];
    for (int y = 0; y < s.m_b; ++y)
      for (int ar = 0; ar < s.d_a; ++ar) {
        const int a = wa.output_maps[x][ar];
        for (int b = 0; b < s.d_b; ++b) {
          const Rational& v = p.at(ar, b, qx, y);
          if (sgn(v) != 0) q[s.index(a, b, x, y)] += v;
        }
      }
  }
  return q;
}

std::uint64_t ipow_u64(std::uint64_t b, std::uint64_t e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

}  // namespace

BellFunctional chsh_functional(const Setting& s) {
  if (s.m_a != 2 || s.m_b != 2)
    throw Error(ErrorCode::bad_setting, "CHSH needs two inputs per party");
  auto val = [](int o) { return o == 0 ? 1 : (o == 1 ? -1 : 0); };
  BellFunctional f;
  f.s.assign(s.table_size(), Rational(0));
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y) {
      const int sign = (x == 1 && y == 1) ? -1 : 1;
      for (int a = 0; a < s.d_a; ++a)
        for (int b = 0; b < s.d_b; ++b)
          f.s[s.index(a, b, x, y)] = sign * val(a) * val(b);
    }
  f.bound = 2;
  return f;
}

BellValueResult bell_value(const Behaviour& p, const BellFunctional& functional,
                           BellMode mode, std::uint64_t cap) {
  const Setting& s = p.setting();
  if (functional.s.size() != s.table_size())
    throw Error(ErrorCode::setting_mismatch, "functional dimension vs behaviour");

  BellValueResult r{Rational(0), Rational(0), LocalWiring::identity(s)};
  bool first = true;

  if (mode == BellMode::relabelings) {
    for (const LocalWiring& w : enumerate_relabelings(s, cap)) {
      const Rational v = functional.value(apply_wiring(w, p));
      if (first || v > r.best) {
        r.best = v;
        r.op = w;
        first = false;
      }
    }
  } else {
    // Factorized sweep: Alice wirings in enumeration order; for each, Bob's
    // objective splits per displayed input, so each input picks its best
    // (queried input, output map) block independently.
    const auto alice = enumerate_party_wirings(s.m_a, s.d_a, cap);
    const std::uint64_t hcount = ipow_u64(s.d_b, s.d_b);
    std::vector<std::vector<int>> hmaps(hcount, std::vector<int>(s.d_b, 0));
    for (std::uint64_t code = 0; code < hcount; ++code) {
      std::uint64_t c = code;
      for (int b = s.d_b - 1; b >= 0; --b) {
        hmaps[code][b] = static_cast<int>(c % s.d_b);
        c /= s.d_b;
      }
    }
    for (const PartyWiring& wa : alice) {
      const std::vector<Rational> q = apply_alice_side(wa, p);
      Rational total = 0;
      PartyWiring wb;
      wb.input_map.assign(s.m_b, 0);
      wb.output_maps.assign(s.m_b, std::vector<int>(s.d_b, 0));
      for (int y = 0; y < s.m_b; ++y) {
        Rational best_y = 0;
        bool first_y = true;
        for (int v = 0; v < s.m_b; ++v)
          for (std::uint64_t code = 0; code < hcount; ++code) {
            Rational c = 0;
            for (int x = 0; x < s.m_a; ++x)
              for (int a = 0; a < s.d_a; ++a)
                for (int br = 0; br < s.d_b; ++br) {
                  const Rational& pv = q[s.index(a, br, x, v)];
                  if (sgn(pv) == 0) continue;
                  const Rational& sv =
                      functional.s[s.index(a, hmaps[code][br], x, y)];
                  if (sgn(sv) != 0) c += sv * pv;
                }
            if (first_y || c > best_y) {
              best_y = c;
              wb.input_map[y] = v;
              wb.output_maps[y] = hmaps[code];
              first_y = false;
            }
          }
        total += best_y;
      }
      if (first || total > r.best) {
        r.best = total;
        r.op = LocalWiring{s, wa, wb};
        first = false;
      }
    }
  }

  r.value = r.best - functional.bound;
  if (sgn(r.value) < 0) r.value = 0;
  return r;
}

BellValueResult chsh(const Behaviour& p, std::uint64_t cap) {
  return bell_value(p, chsh_functional(p.setting()), BellMode::relabelings, cap);
}

Epr2Result epr2(const Behaviour& p, const VertexSet& vertices) {
  if (!(p.setting() == vertices.setting))
    throw Error(ErrorCode::setting_mismatch, "behaviour vs vertex set");
  const std::size_t nv = vertices.tables.size();
  const std::size_t dim = p.table().size();

  LPProblem lp = LPProblem::make(static_cast<int>(nv), Sense::maximize);
  lp.objective.assign(nv, Rational(1));
  for (std::size_t e = 0; e < dim; ++e) {
    std::vector<Rational> row(nv);
    for (std::size_t i = 0; i < nv; ++i) row[i] = vertices.tables[i][e];
    lp.add_row(std::move(row), Relation::le, p.table()[e]);
  }
  const LPOutcome out = solve(lp);
  // mu = 0 is feasible and the objective is bounded by 1.
  Epr2Result r;
  r.local_weight = out.objective_value;
  r.value = 1 - r.local_weight;
  for (std::size_t i = 0; i < nv; ++i)
    if (sgn(out.primal[i]) != 0) r.local_part.emplace_back(i, out.primal[i]);
  return r;
}

RobustnessResult robustness(const Behaviour& p, const VertexSet& vertices) {
  if (!(p.setting() == vertices.setting))
    throw Error(ErrorCode::setting_mismatch, "behaviour vs vertex set");
  const std::size_t nv = vertices.tables.size();
  const std::size_t dim = p.table().size();

  // Variables: q, lambda (noise, sums to q), mu (target local model, sums 1):
  // (1-q) p + sum lambda_i d_i = sum mu_j d_j.
  const int n = static_cast<int>(1 + 2 * nv);
  LPProblem lp = LPProblem::make(n, Sense::minimize);
  lp.objective[0] = 1;
  lp.upper[0] = Rational(1);
  for (std::size_t e = 0; e < dim; ++e) {
    std::vector<Rational> row(n, Rational(0));
    row[0] = -p.table()[e];
    for (std::size_t i = 0; i < nv; ++i) {
      row[1 + i] = vertices.tables[i][e];
      row[1 + nv + i] = -vertices.tables[i][e];
    }
    lp.add_row(std::move(row), Relation::eq, -p.table()[e]);
  }
  std::vector<Rational> lam_row(n, Rational(0));
  lam_row[0] = -1;
  for (std::size_t i = 0; i < nv; ++i) lam_row[1 + i] = 1;
  lp.add_row(std::move(lam_row), Relation::eq, Rational(0));
  std::vector<Rational> mu_row(n, Rational(0));
  for (std::size_t i = 0; i < nv; ++i) mu_row[1 + nv + i] = 1;
  lp.add_row(std::move(mu_row), Relation::eq, Rational(1));

  const LPOutcome out = solve(lp);
  // q = 1 with L = target is always feasible, so the LP is never infeasible.
  RobustnessResult r;
  r.value = out.objective_value;
  for (std::size_t i = 0; i < nv; ++i) {
    if (sgn(out.primal[1 + i]) != 0) r.noise_weights.emplace_back(i, out.primal[1 + i]);
    if (sgn(out.primal[1 + nv + i]) != 0)
      r.target_weights.emplace_back(i, out.primal[1 + nv + i]);
  }
  return r;
}

Behaviour detector_model(const Behaviour& p, const Rational& eta) {
  if (eta < 0 || eta > 1)
    throw Error(ErrorCode::bad_probability, "efficiency " + to_string(eta));
  const Setting& s = p.setting();
  const Setting s2(s.m_a, s.m_b, s.d_a + 1, s.d_b + 1);
  const Rational both = eta * eta;
  const Rational one = eta * (1 - eta);
  const Rational none = (1 - eta) * (1 - eta);

  std::vector<Rational> t(s2.table_size(), Rational(0));
  for (int x = 0; x < s.m_a; ++x)
    for (int y = 0; y < s.m_b; ++y) {
      for (int a = 0; a < s.d_a; ++a)
        for (int b = 0; b < s.d_b; ++b)
          t[s2.index(a, b, x, y)] = both * p.at(a, b, x, y);
      for (int a = 0; a < s.d_a; ++a)
        t[s2.index(a, s.d_b, x, y)] = one * p.marginal_a(a, x);
      for (int b = 0; b < s.d_b; ++b)
        t[s2.index(s.d_a, b, x, y)] = one * p.marginal_b(b, y);
      t[s2.index(s.d_a, s.d_b, x, y)] = none;
    }
  return Behaviour::validated(s2, std::move(t));
}

EtaStarResult eta_star(const Behaviour& p, const Rational& precision,
                       std::uint64_t vertex_cap) {
  const Setting enlarged(p.setting().m_a, p.setting().m_b, p.setting().d_a + 1,
                         p.setting().d_b + 1);
  return eta_star(p, precision, VertexSet::make(p.setting(), vertex_cap),
                  VertexSet::make(enlarged, vertex_cap));
}

EtaStarResult eta_star(const Behaviour& p, const Rational& precision,
                       const VertexSet& own, const VertexSet& enlarged) {
  EtaStarResult r;
  if (is_local(p, own).local) {
    r.nonlocal = false;
    r.eta_lo = r.eta_hi = 1;
    r.neff_lo = r.neff_hi = 0;
    return r;
  }
  r.nonlocal = true;

  // eta = 0 collapses to the double no-click point (local); eta = 1 embeds p
  // (nonlocal). Locality is monotone in eta, so bisection brackets eta*.
  Rational lo = 0, hi = 1;
  while (hi - lo > precision) {
    const Rational mid = (lo + hi) / 2;
    ++r.probes;
    if (is_local(detector_model(p, mid), enlarged).local)
      lo = mid;
    else
      hi = mid;
  }
  r.eta_lo = lo;
  r.eta_hi = hi;
  r.neff_lo = 1 - hi;
  r.neff_hi = 1 - lo;
  return r;
}

// ---- communication cost ----------------------------------------------------

namespace {

int ceil_log2(int n) {
  int bits = 0;
  while ((1 << bits) < n) ++bits;
  return bits;
}

}  // namespace

int strategy_cost(const Setting& s, const std::vector<int>& f, const std::vector<int>& g) {
  // Bits Alice sends: enough to index the distinct x-slices of g.
  std::vector<std::vector<int>> rows;
  for (int x = 0; x < s.m_a; ++x) {
    std::vector<int> row(s.m_b);
    for (int y = 0; y < s.m_b; ++y) row[y] = g[x * s.m_b + y];
    if (std::find(rows.begin(), rows.end(), row) == rows.end()) rows.push_back(row);
  }
  // Bits Bob sends: distinct y-slices of f.
  std::vector<std::vector<int>> cols;
  for (int y = 0; y < s.m_b; ++y) {
    std::vector<int> col(s.m_a);
    for (int x = 0; x < s.m_a; ++x) col[x] = f[x * s.m_b + y];
    if (std::find(cols.begin(), cols.end(), col) == cols.end()) cols.push_back(col);
  }
  return ceil_log2(static_cast<int>(rows.size())) + ceil_log2(static_cast<int>(cols.size()));
}

int max_strategy_bits(const Setting& s) { return ceil_log2(s.m_a) + ceil_log2(s.m_b); }

std::vector<Rational> CommStrategy::table(const Setting& s) const {
  std::vector<Rational> t(s.table_size(), Rational(0));
  for (int x = 0; x < s.m_a; ++x)
    for (int y = 0; y < s.m_b; ++y) t[s.index(f[x * s.m_b + y], g[x * s.m_b + y], x, y)] = 1;
  return t;
}

std::vector<CommStrategy> enumerate_strategies(const Setting& s, int max_bits,
                                               std::uint64_t cap) {
  const int cells = s.m_a * s.m_b;
  const std::uint64_t total =
      ipow_u64(s.d_a, cells) * ipow_u64(s.d_b, cells);
  if (total > cap)
    throw Error(ErrorCode::cap_exceeded,
                std::to_string(total) + " signaling strategies exceed cap " +
                    std::to_string(cap));

  std::vector<CommStrategy> out;
  std::vector<int> f(cells, 0);
  for (;;) {
    std::vector<int> g(cells, 0);
    for (;;) {
      const int cost = strategy_cost(s, f, g);
      if (cost <= max_bits) out.push_back({f, g, cost});
      int pos = cells - 1;
      for (; pos >= 0; --pos) {
        if (++g[pos] < s.d_b) break;
        g[pos] = 0;
      }
      if (pos < 0) break;
    }
    int pos = cells - 1;
    for (; pos >= 0; --pos) {
      if (++f[pos] < s.d_a) break;
      f[pos] = 0;
    }
    if (pos < 0) break;
  }
  return out;
}

namespace {

CommCostResult comm_lp(const Behaviour& p, const std::vector<CommStrategy>& strategies,
                       bool minimize_cost) {
  const Setting& s = p.setting();
  const std::size_t ns = strategies.size();
  const std::size_t dim = s.table_size();
  LPProblem lp = LPProblem::make(static_cast<int>(ns), Sense::minimize);
  if (minimize_cost)
    for (std::size_t i = 0; i < ns; ++i) lp.objective[i] = strategies[i].cost;
  std::vector<std::vector<Rational>> tables;
  tables.reserve(ns);
  for (const auto& st : strategies) tables.push_back(st.table(s));
  for (std::size_t e = 0; e < dim; ++e) {
    std::vector<Rational> row(ns);
    for (std::size_t i = 0; i < ns; ++i) row[i] = tables[i][e];
    lp.add_row(std::move(row), Relation::eq, p.table()[e]);
  }
  lp.add_row(std::vector<Rational>(ns, Rational(1)), Relation::eq, Rational(1));

  const LPOutcome out = solve(lp);
  CommCostResult r;
  if (out.status != LPStatus::optimal) {
    r.value = -1;  // marker: infeasible at this strategy pool
    return r;
  }
  r.value = out.objective_value;
  for (std::size_t i = 0; i < ns; ++i)
    if (sgn(out.primal[i]) != 0) r.weights.emplace_back(i, out.primal[i]);
  return r;
}

}  // namespace

CommCostResult comm_cost_avg(const Behaviour& p, std::uint64_t cap) {
  const auto strategies = enumerate_strategies(p.setting(), max_strategy_bits(p.setting()), cap);
  CommCostResult r = comm_lp(p, strategies, true);
  if (r.value < 0)
    throw Error(ErrorCode::shape_mismatch,
                "decomposition over the full strategy set cannot fail");
  return r;
}

CommCostResult comm_cost_worst(const Behaviour& p, std::uint64_t cap) {
  const auto all = enumerate_strategies(p.setting(), max_strategy_bits(p.setting()), cap);
  for (int c = 0; c <= max_strategy_bits(p.setting()); ++c) {
    std::vector<CommStrategy> pool;
    std::vector<std::size_t> pool_index;
    for (std::size_t i = 0; i < all.size(); ++i)
      if (all[i].cost <= c) {
        pool.push_back(all[i]);
        pool_index.push_back(i);
      }
    CommCostResult r = comm_lp(p, pool, false);
    if (r.value >= 0) {
      for (auto& [idx, w] : r.weights) idx = pool_index[idx];
      r.value = c;
      return r;
    }
  }
  throw Error(ErrorCode::shape_mismatch,
              "decomposition over the full strategy set cannot fail");
}

// ---- statistical distance ---------------------------------------------------

double kl_divergence(const Behaviour& p1, const Behaviour& p2) {
  if (!(p1.setting() == p2.setting()))
    throw Error(ErrorCode::setting_mismatch, "KL distance needs one setting");
  double sum = 0;
  for (std::size_t e = 0; e < p1.table().size(); ++e) {
    const int s1 = sgn(p1.table()[e]);
    if (s1 == 0) continue;
    if (sgn(p2.table()[e]) == 0) return std::numeric_limits<double>::infinity();
    sum += to_double(p1.table()[e]) *
           std::log2(to_double(p1.table()[e]) / to_double(p2.table()[e]));
  }
  return sum;
}

}  // namespace nsbox
