#include "nsbox/local_polytope.hpp"

#include <algorithm>
#include <string>

#include "nsbox/errors.hpp"

namespace nsbox {

std::vector<Rational> DeterministicPoint::table(const Setting& s) const {
  std::vector<Rational> t(s.table_size(), Rational(0));
  for (int x = 0; x < s.m_a; ++x)
    for (int y = 0; y < s.m_b; ++y) t[s.index(f[x], g[y], x, y)] = 1;
  return t;
}

Behaviour DeterministicPoint::to_behaviour(const Setting& s) const {
  return deterministic_point(s, f, g);
}

std::uint64_t deterministic_count(const Setting& s) {
  std::uint64_t n = 1;
  for (int x = 0; x < s.m_a; ++x) n *= static_cast<std::uint64_t>(s.d_a);
  for (int y = 0; y < s.m_b; ++y) n *= static_cast<std::uint64_t>(s.d_b);
  return n;
}

std::vector<DeterministicPoint> enumerate_deterministic(const Setting& setting,
                                                        std::uint64_t cap) {
  const std::uint64_t count = deterministic_count(setting);
  if (count > cap)
    throw Error(ErrorCode::cap_exceeded,
                std::to_string(count) + " deterministic points exceed cap " +
                    std::to_string(cap));

  std::vector<DeterministicPoint> out;
  out.reserve(count);
  DeterministicPoint d{std::vector<int>(setting.m_a, 0), std::vector<int>(setting.m_b, 0)};
  // Odometer over the (f,g) tuple, first component most significant.
  for (;;) {
    out.push_back(d);
    int pos = setting.m_a + setting.m_b - 1;
    for (; pos >= 0; --pos) {
      const bool alice = pos < setting.m_a;
      int& v = alice ? d.f[pos] : d.g[pos - setting.m_a];
      if (++v < (alice ? setting.d_a : setting.d_b)) break;
      v = 0;
    }
    if (pos < 0) break;
  }
  return out;
}

VertexSet VertexSet::make(const Setting& setting, std::uint64_t cap) {
  VertexSet vs{setting, enumerate_deterministic(setting, cap), {}};
  vs.tables.reserve(vs.points.size());
  for (const auto& d : vs.points) vs.tables.push_back(d.table(setting));
  return vs;
}

Rational BellFunctional::value(const std::vector<Rational>& table) const {
  Rational v = 0;
  for (std::size_t i = 0; i < s.size(); ++i)
    if (sgn(s[i]) != 0 && sgn(table[i]) != 0) v += s[i] * table[i];
  return v;
}

Rational local_bound(const std::vector<Rational>& s, const VertexSet& vertices) {
  BellFunctional f{s, 0};
  Rational best = f.value(vertices.tables.front());
  for (std::size_t i = 1; i < vertices.tables.size(); ++i)
    best = std::max(best, f.value(vertices.tables[i]));
  return best;
}

LocalityVerdict is_local(const Behaviour& p, const VertexSet& vertices) {
  if (!(p.setting() == vertices.setting))
    throw Error(ErrorCode::setting_mismatch, "behaviour vs vertex set");
  const std::size_t dim = p.table().size();
  const std::size_t nv = vertices.points.size();

  LPProblem lp = LPProblem::make(static_cast<int>(nv), Sense::minimize);
  for (std::size_t e = 0; e < dim; ++e) {
    std::vector<Rational> row(nv, Rational(0));
    for (std::size_t i = 0; i < nv; ++i) row[i] = vertices.tables[i][e];
    lp.add_row(std::move(row), Relation::eq, p.table()[e]);
  }
  lp.add_row(std::vector<Rational>(nv, Rational(1)), Relation::eq, Rational(1));

  const LPOutcome out = solve(lp);
  LocalityVerdict v;
  if (out.status == LPStatus::optimal) {
    v.local = true;
    for (std::size_t i = 0; i < nv; ++i)
      if (sgn(out.primal[i]) != 0) v.weights.emplace_back(i, out.primal[i]);
    return v;
  }

  // Infeasible: the Farkas row multipliers give a separating functional,
  // s = -y over the entry rows, bound from the weight-sum row, then tightened
  // by an exact sweep so the certificate is self-verifying.
  v.local = false;
  v.certificate.s.resize(dim);
  for (std::size_t e = 0; e < dim; ++e) v.certificate.s[e] = -out.farkas[e];
  v.certificate.bound = local_bound(v.certificate.s, vertices);
  v.violation = v.certificate.value(p) - v.certificate.bound;
  return v;
}

LocalityVerdict is_local(const Behaviour& p, std::uint64_t cap) {
  return is_local(p, VertexSet::make(p.setting(), cap));
}

std::vector<std::pair<std::size_t, Rational>> local_decomposition(
    const Behaviour& p, const VertexSet& vertices) {
  LocalityVerdict v = is_local(p, vertices);
  if (!v.local) throw Error(ErrorCode::not_local, "behaviour has no local model");
  return std::move(v.weights);
}

std::vector<Rational> project_functional(const Setting& st, const std::vector<Rational>& f) {
  if (f.size() != st.table_size())
    throw Error(ErrorCode::shape_mismatch, "functional dimension vs setting");

  // Spanning set of the gauge space: one indicator per (x,y) block, plus the
  // marginal-difference rows of both no-signaling families.
  std::vector<std::vector<Rational>> gauge;
  for (int x = 0; x < st.m_a; ++x)
    for (int y = 0; y < st.m_b; ++y) {
      std::vector<Rational> row(st.table_size(), Rational(0));
      for (int a = 0; a < st.d_a; ++a)
        for (int b = 0; b < st.d_b; ++b) row[st.index(a, b, x, y)] = 1;
      gauge.push_back(std::move(row));
    }
  for (int x = 0; x < st.m_a; ++x)
    for (int a = 0; a < st.d_a; ++a)
      for (int y = 1; y < st.m_b; ++y) {
        std::vector<Rational> row(st.table_size(), Rational(0));
        for (int b = 0; b < st.d_b; ++b) {
          row[st.index(a, b, x, y)] += 1;
          row[st.index(a, b, x, 0)] -= 1;
        }
        gauge.push_back(std::move(row));
      }
  for (int y = 0; y < st.m_b; ++y)
    for (int b = 0; b < st.d_b; ++b)
      for (int x = 1; x < st.m_a; ++x) {
        std::vector<Rational> row(st.table_size(), Rational(0));
        for (int a = 0; a < st.d_a; ++a) {
          row[st.index(a, b, x, y)] += 1;
          row[st.index(a, b, 0, y)] -= 1;
        }
        gauge.push_back(std::move(row));
      }

  auto inner = [](const std::vector<Rational>& u, const std::vector<Rational>& v) {
    Rational s = 0;
    for (std::size_t i = 0; i < u.size(); ++i)
      if (sgn(u[i]) != 0 && sgn(v[i]) != 0) s += u[i] * v[i];
    return s;
  };

  // Gram-Schmidt, dropping dependent rows, then project.
  std::vector<std::vector<Rational>> basis;
  for (auto& g : gauge) {
    for (const auto& u : basis) {
      const Rational coef = inner(g, u) / inner(u, u);
      if (sgn(coef) == 0) continue;
      for (std::size_t i = 0; i < g.size(); ++i) g[i] -= coef * u[i];
    }
    if (std::any_of(g.begin(), g.end(), [](const Rational& v) { return sgn(v) != 0; }))
      basis.push_back(std::move(g));
  }
  std::vector<Rational> out = f;
  for (const auto& u : basis) {
    const Rational coef = inner(out, u) / inner(u, u);
    if (sgn(coef) == 0) continue;
    for (std::size_t i = 0; i < out.size(); ++i) out[i] -= coef * u[i];
  }
  return out;
}

BellFunctional normalize_certificate(const BellFunctional& c, const Behaviour& p,
                                     const VertexSet& vertices, CertNormalization mode) {
  if (c.value(p) <= local_bound(c.s, vertices))
    throw Error(ErrorCode::not_violating, "certificate does not separate the behaviour");
  BellFunctional out;
  out.s = project_functional(p.setting(), c.s);
  out.bound = local_bound(out.s, vertices);

  Rational scale;
  if (sgn(out.bound) > 0) {
    const Rational target = mode == CertNormalization::chsh ? Rational(2) : Rational(1);
    scale = target / out.bound;
  } else {
    // Degenerate bound: fall back to unit sup-norm.
    Rational norm = 0;
    for (const auto& e : out.s) norm = std::max(norm, Rational(abs(e)));
    scale = norm == 0 ? Rational(1) : 1 / norm;
  }
  for (auto& e : out.s) e *= scale;
  out.bound *= scale;
  return out;
}

}  // namespace nsbox
