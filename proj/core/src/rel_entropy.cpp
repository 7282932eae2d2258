#include <cassert>
#include <cmath>
#include <vector>

#include "nsbox/errors.hpp"
#include "nsbox/measures.hpp"

namespace nsbox {

namespace {

constexpr double kLn2 = 0.6931471805599453;

struct Objective {
  std::vector<double> p;                       // behaviour entries on support
  std::vector<std::vector<int>> vertex_hits;   // per vertex: support entries it covers
  int support_size = 0;

  // f(L) = sum_e p_e log2(p_e / L_e), gradient via s_i = sum_{e in hits(i)} p_e / L_e.
  double value(const std::vector<double>& L) const {
    double v = 0;
    for (int e = 0; e < support_size; ++e) v += p[e] * std::log2(p[e] / L[e]);
    return v;
  }
  double score(std::size_t vertex, const std::vector<double>& L) const {
    double s = 0;
    for (int e : vertex_hits[vertex]) s += p[e] / L[e];
    return s;
  }
};

// phi'(gamma) for phi(gamma) = f(L + gamma dL), monotone increasing in gamma.
double dphi(const Objective& obj, const std::vector<double>& L,
            const std::vector<double>& dL, double gamma) {
  double d = 0;
  for (int e = 0; e < obj.support_size; ++e) {
    if (dL[e] == 0) continue;
    d -= obj.p[e] * dL[e] / (L[e] + gamma * dL[e]);
  }
  return d / kLn2;
}

}  // namespace

RelEntropyResult relative_entropy_nl(const Behaviour& p, const VertexSet& vertices,
                                     double gap_tol, int max_iterations,
                                     bool per_input_average) {
  if (!(p.setting() == vertices.setting))
    throw Error(ErrorCode::setting_mismatch, "behaviour vs vertex set");
  const Setting& s = p.setting();
  const std::size_t nv = vertices.points.size();

  // Condense to the support of p; entries outside it never enter the
  // objective or the gradient.
  std::vector<int> support_of_entry(s.table_size(), -1);
  Objective obj;
  for (std::size_t e = 0; e < s.table_size(); ++e)
    if (sgn(p.table()[e]) > 0) {
      support_of_entry[e] = obj.support_size++;
      obj.p.push_back(to_double(p.table()[e]));
    }
  obj.vertex_hits.resize(nv);
  std::vector<int> cover(obj.support_size, 0);
  for (std::size_t i = 0; i < nv; ++i) {
    const auto& d = vertices.points[i];
    for (int x = 0; x < s.m_a; ++x)
      for (int y = 0; y < s.m_b; ++y) {
        const int e = support_of_entry[s.index(d.f[x], d.g[y], x, y)];
        if (e >= 0) {
          obj.vertex_hits[i].push_back(e);
          ++cover[e];
        }
      }
  }
  for (int e = 0; e < obj.support_size; ++e)
    assert(cover[e] > 0 && "every entry is covered by some deterministic point");

  // Start from the uniform mixture; it has full support. L is recomputed
  // from the weights every round, so it stays exactly nonnegative, and a
  // vertex is dropped only when the full pairwise step is a descent step,
  // which cannot zero out a covered support entry.
  std::vector<double> w(nv, 1.0 / static_cast<double>(nv));
  std::vector<double> L(obj.support_size, 0.0);
  auto rebuild = [&] {
    std::fill(L.begin(), L.end(), 0.0);
    for (std::size_t i = 0; i < nv; ++i) {
      if (w[i] == 0) continue;
      for (int e : obj.vertex_hits[i]) L[e] += w[i];
    }
  };
  rebuild();

  RelEntropyResult result;
  const double scale = per_input_average ? 1.0 / (s.m_a * s.m_b) : 1.0;

  std::vector<double> scores(nv);
  std::vector<double> dL(obj.support_size);
  for (int iter = 0; iter < max_iterations; ++iter) {
    double dot_ws = 0;
    std::size_t best = 0, worst = nv;
    for (std::size_t i = 0; i < nv; ++i) {
      scores[i] = obj.score(i, L);
      dot_ws += w[i] * scores[i];
      if (scores[i] > scores[best]) best = i;
      if (w[i] > 0 && (worst == nv || scores[i] < scores[worst])) worst = i;
    }
    result.gap = (scores[best] - dot_ws) / kLn2 * scale;
    result.iterations = iter;
    if (result.gap <= gap_tol || best == worst) break;

    // Pairwise step: shift mass from the worst active vertex to the best one.
    const double gamma_max = w[worst];
    std::fill(dL.begin(), dL.end(), 0.0);
    for (int e : obj.vertex_hits[best]) dL[e] += 1.0;
    for (int e : obj.vertex_hits[worst]) dL[e] -= 1.0;

    if (dphi(obj, L, dL, gamma_max) <= 0) {
      w[best] += gamma_max;
      w[worst] = 0;  // drop step
    } else {
      double lo = 0, hi = gamma_max;
      for (int it = 0; it < 80 && hi - lo > 1e-18 * gamma_max; ++it) {
        const double mid = 0.5 * (lo + hi);
        (dphi(obj, L, dL, mid) <= 0 ? lo : hi) = mid;
      }
      if (lo <= 0) break;  // numerically stalled
      w[best] += lo;
      w[worst] -= lo;
    }
    rebuild();
  }

  result.value = obj.value(L) * scale;
  for (std::size_t i = 0; i < nv; ++i)
    if (w[i] > 0) result.weights.emplace_back(i, w[i]);
  return result;
}

}  // namespace nsbox
