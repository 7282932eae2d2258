#include "nsbox/behaviour.hpp"

#include <string>

#include "nsbox/errors.hpp"

namespace nsbox {

namespace {

std::string entry_name(int a, int b, int x, int y) {
  return "P(" + std::to_string(a + 1) + std::to_string(b + 1) + "|" +
         std::to_string(x + 1) + std::to_string(y + 1) + ")";
}

}  // namespace

Behaviour Behaviour::validated(Setting setting, std::vector<Rational> table) {
  if (table.size() != setting.table_size())
    throw Error(ErrorCode::shape_mismatch,
                "table has " + std::to_string(table.size()) + " entries, setting " +
                    setting.str() + " needs " + std::to_string(setting.table_size()));

  for (int x = 0; x < setting.m_a; ++x)
    for (int y = 0; y < setting.m_b; ++y) {
      Rational block_sum = 0;
      for (int a = 0; a < setting.d_a; ++a)
        for (int b = 0; b < setting.d_b; ++b) {
          const Rational& v = table[setting.index(a, b, x, y)];
          if (v < 0)
            throw Error(ErrorCode::negative_entry,
                        entry_name(a, b, x, y) + " = " + to_string(v));
          block_sum += v;
        }
      if (block_sum != 1)
        throw Error(ErrorCode::not_normalized,
                    "sum over outputs at (x,y)=(" + std::to_string(x + 1) + "," +
                        std::to_string(y + 1) + ") is " + to_string(block_sum));
    }

  // P(a|x) must not depend on y.
  for (int x = 0; x < setting.m_a; ++x)
    for (int a = 0; a < setting.d_a; ++a)
      for (int y = 1; y < setting.m_b; ++y) {
        Rational m0 = 0, my = 0;
        for (int b = 0; b < setting.d_b; ++b) {
          m0 += table[setting.index(a, b, x, 0)];
          my += table[setting.index(a, b, x, y)];
        }
        if (m0 != my)
          throw Error(ErrorCode::signaling_a_to_b,
                      "P(a=" + std::to_string(a + 1) + "|x=" + std::to_string(x + 1) +
                          ") differs between y=1 and y=" + std::to_string(y + 1));
      }

  // P(b|y) must not depend on x.
  for (int y = 0; y < setting.m_b; ++y)
    for (int b = 0; b < setting.d_b; ++b)
      for (int x = 1; x < setting.m_a; ++x) {
        Rational m0 = 0, mx = 0;
        for (int a = 0; a < setting.d_a; ++a) {
          m0 += table[setting.index(a, b, 0, y)];
          mx += table[setting.index(a, b, x, y)];
        }
        if (m0 != mx)
          throw Error(ErrorCode::signaling_b_to_a,
                      "P(b=" + std::to_string(b + 1) + "|y=" + std::to_string(y + 1) +
                          ") differs between x=1 and x=" + std::to_string(x + 1));
      }

  return Behaviour(setting, std::move(table));
}

Rational Behaviour::marginal_a(int a, int x) const {
  Rational m = 0;
  for (int b = 0; b < setting_.d_b; ++b) m += at(a, b, x, 0);
  return m;
}

Rational Behaviour::marginal_b(int b, int y) const {
  Rational m = 0;
  for (int a = 0; a < setting_.d_a; ++a) m += at(a, b, 0, y);
  return m;
}

Marginals marginals(const Behaviour& p) {
  const Setting& s = p.setting();
  Marginals m{s, {}, {}};
  m.alice.resize(static_cast<std::size_t>(s.d_a) * s.m_a);
  m.bob.resize(static_cast<std::size_t>(s.d_b) * s.m_b);
  for (int a = 0; a < s.d_a; ++a)
    for (int x = 0; x < s.m_a; ++x) m.alice[a * s.m_a + x] = p.marginal_a(a, x);
  for (int b = 0; b < s.d_b; ++b)
    for (int y = 0; y < s.m_b; ++y) m.bob[b * s.m_b + y] = p.marginal_b(b, y);
  return m;
}

Behaviour deterministic_point(const Setting& setting, const std::vector<int>& f,
                              const std::vector<int>& g) {
  if (static_cast<int>(f.size()) != setting.m_a ||
      static_cast<int>(g.size()) != setting.m_b)
    throw Error(ErrorCode::out_of_alphabet, "f/g must assign every input an output");
  for (int v : f)
    if (v < 0 || v >= setting.d_a)
      throw Error(ErrorCode::out_of_alphabet,
                  "f value " + std::to_string(v + 1) + " outside 1.." +
                      std::to_string(setting.d_a));
  for (int v : g)
    if (v < 0 || v >= setting.d_b)
      throw Error(ErrorCode::out_of_alphabet,
                  "g value " + std::to_string(v + 1) + " outside 1.." +
                      std::to_string(setting.d_b));

  std::vector<Rational> table(setting.table_size(), Rational(0));
  for (int x = 0; x < setting.m_a; ++x)
    for (int y = 0; y < setting.m_b; ++y) table[setting.index(f[x], g[y], x, y)] = 1;
  return Behaviour::validated(setting, std::move(table));
}

Behaviour uniform_behaviour(const Setting& setting) {
  std::vector<Rational> table(setting.table_size(),
                              make_rational(1, static_cast<long>(setting.d_a) * setting.d_b));
  return Behaviour::validated(setting, std::move(table));
}

Behaviour pr_box(const Setting& setting, int k) {
  if (setting.m_a != 2 || setting.m_b != 2)
    throw Error(ErrorCode::bad_setting, "PR family needs two inputs per party");
  if (k < 2 || k > setting.d_a || k > setting.d_b)
    throw Error(ErrorCode::bad_k,
                "k=" + std::to_string(k) + " outside 2..min(dA,dB) for " + setting.str());

  std::vector<Rational> table(setting.table_size(), Rational(0));
  const Rational w = make_rational(1, k);
  for (int a = 0; a < k; ++a) {
    table[setting.index(a, a, 0, 0)] = w;
    table[setting.index(a, a, 1, 0)] = w;
    table[setting.index(a, a, 0, 1)] = w;
    table[setting.index(a, (a + 1) % k, 1, 1)] = w;
  }
  return Behaviour::validated(setting, std::move(table));
}

Behaviour mix(const std::vector<std::pair<Rational, Behaviour>>& terms) {
  if (terms.empty()) throw Error(ErrorCode::weight_sum, "empty mixture");
  const Setting& s = terms.front().second.setting();
  Rational total = 0;
  for (const auto& [w, q] : terms) {
    if (w < 0) throw Error(ErrorCode::weight_sum, "negative weight " + to_string(w));
    if (!(q.setting() == s))
      throw Error(ErrorCode::setting_mismatch,
                  "mixture across settings " + s.str() + " and " + q.setting().str());
    total += w;
  }
  if (total != 1)
    throw Error(ErrorCode::weight_sum, "weights sum to " + to_string(total));

  std::vector<Rational> table(s.table_size(), Rational(0));
  for (const auto& [w, q] : terms) {
    if (w == 0) continue;
    for (std::size_t i = 0; i < table.size(); ++i) table[i] += w * q.table()[i];
  }
  return Behaviour::validated(s, std::move(table));
}

Behaviour embed_outputs(const Behaviour& p, int d_a2, int d_b2) {
  const Setting& s = p.setting();
  if (d_a2 < s.d_a || d_b2 < s.d_b)
    throw Error(ErrorCode::bad_setting, "embedding cannot shrink output alphabets");
  Setting s2(s.m_a, s.m_b, d_a2, d_b2);
  std::vector<Rational> table(s2.table_size(), Rational(0));
  for (int x = 0; x < s.m_a; ++x)
    for (int y = 0; y < s.m_b; ++y)
      for (int a = 0; a < s.d_a; ++a)
        for (int b = 0; b < s.d_b; ++b)
          table[s2.index(a, b, x, y)] = p.at(a, b, x, y);
  return Behaviour::validated(s2, std::move(table));
}

}  // namespace nsbox
