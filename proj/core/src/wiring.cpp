#include "nsbox/wiring.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <string>

#include "nsbox/errors.hpp"

namespace nsbox {

namespace {

bool is_permutation_of_range(const std::vector<int>& v) {
  std::vector<char> seen(v.size(), 0);
  for (int e : v) {
    if (e < 0 || e >= static_cast<int>(v.size()) || seen[e]) return false;
    seen[e] = 1;
  }
  return true;
}

void check_party_shape(const PartyWiring& w, int m, int d, const char* who) {
  if (static_cast<int>(w.input_map.size()) != m ||
      static_cast<int>(w.output_maps.size()) != m)
    throw Error(ErrorCode::shape_mismatch, std::string(who) + " wiring input arity");
  for (int x = 0; x < m; ++x) {
    if (w.input_map[x] < 0 || w.input_map[x] >= m)
      throw Error(ErrorCode::out_of_alphabet, std::string(who) + " input map value");
    if (static_cast<int>(w.output_maps[x].size()) != d)
      throw Error(ErrorCode::shape_mismatch, std::string(who) + " output map arity");
    for (int a = 0; a < d; ++a)
      if (w.output_maps[x][a] < 0 || w.output_maps[x][a] >= d)
        throw Error(ErrorCode::out_of_alphabet, std::string(who) + " output map value");
  }
}

int checked_input(int x, int m, const char* what) {
  if (x < 0 || x >= m)
    throw Error(ErrorCode::out_of_alphabet,
                std::string(what) + " input " + std::to_string(x + 1));
  return x;
}

int checked_output(int a, int d, const char* what) {
  if (a < 0 || a >= d)
    throw Error(ErrorCode::out_of_alphabet,
                std::string(what) + " output " + std::to_string(a + 1));
  return a;
}

}  // namespace

PartyWiring PartyWiring::identity(int n_inputs, int n_outputs) {
  PartyWiring w;
  w.input_map.resize(n_inputs);
  std::iota(w.input_map.begin(), w.input_map.end(), 0);
  std::vector<int> id_out(n_outputs);
  std::iota(id_out.begin(), id_out.end(), 0);
  w.output_maps.assign(n_inputs, id_out);
  return w;
}

bool PartyWiring::is_identity() const {
  return *this == identity(static_cast<int>(input_map.size()),
                           static_cast<int>(output_maps.empty() ? 0 : output_maps[0].size()));
}

bool PartyWiring::is_relabeling() const {
  if (!is_permutation_of_range(input_map)) return false;
  for (const auto& h : output_maps)
    if (!is_permutation_of_range(h)) return false;
  return true;
}

LocalWiring LocalWiring::identity(const Setting& s) {
  return {s, PartyWiring::identity(s.m_a, s.d_a), PartyWiring::identity(s.m_b, s.d_b)};
}

void check_wiring_shape(const LocalWiring& w) {
  check_party_shape(w.alice, w.setting.m_a, w.setting.d_a, "alice");
  check_party_shape(w.bob, w.setting.m_b, w.setting.d_b, "bob");
}

Behaviour apply_wiring(const LocalWiring& w, const Behaviour& p) {
  if (!(w.setting == p.setting()))
    throw Error(ErrorCode::setting_mismatch,
                "wiring on " + w.setting.str() + ", behaviour on " + p.setting().str());
  check_wiring_shape(w);
  const Setting& s = p.setting();
  std::vector<Rational> t(s.table_size(), Rational(0));
  for (int x = 0; x < s.m_a; ++x) {
    const int qx = w.alice.input_map[x];
    for (int y = 0; y < s.m_b; ++y) {
      const int qy = w.bob.input_map[y];
      for (int ar = 0; ar < s.d_a; ++ar) {
        const int a = w.alice.output_maps[x][ar];
        for (int br = 0; br < s.d_b; ++br) {
          const int b = w.bob.output_maps[y][br];
          const Rational& v = p.at(ar, br, qx, qy);
          if (sgn(v) != 0) t[s.index(a, b, x, y)] += v;
        }
      }
    }
  }
  return Behaviour::validated(s, std::move(t));
}

LocalWiring compose(const LocalWiring& outer, const LocalWiring& inner) {
  if (!(outer.setting == inner.setting))
    throw Error(ErrorCode::setting_mismatch, "composing wirings across settings");
  const Setting& s = outer.setting;
  auto compose_party = [](const PartyWiring& o, const PartyWiring& i, int m, int d) {
    PartyWiring r;
    r.input_map.resize(m);
    r.output_maps.assign(m, std::vector<int>(d, 0));
    for (int x = 0; x < m; ++x) {
      const int mid = o.input_map[x];
      r.input_map[x] = i.input_map[mid];
      for (int a = 0; a < d; ++a) r.output_maps[x][a] = o.output_maps[x][i.output_maps[mid][a]];
    }
    return r;
  };
  return {s, compose_party(outer.alice, inner.alice, s.m_a, s.d_a),
          compose_party(outer.bob, inner.bob, s.m_b, s.d_b)};
}

// ---- named operations -------------------------------------------------

LocalWiring wiring_from_relabeling(const Setting& s, const std::vector<int>& pi_a_in,
                                   const std::vector<int>& pi_b_in,
                                   const std::vector<std::vector<int>>& pi_a_out,
                                   const std::vector<std::vector<int>>& pi_b_out) {
  if (static_cast<int>(pi_a_in.size()) != s.m_a ||
      static_cast<int>(pi_b_in.size()) != s.m_b ||
      !is_permutation_of_range(pi_a_in) || !is_permutation_of_range(pi_b_in))
    throw Error(ErrorCode::not_bijective, "input relabeling is not a permutation");
  if (static_cast<int>(pi_a_out.size()) != s.m_a ||
      static_cast<int>(pi_b_out.size()) != s.m_b)
    throw Error(ErrorCode::shape_mismatch, "need one output permutation per input");
  for (const auto& pi : pi_a_out)
    if (static_cast<int>(pi.size()) != s.d_a || !is_permutation_of_range(pi))
      throw Error(ErrorCode::not_bijective, "alice output relabeling is not a permutation");
  for (const auto& pi : pi_b_out)
    if (static_cast<int>(pi.size()) != s.d_b || !is_permutation_of_range(pi))
      throw Error(ErrorCode::not_bijective, "bob output relabeling is not a permutation");

  auto invert_perm = [](const std::vector<int>& pi) {
    std::vector<int> inv(pi.size());
    for (std::size_t i = 0; i < pi.size(); ++i) inv[pi[i]] = static_cast<int>(i);
    return inv;
  };
  LocalWiring w{s, {pi_a_in, {}}, {pi_b_in, {}}};
  for (const auto& pi : pi_a_out) w.alice.output_maps.push_back(invert_perm(pi));
  for (const auto& pi : pi_b_out) w.bob.output_maps.push_back(invert_perm(pi));
  check_wiring_shape(w);
  return w;
}

Behaviour relabel(const Behaviour& p, const std::vector<int>& pi_a_in,
                  const std::vector<int>& pi_b_in,
                  const std::vector<std::vector<int>>& pi_a_out,
                  const std::vector<std::vector<int>>& pi_b_out) {
  // Direct table form of P'(ab|xy) = P(piA_out[x](a) piB_out[y](b) | ...).
  const Setting& s = p.setting();
  if (!is_permutation_of_range(pi_a_in) || !is_permutation_of_range(pi_b_in) ||
      static_cast<int>(pi_a_in.size()) != s.m_a ||
      static_cast<int>(pi_b_in.size()) != s.m_b)
    throw Error(ErrorCode::not_bijective, "input relabeling is not a permutation");
  if (static_cast<int>(pi_a_out.size()) != s.m_a ||
      static_cast<int>(pi_b_out.size()) != s.m_b)
    throw Error(ErrorCode::shape_mismatch, "need one output permutation per input");
  for (const auto& pi : pi_a_out)
    if (static_cast<int>(pi.size()) != s.d_a || !is_permutation_of_range(pi))
      throw Error(ErrorCode::not_bijective, "alice output relabeling is not a permutation");
  for (const auto& pi : pi_b_out)
    if (static_cast<int>(pi.size()) != s.d_b || !is_permutation_of_range(pi))
      throw Error(ErrorCode::not_bijective, "bob output relabeling is not a permutation");

  std::vector<Rational> t(s.table_size());
  for (int x = 0; x < s.m_a; ++x)
    for (int y = 0; y < s.m_b; ++y)
      for (int a = 0; a < s.d_a; ++a)
        for (int b = 0; b < s.d_b; ++b)
          t[s.index(a, b, x, y)] =
              p.at(pi_a_out[x][a], pi_b_out[y][b], pi_a_in[x], pi_b_in[y]);
  return Behaviour::validated(s, std::move(t));
}

LocalWiring wiring_from_coarse_graining(const Setting& s, Party party,
                                        const std::vector<std::vector<int>>& sets,
                                        const std::vector<int>& reps) {
  const int m = party == Party::alice ? s.m_a : s.m_b;
  const int d = party == Party::alice ? s.d_a : s.d_b;
  if (static_cast<int>(sets.size()) != m || static_cast<int>(reps.size()) != m)
    throw Error(ErrorCode::shape_mismatch, "need one merge set and representative per input");

  LocalWiring w = LocalWiring::identity(s);
  PartyWiring& pw = party == Party::alice ? w.alice : w.bob;
  for (int x = 0; x < m; ++x) {
    checked_output(reps[x], d, "representative");
    bool rep_in_set = false;
    for (int a : sets[x]) {
      checked_output(a, d, "merge set");
      if (a == reps[x]) rep_in_set = true;
      pw.output_maps[x][a] = reps[x];
    }
    if (!rep_in_set)
      throw Error(ErrorCode::bad_representative,
                  "representative " + std::to_string(reps[x] + 1) +
                      " not in its merge set at input " + std::to_string(x + 1));
  }
  return w;
}

Behaviour coarse_grain(const Behaviour& p, Party party,
                       const std::vector<std::vector<int>>& sets,
                       const std::vector<int>& reps) {
  // Three-case map: keep / sum into the representative / zero.
  const Setting& s = p.setting();
  const LocalWiring w = wiring_from_coarse_graining(s, party, sets, reps);
  const int m = party == Party::alice ? s.m_a : s.m_b;
  const int d = party == Party::alice ? s.d_a : s.d_b;

  std::vector<std::vector<char>> in_set(m, std::vector<char>(d, 0));
  for (int x = 0; x < m; ++x)
    for (int a : sets[x]) in_set[x][a] = 1;

  std::vector<Rational> t(s.table_size(), Rational(0));
  for (int x = 0; x < s.m_a; ++x)
    for (int y = 0; y < s.m_b; ++y)
      for (int a = 0; a < s.d_a; ++a)
        for (int b = 0; b < s.d_b; ++b) {
          const int own = party == Party::alice ? a : b;
          const int inp = party == Party::alice ? x : y;
          Rational v;
          if (!in_set[inp][own]) {
            v = p.at(a, b, x, y);
          } else if (own == reps[inp]) {
            v = 0;
            for (int o : sets[inp]) {
              v += party == Party::alice ? p.at(o, b, x, y) : p.at(a, o, x, y);
            }
          } else {
            v = 0;
          }
          t[s.index(a, b, x, y)] = v;
        }
  return Behaviour::validated(s, std::move(t));
}

LocalWiring wiring_from_substitution(const Setting& s, Party party, int x1, int x2) {
  const int m = party == Party::alice ? s.m_a : s.m_b;
  checked_input(x1, m, "substitution source");
  checked_input(x2, m, "substitution target");
  LocalWiring w = LocalWiring::identity(s);
  (party == Party::alice ? w.alice : w.bob).input_map[x2] = x1;
  return w;
}

Behaviour substitute_input(const Behaviour& p, Party party, int x1, int x2) {
  const Setting& s = p.setting();
  const int m = party == Party::alice ? s.m_a : s.m_b;
  checked_input(x1, m, "substitution source");
  checked_input(x2, m, "substitution target");
  std::vector<Rational> t = p.table();
  for (int other = 0; other < (party == Party::alice ? s.m_b : s.m_a); ++other)
    for (int a = 0; a < s.d_a; ++a)
      for (int b = 0; b < s.d_b; ++b) {
        if (party == Party::alice)
          t[s.index(a, b, x2, other)] = p.at(a, b, x1, other);
        else
          t[s.index(a, b, other, x2)] = p.at(a, b, other, x1);
      }
  return Behaviour::validated(s, std::move(t));
}

// ---- setting-changing operations --------------------------------------

Behaviour unfold_output(const Behaviour& p, Party party, int x, int a, const Rational& q) {
  if (q < 0 || q > 1)
    throw Error(ErrorCode::bad_probability, "unfolding fraction " + to_string(q));
  const Setting& s = p.setting();
  const int m = party == Party::alice ? s.m_a : s.m_b;
  const int d = party == Party::alice ? s.d_a : s.d_b;
  checked_input(x, m, "unfold");
  checked_output(a, d, "unfold");

  const Setting s2(s.m_a, s.m_b, party == Party::alice ? s.d_a + 1 : s.d_a,
                   party == Party::bob ? s.d_b + 1 : s.d_b);
  std::vector<Rational> t(s2.table_size(), Rational(0));
  for (int xx = 0; xx < s.m_a; ++xx)
    for (int yy = 0; yy < s.m_b; ++yy)
      for (int aa = 0; aa < s.d_a; ++aa)
        for (int bb = 0; bb < s.d_b; ++bb) {
          const Rational& v = p.at(aa, bb, xx, yy);
          if (sgn(v) == 0) continue;
          const int own = party == Party::alice ? aa : bb;
          const int inp = party == Party::alice ? xx : yy;
          if (inp == x && own == a) {
            t[s2.index(aa, bb, xx, yy)] += q * v;
            if (party == Party::alice)
              t[s2.index(s.d_a, bb, xx, yy)] += (1 - q) * v;
            else
              t[s2.index(aa, s.d_b, xx, yy)] += (1 - q) * v;
          } else {
            t[s2.index(aa, bb, xx, yy)] += v;
          }
        }
  return Behaviour::validated(s2, std::move(t));
}

Behaviour partial_merge(const Behaviour& p, Party party, int x, int a1, int a2,
                        const Rational& q) {
  if (a1 == a2)
    throw Error(ErrorCode::same_output, "cannot merge an output into itself");
  if (q < 0 || q > 1)
    throw Error(ErrorCode::bad_probability, "merge probability " + to_string(q));
  const Setting& s = p.setting();
  const int m = party == Party::alice ? s.m_a : s.m_b;
  const int d = party == Party::alice ? s.d_a : s.d_b;
  checked_input(x, m, "partial merge");
  checked_output(a1, d, "partial merge");
  checked_output(a2, d, "partial merge");

  std::vector<std::vector<int>> sets(m);
  std::vector<int> reps(m);
  for (int i = 0; i < m; ++i) {
    sets[i] = {0};
    reps[i] = 0;
  }
  sets[x] = {a1, a2};
  reps[x] = a1;
  return mix({{1 - q, p}, {q, coarse_grain(p, party, sets, reps)}});
}

Behaviour shorten_input(const Behaviour& p, Party party, const std::vector<int>& drop) {
  const Setting& s = p.setting();
  const int m = party == Party::alice ? s.m_a : s.m_b;
  std::vector<char> dropped(m, 0);
  for (int x : drop) dropped[checked_input(x, m, "shorten")] = 1;
  std::vector<int> keep;
  for (int x = 0; x < m; ++x)
    if (!dropped[x]) keep.push_back(x);
  if (keep.empty())
    throw Error(ErrorCode::empty_inputs, "cannot drop every input of a party");

  const Setting s2(party == Party::alice ? static_cast<int>(keep.size()) : s.m_a,
                   party == Party::bob ? static_cast<int>(keep.size()) : s.m_b, s.d_a,
                   s.d_b);
  std::vector<Rational> t(s2.table_size());
  for (int x = 0; x < s2.m_a; ++x)
    for (int y = 0; y < s2.m_b; ++y) {
      const int sx = party == Party::alice ? keep[x] : x;
      const int sy = party == Party::bob ? keep[y] : y;
      for (int a = 0; a < s.d_a; ++a)
        for (int b = 0; b < s.d_b; ++b) t[s2.index(a, b, x, y)] = p.at(a, b, sx, sy);
    }
  return Behaviour::validated(s2, std::move(t));
}

Behaviour enlarge_input_uncorrelated(const Behaviour& p, Party party, int value) {
  const Setting& s = p.setting();
  const int d = party == Party::alice ? s.d_a : s.d_b;
  if (value < 0 || value >= d)
    throw Error(ErrorCode::bad_source,
                "deterministic value " + std::to_string(value + 1) + " outside alphabet");
  const Setting s2(party == Party::alice ? s.m_a + 1 : s.m_a,
                   party == Party::bob ? s.m_b + 1 : s.m_b, s.d_a, s.d_b);
  std::vector<Rational> t(s2.table_size(), Rational(0));
  for (int x = 0; x < s2.m_a; ++x)
    for (int y = 0; y < s2.m_b; ++y)
      for (int a = 0; a < s.d_a; ++a)
        for (int b = 0; b < s.d_b; ++b) {
          Rational v;
          if (party == Party::alice && x == s.m_a)
            v = a == value ? p.marginal_b(b, y) : Rational(0);
          else if (party == Party::bob && y == s.m_b)
            v = b == value ? p.marginal_a(a, x) : Rational(0);
          else
            v = p.at(a, b, x, y);
          t[s2.index(a, b, x, y)] = v;
        }
  return Behaviour::validated(s2, std::move(t));
}

Behaviour enlarge_input_correlated(const Behaviour& p, Party party, int source) {
  const Setting& s = p.setting();
  const int m = party == Party::alice ? s.m_a : s.m_b;
  if (source < 0 || source >= m)
    throw Error(ErrorCode::bad_source, "source input " + std::to_string(source + 1));
  const Setting s2(party == Party::alice ? s.m_a + 1 : s.m_a,
                   party == Party::bob ? s.m_b + 1 : s.m_b, s.d_a, s.d_b);
  std::vector<Rational> t(s2.table_size());
  for (int x = 0; x < s2.m_a; ++x)
    for (int y = 0; y < s2.m_b; ++y) {
      const int sx = party == Party::alice && x == s.m_a ? source : x;
      const int sy = party == Party::bob && y == s.m_b ? source : y;
      for (int a = 0; a < s.d_a; ++a)
        for (int b = 0; b < s.d_b; ++b) t[s2.index(a, b, x, y)] = p.at(a, b, sx, sy);
    }
  return Behaviour::validated(s2, std::move(t));
}

// ---- enumeration -------------------------------------------------------

namespace {

std::uint64_t ipow(std::uint64_t base, std::uint64_t exp) {
  std::uint64_t r = 1;
  while (exp--) r *= base;
  return r;
}

PartyWiring party_wiring_from_index(int m, int d, std::uint64_t idx) {
  // Mixed radix over per-input blocks, input 0 most significant; inside the
  // block the queried input is major and the output-map digits follow, raw
  // output 0 most significant.
  const std::uint64_t block = static_cast<std::uint64_t>(m) * ipow(d, d);
  PartyWiring w;
  w.input_map.assign(m, 0);
  w.output_maps.assign(m, std::vector<int>(d, 0));
  for (int x = m - 1; x >= 0; --x) {
    std::uint64_t bx = idx % block;
    idx /= block;
    std::uint64_t hcode = bx % ipow(d, d);
    w.input_map[x] = static_cast<int>(bx / ipow(d, d));
    for (int a = d - 1; a >= 0; --a) {
      w.output_maps[x][a] = static_cast<int>(hcode % d);
      hcode /= d;
    }
  }
  return w;
}

}  // namespace

std::uint64_t party_wiring_count(int n_inputs, int n_outputs) {
  return ipow(static_cast<std::uint64_t>(n_inputs) * ipow(n_outputs, n_outputs),
              n_inputs);
}

std::vector<PartyWiring> enumerate_party_wirings(int n_inputs, int n_outputs,
                                                 std::uint64_t cap) {
  const std::uint64_t count = party_wiring_count(n_inputs, n_outputs);
  if (count > cap)
    throw Error(ErrorCode::cap_exceeded,
                std::to_string(count) + " party wirings exceed cap " + std::to_string(cap));
  std::vector<PartyWiring> out;
  out.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i)
    out.push_back(party_wiring_from_index(n_inputs, n_outputs, i));
  return out;
}

std::uint64_t wiring_count(const Setting& s) {
  return party_wiring_count(s.m_a, s.d_a) * party_wiring_count(s.m_b, s.d_b);
}

std::vector<LocalWiring> enumerate_wirings(const Setting& s, std::uint64_t cap) {
  const std::uint64_t count = wiring_count(s);
  if (count > cap)
    throw Error(ErrorCode::cap_exceeded, std::to_string(count) +
                                             " same-setting wirings exceed cap " +
                                             std::to_string(cap));
  const auto alice = enumerate_party_wirings(s.m_a, s.d_a, cap);
  const auto bob = enumerate_party_wirings(s.m_b, s.d_b, cap);
  std::vector<LocalWiring> out;
  out.reserve(count);
  for (const auto& wa : alice)
    for (const auto& wb : bob) out.push_back({s, wa, wb});
  const LocalWiring id = LocalWiring::identity(s);
  auto it = std::find(out.begin(), out.end(), id);
  std::rotate(out.begin(), it, it + 1);
  return out;
}

std::uint64_t relabeling_count(const Setting& s) {
  auto fact = [](int n) {
    std::uint64_t r = 1;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
  };
  return fact(s.m_a) * ipow(fact(s.d_a), s.m_a) * fact(s.m_b) * ipow(fact(s.d_b), s.m_b);
}

namespace {

std::vector<PartyWiring> party_relabelings(int m, int d) {
  std::vector<std::vector<int>> in_perms;
  std::vector<int> base(m);
  std::iota(base.begin(), base.end(), 0);
  do {
    in_perms.push_back(base);
  } while (std::next_permutation(base.begin(), base.end()));

  std::vector<std::vector<int>> out_perms;
  std::vector<int> obase(d);
  std::iota(obase.begin(), obase.end(), 0);
  do {
    out_perms.push_back(obase);
  } while (std::next_permutation(obase.begin(), obase.end()));

  std::vector<PartyWiring> out;
  out.reserve(in_perms.size() * ipow(out_perms.size(), m));
  std::vector<std::size_t> pick(m, 0);
  for (const auto& gp : in_perms) {
    std::fill(pick.begin(), pick.end(), 0);
    for (;;) {
      PartyWiring w;
      w.input_map = gp;
      for (int x = 0; x < m; ++x) w.output_maps.push_back(out_perms[pick[x]]);
      out.push_back(std::move(w));
      int pos = m - 1;
      for (; pos >= 0; --pos) {
        if (++pick[pos] < out_perms.size()) break;
        pick[pos] = 0;
      }
      if (pos < 0) break;
    }
  }
  return out;
}

}  // namespace

std::vector<LocalWiring> enumerate_relabelings(const Setting& s, std::uint64_t cap) {
  const std::uint64_t count = relabeling_count(s);
  if (count > cap)
    throw Error(ErrorCode::cap_exceeded,
                std::to_string(count) + " relabelings exceed cap " + std::to_string(cap));
  const auto alice = party_relabelings(s.m_a, s.d_a);
  const auto bob = party_relabelings(s.m_b, s.d_b);
  std::vector<LocalWiring> out;
  out.reserve(count);
  for (const auto& wa : alice)
    for (const auto& wb : bob) out.push_back({s, wa, wb});
  return out;
}

// ---- ordering oracle ---------------------------------------------------

OrderingVerdict compare(const Behaviour& p1, const Behaviour& p2,
                        std::uint64_t wiring_cap, std::uint64_t vertex_cap) {
  if (!(p1.setting() == p2.setting()))
    throw Error(ErrorCode::setting_mismatch, "ordering is defined per setting");
  const Setting& s = p1.setting();
  return compare(p1, p2, VertexSet::make(s, vertex_cap), enumerate_wirings(s, wiring_cap));
}

OrderingVerdict compare(const Behaviour& p1, const Behaviour& p2,
                        const VertexSet& vertices,
                        const std::vector<LocalWiring>& wirings) {
  if (!(p1.setting() == p2.setting()))
    throw Error(ErrorCode::setting_mismatch, "ordering is defined per setting");
  const Setting& s = p1.setting();
  if (!(vertices.setting == s))
    throw Error(ErrorCode::setting_mismatch, "vertex set vs behaviours");

  // Wiring images of p1, deduplicated onto the first wiring producing them.
  std::vector<std::vector<Rational>> image_tables;
  std::vector<std::size_t> image_wiring;
  std::map<std::vector<Rational>, std::size_t> seen;
  for (std::size_t i = 0; i < wirings.size(); ++i) {
    std::vector<Rational> t = apply_wiring(wirings[i], p1).table();
    if (seen.emplace(t, i).second) {
      image_tables.push_back(std::move(t));
      image_wiring.push_back(i);
    }
  }

  const std::size_t nv = vertices.tables.size();
  const std::size_t nw = image_tables.size();
  const std::size_t dim = s.table_size();
  LPProblem lp = LPProblem::make(static_cast<int>(nv + nw), Sense::minimize);
  for (std::size_t e = 0; e < dim; ++e) {
    std::vector<Rational> row(nv + nw, Rational(0));
    for (std::size_t i = 0; i < nv; ++i) row[i] = vertices.tables[i][e];
    for (std::size_t i = 0; i < nw; ++i) row[nv + i] = image_tables[i][e];
    lp.add_row(std::move(row), Relation::eq, p2.table()[e]);
  }
  lp.add_row(std::vector<Rational>(nv + nw, Rational(1)), Relation::eq, Rational(1));

  const LPOutcome out = solve(lp);
  OrderingVerdict v;
  if (out.status == LPStatus::optimal) {
    v.holds = true;
    for (std::size_t i = 0; i < nv; ++i)
      if (sgn(out.primal[i]) != 0) v.vertex_weights.emplace_back(i, out.primal[i]);
    for (std::size_t i = 0; i < nw; ++i)
      if (sgn(out.primal[nv + i]) != 0)
        v.wiring_weights.emplace_back(image_wiring[i], out.primal[nv + i]);
    return v;
  }
  v.holds = false;
  v.farkas.assign(out.farkas.begin(), out.farkas.begin() + dim + 1);
  return v;
}

bool equally_nonlocal(const Behaviour& p1, const Behaviour& p2,
                      std::uint64_t wiring_cap, std::uint64_t vertex_cap) {
  return compare(p1, p2, wiring_cap, vertex_cap).holds &&
         compare(p2, p1, wiring_cap, vertex_cap).holds;
}

}  // namespace nsbox
