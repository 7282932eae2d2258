#include "nsbox/suite.hpp"

#include <map>
#include <sstream>

#include "nsbox/errors.hpp"
#include "nsbox/json_io.hpp"
#include "nsbox/sampling.hpp"

namespace nsbox {

const char* suite_measure_name(SuiteMeasure m) {
  switch (m) {
    case SuiteMeasure::bell_chsh: return "chsh";
    case SuiteMeasure::epr2: return "epr2";
    case SuiteMeasure::robustness: return "robustness";
    case SuiteMeasure::eta_star: return "eta";
    case SuiteMeasure::comm_avg: return "comm-avg";
    case SuiteMeasure::comm_worst: return "comm-worst";
    case SuiteMeasure::rel_entropy: return "rel-entropy";
  }
  return "?";
}

namespace {

struct Value {
  enum class Kind { exact, bracket, floating } kind = Kind::exact;
  Rational exact;
  Rational lo, hi;
  double value = 0, gap = 0;

  std::string str() const {
    switch (kind) {
      case Kind::exact: return to_string(exact);
      case Kind::bracket: return "[" + to_string(lo) + ", " + to_string(hi) + "]";
      case Kind::floating: {
        std::ostringstream out;
        out.precision(12);
        out << value << " (gap " << gap << ")";
        return out.str();
      }
    }
    return "";
  }
};

class SuiteRun {
 public:
  SuiteRun(SuiteMeasure measure, const SuiteOptions& opt)
      : measure_(measure), opt_(opt), sampler_(opt.seed) {}

  SuiteReport run() {
    SuiteReport report;
    report.measure = measure_;
    report.trials = opt_.trials;
    report.seed = opt_.seed;

    for (int t = 0; t < opt_.trials; ++t) run_trial(t, report);
    return report;
  }

 private:
  const VertexSet& vertices(const Setting& s) {
    auto it = cache_.find(s.str());
    if (it == cache_.end())
      it = cache_.emplace(s.str(), VertexSet::make(s, opt_.vertex_cap)).first;
    return it->second;
  }

  const std::vector<Behaviour>& extremals(const Setting& s) {
    auto it = extremals_.find(s.str());
    if (it == extremals_.end()) it = extremals_.emplace(s.str(), pr_family_embeddings(s)).first;
    return it->second;
  }

  Value evaluate(const Behaviour& p) {
    Value v;
    switch (measure_) {
      case SuiteMeasure::bell_chsh:
        v.exact = chsh(p, opt_.wiring_cap).value;
        break;
      case SuiteMeasure::epr2:
        v.exact = epr2(p, vertices(p.setting())).value;
        break;
      case SuiteMeasure::robustness:
        v.exact = robustness(p, vertices(p.setting())).value;
        break;
      case SuiteMeasure::eta_star: {
        const EtaStarResult r = eta_star(p, opt_.eta_precision, opt_.vertex_cap);
        v.kind = Value::Kind::bracket;
        v.lo = r.neff_lo;
        v.hi = r.neff_hi;
        break;
      }
      case SuiteMeasure::comm_avg:
        v.exact = comm_cost_avg(p, opt_.strategy_cap).value;
        break;
      case SuiteMeasure::comm_worst:
        v.exact = comm_cost_worst(p, opt_.strategy_cap).value;
        break;
      case SuiteMeasure::rel_entropy: {
        const RelEntropyResult r =
            relative_entropy_nl(p, vertices(p.setting()), opt_.gap_tol);
        v.kind = Value::Kind::floating;
        v.value = r.value;
        v.gap = r.gap;
        break;
      }
    }
    return v;
  }

  bool violates(const Value& before, const Value& after) const {
    switch (before.kind) {
      case Value::Kind::exact: return after.exact > before.exact;
      case Value::Kind::bracket: return after.lo > before.hi;
      case Value::Kind::floating:
        return after.value > before.value + 2 * opt_.gap_tol;
    }
    return false;
  }

  void record(SuiteReport& report, bool open_question, const std::string& op,
              const Behaviour& before, const Behaviour& after, const Value& vb,
              const Value& va) {
    SuiteFinding f{op, behaviour_to_json(before).dump(), behaviour_to_json(after).dump(),
                   vb.str(), va.str()};
    (open_question ? report.open_findings : report.violations).push_back(std::move(f));
  }

  void compare_pair(SuiteReport& report, bool open_question, const std::string& op,
                    const Behaviour& before, const Behaviour& after) {
    const Value vb = evaluate(before);
    const Value va = evaluate(after);
    ++report.comparisons;
    if (violates(vb, va)) record(report, open_question, op, before, after, vb, va);
  }

  // A generic single-copy operation: p0 L + sum q_i O_i(p), where the pool
  // of O_i depends on the measure under test.
  Behaviour mixture_image(const Behaviour& p, std::string* desc) {
    const Setting& s = p.setting();
    const int k = 1 + sampler_.below(2);
    const auto w = sampler_.convex_weights(k + 1);
    std::vector<std::pair<Rational, Behaviour>> terms;
    terms.emplace_back(w[0], sampler_.local_mixture(vertices(s)));
    std::ostringstream out;
    out << "p0*L";
    for (int i = 0; i < k; ++i) {
      LocalWiring op;
      if (measure_ == SuiteMeasure::bell_chsh) {
        if (opt_.include_coarse_grainings && sampler_.below(2) == 1) {
          op = sampler_.random_coarse_graining(s);
          out << " + q*G";
        } else {
          op = sampler_.random_relabeling(s);
          out << " + q*R";
        }
      } else {
        op = sampler_.random_wiring(s);
        out << " + q*O";
      }
      terms.emplace_back(w[i + 1], apply_wiring(op, p));
    }
    *desc = out.str();
    return mix(terms);
  }

  void run_trial(int t, SuiteReport& report) {
    const Setting& s = opt_.setting;

    // Canonical counterexample first: merging the extra outputs of the
    // largest extremal box boosts its CHSH value.
    if (measure_ == SuiteMeasure::bell_chsh && opt_.include_coarse_grainings && t == 0 &&
        std::min(s.d_a, s.d_b) >= 3 && !extremals(s).empty()) {
      const Behaviour& p = extremals(s).back();
      std::vector<std::vector<int>> sets_a(s.m_a), sets_b(s.m_b);
      std::vector<int> reps_a(s.m_a, 0), reps_b(s.m_b, 0);
      for (int x = 0; x < s.m_a; ++x) {
        sets_a[x] = {0};
        for (int a = 2; a < s.d_a; ++a) sets_a[x].push_back(a);
      }
      for (int y = 0; y < s.m_b; ++y) {
        sets_b[y] = {0};
        for (int b = 2; b < s.d_b; ++b) sets_b[y].push_back(b);
      }
      const Behaviour after =
          coarse_grain(coarse_grain(p, Party::alice, sets_a, reps_a), Party::bob, sets_b,
                       reps_b);
      compare_pair(report, false, "merge extra outputs into 1 (both parties)", p, after);
      return;
    }

    Behaviour p = sampler_.ns_mixture(vertices(s), extremals(s));

    if (measure_ == SuiteMeasure::rel_entropy && opt_.include_input_largenings &&
        t % 2 == 1) {
      const Party party = sampler_.below(2) == 0 ? Party::alice : Party::bob;
      const int d = party == Party::alice ? s.d_a : s.d_b;
      const Behaviour after = enlarge_input_uncorrelated(p, party, sampler_.below(d));
      compare_pair(report, false, "uncorrelated input largening", p, after);
      return;
    }

    if (measure_ == SuiteMeasure::rel_entropy && t % 5 == 4) {
      // Whether the entropy can grow under input substitution is untested
      // theory; findings are reported, not asserted.
      const Party party = sampler_.below(2) == 0 ? Party::alice : Party::bob;
      const int m = party == Party::alice ? s.m_a : s.m_b;
      const int x1 = sampler_.below(m), x2 = sampler_.below(m);
      const Behaviour after = substitute_input(p, party, x1, x2);
      compare_pair(report, true, "input substitution", p, after);
      return;
    }

    const bool cross_setting_trial = opt_.include_cross_setting && t % 4 == 3 &&
                                     measure_ != SuiteMeasure::bell_chsh;
    if (cross_setting_trial) {
      // Strategy pools and lossy-model vertex sets blow up on enlarged
      // output alphabets; for those measures only shortenings are sampled.
      const bool shorten_only = measure_ == SuiteMeasure::comm_avg ||
                                measure_ == SuiteMeasure::comm_worst ||
                                measure_ == SuiteMeasure::eta_star;
      const int choice = shorten_only ? 1 : sampler_.below(4);
      const Party party = sampler_.below(2) == 0 ? Party::alice : Party::bob;
      const int m = party == Party::alice ? s.m_a : s.m_b;
      const int d = party == Party::alice ? s.d_a : s.d_b;
      switch (choice) {
        case 0: {
          const Rational q = make_rational(sampler_.below(17), 16);
          const Behaviour after =
              unfold_output(p, party, sampler_.below(m), sampler_.below(d), q);
          compare_pair(report, false, "output unfolding", p, after);
          return;
        }
        case 1: {
          if (m < 2) break;
          const Behaviour after = shorten_input(p, party, {sampler_.below(m)});
          compare_pair(report, false, "input shortening", p, after);
          return;
        }
        case 2: {
          const Behaviour after = enlarge_input_correlated(p, party, sampler_.below(m));
          compare_pair(report, false, "correlated input largening", p, after);
          return;
        }
        default: {
          const Behaviour after = enlarge_input_uncorrelated(p, party, sampler_.below(d));
          compare_pair(report, false, "uncorrelated input largening", p, after);
          return;
        }
      }
    }

    std::string desc;
    const Behaviour after = mixture_image(p, &desc);
    compare_pair(report, false, desc, p, after);
  }

  SuiteMeasure measure_;
  SuiteOptions opt_;
  Sampler sampler_;
  std::map<std::string, VertexSet> cache_;
  std::map<std::string, std::vector<Behaviour>> extremals_;
};

}  // namespace

SuiteReport monotonicity_suite(SuiteMeasure measure, const SuiteOptions& options) {
  SuiteRun run(measure, options);
  return run.run();
}

}  // namespace nsbox
