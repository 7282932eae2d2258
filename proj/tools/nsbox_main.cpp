// nsbox: command-line front end for the no-signaling behaviour toolkit.
//
// Subcommands: validate, catalog, is-local, compare, transform, measure,
// suite. All behaviour, functional and wiring files are JSON; "-" reads from
// standard input / writes to standard output. Exit code 0 on success, 1 on
// domain errors, 2 on usage errors; verdicts (local/nonlocal, holds/fails,
// valid/invalid) are part of the JSON output, not the exit code.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "nsbox/cache.hpp"
#include "nsbox/errors.hpp"
#include "nsbox/json_io.hpp"
#include "nsbox/measures.hpp"
#include "nsbox/sampling.hpp"
#include "nsbox/suite.hpp"

using namespace nsbox;

namespace {

struct GlobalOptions {
  std::string cache_dir;
  bool no_cache = false;
  std::uint64_t vertex_cap = kDefaultVertexCap;
  std::uint64_t wiring_cap = kDefaultWiringCap;
  std::uint64_t strategy_cap = kDefaultStrategyCap;

  EnumerationCache cache() const {
    if (no_cache) return EnumerationCache();
    if (!cache_dir.empty()) return EnumerationCache(cache_dir);
    return EnumerationCache::from_environment();
  }
};

std::string read_text(const std::string& name) {
  if (name == "-") {
    std::stringstream buf;
    buf << std::cin.rdbuf();
    return buf.str();
  }
  std::ifstream in(name);
  if (!in) throw Error(ErrorCode::shape_mismatch, "cannot read '" + name + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_output(const json& j, const std::string& name) {
  if (name == "-" || name.empty()) {
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::ofstream out(name);
  if (!out) throw Error(ErrorCode::shape_mismatch, "cannot write '" + name + "'");
  out << j.dump(2) << "\n";
}

Behaviour load_behaviour(const std::string& name) {
  return behaviour_from_json(parse_json_text(read_text(name)));
}

Setting parse_setting(const std::string& text) {
  int v[4];
  char c1, c2, c3;
  std::istringstream in(text);
  if (!(in >> v[0] >> c1 >> v[1] >> c2 >> v[2] >> c3 >> v[3]) || c1 != ',' ||
      c2 != ',' || c3 != ',')
    throw Error(ErrorCode::bad_setting, "expected mA,mB,dA,dB, got '" + text + "'");
  return Setting(v[0], v[1], v[2], v[3]);
}

json point_json(const DeterministicPoint& d, const Rational& w) {
  json j = deterministic_point_to_json(d);
  j["weight"] = to_string(w);
  return j;
}

// ---- catalog ------------------------------------------------------------

Behaviour catalog_behaviour(const std::string& name, const Setting& s) {
  if (name == "uniform") return uniform_behaviour(s);
  const auto colon = name.find(':');
  const std::string kind = name.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : name.substr(colon + 1);
  if (kind == "pr") {
    const int k = arg.empty() ? 2 : std::stoi(arg);
    return pr_box(s, k);
  }
  if (kind == "isotropic") {
    const Rational lam = parse_rational(arg);
    if (lam < 0 || lam > 1)
      throw Error(ErrorCode::bad_probability, "isotropic weight " + arg);
    return mix({{lam, pr_box(s)}, {1 - lam, uniform_behaviour(s)}});
  }
  if (kind == "det") {
    const auto slash = arg.find('/');
    if (slash == std::string::npos)
      throw Error(ErrorCode::shape_mismatch, "det needs f/g digit strings");
    std::vector<int> f, g;
    for (char c : arg.substr(0, slash)) f.push_back(c - '1');
    for (char c : arg.substr(slash + 1)) g.push_back(c - '1');
    return deterministic_point(s, f, g);
  }
  throw Error(ErrorCode::shape_mismatch,
              "unknown catalog name '" + name + "' (uniform | pr:k | isotropic:l | det:f/g)");
}

// ---- verdict rendering ----------------------------------------------------

json locality_json(const LocalityVerdict& v, const VertexSet& vs) {
  json j;
  j["local"] = v.local;
  if (v.local) {
    json dec = json::array();
    for (const auto& [i, w] : v.weights) dec.push_back(point_json(vs.points[i], w));
    j["decomposition"] = std::move(dec);
  } else {
    j["certificate"] = functional_to_json(v.certificate);
    j["violation"] = to_string(v.violation);
  }
  return j;
}

json ordering_json(const OrderingVerdict& v, const VertexSet& vs,
                   const std::vector<LocalWiring>& wirings) {
  json j;
  j["holds"] = v.holds;
  if (v.holds) {
    json lw = json::array();
    for (const auto& [i, w] : v.vertex_weights) lw.push_back(point_json(vs.points[i], w));
    j["local_weights"] = std::move(lw);
    json ww = json::array();
    for (const auto& [i, w] : v.wiring_weights) {
      json e;
      e["wiring"] = wiring_to_json(wirings[i]);
      e["weight"] = to_string(w);
      ww.push_back(std::move(e));
    }
    j["wiring_weights"] = std::move(ww);
  } else {
    json fk = json::array();
    for (const auto& y : v.farkas) fk.push_back(to_string(y));
    j["farkas"] = std::move(fk);
  }
  return j;
}

json measure_report(const std::string& id, const std::string& value, json witness) {
  json j;
  j["measure"] = id;
  j["value"] = value;
  j["witness"] = std::move(witness);
  return j;
}

json finding_json(const SuiteFinding& f) {
  json j;
  j["op"] = f.op;
  j["before"] = parse_json_text(f.before_json);
  j["after"] = parse_json_text(f.after_json);
  j["value_before"] = f.value_before;
  j["value_after"] = f.value_after;
  return j;
}

// ---- transform spec parsing ----------------------------------------------

// "A:1:1,3:1" = party A, input 1, merge outputs {1,3} into representative 1
void apply_coarse_grain_spec(Behaviour& p, const std::string& spec) {
  std::istringstream in(spec);
  std::string party_s, input_s, members_s, rep_s;
  if (!std::getline(in, party_s, ':') || !std::getline(in, input_s, ':') ||
      !std::getline(in, members_s, ':') || !std::getline(in, rep_s))
    throw Error(ErrorCode::shape_mismatch,
                "coarse-grain spec is PARTY:INPUT:OUT1,OUT2,...:REP");
  if (party_s != "A" && party_s != "B")
    throw Error(ErrorCode::shape_mismatch, "party must be A or B");
  const Party party = party_s == "A" ? Party::alice : Party::bob;
  const int m = party == Party::alice ? p.setting().m_a : p.setting().m_b;
  const int x = std::stoi(input_s) - 1;
  if (x < 0 || x >= m) throw Error(ErrorCode::out_of_alphabet, "input " + input_s);
  std::vector<std::vector<int>> sets(m);
  std::vector<int> reps(m);
  for (int i = 0; i < m; ++i) {
    sets[i] = {0};
    reps[i] = 0;
  }
  sets[x].clear();
  std::istringstream mem(members_s);
  std::string tok;
  while (std::getline(mem, tok, ',')) sets[x].push_back(std::stoi(tok) - 1);
  reps[x] = std::stoi(rep_s) - 1;
  p = coarse_grain(p, party, sets, reps);
}

int run(int argc, char** argv) {
  CLI::App app{"no-signaling behaviour toolkit"};
  app.require_subcommand(1);
  GlobalOptions global;
  app.add_option("--cache-dir", global.cache_dir, "enumeration cache directory");
  app.add_flag("--no-cache", global.no_cache, "disable the enumeration cache");
  app.add_option("--vertex-cap", global.vertex_cap, "deterministic-point enumeration cap");
  app.add_option("--wiring-cap", global.wiring_cap, "same-setting wiring enumeration cap");
  app.add_option("--strategy-cap", global.strategy_cap, "signaling strategy enumeration cap");

  std::string in_file, in_file2, out_file = "-";

  auto* validate_cmd = app.add_subcommand("validate", "check a behaviour file");
  validate_cmd->add_option("file", in_file, "behaviour JSON ('-' for stdin)")->required();

  auto* catalog_cmd = app.add_subcommand("catalog", "emit a named behaviour");
  std::string catalog_name, setting_text = "2,2,2,2";
  catalog_cmd->add_option("name", catalog_name, "uniform | pr:k | isotropic:l | det:f/g")
      ->required();
  catalog_cmd->add_option("--setting", setting_text, "mA,mB,dA,dB (default 2,2,2,2)");
  catalog_cmd->add_option("-o,--output", out_file, "output file ('-' = stdout)");

  auto* islocal_cmd = app.add_subcommand("is-local", "membership in the local polytope");
  islocal_cmd->add_option("file", in_file)->required();

  auto* compare_cmd = app.add_subcommand("compare", "is FILE2 reachable from FILE1");
  compare_cmd->add_option("file1", in_file)->required();
  compare_cmd->add_option("file2", in_file2)->required();

  auto* transform_cmd = app.add_subcommand("transform", "apply an allowed operation");
  std::string wiring_file, eta_text;
  std::vector<std::string> cg_specs;
  transform_cmd->add_option("file", in_file)->required();
  transform_cmd->add_option("--wiring", wiring_file, "wiring JSON to apply");
  transform_cmd->add_option("--coarse-grain", cg_specs,
                            "PARTY:INPUT:OUT1,OUT2,...:REP (repeatable)");
  transform_cmd->add_option("--eta", eta_text, "lossy-detector efficiency (rational)");
  transform_cmd->add_option("-o,--output", out_file);

  auto* measure_cmd = app.add_subcommand("measure", "evaluate a nonlocality measure");
  std::string measure_id, mode_text = "relabelings", functional_file, precision_text,
              gap_text;
  bool average_inputs = false;
  measure_cmd
      ->add_option("id", measure_id,
                   "chsh | bell | epr2 | robustness | eta | comm-avg | comm-worst | "
                   "rel-entropy")
      ->required();
  measure_cmd->add_option("file", in_file)->required();
  measure_cmd->add_option("--mode", mode_text, "bell mode: relabelings | wirings");
  measure_cmd->add_option("--functional", functional_file, "functional JSON (id=bell)");
  measure_cmd->add_option("--precision", precision_text, "eta bracket width (default 1/2^20)");
  measure_cmd->add_option("--gap-tol", gap_text, "entropy duality-gap tolerance");
  measure_cmd->add_flag("--average-inputs", average_inputs,
                        "divide the entropy by the input count");

  auto* suite_cmd = app.add_subcommand("suite", "monotonicity test harness");
  std::string suite_id;
  SuiteOptions suite_opt;
  std::string suite_setting = "2,2,2,2", suite_precision, suite_gap;
  bool no_cross = false;
  suite_cmd->add_option("id", suite_id, "measure id as in 'measure'")->required();
  suite_cmd->add_option("--trials", suite_opt.trials, "sampled pairs (default 200)");
  suite_cmd->add_option("--seed", suite_opt.seed, "sampling seed (default 1)");
  suite_cmd->add_option("--setting", suite_setting, "mA,mB,dA,dB");
  suite_cmd->add_flag("--include-coarse-grainings", suite_opt.include_coarse_grainings,
                      "add coarse grainings to the Bell-value operation pool");
  suite_cmd->add_flag("--include-input-largenings", suite_opt.include_input_largenings,
                      "add uncorrelated input largenings (entropy suite)");
  suite_cmd->add_flag("--no-cross-setting", no_cross,
                      "sample only same-setting operations");
  suite_cmd->add_option("--eta-precision", suite_precision, "bracket width for the eta suite");
  suite_cmd->add_option("--gap-tol", suite_gap, "entropy gap tolerance");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  EnumerationCache cache = global.cache();

  if (*validate_cmd) {
    // An unreadable file is a domain error; a readable but invalid table is
    // a verdict.
    const std::string text = read_text(in_file);
    json j;
    try {
      const Behaviour p = behaviour_from_json(parse_json_text(text));
      j["valid"] = true;
      j["setting"] = p.setting().str();
      j["entries"] = p.table().size();
    } catch (const Error& e) {
      j["valid"] = false;
      j["error"] = e.what();
    }
    write_output(j, "-");
    return 0;
  }

  if (*catalog_cmd) {
    const Setting s = parse_setting(setting_text);
    write_output(behaviour_to_json(catalog_behaviour(catalog_name, s)), out_file);
    return 0;
  }

  if (*islocal_cmd) {
    const Behaviour p = load_behaviour(in_file);
    const VertexSet vs = cache.vertices(p.setting(), global.vertex_cap);
    write_output(locality_json(is_local(p, vs), vs), "-");
    return 0;
  }

  if (*compare_cmd) {
    const Behaviour p1 = load_behaviour(in_file);
    const Behaviour p2 = load_behaviour(in_file2);
    const VertexSet vs = cache.vertices(p1.setting(), global.vertex_cap);
    const auto wirings = cache.wirings(p1.setting(), global.wiring_cap);
    write_output(ordering_json(compare(p1, p2, vs, wirings), vs, wirings), "-");
    return 0;
  }

  if (*transform_cmd) {
    Behaviour p = load_behaviour(in_file);
    if (!wiring_file.empty())
      p = apply_wiring(wiring_from_json(parse_json_text(read_text(wiring_file))), p);
    for (const auto& spec : cg_specs) apply_coarse_grain_spec(p, spec);
    if (!eta_text.empty()) p = detector_model(p, parse_rational(eta_text));
    write_output(behaviour_to_json(p), out_file);
    return 0;
  }

  if (*measure_cmd) {
    const Behaviour p = load_behaviour(in_file);
    json out;
    if (measure_id == "chsh" || measure_id == "bell") {
      const BellFunctional f = measure_id == "chsh"
                                   ? chsh_functional(p.setting())
                                   : functional_from_json(
                                         parse_json_text(read_text(functional_file)));
      const BellMode mode =
          mode_text == "wirings" ? BellMode::all_wirings : BellMode::relabelings;
      const BellValueResult r = bell_value(p, f, mode, global.wiring_cap);
      json w;
      w["best"] = to_string(r.best);
      w["op"] = wiring_to_json(r.op);
      w["mode"] = mode_text;
      out = measure_report(measure_id, to_string(r.value), std::move(w));
    } else if (measure_id == "epr2") {
      const VertexSet vs = cache.vertices(p.setting(), global.vertex_cap);
      const Epr2Result r = epr2(p, vs);
      json w;
      w["local_weight"] = to_string(r.local_weight);
      json part = json::array();
      for (const auto& [i, wt] : r.local_part) part.push_back(point_json(vs.points[i], wt));
      w["local_part"] = std::move(part);
      out = measure_report(measure_id, to_string(r.value), std::move(w));
    } else if (measure_id == "robustness") {
      const VertexSet vs = cache.vertices(p.setting(), global.vertex_cap);
      const RobustnessResult r = robustness(p, vs);
      json w;
      json noise = json::array(), target = json::array();
      for (const auto& [i, wt] : r.noise_weights) noise.push_back(point_json(vs.points[i], wt));
      for (const auto& [i, wt] : r.target_weights)
        target.push_back(point_json(vs.points[i], wt));
      w["noise"] = std::move(noise);
      w["target"] = std::move(target);
      out = measure_report(measure_id, to_string(r.value), std::move(w));
    } else if (measure_id == "eta") {
      const Rational precision =
          precision_text.empty() ? make_rational(1, 1 << 20) : parse_rational(precision_text);
      const Setting enl(p.setting().m_a, p.setting().m_b, p.setting().d_a + 1,
                        p.setting().d_b + 1);
      const EtaStarResult r =
          eta_star(p, precision, cache.vertices(p.setting(), global.vertex_cap),
                   cache.vertices(enl, global.vertex_cap));
      json w;
      w["nonlocal"] = r.nonlocal;
      w["eta_lo"] = to_string(r.eta_lo);
      w["eta_hi"] = to_string(r.eta_hi);
      w["probes"] = r.probes;
      out = measure_report(measure_id, to_string(r.neff_hi), std::move(w));
      out["bracket"] = {to_string(r.neff_lo), to_string(r.neff_hi)};
    } else if (measure_id == "comm-avg" || measure_id == "comm-worst") {
      const CommCostResult r = measure_id == "comm-avg"
                                   ? comm_cost_avg(p, global.strategy_cap)
                                   : comm_cost_worst(p, global.strategy_cap);
      const auto pool = enumerate_strategies(p.setting(), max_strategy_bits(p.setting()),
                                             global.strategy_cap);
      json w;
      json dec = json::array();
      for (const auto& [i, wt] : r.weights) {
        json e;
        json ff = json::array(), gg = json::array();
        for (int v : pool[i].f) ff.push_back(v + 1);
        for (int v : pool[i].g) gg.push_back(v + 1);
        e["f"] = std::move(ff);
        e["g"] = std::move(gg);
        e["cost"] = pool[i].cost;
        e["weight"] = to_string(wt);
        dec.push_back(std::move(e));
      }
      w["decomposition"] = std::move(dec);
      out = measure_report(measure_id, to_string(r.value), std::move(w));
    } else if (measure_id == "rel-entropy") {
      const double gap_tol = gap_text.empty() ? 1e-9 : std::stod(gap_text);
      const VertexSet vs = cache.vertices(p.setting(), global.vertex_cap);
      const RelEntropyResult r =
          relative_entropy_nl(p, vs, gap_tol, 10000, average_inputs);
      json w;
      w["gap"] = r.gap;
      w["iterations"] = r.iterations;
      json wt = json::array();
      for (const auto& [i, v] : r.weights) {
        json e = deterministic_point_to_json(vs.points[i]);
        e["weight"] = v;
        wt.push_back(std::move(e));
      }
      w["weights"] = std::move(wt);
      out = measure_report(measure_id, std::to_string(r.value), std::move(w));
      out["bracket"] = {std::to_string(r.value - r.gap), std::to_string(r.value)};
    } else {
      throw Error(ErrorCode::shape_mismatch, "unknown measure id '" + measure_id + "'");
    }
    write_output(out, "-");
    return 0;
  }

  if (*suite_cmd) {
    SuiteMeasure m;
    if (suite_id == "chsh") m = SuiteMeasure::bell_chsh;
    else if (suite_id == "epr2") m = SuiteMeasure::epr2;
    else if (suite_id == "robustness") m = SuiteMeasure::robustness;
    else if (suite_id == "eta") m = SuiteMeasure::eta_star;
    else if (suite_id == "comm-avg") m = SuiteMeasure::comm_avg;
    else if (suite_id == "comm-worst") m = SuiteMeasure::comm_worst;
    else if (suite_id == "rel-entropy") m = SuiteMeasure::rel_entropy;
    else
      throw Error(ErrorCode::shape_mismatch, "unknown suite id '" + suite_id + "'");
    suite_opt.setting = parse_setting(suite_setting);
    suite_opt.include_cross_setting = !no_cross;
    if (!suite_precision.empty()) suite_opt.eta_precision = parse_rational(suite_precision);
    if (!suite_gap.empty()) suite_opt.gap_tol = std::stod(suite_gap);
    suite_opt.vertex_cap = global.vertex_cap;
    suite_opt.wiring_cap = global.wiring_cap;
    suite_opt.strategy_cap = global.strategy_cap;

    const SuiteReport r = monotonicity_suite(m, suite_opt);
    json j;
    j["measure"] = suite_measure_name(r.measure);
    j["trials"] = r.trials;
    j["seed"] = r.seed;
    j["comparisons"] = r.comparisons;
    json viol = json::array();
    for (const auto& f : r.violations) viol.push_back(finding_json(f));
    j["violations"] = std::move(viol);
    json open = json::array();
    for (const auto& f : r.open_findings) open.push_back(finding_json(f));
    j["open_findings"] = std::move(open);
    write_output(j, "-");
    return 0;
  }

  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
