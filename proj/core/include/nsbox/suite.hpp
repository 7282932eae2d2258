#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nsbox/measures.hpp"
#include "nsbox/setting.hpp"

namespace nsbox {

enum class SuiteMeasure {
  bell_chsh,
  epr2,
  robustness,
  eta_star,
  comm_avg,
  comm_worst,
  rel_entropy,
};

const char* suite_measure_name(SuiteMeasure m);

struct SuiteOptions {
  Setting setting{2, 2, 2, 2};
  int trials = 200;
  std::uint64_t seed = 1;
  /// Adds output coarse grainings to the operation pool of the CHSH suite;
  /// they break monotonicity of Bell-violation values.
  bool include_coarse_grainings = false;
  /// Adds uncorrelated input largenings; relative entropy grows under them.
  bool include_input_largenings = false;
  /// Unfoldings / shortenings / largenings for the setting-independent
  /// measures (one in four trials).
  bool include_cross_setting = true;
  Rational eta_precision = make_rational(1, 256);
  double gap_tol = 1e-9;
  std::uint64_t wiring_cap = kDefaultWiringCap;
  std::uint64_t vertex_cap = kDefaultVertexCap;
  std::uint64_t strategy_cap = kDefaultStrategyCap;
};

struct SuiteFinding {
  std::string op;            ///< operation description
  std::string before_json;   ///< reproducer: behaviour files and values
  std::string after_json;
  std::string value_before;
  std::string value_after;
};

struct SuiteReport {
  SuiteMeasure measure;
  int trials = 0;
  std::uint64_t seed = 0;
  int comparisons = 0;
  /// Certified monotonicity violations: N(after) > N(before) beyond the
  /// measure's tolerance (0 for the exact-rational measures, bracket
  /// comparison for the threshold efficiency, 2*gap_tol for the entropy).
  std::vector<SuiteFinding> violations;
  /// Relative-entropy increases under input substitution are recorded here
  /// and not asserted either way.
  std::vector<SuiteFinding> open_findings;
};

/// Samples (behaviour, allowed operation) pairs with the given seed and
/// checks N(after) <= N(before) for the chosen measure. Violations are
/// report content, not errors.
SuiteReport monotonicity_suite(SuiteMeasure measure, const SuiteOptions& options);

}  // namespace nsbox
