#pragma once

#include <string>
#include <utility>
#include <vector>

#include "hardy/hardy.hpp"
#include "hardy/test_function.hpp"

namespace hardy {

// Near-supremum radial set for the reciprocal source weight: the radii in
// (0, R] where 1/v exceeds its ball supremum S(R) minus the slack 1/n.
// For the closed weight families this is a single interval found by
// inversion; for tabulated weights it may be a union of intervals, in which
// case the component of largest measure is kept and the left-out fraction
// recorded as measure_deficit.
struct WitnessSpec {
  double R = 0.0;
  long long n = 0;
  double r_lo = 0.0;             // kept component (r_lo, r_hi]
  double r_hi = 0.0;
  double log_sup = 0.0;          // log S(R)
  double log_threshold = 0.0;    // log(S(R) - 1/n); -inf when the slack admits the whole ball
  double measure_deficit = 0.0;  // fraction of the full set's measure outside the kept component
  std::string note;
};

// One sharpness trial: the indicator of the near-supremum set drives the
// inequality ratio up against the analytic floor U(R)^{1/q} (S(R) - 1/n).
struct Certificate {
  WitnessSpec spec;
  double ratio_achieved = 0.0;  // lhs/rhs for the witness function
  double analytic_floor = 0.0;  // U(R)^{1/q} (S(R) - 1/n)
  ExtendedValue constant;       // characterization constant used for the gap
  double gap = 0.0;             // constant - ratio_achieved
  double tolerance_used = 0.0;  // slack granted to the floor check
};

struct SharpnessSummary {
  double best_ratio = 0.0;
  double relative_gap = 0.0;  // (constant - best_ratio) / constant
  bool achieved = false;      // best_ratio >= (1 - sharpness_tol) * constant
  bool monotone_in_slack = true;        // per fixed R, ratio nondecreasing in n up to tolerance
  bool ratio_exceeds_constant = false;  // any ratio > constant * (1 + 1e-4): property violation
  std::string note;
};

struct SharpnessResult {
  ExtendedValue constant;
  std::vector<Certificate> certificates;
  SharpnessSummary summary;
  bool aborted = false;
  std::string abort_reason;
};

// The near-supremum set itself, and its indicator as a test function.
// Requires the ball-average (p = 1) direct form and a finite reciprocal
// supremum; throws std::domain_error otherwise. A slack too small to be
// resolved in double precision throws std::invalid_argument advising a
// smaller n.
WitnessSpec witness_spec(const HardyProblem&, double R, long long n, const QuadConfig& = {});
RadialTestFunction witness_function(const HardyProblem&, double R, long long n,
                                    const QuadConfig& = {});

// Runs one witness through both sides of the inequality. When `known` is
// supplied it is used for the gap; otherwise the constant is recomputed.
Certificate lower_bound_certificate(const HardyProblem&, double R, long long n,
                                    const SupSearchConfig& = {},
                                    const ExtendedValue* known = nullptr);

// R at the located argmax and one decade either side, slacks n = 10 .. 10^4.
std::vector<std::pair<double, long long>> default_schedule(double r_star);

// Certificates across the schedule plus a verdict on whether the computed
// constant is approached from below. A certificate failure aborts the run
// with the completed prefix retained.
SharpnessResult sharpness_study(const HardyProblem&,
                                const std::vector<std::pair<double, long long>>& schedule,
                                const SupSearchConfig& = {}, double sharpness_tol = 1e-2);

}  // namespace hardy
