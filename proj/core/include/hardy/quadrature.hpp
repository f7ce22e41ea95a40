#pragma once

#include <functional>
#include <vector>

#include "hardy/extended_value.hpp"

namespace hardy {

// How tail integrals over [R, inf) are brought to finite form.
//  Reciprocal     substitutes r = R + t/(1-t) and integrates over t in (0,1).
//  ExpDecayAware  sums adaptive panels over doubling blocks [R 2^k, R 2^{k+1}]
//                 with a geometric-ratio convergence test; required for
//                 integrands with exponential scales (sinh powers), where the
//                 reciprocal substitution compresses everything into a
//                 boundary layer the sampler can miss.
enum class TailTransform { Reciprocal, ExpDecayAware };

struct QuadConfig {
  double rel_tol = 1e-9;
  double abs_tol = 1e-300;  // block-walk floor: remainders at or below this scale,
                            // and no larger than the walked mass, count as closed
  int max_depth = 50;       // panel bisection depth within a block
  TailTransform tail_transform = TailTransform::ExpDecayAware;

  void validate() const;  // throws std::invalid_argument on nonsense
};

// Nonnegative radial integrand in log space; -inf encodes zero. The optional
// support bounds are promises that the function vanishes outside
// [support_lo, support_hi]; integrators use them to clip ranges and to
// terminate tails of compactly supported integrands exactly.
struct LogIntegrand {
  std::function<double(double)> log_eval;
  double support_lo = 0.0;
  double support_hi = kInf;

  double operator()(double r) const {
    if (r < support_lo || r > support_hi) return kNegInf;
    return log_eval(r);
  }
};

// integral over (a, b], 0 <= a < b. An endpoint singularity at a = 0 is
// handled by factor-2 graded subdivision with a geometric-sum tail test;
// non-integrable behavior (r^gamma, gamma <= -1) comes back Divergent with
// growth evidence rather than an error estimate that never settles.
ExtendedValue integrate_interval(const LogIntegrand& g, double a, double b, const QuadConfig& cfg);

// integral over [R, inf), R > 0, via cfg.tail_transform.
ExtendedValue integrate_tail(const LogIntegrand& g, double R, const QuadConfig& cfg);

// Cumulative integrals F(r_i) = integral over (0, r_i] on an ascending grid,
// built panel-additively so later entries reuse earlier work. If the leading
// piece diverges, total carries the divergence and log_values stays empty.
struct CumulativeTable {
  ExtendedValue total;
  std::vector<double> log_values;
  std::vector<double> rel_errors;
};
CumulativeTable cumulative_table(const LogIntegrand& g, const std::vector<double>& grid, const QuadConfig& cfg);

}  // namespace hardy
