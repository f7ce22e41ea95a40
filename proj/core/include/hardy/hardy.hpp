#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hardy/extended_value.hpp"
#include "hardy/geometry.hpp"
#include "hardy/quadrature.hpp"
#include "hardy/test_function.hpp"
#include "hardy/weights.hpp"

namespace hardy {

// Direct: averages over balls are measured against the exterior u-mass and
// the reciprocal-v supremum over the ball.  Conjugate: averages over
// exteriors, with the two regions swapped.
enum class Direction { Direct, Conjugate };

// A two-weight averaging problem on a polar space: weights u (target side)
// and v (source side), target exponent q >= 1, optional source exponent
// p in (1, q] selecting the dual-mass characterization (Direct only; p
// absent means the L1 source norm, characterized by the reciprocal sup).
struct HardyProblem {
  PolarGeometry geometry = PolarGeometry::half_line();
  RadialWeight u = RadialWeight::power(0.0);
  RadialWeight v = RadialWeight::power(0.0);
  double q = 1.0;
  std::optional<double> p;
  Direction direction = Direction::Direct;

  void validate() const;       // throws std::invalid_argument on bad setups
  double dual_exponent() const;  // p/(p-1); requires p
};

// u-weighted mass of the exterior {r > R}.
ExtendedValue tail_mass(const HardyProblem&, double R, const QuadConfig& = {});
// u-weighted mass of the ball {r <= R}.
ExtendedValue ball_mass(const HardyProblem&, double R, const QuadConfig& = {});
// Dual-weight mass of the ball: integral of v^(1-p') over {r <= R},
// restricted to a table's domain.  Requires p.
ExtendedValue dual_ball_mass(const HardyProblem&, double R, const QuadConfig& = {});

struct SupSearchConfig {
  double r_min = 1e-6;
  double r_max = 1e6;
  int grid_points = 241;        // log-spaced over [r_min, r_max]
  double ext_r_min = 1e-12;     // one-shot widening when the edge wins
  double ext_r_max = 1e12;
  double divergence_slope = 0.02;  // |dlog(profile)/dlog R| declaring an unattained sup
  double flatness_tol = 1e-3;      // |slope| counting as a plateau
  double widen_trigger = 1e-7;     // smallest edge trend worth chasing by widening
  double tie_tol = 1e-8;           // log-profile gap treated as a tie
  int refine_iters = 80;
  QuadConfig quad{};

  void validate() const;
};

// Outcome of the supremum search.  The grid profile is kept for diagnostics:
// grid_r with log_phi (-inf where a factor vanishes).  attained_at is the
// maximizing radius for finite outcomes (middle of the tied range on
// plateaus); note records boundary behavior and widenings.
struct SupResult {
  ExtendedValue constant = ExtendedValue::zero();
  double attained_at = 0.0;
  std::vector<double> grid_r;
  std::vector<double> log_phi;
  std::string note;
};

// The characterizing supremum: sup over R of (region u-mass)^(1/q) times the
// source-side factor (reciprocal-v sup, or dual-mass^(1/p') when p is set).
// Its finite value is the best constant in the averaging inequality.
SupResult characterization_constant(const HardyProblem&, const SupSearchConfig& = {});
// The dual-mass form sup U(R)^(1/q) V(R)^(1/p'); requires p.
SupResult muckenhoupt_constant(const HardyProblem&, const SupSearchConfig& = {});

// Multiplier turning the supremum into a guaranteed bound on the best
// constant: the supremum itself is a lower bound, and times this factor an
// upper bound.  Exactly 1 when p is unset (the supremum is the best
// constant); (1+q/p')^(1/q) (1+p'/q)^(1/p') otherwise.
double equivalence_factor(const HardyProblem&);

// Left side: the q-norm of the weighted average of f over balls (Direct) or
// exteriors (Conjugate).  Right side: the p-norm of f against v (p = 1 when
// unset).
ExtendedValue inequality_lhs(const HardyProblem&, const RadialTestFunction&, const QuadConfig& = {});
ExtendedValue inequality_rhs(const HardyProblem&, const RadialTestFunction&, const QuadConfig& = {});

// Upper bound on the left side by exchanging the order of integration:
// integral of f(s) tail_mass(s)^(1/q) over the source measure.  It sits
// between the left side and constant*rhs, so it cross-checks both.  Direct
// problems only.
ExtendedValue minkowski_bound(const HardyProblem&, const RadialTestFunction&, const QuadConfig& = {});

struct VerifyResult {
  ExtendedValue lhs = ExtendedValue::zero();
  ExtendedValue rhs = ExtendedValue::zero();
  ExtendedValue constant = ExtendedValue::zero();
  double bound_factor = 1.0;  // equivalence_factor of the problem
  double ratio = 0.0;         // lhs/rhs; NaN when vacuous
  bool vacuous = false;       // f without mass on the weights' domain
  bool satisfied = false;
  std::string note;
};

// Checks lhs <= constant * bound_factor * rhs on one test function, with
// multiplicative slack covering quadrature error.  A divergent constant
// satisfies trivially; zero rhs with positive lhs is flagged as a violation.
VerifyResult verify_inequality(const HardyProblem&, const RadialTestFunction&,
                               const SupSearchConfig& = {}, double slack = 1e-6);

// Non-fatal setup observations (zero-extended tables, restricted domains,
// search ranges vs table coverage).
std::vector<std::string> hypothesis_warnings(const HardyProblem&, const SupSearchConfig& = {});

}  // namespace hardy
