#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "hardy/extended_value.hpp"

namespace hardy {

// Radial weight families: r^e, (sinh r)^e, (sinh(s r))^e, and sampled tables.
// Weights are strictly positive on their domain; there is deliberately no
// scalar prefactor (test functions carry coefficients instead).
enum class WeightFamily { Power, SinhPower, SinhScaledPower, Tabulated };
enum class Monotonicity { NonDecreasing, NonIncreasing, Unknown };

// Sampled (r, value) pairs, interpolated linearly in (log r, log value) so
// segments are exact power laws. Evaluation outside [r.front(), r.back()]
// is a domain error; integrators zero-extend instead via log_value_or_zero.
struct WeightTable {
  std::vector<double> r;
  std::vector<double> log_v;

  double log_interp(double x) const;  // throws std::domain_error outside range
  Monotonicity derive_monotonicity() const;
  static WeightTable from_pairs(const std::vector<std::pair<double, double>>& pairs);
  static WeightTable from_csv(std::istream& in);  // rows "r,value"
};

class RadialWeight {
 public:
  static RadialWeight power(double e);
  static RadialWeight sinh_power(double e);
  static RadialWeight sinh_scaled_power(double e, double scale);
  static RadialWeight tabulated(WeightTable table);

  WeightFamily family() const { return family_; }
  double exponent() const { return exponent_; }
  double scale() const { return scale_; }
  Monotonicity monotonicity() const { return mono_; }
  const WeightTable& table() const { return table_; }

  // Monotonicity override (Unknown forces the grid-search branch of the
  // suprema; its agreement with the closed forms is a tested property).
  RadialWeight with_monotonicity(Monotonicity m) const;

  double domain_lo() const;  // 0 for closed families (exclusive endpoint)
  double domain_hi() const;  // +inf for closed families

  // log w(r); domain error outside a table's range.
  double log_value(double r) const;
  // Zero-extended variant for integrand composition: -inf outside the domain.
  double log_value_or_zero(double r) const;

  std::string describe() const;

 private:
  RadialWeight() = default;
  WeightFamily family_ = WeightFamily::Power;
  double exponent_ = 0.0;
  double scale_ = 1.0;
  Monotonicity mono_ = Monotonicity::NonDecreasing;
  WeightTable table_;
};

// A supremum outcome: divergent suprema carry evidence, finite ones the
// location where the bound is attained (0 encodes the limit at the origin,
// +inf the limit at infinity).
struct WeightSup {
  ExtendedValue value;
  double attained_at = 0.0;
};

// sup of 1/w over the ball (0, R] (intersected with a table's domain).
// Closed-form for monotone weights; log-grid search with golden refinement
// and an origin-trend divergence test for Unknown monotonicity.
WeightSup sup_reciprocal_on_ball(const RadialWeight& w, double R);

// sup of 1/w over the exterior [R, inf), mirrored logic.
WeightSup sup_reciprocal_on_exterior(const RadialWeight& w, double R);

}  // namespace hardy
