#pragma once

#include "hardy/hardy.hpp"

namespace hardy::detail {

// log u(r) + log density, zero-extended outside a table's range.
inline LogIntegrand mass_integrand(const HardyProblem& pb) {
  LogIntegrand g;
  g.log_eval = [geom = pb.geometry, u = pb.u](double r) {
    return u.log_value_or_zero(r) + geom.log_radial_density(r);
  };
  g.support_lo = pb.u.domain_lo();
  g.support_hi = pb.u.domain_hi();
  return g;
}

// log v(r)^(1-p') + log density, restricted to the table's range.
inline LogIntegrand dual_integrand(const HardyProblem& pb) {
  LogIntegrand g;
  const double e = 1.0 - pb.dual_exponent();
  g.log_eval = [geom = pb.geometry, v = pb.v, e](double r) {
    return e * v.log_value(r) + geom.log_radial_density(r);
  };
  g.support_lo = pb.v.domain_lo();
  g.support_hi = pb.v.domain_hi();
  return g;
}

}  // namespace hardy::detail
