#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "hardy/hardy.hpp"
#include "hardy/logspace.hpp"
#include "integrands.hpp"

namespace hardy {
namespace {

using detail::mass_integrand;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// log of the density mass of the shell (a, b]; closed-form volume difference
// when available, quadrature otherwise.
double log_shell_mass(const PolarGeometry& geom, double a, double b, const QuadConfig& cfg) {
  if (!(b > a)) return kNegInf;
  if (const auto vb = geom.log_ball_volume_closed(b)) {
    if (a <= 0.0) return *vb;
    if (const auto va = geom.log_ball_volume_closed(a)) return *vb <= *va ? kNegInf : log_sub_exp(*vb, *va);
  }
  LogIntegrand g;
  g.log_eval = [geom](double r) { return geom.log_radial_density(r); };
  const ExtendedValue m = integrate_interval(g, a, b, cfg);
  if (m.state() != ExtendedValue::State::Finite)
    throw std::runtime_error("radial density mass did not converge on a shell: " + m.evidence());
  return m.log_value();
}

// Accumulates positive components of a norm raised to its exponent, tracking
// the worst relative error and any divergent/undecided component.
struct NormAccumulator {
  LogAccumulator acc;
  double rel = 0.0;
  ExtendedValue bad = ExtendedValue::zero();
  bool poisoned = false;

  void add(const ExtendedValue& x, const std::string& what) {
    if (poisoned) return;
    if (x.state() == ExtendedValue::State::Finite) {
      if (x.log_value() != kNegInf) {
        acc.add(x.log_value());
        rel = std::max(rel, x.rel_error());
      }
      return;
    }
    poisoned = true;
    bad = x.state() == ExtendedValue::State::Divergent
              ? ExtendedValue::divergent(what + ": " + x.evidence())
              : ExtendedValue::inconclusive(what + ": " + x.evidence());
  }
  void add_log(double lv, double r) {
    if (poisoned || lv == kNegInf) return;
    acc.add(lv);
    rel = std::max(rel, r);
  }
  // Final value of (sum)^(1/root).
  ExtendedValue root_value(double root) {
    if (poisoned) return bad;
    if (acc.empty()) return ExtendedValue::zero();
    return ExtendedValue::finite_from_log(acc.log_total() / root, rel / root + 1e-9);
  }
};

// Piecewise-constant machinery: shell masses, running ball integrals F at
// breakpoints (prefix) and exterior integrals G (suffix).
struct StepMasses {
  std::vector<double> log_m;    // shell masses of (b_k, b_{k+1}]
  std::vector<double> log_Fb;   // F at b_k: mass of f below
  std::vector<double> log_Gb;   // G at b_k: mass of f above
};

StepMasses step_masses(const PolarGeometry& geom, const RadialTestFunction& f, const QuadConfig& cfg) {
  const auto& b = f.breakpoints();
  const auto& c = f.values();
  StepMasses s;
  s.log_m.resize(c.size());
  s.log_Fb.assign(b.size(), kNegInf);
  s.log_Gb.assign(b.size(), kNegInf);
  for (std::size_t k = 0; k < c.size(); ++k) s.log_m[k] = log_shell_mass(geom, b[k], b[k + 1], cfg);
  for (std::size_t k = 0; k < c.size(); ++k) {
    const double t = c[k] == 0.0 ? kNegInf : std::log(c[k]) + s.log_m[k];
    s.log_Fb[k + 1] = log_add_exp(s.log_Fb[k], t);
  }
  for (std::size_t k = c.size(); k-- > 0;) {
    const double t = c[k] == 0.0 ? kNegInf : std::log(c[k]) + s.log_m[k];
    s.log_Gb[k] = log_add_exp(s.log_Gb[k + 1], t);
  }
  return s;
}

// log F(r) = log of the f-mass of the ball at r, for r inside segment k.
double log_F_in_segment(const PolarGeometry& geom, const RadialTestFunction& f, const StepMasses& s,
                        std::size_t k, double r, const QuadConfig& cfg) {
  const double c = f.values()[k];
  if (c == 0.0) return s.log_Fb[k];
  return log_add_exp(s.log_Fb[k], std::log(c) + log_shell_mass(geom, f.breakpoints()[k], r, cfg));
}

// log G(r) = log of the f-mass of the exterior at r, for r inside segment k.
double log_G_in_segment(const PolarGeometry& geom, const RadialTestFunction& f, const StepMasses& s,
                        std::size_t k, double r, const QuadConfig& cfg) {
  const double c = f.values()[k];
  if (c == 0.0) return s.log_Gb[k + 1];
  return log_add_exp(s.log_Gb[k + 1], std::log(c) + log_shell_mass(geom, r, f.breakpoints()[k + 1], cfg));
}

// Smooth-family mass integrand: log f + log density.
LogIntegrand smooth_mass_integrand(const PolarGeometry& geom, const RadialTestFunction& f) {
  LogIntegrand g;
  g.log_eval = [geom, f](double r) { return f.log_value(r) + geom.log_radial_density(r); };
  g.support_lo = 0.0;
  g.support_hi = kInf;
  return g;
}

// Integral over the full ray (0, inf), split at 1 so both endpoint
// treatments apply.
ExtendedValue integrate_ray(const LogIntegrand& g, const QuadConfig& cfg) {
  NormAccumulator acc;
  acc.add(integrate_interval(g, 0.0, 1.0, cfg), "inner ray part");
  acc.add(integrate_tail(g, 1.0, cfg), "outer ray part");
  return acc.root_value(1.0);
}

ExtendedValue lhs_step(const HardyProblem& pb, const RadialTestFunction& f, const QuadConfig& cfg) {
  const auto& bp = f.breakpoints();
  const PolarGeometry geom = pb.geometry;
  const StepMasses s = step_masses(geom, f, cfg);
  const double q = pb.q;
  NormAccumulator acc;

  if (pb.direction == Direction::Direct) {
    for (std::size_t k = 0; k < f.values().size(); ++k) {
      LogIntegrand g;
      g.log_eval = [&, k](double r) {
        return pb.u.log_value_or_zero(r) + q * log_F_in_segment(geom, f, s, k, r, cfg) +
               geom.log_radial_density(r);
      };
      g.support_lo = bp[k];
      g.support_hi = bp[k + 1];
      acc.add(integrate_interval(g, bp[k], bp[k + 1], cfg), "weighted average over a shell");
    }
    const double lF = s.log_Fb.back();
    if (lF != kNegInf) {
      const ExtendedValue u_tail = tail_mass(pb, bp.back(), cfg);
      if (u_tail.state() == ExtendedValue::State::Finite)
        acc.add_log(u_tail.log_value() == kNegInf ? kNegInf : q * lF + u_tail.log_value(), u_tail.rel_error());
      else
        acc.add(u_tail, "weighted average beyond the support");
    }
  } else {
    const double lG = s.log_Gb.front();
    if (bp.front() > 0.0 && lG != kNegInf) {
      const ExtendedValue u_ball = ball_mass(pb, bp.front(), cfg);
      if (u_ball.state() == ExtendedValue::State::Finite)
        acc.add_log(u_ball.log_value() == kNegInf ? kNegInf : q * lG + u_ball.log_value(), u_ball.rel_error());
      else
        acc.add(u_ball, "weighted average below the support");
    }
    for (std::size_t k = 0; k < f.values().size(); ++k) {
      LogIntegrand g;
      g.log_eval = [&, k](double r) {
        return pb.u.log_value_or_zero(r) + q * log_G_in_segment(geom, f, s, k, r, cfg) +
               geom.log_radial_density(r);
      };
      g.support_lo = bp[k];
      g.support_hi = bp[k + 1];
      acc.add(integrate_interval(g, bp[k], bp[k + 1], cfg), "weighted average over a shell");
    }
  }
  return acc.root_value(q);
}

ExtendedValue lhs_closed_form(const HardyProblem& pb, const RadialTestFunction& f, const QuadConfig& cfg) {
  const PolarGeometry geom = pb.geometry;
  const LogIntegrand gf = smooth_mass_integrand(geom, f);
  const double q = pb.q;
  const bool direct = pb.direction == Direction::Direct;

  // The inner mass diverges for one radius iff for all of them.
  const ExtendedValue probe = direct ? integrate_interval(gf, 0.0, 1.0, cfg) : integrate_tail(gf, 1.0, cfg);
  if (probe.state() != ExtendedValue::State::Finite) {
    const std::string what = direct ? "ball mass of the test function" : "exterior mass of the test function";
    return probe.state() == ExtendedValue::State::Divergent
               ? ExtendedValue::divergent(what + " is infinite: " + probe.evidence())
               : ExtendedValue::inconclusive(what + " undecided: " + probe.evidence());
  }

  LogIntegrand g;
  g.log_eval = [&, direct](double r) {
    const ExtendedValue inner =
        direct ? integrate_interval(gf, 0.0, r, cfg) : integrate_tail(gf, r, cfg);
    const double li = inner.state() == ExtendedValue::State::Finite ? inner.log_value() : kNaN;
    if (li == kNegInf || std::isnan(li)) return kNegInf;
    return pb.u.log_value_or_zero(r) + q * li + geom.log_radial_density(r);
  };
  g.support_lo = 0.0;
  g.support_hi = kInf;

  NormAccumulator acc;
  acc.add(integrate_ray(g, cfg), "weighted average norm");
  return acc.root_value(q);
}

void check_rhs_domain(const HardyProblem& pb, const RadialTestFunction& f) {
  if (pb.v.family() != WeightFamily::Tabulated) return;
  if (f.support_lo() < pb.v.domain_lo() || f.support_hi() > pb.v.domain_hi())
    throw std::invalid_argument(
        "test function support must lie inside the tabulated v range [" +
        std::to_string(pb.v.domain_lo()) + ", " + std::to_string(pb.v.domain_hi()) + "]");
}

}  // namespace

ExtendedValue inequality_lhs(const HardyProblem& pb, const RadialTestFunction& f, const QuadConfig& cfg) {
  pb.validate();
  cfg.validate();
  if (f.is_zero()) return ExtendedValue::zero();
  return f.kind() == RadialTestFunction::Kind::Step ? lhs_step(pb, f, cfg) : lhs_closed_form(pb, f, cfg);
}

ExtendedValue inequality_rhs(const HardyProblem& pb, const RadialTestFunction& f, const QuadConfig& cfg) {
  pb.validate();
  cfg.validate();
  if (f.is_zero()) return ExtendedValue::zero();
  check_rhs_domain(pb, f);
  const double p = pb.p.value_or(1.0);
  const PolarGeometry geom = pb.geometry;
  NormAccumulator acc;
  if (f.kind() == RadialTestFunction::Kind::Step) {
    const auto& bp = f.breakpoints();
    for (std::size_t k = 0; k < f.values().size(); ++k) {
      if (f.values()[k] == 0.0) continue;
      LogIntegrand g;
      g.log_eval = [&geom, v = pb.v](double r) { return v.log_value(r) + geom.log_radial_density(r); };
      g.support_lo = bp[k];
      g.support_hi = bp[k + 1];
      ExtendedValue seg = integrate_interval(g, bp[k], bp[k + 1], cfg);
      if (seg.state() == ExtendedValue::State::Finite && seg.log_value() != kNegInf)
        acc.add_log(p * std::log(f.values()[k]) + seg.log_value(), seg.rel_error());
      else
        acc.add(seg, "source norm over a shell");
    }
  } else {
    LogIntegrand g;
    g.log_eval = [&geom, v = pb.v, f, p](double r) {
      return p * f.log_value(r) + v.log_value(r) + geom.log_radial_density(r);
    };
    g.support_lo = 0.0;
    g.support_hi = kInf;
    acc.add(integrate_ray(g, cfg), "source norm");
  }
  return acc.root_value(p);
}

ExtendedValue minkowski_bound(const HardyProblem& pb, const RadialTestFunction& f, const QuadConfig& cfg) {
  pb.validate();
  cfg.validate();
  if (pb.direction != Direction::Direct)
    throw std::invalid_argument("the order-exchange bound covers the direct averaging operator only");
  if (f.is_zero()) return ExtendedValue::zero();
  const PolarGeometry geom = pb.geometry;
  const LogIntegrand mg = mass_integrand(pb);
  const double inv_q = 1.0 / pb.q;

  const ExtendedValue probe = integrate_tail(mg, std::max(1.0, f.support_lo()), cfg);
  if (probe.state() != ExtendedValue::State::Finite) {
    return probe.state() == ExtendedValue::State::Divergent
               ? ExtendedValue::divergent("exterior u-mass is infinite: " + probe.evidence())
               : ExtendedValue::inconclusive("exterior u-mass undecided: " + probe.evidence());
  }

  LogIntegrand g;
  g.log_eval = [&, inv_q](double s) {
    const double lf = f.log_value(s);
    if (lf == kNegInf) return kNegInf;
    const ExtendedValue u_tail = integrate_tail(mg, s, cfg);
    const double lu = u_tail.state() == ExtendedValue::State::Finite ? u_tail.log_value() : kNaN;
    if (lu == kNegInf || std::isnan(lu)) return kNegInf;
    return lf + inv_q * lu + geom.log_radial_density(s);
  };
  g.support_lo = f.support_lo();
  g.support_hi = f.support_hi();

  NormAccumulator acc;
  if (f.kind() == RadialTestFunction::Kind::Step) {
    const auto& bp = f.breakpoints();
    for (std::size_t k = 0; k < f.values().size(); ++k)
      acc.add(integrate_interval(g, bp[k], bp[k + 1], cfg), "order-exchange bound over a shell");
  } else {
    acc.add(integrate_ray(g, cfg), "order-exchange bound");
  }
  return acc.root_value(1.0);
}

VerifyResult verify_inequality(const HardyProblem& pb, const RadialTestFunction& f,
                               const SupSearchConfig& cfg, double slack) {
  pb.validate();
  cfg.validate();
  if (!(slack >= 0.0)) throw std::invalid_argument("slack must be nonnegative");

  VerifyResult out;
  if (f.is_zero()) {
    out.vacuous = true;
    out.satisfied = true;
    out.ratio = kNaN;
    out.note = "zero test function; nothing to check";
    return out;
  }

  out.lhs = inequality_lhs(pb, f, cfg.quad);
  out.rhs = inequality_rhs(pb, f, cfg.quad);
  const SupResult sup = characterization_constant(pb, cfg);
  out.constant = sup.constant;
  out.bound_factor = equivalence_factor(pb);

  const auto fin = [](const ExtendedValue& x) { return x.state() == ExtendedValue::State::Finite; };
  const bool lhs_zero = fin(out.lhs) && out.lhs.log_value() == kNegInf;
  const bool rhs_zero = fin(out.rhs) && out.rhs.log_value() == kNegInf;

  if (rhs_zero) {
    if (lhs_zero) {
      out.vacuous = true;
      out.satisfied = true;
      out.ratio = kNaN;
      out.note = "test function carries no weighted mass; nothing to check";
      return out;
    }
    throw std::logic_error("positive left side with vanishing source norm; weights and test function are inconsistent");
  }

  if (fin(out.lhs) && fin(out.rhs))
    out.ratio = std::exp(out.lhs.log_value() - out.rhs.log_value());
  else if (out.lhs.state() == ExtendedValue::State::Divergent && fin(out.rhs))
    out.ratio = std::numeric_limits<double>::infinity();
  else
    out.ratio = kNaN;

  if (out.constant.state() == ExtendedValue::State::Inconclusive) {
    out.satisfied = false;
    out.note = "constant search undecided; cannot certify: " + out.constant.evidence();
    return out;
  }
  if (out.lhs.state() == ExtendedValue::State::Inconclusive) {
    out.satisfied = false;
    out.note = "left side undecided: " + out.lhs.evidence();
    return out;
  }
  if (out.constant.state() == ExtendedValue::State::Divergent) {
    out.satisfied = true;
    out.note = "constant is infinite; the inequality holds trivially";
    return out;
  }
  if (out.lhs.state() == ExtendedValue::State::Divergent) {
    out.satisfied = false;
    out.note = "left side infinite under a finite constant: " + out.lhs.evidence();
    return out;
  }
  if (!fin(out.rhs)) {
    out.satisfied = lhs_zero || out.rhs.state() == ExtendedValue::State::Divergent;
    out.note = "source norm not finite: " + out.rhs.evidence();
    return out;
  }

  out.satisfied = out.lhs.log_value() <= out.constant.log_value() + std::log(out.bound_factor) +
                                             out.rhs.log_value() + std::log1p(slack);
  out.note = out.satisfied ? "ratio within the certified bound"
                           : "ratio exceeds the certified bound beyond slack";
  if (pb.p) out.note += " (supremum scaled by the p > 1 equivalence factor)";
  return out;
}

std::vector<std::string> hypothesis_warnings(const HardyProblem& pb, const SupSearchConfig& cfg) {
  pb.validate();
  cfg.validate();
  std::vector<std::string> w;
  if (pb.u.family() == WeightFamily::Tabulated)
    w.push_back("u is tabulated on [" + std::to_string(pb.u.domain_lo()) + ", " +
                std::to_string(pb.u.domain_hi()) + "] and treated as zero outside that range");
  if (pb.v.family() == WeightFamily::Tabulated) {
    w.push_back("v is tabulated on [" + std::to_string(pb.v.domain_lo()) + ", " +
                std::to_string(pb.v.domain_hi()) +
                "]; the problem is restricted to test functions supported there");
    if (cfg.r_min < pb.v.domain_lo() || cfg.r_max > pb.v.domain_hi())
      w.push_back("the search range extends beyond the v table; the profile vanishes outside the overlap");
  }
  if (pb.p)
    w.push_back("with p > 1 the supremum tracks the best constant within explicit factors; exact equality is the p = 1 case");
  if (pb.geometry.kind() == GeometryKind::CartanHadamard && pb.geometry.curvature() == 0.0)
    w.push_back("curvature bound 0: the space behaves as the flat power-law case");
  if (!pb.geometry.log_ball_volume_closed(1.0))
    w.push_back("no closed-form ball volumes for this geometry; shell masses come from quadrature");
  return w;
}

}  // namespace hardy
