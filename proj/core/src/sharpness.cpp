#include "hardy/sharpness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <limits>
#include <stdexcept>

#include "hardy/logspace.hpp"
#include "hardy/quadrature.hpp"
#include "hardy/weights.hpp"

namespace hardy {
namespace {

std::string fmt(const char* f, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

// Sub-interval of (0, R] where 1/v > e^{logT} for the closed families.
// Only nonincreasing weights reach this point (a weight vanishing at the
// origin has an unbounded reciprocal and is rejected by the finite-sup gate),
// so 1/v is nondecreasing and the set hugs R from below.
Interval invert_closed_family(const RadialWeight& v, double R, double logT) {
  const double e = v.exponent();
  if (e == 0.0) return {0.0, R};  // constant weight: the whole ball qualifies
  if (e > 0.0)
    throw std::logic_error("near-supremum set requested for a weight vanishing at the origin");
  const double a = -e;  // 1/v = r^a or sinh(scale r)^a, increasing
  double lo = 0.0;
  switch (v.family()) {
    case WeightFamily::Power:
      lo = std::exp(logT / a);
      break;
    case WeightFamily::SinhPower:
    case WeightFamily::SinhScaledPower:
      lo = asinh_exp(logT / a) / v.scale();
      break;
    default:
      throw std::logic_error("tabulated weight routed to closed-family inversion");
  }
  return {std::min(lo, R), R};
}

// Components of { r in (0, Rc] : log v(r) < thr } for a tabulated weight.
// Between nodes log v is linear in log r, so each segment contributes at most
// one crossing, solved exactly.
std::vector<Interval> table_level_components(const WeightTable& t, double Rc, double thr) {
  std::vector<double> rs, lvs;
  for (std::size_t i = 0; i < t.r.size() && t.r[i] < Rc; ++i) {
    rs.push_back(t.r[i]);
    lvs.push_back(t.log_v[i]);
  }
  rs.push_back(Rc);
  lvs.push_back(t.log_interp(Rc));

  std::vector<Interval> comps;
  auto push = [&comps](double lo, double hi) {
    if (!(hi > lo)) return;
    if (!comps.empty() && comps.back().hi >= lo * (1.0 - 1e-14))
      comps.back().hi = hi;
    else
      comps.push_back({lo, hi});
  };
  for (std::size_t i = 0; i + 1 < rs.size(); ++i) {
    const double a = lvs[i], b = lvs[i + 1];
    const bool ina = a < thr, inb = b < thr;
    if (ina && inb) {
      push(rs[i], rs[i + 1]);
    } else if (ina != inb) {
      const double f = (thr - a) / (b - a);
      const double rx = std::exp(std::log(rs[i]) + f * (std::log(rs[i + 1]) - std::log(rs[i])));
      if (ina)
        push(rs[i], rx);
      else
        push(rx, rs[i + 1]);
    }
  }
  return comps;
}

double log_radial_mass(const PolarGeometry& g, double lo, double hi, const QuadConfig& quad) {
  LogIntegrand li{[&g](double r) { return g.log_radial_density(r); }, lo, hi};
  const ExtendedValue m = integrate_interval(li, lo, hi, quad);
  if (m.state() != ExtendedValue::State::Finite)
    throw std::runtime_error("radial measure of a level-set component did not converge: " +
                             m.evidence());
  return m.log_value();
}

void require_ball_average_form(const HardyProblem& pb) {
  pb.validate();
  if (pb.direction != Direction::Direct || pb.p.has_value())
    throw std::invalid_argument(
        "witness construction applies to the ball-average form at p = 1; the conjugate and "
        "p > 1 variants are certified through the two-sided equivalence instead");
}

}  // namespace

WitnessSpec witness_spec(const HardyProblem& pb, double R, long long n, const QuadConfig& quad) {
  require_ball_average_form(pb);
  if (!(R > 0.0) || !std::isfinite(R))
    throw std::invalid_argument("witness radius must be positive and finite");
  if (n < 1) throw std::invalid_argument("slack parameter n must be a positive integer");
  quad.validate();

  const WeightSup sup = sup_reciprocal_on_ball(pb.v, R);
  if (sup.value.state() != ExtendedValue::State::Finite)
    throw std::domain_error(
        "witness requires a finite reciprocal-source supremum on the ball; got: " +
        sup.value.evidence());

  WitnessSpec out;
  out.R = R;
  out.n = n;
  out.log_sup = sup.value.log_value();

  const double log_slack = -std::log(static_cast<double>(n));
  if (log_slack >= out.log_sup) {
    out.log_threshold = kNegInf;  // slack at least the sup: every radius qualifies
    out.note = "slack 1/n covers the whole supremum; witness is the full ball";
  } else {
    out.log_threshold = log_sub_exp(out.log_sup, log_slack);
  }

  const bool tab = pb.v.family() == WeightFamily::Tabulated;
  const double dom_lo = tab ? pb.v.domain_lo() : 0.0;
  const double dom_hi = tab ? pb.v.domain_hi() : kInf;
  const double Rc = std::min(R, dom_hi);

  if (out.log_threshold == kNegInf) {
    out.r_lo = dom_lo;
    out.r_hi = Rc;
  } else if (!tab) {
    const Interval iv = invert_closed_family(pb.v, R, out.log_threshold);
    out.r_lo = iv.lo;
    out.r_hi = iv.hi;
  } else {
    const auto comps = table_level_components(pb.v.table(), Rc, -out.log_threshold);
    if (comps.empty())
      throw std::invalid_argument(
          fmt("witness slack 1/%lld is below the resolution of the sampled weight near its "
              "supremum; use a smaller n",
              n));
    if (comps.size() == 1) {
      out.r_lo = comps[0].lo;
      out.r_hi = comps[0].hi;
    } else {
      LogAccumulator total;
      std::vector<double> masses;
      for (const Interval& c : comps) {
        masses.push_back(log_radial_mass(pb.geometry, c.lo, c.hi, quad));
        total.add(masses.back());
      }
      const std::size_t best =
          std::max_element(masses.begin(), masses.end()) - masses.begin();
      out.r_lo = comps[best].lo;
      out.r_hi = comps[best].hi;
      out.measure_deficit = -std::expm1(masses[best] - total.log_total());
      out.note = fmt("level set splits into %zu intervals; kept the largest, leaving %.3g "
                     "of its measure outside the witness",
                     comps.size(), out.measure_deficit);
    }
  }

  if (!(out.r_hi > out.r_lo))
    throw std::invalid_argument(
        fmt("witness slack 1/%lld vanishes at working precision (threshold indistinguishable "
            "from the supremum at R = %g); use a smaller n",
            n, R));
  return out;
}

RadialTestFunction witness_function(const HardyProblem& pb, double R, long long n,
                                    const QuadConfig& quad) {
  const WitnessSpec s = witness_spec(pb, R, n, quad);
  return RadialTestFunction::indicator(s.r_lo, s.r_hi, 1.0);
}

Certificate lower_bound_certificate(const HardyProblem& pb, double R, long long n,
                                    const SupSearchConfig& cfg, const ExtendedValue* known) {
  cfg.validate();
  Certificate out;
  out.spec = witness_spec(pb, R, n, cfg.quad);
  const RadialTestFunction f =
      RadialTestFunction::indicator(out.spec.r_lo, out.spec.r_hi, 1.0);

  const ExtendedValue U = tail_mass(pb, R, cfg.quad);
  if (U.state() != ExtendedValue::State::Finite)
    throw std::domain_error(
        "exterior mass at the witness radius is not finite; no finite lower bound exists: " +
        U.evidence());
  out.analytic_floor = out.spec.log_threshold == kNegInf
                           ? 0.0
                           : std::exp(U.log_value() / pb.q + out.spec.log_threshold);

  const ExtendedValue lhs = inequality_lhs(pb, f, cfg.quad);
  const ExtendedValue rhs = inequality_rhs(pb, f, cfg.quad);
  if (lhs.state() != ExtendedValue::State::Finite)
    throw std::runtime_error("witness left side did not evaluate finitely: " + lhs.evidence());
  if (rhs.state() != ExtendedValue::State::Finite)
    throw std::runtime_error("witness source norm did not evaluate finitely: " + rhs.evidence());
  out.ratio_achieved = std::exp(lhs.log_value() - rhs.log_value());

  out.constant = known ? *known : characterization_constant(pb, cfg).constant;
  out.gap = out.constant.state() == ExtendedValue::State::Finite
                ? out.constant.value() - out.ratio_achieved
                : std::numeric_limits<double>::quiet_NaN();
  out.tolerance_used = 1e-6 * out.analytic_floor + 1e-12;

  if (out.ratio_achieved < out.analytic_floor - out.tolerance_used)
    throw std::logic_error(
        fmt("witness ratio %.12g fell below its analytic floor %.12g at R = %g, n = %lld; "
            "quadrature and supremum disagree",
            out.ratio_achieved, out.analytic_floor, R, n));
  return out;
}

std::vector<std::pair<double, long long>> default_schedule(double r_star) {
  const double base = (std::isfinite(r_star) && r_star > 0.0) ? r_star : 1.0;
  std::vector<std::pair<double, long long>> out;
  for (double s : {0.1, 1.0, 10.0})
    for (long long n : {10LL, 100LL, 1000LL, 10000LL}) out.emplace_back(base * s, n);
  return out;
}

SharpnessResult sharpness_study(const HardyProblem& pb,
                                const std::vector<std::pair<double, long long>>& schedule,
                                const SupSearchConfig& cfg, double sharpness_tol) {
  require_ball_average_form(pb);
  if (schedule.empty()) throw std::invalid_argument("sharpness schedule must be nonempty");
  if (!(sharpness_tol > 0.0) || !(sharpness_tol < 1.0))
    throw std::invalid_argument("sharpness tolerance must lie in (0,1)");

  SharpnessResult res;
  const SupResult A = characterization_constant(pb, cfg);
  res.constant = A.constant;
  if (A.constant.state() != ExtendedValue::State::Finite) {
    res.aborted = true;
    res.abort_reason = fmt("the characterization constant is %s; sharpness certification "
                           "applies to finite constants only. Evidence: %s",
                           A.constant.state_name(), A.constant.evidence().c_str());
    res.summary.note = "no certificates completed";
    return res;
  }

  for (const auto& [R, n] : schedule) {
    try {
      res.certificates.push_back(lower_bound_certificate(pb, R, n, cfg, &A.constant));
    } catch (const std::exception& e) {
      res.aborted = true;
      res.abort_reason = fmt("certificate at R = %g, n = %lld failed: %s", R, n, e.what());
      break;
    }
  }

  SharpnessSummary& s = res.summary;
  const double Av = A.constant.value();
  double best_R = 0.0;
  long long best_n = 0;
  for (const Certificate& c : res.certificates) {
    if (c.ratio_achieved >= s.best_ratio) {
      s.best_ratio = c.ratio_achieved;
      best_R = c.spec.R;
      best_n = c.spec.n;
    }
    if (c.ratio_achieved > Av * (1.0 + 1e-4) + 1e-12) s.ratio_exceeds_constant = true;
  }
  for (std::size_t i = 1; i < res.certificates.size(); ++i) {
    const Certificate& prev = res.certificates[i - 1];
    const Certificate& cur = res.certificates[i];
    if (prev.spec.R == cur.spec.R && cur.spec.n > prev.spec.n &&
        cur.ratio_achieved < prev.ratio_achieved - 1e-7 * (1.0 + prev.ratio_achieved))
      s.monotone_in_slack = false;
  }
  s.relative_gap = Av > 0.0 ? (Av - s.best_ratio) / Av : 0.0;
  s.achieved = s.best_ratio >= (1.0 - sharpness_tol) * Av;
  s.note = res.certificates.empty()
               ? "no certificates completed"
               : fmt("best ratio %.12g of constant %.12g (relative gap %.3g) at R = %g, "
                     "n = %lld over %zu certificates",
                     s.best_ratio, Av, s.relative_gap, best_R, best_n,
                     res.certificates.size());
  if (s.ratio_exceeds_constant)
    s.note += "; a witness ratio exceeds the constant beyond slack, which indicates an "
              "under-resolved supremum search";
  if (!s.monotone_in_slack)
    s.note += "; ratios are not monotone in the slack parameter at fixed radius";
  return res;
}

}  // namespace hardy
