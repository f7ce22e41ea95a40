#include "hardy/hardy.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <optional>
#include <stdexcept>

#include "hardy/logspace.hpp"
#include "integrands.hpp"

namespace hardy {
namespace {

using detail::dual_integrand;
using detail::mass_integrand;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::vector<double> log_grid(double lo, double hi, int n) {
  std::vector<double> g(n);
  const double llo = std::log(lo), lhi = std::log(hi);
  for (int i = 0; i < n; ++i) g[i] = std::exp(llo + (lhi - llo) * i / double(n - 1));
  g.front() = lo;
  g.back() = hi;
  return g;
}

// Least-squares slope of log_phi against log r over [first, last], skipping
// vanished entries; NaN when fewer than three usable points.
double profile_slope(const std::vector<double>& r, const std::vector<double>& lphi,
                     std::size_t first, std::size_t last) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (std::size_t i = first; i <= last; ++i) {
    if (lphi[i] == kNegInf) continue;
    const double x = std::log(r[i]);
    sx += x;
    sy += lphi[i];
    sxx += x * x;
    sxy += x * lphi[i];
    ++n;
  }
  if (n < 3) return kNaN;
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

struct Profile {
  std::vector<double> log_phi;
  std::optional<ExtendedValue> early;  // divergent/inconclusive verdict short-circuit
};

std::string fmt_g(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

}  // namespace

void HardyProblem::validate() const {
  if (!(q >= 1.0) || !std::isfinite(q)) throw std::invalid_argument("target exponent q must satisfy 1 <= q < inf");
  if (p) {
    if (!(*p > 1.0) || !(*p <= q)) throw std::invalid_argument("source exponent p must satisfy 1 < p <= q");
    if (direction != Direction::Direct)
      throw std::invalid_argument("the dual-mass characterization covers the direct averaging operator only");
  }
}

double HardyProblem::dual_exponent() const {
  if (!p) throw std::logic_error("dual exponent requested but p is unset");
  return *p / (*p - 1.0);
}

ExtendedValue tail_mass(const HardyProblem& pb, double R, const QuadConfig& cfg) {
  pb.validate();
  return integrate_tail(mass_integrand(pb), R, cfg);
}

ExtendedValue ball_mass(const HardyProblem& pb, double R, const QuadConfig& cfg) {
  pb.validate();
  return integrate_interval(mass_integrand(pb), 0.0, R, cfg);
}

ExtendedValue dual_ball_mass(const HardyProblem& pb, double R, const QuadConfig& cfg) {
  pb.validate();
  if (!pb.p) throw std::logic_error("dual ball mass requires the source exponent p");
  return integrate_interval(dual_integrand(pb), 0.0, R, cfg);
}

void SupSearchConfig::validate() const {
  if (!(0.0 < r_min && r_min < r_max) || !std::isfinite(r_max))
    throw std::invalid_argument("search range must satisfy 0 < r_min < r_max < inf");
  if (!(0.0 < ext_r_min && ext_r_min <= r_min) || !(r_max <= ext_r_max) || !std::isfinite(ext_r_max))
    throw std::invalid_argument("widened range must contain the search range");
  if (grid_points < 9) throw std::invalid_argument("need at least 9 grid points");
  if (!(flatness_tol > 0.0) || !(divergence_slope > flatness_tol))
    throw std::invalid_argument("need 0 < flatness_tol < divergence_slope");
  if (!(widen_trigger > 0.0) || !(widen_trigger <= flatness_tol))
    throw std::invalid_argument("need 0 < widen_trigger <= flatness_tol");
  if (!(tie_tol > 0.0)) throw std::invalid_argument("tie tolerance must be positive");
  if (refine_iters < 0) throw std::invalid_argument("refine_iters must be nonnegative");
  quad.validate();
}

namespace {

SupResult sup_search(const HardyProblem& pb, const SupSearchConfig& cfg) {
  pb.validate();
  cfg.validate();
  const bool direct = pb.direction == Direction::Direct;
  const bool dual = pb.p.has_value();
  const double inv_q = 1.0 / pb.q;
  const double inv_pp = dual ? 1.0 / pb.dual_exponent() : 0.0;
  const LogIntegrand mg = mass_integrand(pb);
  const LogIntegrand dg = dual ? dual_integrand(pb) : LogIntegrand{};

  SupResult out;

  // The u-mass factor diverges for one radius iff it diverges for all of
  // them (tails share behavior at infinity, balls at the origin), so one
  // probe settles it.
  {
    const ExtendedValue m = direct ? integrate_tail(mg, cfg.r_max, cfg.quad)
                                   : integrate_interval(mg, 0.0, cfg.r_min, cfg.quad);
    if (m.state() == ExtendedValue::State::Divergent) {
      out.constant = ExtendedValue::divergent(std::string("the u-mass of every ") +
                                              (direct ? "exterior region" : "ball") +
                                              " is infinite: " + m.evidence());
      return out;
    }
    if (m.state() == ExtendedValue::State::Inconclusive) {
      out.constant = ExtendedValue::inconclusive("u-mass probe undecided: " + m.evidence());
      return out;
    }
  }
  // Same one-probe argument for the source factor.
  if (dual) {
    const ExtendedValue d = integrate_interval(dg, 0.0, cfg.r_min, cfg.quad);
    if (d.state() == ExtendedValue::State::Divergent) {
      out.constant =
          ExtendedValue::divergent("the dual v-mass of every ball is infinite: " + d.evidence());
      return out;
    }
    if (d.state() == ExtendedValue::State::Inconclusive) {
      out.constant = ExtendedValue::inconclusive("dual v-mass probe undecided: " + d.evidence());
      return out;
    }
  } else if (pb.v.family() != WeightFamily::Tabulated) {
    const WeightSup s = direct ? sup_reciprocal_on_ball(pb.v, cfg.r_min)
                               : sup_reciprocal_on_exterior(pb.v, cfg.r_max);
    if (s.value.state() == ExtendedValue::State::Divergent) {
      out.constant = ExtendedValue::divergent(std::string("the reciprocal-v supremum over every ") +
                                              (direct ? "ball" : "exterior region") +
                                              " is infinite: " + s.value.evidence());
      return out;
    }
  }

  // log of the source factor at one radius: log S(R), or log V(R)/p' in the
  // dual-mass form; -inf where the factor vanishes (empty table overlap).
  auto source_log = [&](double R) -> double {
    if (dual) {
      const ExtendedValue d = integrate_interval(dg, 0.0, R, cfg.quad);
      return d.state() == ExtendedValue::State::Finite ? inv_pp * d.log_value() : kNaN;
    }
    if (direct) {
      if (R < pb.v.domain_lo()) return kNegInf;
      const WeightSup s = sup_reciprocal_on_ball(pb.v, R);
      return s.value.state() == ExtendedValue::State::Finite ? s.value.log_value() : kNaN;
    }
    if (R > pb.v.domain_hi()) return kNegInf;
    const WeightSup s = sup_reciprocal_on_exterior(pb.v, R);
    return s.value.state() == ExtendedValue::State::Finite ? s.value.log_value() : kNaN;
  };

  // Full profile value at one radius, for refinement.
  auto log_phi_at = [&](double R) -> double {
    const ExtendedValue m = direct ? integrate_tail(mg, R, cfg.quad)
                                   : integrate_interval(mg, 0.0, R, cfg.quad);
    if (m.state() != ExtendedValue::State::Finite) return kNaN;
    const double ls = source_log(R);
    return std::isnan(ls) ? kNaN : inv_q * m.log_value() + ls;
  };

  auto compute_profile = [&](const std::vector<double>& grid) -> Profile {
    Profile pr;
    const std::size_t n = grid.size();
    std::vector<double> lmass(n);
    if (direct) {
      const ExtendedValue tail = integrate_tail(mg, grid.back(), cfg.quad);
      if (tail.state() != ExtendedValue::State::Finite) {
        pr.early = tail.state() == ExtendedValue::State::Divergent
                       ? ExtendedValue::divergent("exterior u-mass diverged at the range edge: " + tail.evidence())
                       : ExtendedValue::inconclusive("exterior u-mass undecided at the range edge: " + tail.evidence());
        return pr;
      }
      lmass[n - 1] = tail.log_value();
      for (std::size_t i = n - 1; i-- > 0;) {
        const ExtendedValue seg = integrate_interval(mg, grid[i], grid[i + 1], cfg.quad);
        if (seg.state() != ExtendedValue::State::Finite) {
          pr.early = ExtendedValue::divergent("u-mass diverged inside [" + fmt_g(grid[i]) + ", " +
                                              fmt_g(grid[i + 1]) + "]: " + seg.evidence());
          return pr;
        }
        lmass[i] = log_add_exp(lmass[i + 1], seg.log_value());
      }
    } else {
      const CumulativeTable ct = cumulative_table(mg, grid, cfg.quad);
      if (ct.total.state() != ExtendedValue::State::Finite) {
        pr.early = ct.total.state() == ExtendedValue::State::Divergent
                       ? ExtendedValue::divergent("ball u-mass diverged on the search range: " + ct.total.evidence())
                       : ExtendedValue::inconclusive("ball u-mass undecided on the search range: " + ct.total.evidence());
        return pr;
      }
      lmass = ct.log_values;
    }

    std::vector<double> lsrc(n);
    if (dual) {
      const CumulativeTable ct = cumulative_table(dg, grid, cfg.quad);
      if (ct.total.state() != ExtendedValue::State::Finite) {
        pr.early = ct.total.state() == ExtendedValue::State::Divergent
                       ? ExtendedValue::divergent("dual v-mass diverged on the search range: " + ct.total.evidence())
                       : ExtendedValue::inconclusive("dual v-mass undecided on the search range: " + ct.total.evidence());
        return pr;
      }
      for (std::size_t i = 0; i < n; ++i)
        lsrc[i] = ct.log_values[i] == kNegInf ? kNegInf : inv_pp * ct.log_values[i];
    } else {
      for (std::size_t i = 0; i < n; ++i) {
        const double ls = source_log(grid[i]);
        if (std::isnan(ls)) {
          pr.early = ExtendedValue::divergent("reciprocal-v supremum diverged at R=" + fmt_g(grid[i]));
          return pr;
        }
        lsrc[i] = ls;
      }
    }

    pr.log_phi.resize(n);
    for (std::size_t i = 0; i < n; ++i)
      pr.log_phi[i] = (lmass[i] == kNegInf || lsrc[i] == kNegInf) ? kNegInf
                                                                  : inv_q * lmass[i] + lsrc[i];
    return pr;
  };

  const double ppd = (cfg.grid_points - 1) / std::log10(cfg.r_max / cfg.r_min);
  double lo = cfg.r_min, hi = cfg.r_max;
  bool widened_left = false, widened_right = false;
  std::string notes;

  for (;;) {
    const int n = std::max(9, int(std::lround(ppd * std::log10(hi / lo))) + 1);
    std::vector<double> grid = log_grid(lo, hi, n);
    Profile pr = compute_profile(grid);
    if (pr.early) {
      out.constant = *pr.early;
      out.note = notes;
      return out;
    }
    out.grid_r = grid;
    out.log_phi = pr.log_phi;

    double lmax = kNegInf;
    for (double lp : pr.log_phi) lmax = std::max(lmax, lp);

    if (lmax == kNegInf) {
      if (!widened_left || !widened_right) {
        widened_left = widened_right = true;
        lo = cfg.ext_r_min;
        hi = cfg.ext_r_max;
        notes += "profile vanished on the search range; widened to the full range. ";
        continue;
      }
      out.constant = ExtendedValue::finite_from_log(kNegInf, 0.0);
      out.attained_at = kNaN;
      out.note = notes + "profile vanishes identically on the widened range.";
      return out;
    }

    std::vector<std::size_t> tied;
    for (std::size_t i = 0; i < pr.log_phi.size(); ++i)
      if (pr.log_phi[i] >= lmax - cfg.tie_tol) tied.push_back(i);

    // Points per decade fixed by construction, so one decade = ppd+1 points.
    const std::size_t dec = std::size_t(std::lround(ppd));
    const std::size_t last = pr.log_phi.size() - 1;
    const double slope_l = profile_slope(grid, pr.log_phi, 0, std::min(dec, last));
    const double slope_r = profile_slope(grid, pr.log_phi, last - std::min(dec, last), last);
    // Growth toward the respective boundary, in log-profile per log-radius.
    const double grow_l = std::isnan(slope_l) ? 0.0 : -slope_l;
    const double grow_r = std::isnan(slope_r) ? 0.0 : slope_r;

    const bool at_left = tied.front() == 0;
    const bool at_right = tied.back() == last;

    if (at_left && grow_l > cfg.widen_trigger && !widened_left && cfg.ext_r_min < lo) {
      widened_left = true;
      lo = cfg.ext_r_min;
      notes += "profile rising toward R=" + fmt_g(grid.front()) + "; widened the range downward. ";
      continue;
    }
    if (at_right && grow_r > cfg.widen_trigger && !widened_right && cfg.ext_r_max > hi) {
      widened_right = true;
      hi = cfg.ext_r_max;
      notes += "profile rising toward R=" + fmt_g(grid.back()) + "; widened the range upward. ";
      continue;
    }

    for (const bool left : {true, false}) {
      const bool at_edge = left ? at_left : at_right;
      const double grow = left ? grow_l : grow_r;
      const char* side = left ? "lower" : "upper";
      if (!at_edge || grow <= cfg.flatness_tol) continue;
      if (grow >= cfg.divergence_slope) {
        out.constant = ExtendedValue::divergent(
            std::string("profile grows toward the ") + side + " range edge at slope " + fmt_g(grow) +
            " per log-radius; the supremum is not attained");
        out.note = notes;
        return out;
      }
      out.constant = ExtendedValue::inconclusive(
          std::string("profile still trending at the ") + side + " range edge (slope " + fmt_g(grow) +
          " per log-radius, between the plateau and divergence thresholds)");
      out.note = notes;
      return out;
    }

    // Attained (or plateaued) supremum: middle of the tied range, refined
    // by golden section when strictly interior.
    std::size_t i0 = tied[tied.size() / 2];
    double best_log = lmax, best_r = grid[i0];
    if (i0 > 0 && i0 < last && cfg.refine_iters > 0) {
      double a = std::log(grid[i0 - 1]), b = std::log(grid[i0 + 1]);
      const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
      double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
      double f1 = log_phi_at(std::exp(x1)), f2 = log_phi_at(std::exp(x2));
      for (int it = 0; it < cfg.refine_iters && (b - a) > 1e-10 && !std::isnan(f1) && !std::isnan(f2); ++it) {
        if (f1 < f2) {
          a = x1;
          x1 = x2;
          f1 = f2;
          x2 = a + gr * (b - a);
          f2 = log_phi_at(std::exp(x2));
        } else {
          b = x2;
          x2 = x1;
          f2 = f1;
          x1 = b - gr * (b - a);
          f1 = log_phi_at(std::exp(x1));
        }
      }
      const double xm = std::exp(0.5 * (a + b));
      const double fm = log_phi_at(xm);
      if (!std::isnan(fm) && fm > best_log) best_log = fm, best_r = xm;
    }
    if (tied.size() > 1)
      notes += "profile within " + fmt_g(cfg.tie_tol) + " of its maximum at " +
               std::to_string(tied.size()) + " of " + std::to_string(last + 1) + " grid points. ";
    if ((at_left || at_right) && tied.size() > 1) notes += "plateau reaches the range edge. ";

    // Residual trend at an edge bounds how far the limit can still move.
    double resid = 0.0;
    if (at_left && grow_l > 0.0) resid = std::max(resid, grow_l);
    if (at_right && grow_r > 0.0) resid = std::max(resid, grow_r);
    if (resid > 1e-8)
      notes += "supremum approached as a limit at the range edge (residual trend " + fmt_g(resid) + "). ";

    out.constant = ExtendedValue::finite_from_log(best_log, std::max(1e-8, resid));
    out.attained_at = best_r;
    out.note = notes;
    return out;
  }
}

}  // namespace

SupResult characterization_constant(const HardyProblem& pb, const SupSearchConfig& cfg) {
  return sup_search(pb, cfg);
}

SupResult muckenhoupt_constant(const HardyProblem& pb, const SupSearchConfig& cfg) {
  if (!pb.p) throw std::logic_error("the dual-mass constant requires the source exponent p");
  return sup_search(pb, cfg);
}

double equivalence_factor(const HardyProblem& pb) {
  pb.validate();
  if (!pb.p) return 1.0;
  const double pp = pb.dual_exponent();
  return std::pow(1.0 + pb.q / pp, 1.0 / pb.q) * std::pow(1.0 + pp / pb.q, 1.0 / pp);
}

}  // namespace hardy
