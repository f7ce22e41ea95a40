#include "hardy/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <vector>

namespace hardy {
namespace {

std::string fmt(const char* f, ...) {
  char buf[256];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

// Gauss-Kronrod 7-15 pair on [-1,1]; positive abscissae, center last.
// Odd indices plus the center are the embedded Gauss-7 nodes.
constexpr double kXk[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.000000000000000};
constexpr double kWk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
constexpr double kWg[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};

struct Panel {
  double a, b;
  double lv, le;  // log integral, log abs-error estimate
  int depth;
};

// One G7K15 panel. Function values are composed in log space and
// exponentiated with a shared max subtraction, so panels deep in the
// exponential tails stay exact relative to their own scale.
Panel eval_panel(const LogIntegrand& g, double a, double b, int depth) {
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  double fm[8], fp[8];
  double m = kNegInf;
  for (int i = 0; i < 8; ++i) {
    fm[i] = g(c - h * kXk[i]);
    fp[i] = i < 7 ? g(c + h * kXk[i]) : kNegInf;
    m = std::max(m, std::max(fm[i], fp[i]));
  }
  if (m == kNegInf) return {a, b, kNegInf, kNegInf, depth};

  // Exponential fast path: when the log-integrand is affine in r across the
  // panel (sinh and exp tails beyond their knees, to machine precision), the
  // panel integrates in closed form and bisection cannot improve on it. The
  // acceptance threshold scales with the node magnitudes, since log-values of
  // order 1e10 carry ulp-level noise far above any fixed epsilon.
  bool all_finite = true;
  for (int i = 0; i < 8 && all_finite; ++i)
    all_finite = fm[i] != kNegInf && (i == 7 || fp[i] != kNegInf);
  if (all_finite) {
    const double fc = fm[7];
    const double sh = (fp[0] - fm[0]) / (2.0 * kXk[0]);  // slope * half-width
    double dev = 0.0;
    for (int i = 0; i < 7; ++i) {
      dev = std::max(dev, std::fabs(fm[i] - (fc - sh * kXk[i])));
      dev = std::max(dev, std::fabs(fp[i] - (fc + sh * kXk[i])));
    }
    const double noise = 32.0 * std::numeric_limits<double>::epsilon() *
                         (1.0 + std::fabs(fc) + std::fabs(sh));
    if (dev <= noise) {
      const double lv = std::fabs(sh) < 1e-8
                            ? fc + std::log(b - a)
                            : fc + std::log(2.0) + log_sinh(std::fabs(sh)) - std::log(std::fabs(sh) / h);
      return {a, b, lv, lv + std::log(std::max(dev, noise) + 1e-300), depth};
    }
  }

  double k15 = 0.0, g7 = 0.0;
  for (int i = 0; i < 8; ++i) {
    const double e = std::exp(fm[i] - m) + (i < 7 ? std::exp(fp[i] - m) : 0.0);
    k15 += kWk[i] * e;
    if (i == 1) g7 += kWg[0] * e;
    if (i == 3) g7 += kWg[1] * e;
    if (i == 5) g7 += kWg[2] * e;
    if (i == 7) g7 += kWg[3] * e;
  }
  const double lv = m + std::log(h) + std::log(k15);
  const double rel_diff = std::fabs(k15 - g7) / k15;
  double errf = std::min(1.0, std::pow(200.0 * rel_diff, 1.5));
  errf = std::max(errf, 1e-15);  // roundoff floor
  return {a, b, lv, lv + std::log(errf), depth};
}

struct AdaptiveOut {
  double lv = kNegInf;
  double le = kNegInf;
};

// Adaptive bisection over [a,b] with a>0 semantics: no divergence detection,
// only refinement until the global error target (relative, with an absolute
// floor) is met or panels become unsplittable.
AdaptiveOut adaptive_on(const LogIntegrand& g, double a, double b, const QuadConfig& cfg) {
  if (!(a < b)) return {};
  const std::size_t panel_budget = 16384;
  std::vector<Panel> act{eval_panel(g, a, b, 0)}, settled;
  for (int round = 0; round < 2 * cfg.max_depth && !act.empty(); ++round) {
    LogAccumulator va, ea;
    for (const auto& p : act) va.add(p.lv), ea.add(p.le);
    for (const auto& p : settled) va.add(p.lv), ea.add(p.le);
    const double lv = va.log_total();
    // Relative target only: log-space totals carry no absolute scale, and a
    // panel sum that looks negligible here may be one factor of a product
    // whose other factor is astronomically large. The abs_tol floor applies
    // to block-walk remainders, where the walk's own total sets the scale.
    const double target = lv + std::log(cfg.rel_tol);
    if (ea.log_total() <= target) break;
    const double share = target - std::log(2.0 * double(act.size() + settled.size()));
    std::vector<Panel> next;
    bool split_any = false;
    for (const auto& p : act) {
      const double eps_w = 8.0 * std::numeric_limits<double>::epsilon() * std::max(std::fabs(p.a), std::fabs(p.b));
      const bool splittable = p.depth < cfg.max_depth && (p.b - p.a) > eps_w &&
                              settled.size() + act.size() + next.size() < panel_budget;
      if (p.le > share && splittable) {
        const double mid = 0.5 * (p.a + p.b);
        next.push_back(eval_panel(g, p.a, mid, p.depth + 1));
        next.push_back(eval_panel(g, mid, p.b, p.depth + 1));
        split_any = true;
      } else {
        settled.push_back(p);  // below share, or stuck at depth/width/budget: error stays reported
      }
    }
    act.swap(next);
    if (!split_any) break;
  }
  LogAccumulator va, ea;
  for (const auto& p : act) va.add(p.lv), ea.add(p.le);
  for (const auto& p : settled) va.add(p.lv), ea.add(p.le);
  return {va.log_total(), ea.log_total()};
}

// Shared engine for both singular endpoints. Sums adaptive panels over
// factor-2 blocks walking from `anchor` toward 0 (dir=-1, covering
// (0, anchor]) or toward infinity (dir=+1, covering [anchor, inf)), deciding
// among geometric convergence, divergence (sustained non-decaying block
// sums, only after the walk spans enough decades to have crossed any
// interior bulk), and an honest Inconclusive.
ExtendedValue geometric_block_sum(const LogIntegrand& g, double anchor, int dir, const QuadConfig& cfg) {
  const double log_floor = std::log(cfg.abs_tol);
  const int max_blocks = 2400;
  const double l2a = std::log2(anchor);

  LogAccumulator vals, errs;
  std::vector<double> blocks, partials, ratios;
  int consecutive_zero = 0;
  int blocks_run = 0;

  auto finish_finite = [&](double log_remainder) {
    // The remainder is a geometric closure of the unwalked blocks; near a
    // power-law endpoint the block sequence is exactly geometric, so folding
    // it into the value recovers the dropped mass. It stays in the error
    // bound in full, covering integrands the extrapolation misreads.
    vals.add(log_remainder);
    errs.add(log_remainder);
    const double lv = vals.log_total();
    const double le = errs.log_total();
    const double rel = lv == kNegInf ? 0.0 : std::exp(std::min(0.0, le - lv));
    return ExtendedValue::finite_from_log(lv, rel);
  };

  for (int k = 0; k < max_blocks; ++k, ++blocks_run) {
    double lo, hi;
    if (dir > 0) {
      if (l2a + k + 1 > 996.0) break;  // radius would leave double range
      lo = anchor * std::exp2(double(k));
      hi = anchor * std::exp2(double(k + 1));
      if (lo > g.support_hi) return finish_finite(kNegInf);
    } else {
      if (l2a - (k + 1) < -1020.0) break;
      hi = anchor * std::exp2(-double(k));
      lo = anchor * std::exp2(-double(k + 1));
      if (hi <= g.support_lo) return finish_finite(kNegInf);
    }
    const AdaptiveOut blk = adaptive_on(g, lo, hi, cfg);
    vals.add(blk.lv);
    errs.add(blk.le);
    if (!blocks.empty() && blocks.back() != kNegInf && blk.lv != kNegInf)
      ratios.push_back(blk.lv - blocks.back());
    blocks.push_back(blk.lv);
    partials.push_back(vals.log_total());

    if (blk.lv == kNegInf) {
      // Positive-on-support integrands only go quiet past their support; two
      // silent blocks after real mass means the support is exhausted.
      if (++consecutive_zero >= 2 && !vals.empty()) return finish_finite(kNegInf);
      continue;
    }
    consecutive_zero = 0;

    if (!ratios.empty()) {
      const double last = ratios.back();
      // Non-decaying block sums are declared divergent only after the walk
      // spans 60 octaves (factor ~1e18 from the anchor).  A finite integrand
      // whose bulk lies within that span has turned the sequence over by
      // then, so a walk still climbing or flat this deep is reading the
      // endpoint's own behavior, not an approach ramp to interior mass.
      if (k >= 60 && ratios.size() >= 12) {
        const double wmin = *std::min_element(ratios.end() - 12, ratios.end());
        if (wmin >= -1e-6)
          return ExtendedValue::divergent(
              fmt("block sums non-decaying over 12 consecutive factor-2 blocks (trailing log-ratio >= %.3g at block %d)",
                  wmin, k + 1));
      }
      if (ratios.size() >= 3) {
        const double rho = *std::max_element(ratios.end() - 3, ratios.end());
        if (rho <= std::log(0.995)) {
          const double log_rem = blocks.back() + rho - std::log1p(-std::exp(rho));
          if (log_rem <= partials.back() + std::log(0.25 * cfg.rel_tol) ||
              (log_rem <= log_floor && log_rem <= partials.back()))
            return finish_finite(log_rem);
        }
      }
      if (k >= 8 && last < 0.0 && partials.back() <= log_floor) return finish_finite(kNegInf);
    }
  }

  // Block budget or representable range exhausted without a clean verdict.
  if (ratios.size() >= 3) {
    const std::size_t w = std::min<std::size_t>(12, ratios.size());
    const double wmin = *std::min_element(ratios.end() - w, ratios.end());
    if (wmin >= -1e-6)
      return ExtendedValue::divergent(
          fmt("block sums non-decaying through final %zu factor-2 blocks of %d (trailing log-ratio >= %.3g)",
              w, blocks_run, wmin));
    const double rho = *std::max_element(ratios.end() - 3, ratios.end());
    if (rho < 0.0) {
      const double log_rem = blocks.back() + rho - std::log1p(-std::exp(rho));
      const double rem_rel = std::exp(std::min(0.0, log_rem - partials.back()));
      if (rem_rel <= 0.01) return finish_finite(log_rem);  // achieved error reported, not rel_tol
      return ExtendedValue::inconclusive(
          fmt("unsettled after %d factor-2 blocks: trailing log-ratio %.3g, remainder/total ~ %.2g",
              blocks_run, rho, rem_rel));
    }
  }
  if (vals.empty()) return ExtendedValue::zero();
  return ExtendedValue::inconclusive(
      fmt("unsettled after %d factor-2 blocks: no stable trailing ratio", blocks_run));
}

}  // namespace

void QuadConfig::validate() const {
  if (!(rel_tol > 0.0) || !(rel_tol < 1.0)) throw std::invalid_argument("QuadConfig: rel_tol must lie in (0,1)");
  if (!(abs_tol > 0.0)) throw std::invalid_argument("QuadConfig: abs_tol must be positive");
  if (max_depth < 10) throw std::invalid_argument("QuadConfig: max_depth must be at least 10");
}

ExtendedValue integrate_interval(const LogIntegrand& g, double a, double b, const QuadConfig& cfg) {
  cfg.validate();
  if (!(a >= 0.0) || !(b > a) || !std::isfinite(b))
    throw std::invalid_argument("integrate_interval: need 0 <= a < b < inf");
  const double lo = std::max(a, g.support_lo);
  const double hi = std::min(b, g.support_hi);
  if (!(lo < hi)) return ExtendedValue::zero();
  if (lo > 0.0) {
    const AdaptiveOut r = adaptive_on(g, lo, hi, cfg);
    const double rel = r.lv == kNegInf ? 0.0 : std::exp(std::min(0.0, r.le - r.lv));
    return ExtendedValue::finite_from_log(r.lv, rel);
  }
  return geometric_block_sum(g, hi, -1, cfg);
}

ExtendedValue integrate_tail(const LogIntegrand& g, double R, const QuadConfig& cfg) {
  cfg.validate();
  if (!(R > 0.0) || !std::isfinite(R)) throw std::invalid_argument("integrate_tail: need 0 < R < inf");
  if (g.support_hi < kInf) {
    if (g.support_hi <= R) return ExtendedValue::zero();
    return integrate_interval(g, R, g.support_hi, cfg);
  }
  const double lo = std::max(R, g.support_lo);
  if (cfg.tail_transform == TailTransform::ExpDecayAware) return geometric_block_sum(g, lo, +1, cfg);
  // Reciprocal: r = lo + t/(1-t) on t in (0,1), then s = 1-t so the tail's
  // singular image sits at s = 0 where the graded machinery lives.
  LogIntegrand h;
  h.log_eval = [g, lo](double s) { return g(lo + (1.0 - s) / s) - 2.0 * std::log(s); };
  h.support_lo = 0.0;
  h.support_hi = 1.0;
  return geometric_block_sum(h, 1.0, -1, cfg);
}

CumulativeTable cumulative_table(const LogIntegrand& g, const std::vector<double>& grid, const QuadConfig& cfg) {
  cfg.validate();
  if (grid.empty()) throw std::invalid_argument("cumulative_table: empty grid");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] > 0.0) || !std::isfinite(grid[i]))
      throw std::invalid_argument("cumulative_table: grid points must be positive and finite");
    if (i > 0 && !(grid[i] > grid[i - 1]))
      throw std::invalid_argument("cumulative_table: grid must be strictly increasing");
  }
  CumulativeTable out;
  const ExtendedValue head = integrate_interval(g, 0.0, grid[0], cfg);
  if (!head.is_finite()) {
    out.total = head;
    return out;
  }
  LogAccumulator v, e;
  v.add(head.log_value());
  if (head.log_value() != kNegInf) e.add(head.log_value() + std::log(std::max(head.rel_error(), 1e-300)));
  out.log_values.push_back(v.log_total());
  out.rel_errors.push_back(head.rel_error());
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const ExtendedValue seg = integrate_interval(g, grid[i - 1], grid[i], cfg);
    if (!seg.is_finite()) {
      out.total = seg;
      return out;
    }
    v.add(seg.log_value());
    if (seg.log_value() != kNegInf) e.add(seg.log_value() + std::log(std::max(seg.rel_error(), 1e-300)));
    out.log_values.push_back(v.log_total());
    const double lv = v.log_total();
    out.rel_errors.push_back(lv == kNegInf ? 0.0 : std::exp(std::min(0.0, e.log_total() - lv)));
  }
  out.total = ExtendedValue::finite_from_log(out.log_values.back(), out.rel_errors.back());
  return out;
}

}  // namespace hardy
