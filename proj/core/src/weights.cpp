#include "hardy/weights.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <istream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "hardy/logspace.hpp"

namespace hardy {
namespace {

constexpr double kGridFloor = 1e-12;     // search floor near the origin
constexpr double kGridHorizon = 1e12;    // search horizon toward infinity
// |d log(1/w) / d log r| that counts as growth. The analytic families give
// exact power-law trends near their endpoints, so the floor only needs to
// clear least-squares roundoff (~1e-14), not sampling noise.
constexpr double kTrendSlope = 1e-6;

void check_radius(double R) {
  if (!(R > 0.0) || !std::isfinite(R)) throw std::invalid_argument("radius must be positive and finite");
}

// Log-spaced grid max of f with golden refinement inside the bracketing
// cell; endpoints are explicit candidates so monotone profiles resolve the
// boundary exactly.
struct GridSup {
  double log_sup;
  double argmax;
};
GridSup log_grid_sup(const std::function<double(double)>& f, double lo, double hi) {
  constexpr int kN = 257;
  const double llo = std::log(lo), lhi = std::log(hi);
  double best = kNegInf, barg = lo;
  int bidx = 0;
  for (int i = 0; i < kN; ++i) {
    const double x = std::exp(llo + (lhi - llo) * i / double(kN - 1));
    const double v = f(x);
    if (v > best) best = v, barg = x, bidx = i;
  }
  double a = llo + (lhi - llo) * std::max(0, bidx - 1) / double(kN - 1);
  double b = llo + (lhi - llo) * std::min(kN - 1, bidx + 1) / double(kN - 1);
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
  double f1 = f(std::exp(x1)), f2 = f(std::exp(x2));
  for (int it = 0; it < 120 && (b - a) > 1e-12; ++it) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + gr * (b - a);
      f2 = f(std::exp(x2));
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - gr * (b - a);
      f1 = f(std::exp(x1));
    }
  }
  const double xm = std::exp(0.5 * (a + b));
  const double fm = f(xm);
  if (fm > best) best = fm, barg = xm;
  return {best, barg};
}

// Least-squares slope of f(log r) against log r over [lo, hi].
double log_trend_slope(const std::function<double(double)>& f, double lo, double hi) {
  constexpr int kN = 9;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int i = 0; i < kN; ++i) {
    const double x = std::log(lo) + (std::log(hi) - std::log(lo)) * i / double(kN - 1);
    const double y = f(std::exp(x));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (kN * sxy - sx * sy) / (kN * sxx - sx * sx);
}

}  // namespace

double WeightTable::log_interp(double x) const {
  if (!(x >= r.front()) || !(x <= r.back()))
    throw std::domain_error("tabulated weight evaluated outside its sample range");
  const auto it = std::upper_bound(r.begin(), r.end(), x);
  const std::size_t i = it == r.end() ? r.size() - 2 : std::size_t(it - r.begin()) - 1;
  const double t = (std::log(x) - std::log(r[i])) / (std::log(r[i + 1]) - std::log(r[i]));
  return log_v[i] + t * (log_v[i + 1] - log_v[i]);
}

Monotonicity WeightTable::derive_monotonicity() const {
  bool up = true, down = true;
  for (std::size_t i = 1; i < log_v.size(); ++i) {
    if (log_v[i] < log_v[i - 1]) up = false;
    if (log_v[i] > log_v[i - 1]) down = false;
  }
  if (up) return Monotonicity::NonDecreasing;
  if (down) return Monotonicity::NonIncreasing;
  return Monotonicity::Unknown;
}

WeightTable WeightTable::from_pairs(const std::vector<std::pair<double, double>>& pairs) {
  if (pairs.size() < 2) throw std::invalid_argument("weight table needs at least two samples");
  WeightTable t;
  for (const auto& [x, v] : pairs) {
    if (!(x > 0.0) || !std::isfinite(x)) throw std::invalid_argument("weight table radii must be positive");
    if (!t.r.empty() && !(x > t.r.back())) throw std::invalid_argument("weight table radii must be strictly increasing");
    if (!(v > 0.0) || !std::isfinite(v)) throw std::invalid_argument("weight table values must be strictly positive");
    t.r.push_back(x);
    t.log_v.push_back(std::log(v));
  }
  return t;
}

WeightTable WeightTable::from_csv(std::istream& in) {
  std::vector<std::pair<double, double>> pairs;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream row(line);
    double x, v;
    if (!(row >> x >> v)) throw std::invalid_argument("weight table CSV: expected 'r,value' rows");
    pairs.emplace_back(x, v);
  }
  return from_pairs(pairs);
}

RadialWeight RadialWeight::power(double e) {
  if (!std::isfinite(e)) throw std::invalid_argument("weight exponent must be finite");
  RadialWeight w;
  w.family_ = WeightFamily::Power;
  w.exponent_ = e;
  w.mono_ = e < 0.0 ? Monotonicity::NonIncreasing : Monotonicity::NonDecreasing;
  return w;
}

RadialWeight RadialWeight::sinh_power(double e) {
  RadialWeight w = power(e);
  w.family_ = WeightFamily::SinhPower;
  return w;
}

RadialWeight RadialWeight::sinh_scaled_power(double e, double scale) {
  if (!(scale > 0.0) || !std::isfinite(scale)) throw std::invalid_argument("sinh scale must be positive");
  RadialWeight w = power(e);
  w.family_ = WeightFamily::SinhScaledPower;
  w.scale_ = scale;
  return w;
}

RadialWeight RadialWeight::tabulated(WeightTable table) {
  if (table.r.size() < 2) throw std::invalid_argument("tabulated weight needs at least two samples");
  RadialWeight w;
  w.family_ = WeightFamily::Tabulated;
  w.mono_ = table.derive_monotonicity();
  w.table_ = std::move(table);
  return w;
}

RadialWeight RadialWeight::with_monotonicity(Monotonicity m) const {
  RadialWeight w = *this;
  w.mono_ = m;
  return w;
}

double RadialWeight::domain_lo() const { return family_ == WeightFamily::Tabulated ? table_.r.front() : 0.0; }
double RadialWeight::domain_hi() const { return family_ == WeightFamily::Tabulated ? table_.r.back() : kInf; }

double RadialWeight::log_value(double r) const {
  check_radius(r);
  switch (family_) {
    case WeightFamily::Power:
      return exponent_ * std::log(r);
    case WeightFamily::SinhPower:
      return exponent_ * log_sinh(r);
    case WeightFamily::SinhScaledPower:
      return exponent_ * log_sinh(scale_ * r);
    case WeightFamily::Tabulated:
      return table_.log_interp(r);
  }
  throw std::logic_error("unreachable weight family");
}

double RadialWeight::log_value_or_zero(double r) const {
  if (r < domain_lo() || r > domain_hi()) return kNegInf;
  return log_value(r);
}

std::string RadialWeight::describe() const {
  char buf[96];
  switch (family_) {
    case WeightFamily::Power:
      std::snprintf(buf, sizeof buf, "r^%g", exponent_);
      break;
    case WeightFamily::SinhPower:
      std::snprintf(buf, sizeof buf, "sinh(r)^%g", exponent_);
      break;
    case WeightFamily::SinhScaledPower:
      std::snprintf(buf, sizeof buf, "sinh(%g r)^%g", scale_, exponent_);
      break;
    case WeightFamily::Tabulated:
      std::snprintf(buf, sizeof buf, "table[%zu: %g..%g]", table_.r.size(), table_.r.front(), table_.r.back());
      break;
  }
  return buf;
}

WeightSup sup_reciprocal_on_ball(const RadialWeight& w, double R) {
  check_radius(R);
  const bool tab = w.family() == WeightFamily::Tabulated;
  if (tab && R < w.domain_lo())
    throw std::invalid_argument("sup_reciprocal_on_ball: ball lies entirely below the table domain");
  const double hi = std::min(R, w.domain_hi());

  switch (w.monotonicity()) {
    case Monotonicity::NonDecreasing: {
      // reciprocal is nonincreasing: supremum is the limit at the left end.
      if (tab) return {ExtendedValue::finite_from_log(-w.log_value(w.domain_lo()), 1e-15), w.domain_lo()};
      if (w.exponent() == 0.0) return {ExtendedValue::finite_from_log(0.0, 0.0), 0.0};
      return {ExtendedValue::divergent("weight vanishes at the origin; its reciprocal is unbounded on every ball"),
              std::numeric_limits<double>::quiet_NaN()};
    }
    case Monotonicity::NonIncreasing:
      return {ExtendedValue::finite_from_log(-w.log_value(hi), 1e-15), hi};
    case Monotonicity::Unknown: {
      const auto f = [&w](double r) { return -w.log_value(r); };
      const double lo = tab ? w.domain_lo() : kGridFloor;
      if (!tab) {
        // Origin trend over the bottom decades: sustained growth toward 0
        // means the supremum is a divergent limit, not a grid artifact.
        const double slope = log_trend_slope(f, lo, lo * 100.0);
        if (slope <= -kTrendSlope && f(lo) > f(std::sqrt(lo * hi)))
          return {ExtendedValue::divergent("reciprocal grows toward the origin under grid refinement (trend slope " +
                                           std::to_string(slope) + " per log-radius)"),
                  std::numeric_limits<double>::quiet_NaN()};
      }
      const GridSup s = log_grid_sup(f, lo, hi);
      return {ExtendedValue::finite_from_log(s.log_sup, 1e-10), s.argmax};
    }
  }
  throw std::logic_error("unreachable monotonicity");
}

WeightSup sup_reciprocal_on_exterior(const RadialWeight& w, double R) {
  check_radius(R);
  const bool tab = w.family() == WeightFamily::Tabulated;
  if (tab && R > w.domain_hi())
    throw std::invalid_argument("sup_reciprocal_on_exterior: exterior lies entirely above the table domain");
  const double lo = std::max(R, w.domain_lo());

  switch (w.monotonicity()) {
    case Monotonicity::NonIncreasing: {
      // reciprocal is nondecreasing: supremum is the limit at the right end.
      if (tab) return {ExtendedValue::finite_from_log(-w.log_value(w.domain_hi()), 1e-15), w.domain_hi()};
      if (w.exponent() == 0.0) return {ExtendedValue::finite_from_log(0.0, 0.0), kInf};
      return {ExtendedValue::divergent("weight vanishes at infinity; its reciprocal is unbounded on every exterior"),
              std::numeric_limits<double>::quiet_NaN()};
    }
    case Monotonicity::NonDecreasing:
      return {ExtendedValue::finite_from_log(-w.log_value(lo), 1e-15), lo};
    case Monotonicity::Unknown: {
      const auto f = [&w](double r) { return -w.log_value(r); };
      const double hi = tab ? w.domain_hi() : std::max(kGridHorizon, 100.0 * lo);
      if (!tab) {
        const double slope = log_trend_slope(f, hi / 100.0, hi);
        if (slope >= kTrendSlope && f(hi) > f(std::sqrt(lo * hi)))
          return {ExtendedValue::divergent("reciprocal grows toward infinity under grid refinement (trend slope " +
                                           std::to_string(slope) + " per log-radius)"),
                  std::numeric_limits<double>::quiet_NaN()};
      }
      const GridSup s = log_grid_sup(f, lo, hi);
      return {ExtendedValue::finite_from_log(s.log_sup, 1e-10), s.argmax};
    }
  }
  throw std::logic_error("unreachable monotonicity");
}

}  // namespace hardy
