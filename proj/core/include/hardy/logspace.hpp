#pragma once

#include <cmath>
#include <limits>

// Log-space scalar helpers. Everything radial in this library composes
// integrands and suprema multiplicatively, and the factors routinely leave
// the range of double ((sinh r)^{n-1} overflows linear space near
// r = 710/(n-1)), so quantities are carried as logarithms with -inf
// encoding zero and exponentiation deferred as long as possible.

namespace hardy {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();
inline constexpr double kInf = std::numeric_limits<double>::infinity();

// log(e^a + e^b); tolerates -inf in either slot.
inline double log_add_exp(double a, double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  const double m = a > b ? a : b;
  return m + std::log1p(std::exp(-(a > b ? a - b : b - a)));
}

// log(e^a - e^b) for a >= b; equal inputs give -inf. NaN if a < b.
inline double log_sub_exp(double a, double b) {
  if (b == kNegInf) return a;
  if (a < b) return std::numeric_limits<double>::quiet_NaN();
  const double d = b - a;  // <= 0
  return a + std::log1p(-std::exp(d));
}

// log(sinh x) for x >= 0, overflow-free for large x, exact scaling for
// small x (sinh x ~ x has no cancellation).
inline double log_sinh(double x) {
  if (x == 0.0) return kNegInf;
  if (x < 1.0) return std::log(std::sinh(x));
  return x - std::log(2.0) + std::log1p(-std::exp(-2.0 * x));
}

// log(cosh x), overflow-free.
inline double log_cosh(double x) {
  x = std::fabs(x);
  if (x < 1.0) return std::log(std::cosh(x));
  return x - std::log(2.0) + std::log1p(std::exp(-2.0 * x));
}

// log(sinh(x)/x) for x >= 0; -> 0 as x -> 0.
inline double log_sinhc(double x) {
  if (x == 0.0) return 0.0;
  if (x < 1e-4) return x * x / 6.0;  // next term x^4/180 is below resolution
  return log_sinh(x) - std::log(x);
}

// asinh(exp(L)) without materializing exp(L).
inline double asinh_exp(double L) {
  if (L > 700.0) return L + std::log(2.0);
  return std::asinh(std::exp(L));
}

// log of the surface measure of the unit sphere S^{n-1} in R^n:
// |S^{n-1}| = 2 pi^{n/2} / Gamma(n/2).
inline double log_sphere_area(int n) {
  return std::log(2.0) + 0.5 * n * std::log(M_PI) - std::lgamma(0.5 * n);
}

// Streaming log-sum-exp accumulator for nonnegative terms.
class LogAccumulator {
 public:
  void add(double l) {
    if (l == kNegInf) return;
    if (empty_) {
      max_ = l;
      sum_ = 1.0;
      empty_ = false;
    } else if (l > max_) {
      sum_ = sum_ * std::exp(max_ - l) + 1.0;
      max_ = l;
    } else {
      sum_ += std::exp(l - max_);
    }
  }
  double log_total() const { return empty_ ? kNegInf : max_ + std::log(sum_); }
  bool empty() const { return empty_; }

 private:
  double max_ = kNegInf;
  double sum_ = 0.0;
  bool empty_ = true;
};

}  // namespace hardy
