#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

#include "hardy/logspace.hpp"

namespace hardy {

// Outcome of computing a nonnegative quantity that may genuinely be infinite:
// either a finite value (stored in log space, zero = log -inf), a certified
// divergence, or a numerically undecided case. Divergence is a value at this
// API surface, never an exception; the evidence string records what the
// detector saw (growth factors, block ratios, boundary slopes).
class ExtendedValue {
 public:
  enum class State { Finite, Divergent, Inconclusive };

  ExtendedValue() = default;

  static ExtendedValue finite_from_log(double log_value, double rel_error) {
    ExtendedValue v;
    v.state_ = State::Finite;
    v.log_value_ = log_value;
    v.rel_error_ = rel_error;
    return v;
  }
  static ExtendedValue finite(double value, double rel_error) {
    if (value < 0.0) throw std::invalid_argument("ExtendedValue: negative value");
    return finite_from_log(value == 0.0 ? kNegInf : std::log(value), rel_error);
  }
  static ExtendedValue zero() { return finite_from_log(kNegInf, 0.0); }
  static ExtendedValue divergent(std::string evidence) {
    ExtendedValue v;
    v.state_ = State::Divergent;
    v.evidence_ = std::move(evidence);
    return v;
  }
  static ExtendedValue inconclusive(std::string evidence) {
    ExtendedValue v;
    v.state_ = State::Inconclusive;
    v.evidence_ = std::move(evidence);
    return v;
  }

  State state() const { return state_; }
  bool is_finite() const { return state_ == State::Finite; }
  bool is_divergent() const { return state_ == State::Divergent; }
  bool is_inconclusive() const { return state_ == State::Inconclusive; }

  // log of the value; -inf encodes an exact zero. Finite states only.
  double log_value() const {
    require_finite();
    return log_value_;
  }

  // Linear-space value. Refuses to silently return inf: values beyond double
  // range raise overflow_error (callers wanting raw magnitude use log_value).
  double value() const {
    require_finite();
    if (log_value_ > 709.0) throw std::overflow_error("ExtendedValue: value exceeds double range; use log_value()");
    return std::exp(log_value_);
  }

  double rel_error() const {
    require_finite();
    return rel_error_;
  }

  const std::string& evidence() const { return evidence_; }

  const char* state_name() const {
    switch (state_) {
      case State::Finite: return "finite";
      case State::Divergent: return "divergent";
      default: return "inconclusive";
    }
  }

 private:
  void require_finite() const {
    if (state_ != State::Finite)
      throw std::logic_error(std::string("ExtendedValue: accessor on ") + state_name() + " state (" + evidence_ + ")");
  }

  State state_ = State::Finite;
  double log_value_ = kNegInf;
  double rel_error_ = 0.0;
  std::string evidence_;
};

}  // namespace hardy
