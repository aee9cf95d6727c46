#pragma once

#include <string>

namespace hka {

/// Deterministic time change: a non-negative, non-decreasing function
/// lambda on [0, horizon) that feeds the time argument of the propagator.
/// Three parametric families are supported:
///
///   scaled-exp(c):  lambda(t) = c * e^t          (c >= 0)
///   power(c, p):    lambda(t) = c * t^p          (c >= 0, p > 0)
///   affine(a, b):   lambda(t) = a + b * t        (a >= 0, b >= 0)
///
/// Parameter constraints keep every member of the family non-negative and
/// non-decreasing; construction throws std::domain_error otherwise.
class TimeChange {
 public:
  enum class Family { ScaledExponential, PowerLaw, Affine };

  static TimeChange scaled_exponential(double scale);
  static TimeChange power_law(double scale, double exponent);
  static TimeChange affine(double offset, double slope);

  /// Evaluates lambda(t). Throws std::domain_error for t < 0 or non-finite t.
  double operator()(double t) const;

  Family family() const { return family_; }

  /// Human-readable form, e.g. "scaled-exp(0.1)" or "power(1,0.5)".
  std::string description() const;

 private:
  TimeChange(Family family, double p0, double p1)
      : family_(family), p0_(p0), p1_(p1) {}

  Family family_;
  double p0_;
  double p1_;
};

}  // namespace hka
