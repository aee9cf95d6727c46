#include "hka/time_change.hpp"

#include <cmath>
#include <stdexcept>

#include "hka/csv.hpp"

namespace hka {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw std::domain_error(what);
}

}  // namespace

TimeChange TimeChange::scaled_exponential(double scale) {
  require(std::isfinite(scale) && scale >= 0.0,
          "TimeChange: scaled-exp scale must be finite and >= 0");
  return TimeChange(Family::ScaledExponential, scale, 0.0);
}

TimeChange TimeChange::power_law(double scale, double exponent) {
  require(std::isfinite(scale) && scale >= 0.0,
          "TimeChange: power scale must be finite and >= 0");
  require(std::isfinite(exponent) && exponent > 0.0,
          "TimeChange: power exponent must be finite and > 0");
  return TimeChange(Family::PowerLaw, scale, exponent);
}

TimeChange TimeChange::affine(double offset, double slope) {
  require(std::isfinite(offset) && offset >= 0.0,
          "TimeChange: affine offset must be finite and >= 0");
  require(std::isfinite(slope) && slope >= 0.0,
          "TimeChange: affine slope must be finite and >= 0");
  return TimeChange(Family::Affine, offset, slope);
}

double TimeChange::operator()(double t) const {
  require(std::isfinite(t) && t >= 0.0,
          "TimeChange: time argument must be finite and >= 0");
  switch (family_) {
    case Family::ScaledExponential:
      return p0_ * std::exp(t);
    case Family::PowerLaw:
      return p0_ * std::pow(t, p1_);
    case Family::Affine:
      return p0_ + p1_ * t;
  }
  throw std::logic_error("TimeChange: unreachable family");
}

std::string TimeChange::description() const {
  // no commas: descriptions land in the comma-separated validation table
  switch (family_) {
    case Family::ScaledExponential:
      return "scaled-exp(" + format_double(p0_) + ")";
    case Family::PowerLaw:
      return "power(" + format_double(p0_) + ";" + format_double(p1_) + ")";
    case Family::Affine:
      return "affine(" + format_double(p0_) + ";" + format_double(p1_) + ")";
  }
  return "?";
}

}  // namespace hka
