#include "hka/curves.hpp"

#include <cmath>
#include <stdexcept>

#include "hka/pricing.hpp"

namespace hka {

namespace {

void check_maturities(const std::vector<double>& maturities, const char* who) {
  if (maturities.empty())
    throw std::domain_error(std::string(who) + ": empty maturity grid");
  double prev = 0.0;
  for (double m : maturities) {
    if (!std::isfinite(m) || m <= prev)
      throw std::domain_error(std::string(who) +
                              ": maturities must be finite, positive and "
                              "strictly increasing");
    prev = m;
  }
}

}  // namespace

Curve yield_curve(const std::vector<double>& maturities,
                  const QuadraticModelParams& params,
                  const std::string& label) {
  check_maturities(maturities, "yield_curve");
  Curve curve{label, {}, CurveKind::Yield};
  curve.points.reserve(maturities.size());
  for (double T : maturities)
    curve.points.emplace_back(T, yield_default_free(T, params));
  return curve;
}

Curve spread_curve(const std::vector<double>& maturities,
                   const QuadraticModelParams& params, double h,
                   const std::string& label) {
  check_maturities(maturities, "spread_curve");
  Curve curve{label, {}, CurveKind::Spread};
  curve.points.reserve(maturities.size());
  for (double T : maturities)
    curve.points.emplace_back(T, credit_spread(0.0, T, params, h).spread);
  return curve;
}

ShapeReport shape_report(const Curve& curve) {
  const auto& pts = curve.points;
  if (pts.size() < 3)
    throw std::domain_error("shape_report: need at least 3 points");

  ShapeReport report;
  report.monotone_nondecreasing = true;
  report.monotone_nonincreasing = true;
  int prev_sign = 0;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    const double diff = pts[i].second - pts[i - 1].second;
    if (diff < -kShapeTieTolerance) report.monotone_nondecreasing = false;
    if (diff > kShapeTieTolerance) report.monotone_nonincreasing = false;
    const int sign = diff > kShapeTieTolerance    ? 1
                     : diff < -kShapeTieTolerance ? -1
                                                  : 0;
    if (sign != 0) {
      if (prev_sign != 0 && sign != prev_sign) ++report.crossings;
      prev_sign = sign;
    }
  }

  // Interior strict maximum; the largest such value wins when several exist.
  std::size_t best = 0;
  bool found = false;
  for (std::size_t i = 1; i + 1 < pts.size(); ++i) {
    const bool strict_max =
        pts[i].second > pts[i - 1].second + kShapeTieTolerance &&
        pts[i].second > pts[i + 1].second + kShapeTieTolerance;
    if (strict_max && (!found || pts[i].second > pts[best].second)) {
      best = i;
      found = true;
    }
  }
  if (found) report.hump_at = pts[best].first;
  return report;
}

}  // namespace hka
