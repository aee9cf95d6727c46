#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hka/model.hpp"

namespace hka {

enum class CurveKind { Yield, Spread, Price };

/// Ordered (maturity, value) points with a display label.
struct Curve {
  std::string label;
  std::vector<std::pair<double, double>> points;
  CurveKind kind = CurveKind::Yield;
};

/// Shape diagnostics computed from successive differences with a tie
/// tolerance of 1e-12. `hump_at` is the maturity of an interior strict
/// maximum (both neighbours lower by more than the tolerance); when present
/// neither monotone flag can be set.
struct ShapeReport {
  bool monotone_nondecreasing = false;
  bool monotone_nonincreasing = false;
  std::optional<double> hump_at;
  int crossings = 0;  // sign changes of successive differences
};

inline constexpr double kShapeTieTolerance = 1e-12;

/// Default-free yields, pointwise over the maturity grid (valuation time 0).
Curve yield_curve(const std::vector<double>& maturities,
                  const QuadraticModelParams& params,
                  const std::string& label = "");

/// Credit spreads at valuation time 0, pointwise over the maturity grid.
/// Every maturity must exceed h.
Curve spread_curve(const std::vector<double>& maturities,
                   const QuadraticModelParams& params, double h,
                   const std::string& label = "");

/// Shape flags for a curve with at least 3 points.
ShapeReport shape_report(const Curve& curve);

}  // namespace hka
