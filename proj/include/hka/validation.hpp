#pragma once

#include <string>
#include <vector>

#include "hka/mc.hpp"

namespace hka {

struct ValidationRow {
  std::string quantity;  // estimator name plus its parameter point
  double closed_form;
  double mc_mean;
  double std_error;
  double z;
  bool pass;
};

struct ValidationReport {
  std::vector<ValidationRow> rows;
  double max_abs_z = 0.0;       // over the agreement rows
  double discrimination_z = 0.0;  // distance of the MC mean from the
                                  // flipped-sign closed form, in SEs
  bool passed = false;
};

/// Runs every Monte Carlo estimator against its closed form on a fixed
/// parameter grid spanning d in {1,2}, beta in {0.1,0.5,1}, |x| in
/// {0,1,10} and horizons {1,5}, plus defaultable-price comparisons under
/// all three time-change families. Agreement requires |z| <= 3 per row;
/// in addition the Laplace functional estimate must sit at least 10
/// standard errors away from the flipped-sign closed-form variant.
///
/// With `flipped_sign` set, the flipped variant is used as the closed form
/// for the Laplace rows instead; the run is then expected to fail.
ValidationReport run_validation(const McConfig& mc, bool flipped_sign = false);

/// Deterministic text rendering: header, one CSV row per comparison, and
/// trailing summary lines (max_abs_z, discrimination_z, verdict).
std::string render_validation_report(const ValidationReport& report);

}  // namespace hka
