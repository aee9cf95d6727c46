#pragma once

#include <string>
#include <vector>

namespace hka {

struct Curve;

/// Shortest round-trip decimal representation of a double ("0.1", "1", ...).
/// Used everywhere a number is serialized so that output bytes are stable.
std::string format_double(double value);

/// Serializes curves as CSV with header "maturity,value,label".
/// Row order is label-major (curves in the given order), maturity-minor.
std::string curves_to_csv(const std::vector<Curve>& curves);

/// Parses a string produced by format_double (plain strtod).
double parse_double(const std::string& text);

}  // namespace hka
