#include "hka/csv.hpp"

#include <charconv>
#include <cstdlib>
#include <stdexcept>
#include <system_error>

#include "hka/curves.hpp"

namespace hka {

std::string format_double(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  if (res.ec != std::errc{}) throw std::runtime_error("format_double failed");
  return std::string(buf, res.ptr);
}

double parse_double(const std::string& text) {
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (end == text.c_str() || *end != '\0')
    throw std::invalid_argument("parse_double: not a number: " + text);
  return v;
}

std::string curves_to_csv(const std::vector<Curve>& curves) {
  std::string out = "maturity,value,label\n";
  for (const Curve& curve : curves) {
    for (const auto& [maturity, value] : curve.points) {
      out += format_double(maturity);
      out += ',';
      out += format_double(value);
      out += ',';
      out += curve.label;
      out += '\n';
    }
  }
  return out;
}

}  // namespace hka
