#pragma once

// "g,<metric>" CSV for fidelity curves. Numbers use the shortest decimal
// form that parses back to the same double.

#include <charconv>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <system_error>

#include "robgate/analysis.hpp"
#include "robgate/error.hpp"

namespace robgate {

inline std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

inline double parse_double(std::string_view s) {
  double x = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), x);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
    throw FormatError("not a number: '" + std::string(s) + "'");
  return x;
}

inline void write_curve_csv(std::ostream& os, const FidelityCurve& c) {
  os << "g," << c.metric << '\n';
  for (const CurveSample& s : c.samples) os << format_double(s.g) << ',' << format_double(s.value) << '\n';
}

inline FidelityCurve read_curve_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw FormatError("empty CSV");
  if (line.rfind("g,", 0) != 0) throw FormatError("CSV header must start with 'g,'");
  FidelityCurve c;
  c.metric = line.substr(2);
  int row = 1;
  while (std::getline(is, line)) {
    ++row;
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos || line.find(',', comma + 1) != std::string::npos)
      throw FormatError("CSV row " + std::to_string(row) + " must have exactly two fields");
    const std::string_view v(line);
    c.samples.push_back({parse_double(v.substr(0, comma)), parse_double(v.substr(comma + 1))});
  }
  return c;
}

}  // namespace robgate
