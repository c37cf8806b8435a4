#pragma once

// Line-oriented text form of an Ising pulse program:
//
//   robgate-pulse-program version = 1
//   t = 1/4J
//   J = 1
//   delay multiple = 1
//   pulse spin = S angle_deg = 97.18075578145829 phase_deg = 270
//   ...
//
// Blank lines and text after '#' are ignored. Elements are in time order.

#include <cmath>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "robgate/csv.hpp"
#include "robgate/error.hpp"
#include "robgate/ising.hpp"
#include "robgate/tolerances.hpp"

namespace robgate {

inline constexpr int kPulseProgramVersion = 1;
inline constexpr const char* kPulseProgramMagic = "robgate-pulse-program";

struct ProgramPulse {
  Spin spin = Spin::S;
  double angle_deg = 0.0;
  double phase_deg = 0.0;
};

struct ProgramDelay {
  int multiple = 0;  // of t = 1/4J
};

using ProgramElement = std::variant<ProgramDelay, ProgramPulse>;

struct PulseProgram {
  int version = kPulseProgramVersion;
  double nominal_j = 1.0;  // placeholder; only ratios matter
  std::vector<ProgramElement> elements;
};

inline PulseProgram to_pulse_program(std::span<const IsingElement> program, double nominal_j = 1.0) {
  PulseProgram out;
  out.nominal_j = nominal_j;
  for (const IsingElement& el : program) {
    if (const auto* d = std::get_if<IsingDelay>(&el))
      out.elements.emplace_back(ProgramDelay{d->multiple});
    else {
      const auto& p = std::get<SpinPulse>(el);
      out.elements.emplace_back(ProgramPulse{p.spin, rad_to_deg(p.angle), rad_to_deg(p.phase)});
    }
  }
  return out;
}

inline IsingProgram to_ising_program(const PulseProgram& program) {
  IsingProgram out;
  for (const ProgramElement& el : program.elements) {
    if (const auto* d = std::get_if<ProgramDelay>(&el))
      out.emplace_back(IsingDelay{d->multiple});
    else {
      const auto& p = std::get<ProgramPulse>(el);
      out.emplace_back(SpinPulse{p.spin, deg_to_rad(p.angle_deg), deg_to_rad(p.phase_deg)});
    }
  }
  return out;
}

inline void write_pulse_program(std::ostream& os, const PulseProgram& p) {
  os << kPulseProgramMagic << " version = " << p.version << '\n';
  os << "t = 1/4J\n";
  os << "J = " << format_double(p.nominal_j) << "  # nominal coupling, placeholder\n";
  for (const ProgramElement& el : p.elements) {
    if (const auto* d = std::get_if<ProgramDelay>(&el)) {
      os << "delay multiple = " << d->multiple << '\n';
    } else {
      const auto& q = std::get<ProgramPulse>(el);
      os << "pulse spin = " << (q.spin == Spin::I ? "I" : "S")
         << " angle_deg = " << format_double(q.angle_deg)
         << " phase_deg = " << format_double(q.phase_deg) << '\n';
    }
  }
}

namespace detail {

// "word k1 = v1 k2 = v2 ..." -> (word, {k: v})
inline std::pair<std::string, std::map<std::string, std::string>> split_fields(
    const std::string& line, int lineno) {
  std::istringstream in(line);
  std::string head;
  in >> head;
  std::map<std::string, std::string> fields;
  std::string key, eq, value;
  while (in >> key) {
    if (!(in >> eq >> value) || eq != "=")
      throw FormatError("line " + std::to_string(lineno) + ": expected 'key = value'");
    if (!fields.emplace(key, value).second)
      throw FormatError("line " + std::to_string(lineno) + ": duplicate field '" + key + "'");
  }
  return {head, fields};
}

inline const std::string& field(const std::map<std::string, std::string>& f, const std::string& k,
                                int lineno) {
  const auto it = f.find(k);
  if (it == f.end()) throw FormatError("line " + std::to_string(lineno) + ": missing '" + k + "'");
  return it->second;
}

}  // namespace detail

inline PulseProgram read_pulse_program(std::istream& is) {
  PulseProgram out;
  std::string raw;
  int lineno = 0;
  bool have_header = false, have_unit = false;
  while (std::getline(is, raw)) {
    ++lineno;
    const std::string line = raw.substr(0, raw.find('#'));
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    if (!have_header) {
      auto [head, f] = detail::split_fields(line, lineno);
      if (head != kPulseProgramMagic) throw FormatError("missing pulse-program header");
      out.version = static_cast<int>(parse_double(detail::field(f, "version", lineno)));
      if (out.version != kPulseProgramVersion)
        throw FormatError("unsupported pulse-program version " + std::to_string(out.version));
      have_header = true;
      continue;
    }
    if (!have_unit) {
      std::istringstream in(line);
      std::string t, eq, unit, extra;
      if (!(in >> t >> eq >> unit) || t != "t" || eq != "=" || unit != "1/4J" || (in >> extra))
        throw FormatError("line " + std::to_string(lineno) + ": expected unit line 't = 1/4J'");
      have_unit = true;
      continue;
    }
    std::istringstream in(line);
    std::string head;
    in >> head;
    if (head == "J") {
      std::string eq, value;
      if (!(in >> eq >> value) || eq != "=")
        throw FormatError("line " + std::to_string(lineno) + ": expected 'J = value'");
      out.nominal_j = parse_double(value);
      continue;
    }
    auto [kind, f] = detail::split_fields(line, lineno);
    if (kind == "delay") {
      const double m = parse_double(detail::field(f, "multiple", lineno));
      if (m < 0 || m != std::floor(m))
        throw FormatError("line " + std::to_string(lineno) + ": delay multiple must be a non-negative integer");
      out.elements.emplace_back(ProgramDelay{static_cast<int>(m)});
    } else if (kind == "pulse") {
      const std::string& s = detail::field(f, "spin", lineno);
      if (s != "I" && s != "S") throw FormatError("line " + std::to_string(lineno) + ": spin must be I or S");
      out.elements.emplace_back(ProgramPulse{s == "I" ? Spin::I : Spin::S,
                                             parse_double(detail::field(f, "angle_deg", lineno)),
                                             parse_double(detail::field(f, "phase_deg", lineno))});
    } else {
      throw FormatError("line " + std::to_string(lineno) + ": unknown element '" + kind + "'");
    }
  }
  if (!have_header) throw FormatError("missing pulse-program header");
  if (!have_unit) throw FormatError("missing unit line 't = 1/4J'");
  return out;
}

}  // namespace robgate
