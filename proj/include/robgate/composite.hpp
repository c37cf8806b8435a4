#pragma once

// Named composite sequences: naive, 90y-180x-90y, and BB1.

#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "robgate/error.hpp"
#include "robgate/pulse.hpp"
#include "robgate/tolerances.hpp"

namespace robgate {

enum class SequenceName { naive, conventional_inversion, bb1 };

inline std::string_view to_string(SequenceName n) {
  switch (n) {
    case SequenceName::naive: return "naive";
    case SequenceName::conventional_inversion: return "conventional";
    case SequenceName::bb1: return "bb1";
  }
  return "?";
}

inline std::optional<SequenceName> parse_sequence_name(std::string_view s) {
  if (s == "naive") return SequenceName::naive;
  if (s == "conventional") return SequenceName::conventional_inversion;
  if (s == "bb1") return SequenceName::bb1;
  return std::nullopt;
}

inline PulseSequence build_naive(double theta, double phase) {
  return {Pulse::rf(theta, phase)};
}

inline PulseSequence build_conventional_inversion() {
  return {Pulse::rf(kPi / 2, kPi / 2), Pulse::rf(kPi, 0.0), Pulse::rf(kPi / 2, kPi / 2)};
}

/// arccos(-theta / 4 pi), positive branch.
inline double bb1_phase(double theta) {
  if (!(theta >= 0.0 && theta <= kTwoPi))
    throw ValidationError("BB1 target angle must lie in [0, 2 pi]");
  return std::acos(-theta / (4.0 * kPi));
}

/// theta*p at the target phase, then 180_phi 360_3phi 180_phi, then
/// theta*(1-p). All phases are offset rigidly by `phase`.
inline PulseSequence build_bb1(double theta, double phase, double cluster_position = 0.5) {
  const double phi = bb1_phase(theta);
  if (!(cluster_position >= 0.0 && cluster_position <= 1.0))
    throw ValidationError("cluster position must lie in [0, 1]");
  return {Pulse::rf(theta * cluster_position, phase), Pulse::rf(kPi, phi + phase),
          Pulse::rf(kTwoPi, 3.0 * phi + phase), Pulse::rf(kPi, phi + phase),
          Pulse::rf(theta * (1.0 - cluster_position), phase)};
}

/// Closed-form quaternion fidelity of BB1 implementing a NOT gate.
inline double bb1_fidelity_closed_form(double g) {
  return (150.0 * std::cos(g * kPi / 2) - 25.0 * std::cos(3.0 * g * kPi / 2) +
          3.0 * std::cos(5.0 * g * kPi / 2)) /
         128.0;
}

struct SequenceFamily {
  SequenceName name = SequenceName::naive;
  double target_angle = kPi;
  double target_phase = 0.0;
  double cluster_position = 0.5;  // bb1 only

  PulseSequence build() const {
    switch (name) {
      case SequenceName::naive: return build_naive(target_angle, target_phase);
      case SequenceName::conventional_inversion: return build_conventional_inversion();
      case SequenceName::bb1: return build_bb1(target_angle, target_phase, cluster_position);
    }
    throw ValidationError("unknown sequence family");
  }

  /// The error-free rotation the sequence stands in for. The conventional
  /// composite is judged against the NOT gate 180_x.
  SingleQubitUnitary ideal() const {
    if (name == SequenceName::conventional_inversion)
      return pulse_unitary(Pulse::rf(kPi, 0.0), {});
    return pulse_unitary(Pulse::rf(target_angle, target_phase), {});
  }
};

/// Element lengths as integer multiples of a common unit. Only possible when
/// every angle is a multiple of 45 degrees.
struct DurationPlan {
  bool commensurate = false;
  double unit_angle = 0.0;             // radians; valid when commensurate
  std::vector<std::int64_t> multiples;  // one per element
};

inline DurationPlan duration_plan(std::span<const Pulse> seq) {
  constexpr double step = kPi / 4;
  DurationPlan plan;
  std::vector<std::int64_t> k;
  for (const Pulse& p : seq) {
    const double r = p.angle / step;
    const double n = std::round(r);
    if (std::abs(r - n) > kInputTol) return plan;
    k.push_back(static_cast<std::int64_t>(n));
  }
  std::int64_t common = 0;
  for (auto x : k) common = std::gcd(common, x);
  if (common == 0) return plan;
  plan.commensurate = true;
  plan.unit_angle = step * static_cast<double>(common);
  for (auto x : k) plan.multiples.push_back(x / common);
  return plan;
}

}  // namespace robgate
