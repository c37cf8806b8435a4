#pragma once

// Single-qubit pulses with systematic pulse-length (g) and off-resonance (f)
// errors, and their action on Bloch vectors.

#include <cmath>
#include <span>
#include <vector>

#include "robgate/error.hpp"
#include "robgate/rotor.hpp"
#include "robgate/spin_ops.hpp"
#include "robgate/tolerances.hpp"

namespace robgate {

/// Wraps an angle into [0, 2 pi).
inline double wrap_phase(double phase) {
  double p = std::fmod(phase, kTwoPi);
  if (p < 0.0) p += kTwoPi;
  if (p >= kTwoPi) p = 0.0;
  return p;
}

enum class Generator {
  transverse,      // RF pulse about an axis in the xy plane
  free_evolution,  // z rotation; unaffected by g and f
};

/// One element of a single-qubit sequence. `angle` is the nominal rotation
/// angle 2 pi nu t; `phase` is the RF phase (0 = x axis).
struct Pulse {
  double angle = 0.0;
  double phase = 0.0;
  Generator generator = Generator::transverse;

  static Pulse rf(double angle, double phase) {
    if (!(angle >= 0.0)) throw ValidationError("pulse angle must be non-negative");
    return {angle, wrap_phase(phase), Generator::transverse};
  }

  static Pulse free_evolution(double angle) {
    if (!(angle >= 0.0)) throw ValidationError("evolution angle must be non-negative");
    return {angle, 0.0, Generator::free_evolution};
  }

  bool operator==(const Pulse&) const = default;
};

using PulseSequence = std::vector<Pulse>;

struct ErrorModel {
  double g = 0.0;  // fractional RF power error
  double f = 0.0;  // off-resonance fraction delta / nu

  static ErrorModel pulse_length(double g) { return make(g, 0.0); }

  static ErrorModel make(double g, double f) {
    if (!(g >= -1.0)) throw ValidationError("pulse-length error g must be >= -1");
    return {g, f};
  }
};

struct BlochVector {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  Vec3 vec() const { return {x, y, z}; }
  static BlochVector from(const Vec3& r) { return {r.x(), r.y(), r.z()}; }
  double norm() const { return vec().norm(); }
};

/// (sin theta cos phi, sin theta sin phi, cos theta).
inline BlochVector state_from_angles(double theta, double phi) {
  return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
}

/// Rotation vector of the effective field, scaled so that the rotation is
/// exp(-i angle (field . sigma)/2).
inline Vec3 effective_field(const Pulse& p, const ErrorModel& e) {
  if (p.generator == Generator::free_evolution) return Vec3::UnitZ();
  const double amp = 1.0 + e.g;
  return {amp * std::cos(p.phase), amp * std::sin(p.phase), e.f};
}

/// exp(-i angle [(1+g)(I_x cos phi + I_y sin phi) + f I_z]), closed form.
inline SingleQubitUnitary pulse_unitary(const Pulse& p, const ErrorModel& e) {
  const Vec3 field = effective_field(p, e);
  const double rate = field.norm();
  if (rate == 0.0) return SingleQubitUnitary::Identity();
  const double half = 0.5 * p.angle * rate;
  return std::cos(half) * SingleQubitUnitary::Identity() -
         kI * std::sin(half) * pauli_dot(field / rate);
}

/// Same rotation as pulse_unitary, built directly as a quaternion.
inline Quaternion pulse_quaternion(const Pulse& p, const ErrorModel& e) {
  const Vec3 field = effective_field(p, e);
  const double rate = field.norm();
  if (rate == 0.0) return Quaternion::identity();
  return quaternion_from_axis_angle(p.angle * rate, field / rate);
}

/// Time-ordered product; later pulses multiply on the left. The same error
/// applies to every element.
inline SingleQubitUnitary sequence_unitary(std::span<const Pulse> seq, const ErrorModel& e) {
  if (seq.empty()) throw ValidationError("pulse sequence is empty");
  SingleQubitUnitary u = SingleQubitUnitary::Identity();
  for (const Pulse& p : seq) u = pulse_unitary(p, e) * u;
  return u;
}

inline Quaternion sequence_quaternion(std::span<const Pulse> seq, const ErrorModel& e) {
  if (seq.empty()) throw ValidationError("pulse sequence is empty");
  Quaternion q;
  for (const Pulse& p : seq) q = quaternion_compose(q, pulse_quaternion(p, e));
  return q;
}

/// Bloch vector of U rho U^dagger, rho = x I_x + y I_y + z I_z.
inline BlochVector apply_to_state(const SingleQubitUnitary& u, const BlochVector& b) {
  const Eigen::Matrix2cd rho = 0.5 * pauli_dot(b.vec());
  const Eigen::Matrix2cd out = u * rho * u.adjoint();
  return {(out * pauli_x()).trace().real(), (out * pauli_y()).trace().real(),
          (out * pauli_z()).trace().real()};
}

/// -I_z component reached from I_z under pulse-length error g.
inline double inversion_efficiency(std::span<const Pulse> seq, double g) {
  const BlochVector out = apply_to_state(sequence_unitary(seq, ErrorModel::pulse_length(g)),
                                         BlochVector{0.0, 0.0, 1.0});
  return -out.z;
}

}  // namespace robgate
