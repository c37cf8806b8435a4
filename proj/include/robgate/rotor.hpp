#pragma once

// Unit quaternions {s, v} for single-qubit rotations.
//
// A rotation by theta about unit axis a is U = exp(-i theta (a.sigma)/2)
// = s 1 - i v.sigma with s = cos(theta/2), v = sin(theta/2) a.

#include <cmath>
#include <complex>

#include "robgate/error.hpp"
#include "robgate/spin_ops.hpp"
#include "robgate/tolerances.hpp"

namespace robgate {

struct Quaternion {
  double s = 1.0;
  Vec3 v = Vec3::Zero();

  static Quaternion identity() { return {}; }

  double norm() const { return std::sqrt(s * s + v.squaredNorm()); }
  Quaternion operator-() const { return {-s, -v}; }
  double dot(const Quaternion& o) const { return s * o.s + v.dot(o.v); }
};

inline Quaternion quaternion_from_axis_angle(double theta, const Vec3& axis) {
  if (std::abs(axis.norm() - 1.0) > kInputTol)
    throw ValidationError("rotation axis must be a unit vector");
  return {std::cos(theta / 2.0), std::sin(theta / 2.0) * axis};
}

/// {s1 s2 - v1.v2, s1 v2 + s2 v1 + v1 x v2}. With the rotation convention
/// above this is the quaternion of the matrix product U1 U2.
inline Quaternion hamilton_product(const Quaternion& a, const Quaternion& b) {
  return {a.s * b.s - a.v.dot(b.v), a.s * b.v + b.s * a.v + a.v.cross(b.v)};
}

/// Rotation `first` followed by `second`, i.e. U_second * U_first.
inline Quaternion quaternion_compose(const Quaternion& first, const Quaternion& second) {
  return hamilton_product(second, first);
}

inline Quaternion conjugate(const Quaternion& q) { return {q.s, -q.v}; }

/// |s1 s2 + v1.v2|; {s,v} and {-s,-v} are the same rotation.
inline double quaternion_fidelity(const Quaternion& a, const Quaternion& b) {
  return std::abs(a.dot(b));
}

/// 1 - fidelity, evaluated as half the squared chordal distance to the
/// nearer of +-b so that it stays accurate far below 1e-16.
inline double quaternion_infidelity(const Quaternion& a, const Quaternion& b) {
  const double sign = a.dot(b) >= 0.0 ? 1.0 : -1.0;
  const double ds = a.s - sign * b.s;
  const Vec3 dv = a.v - sign * b.v;
  return 0.5 * (ds * ds + dv.squaredNorm());
}

/// Projects U onto SU(2) by dividing out a square root of det U, then reads
/// off {s, v}. Which square root is taken is arbitrary; the overall sign is
/// invisible to the fidelity.
inline Quaternion quaternion_from_unitary(const SingleQubitUnitary& u) {
  if (unitarity_defect(u) > kUnitaryInputTol)
    throw ValidationError("matrix is not unitary");
  const SingleQubitUnitary w = u / std::sqrt(u.determinant());
  Quaternion q;
  q.s = 0.5 * (w(0, 0) + w(1, 1)).real();
  q.v.x() = -0.5 * (w(0, 1) + w(1, 0)).imag();
  q.v.y() = 0.5 * (w(1, 0) - w(0, 1)).real();
  q.v.z() = 0.5 * (w(1, 1) - w(0, 0)).imag();
  return q;
}

inline SingleQubitUnitary unitary_from_quaternion(const Quaternion& q) {
  return q.s * SingleQubitUnitary::Identity() - kI * pauli_dot(q.v);
}

}  // namespace robgate
