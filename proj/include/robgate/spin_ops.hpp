#pragma once

#include <complex>

#include <Eigen/Dense>

namespace robgate {

using Complex = std::complex<double>;
using SingleQubitUnitary = Eigen::Matrix2cd;
using TwoQubitUnitary = Eigen::Matrix4cd;
using Vec3 = Eigen::Vector3d;

inline constexpr Complex kI{0.0, 1.0};

// Pauli matrices. Product operators are I_k = sigma_k / 2.
inline Eigen::Matrix2cd pauli_x() {
  Eigen::Matrix2cd m;
  m << 0, 1, 1, 0;
  return m;
}

inline Eigen::Matrix2cd pauli_y() {
  Eigen::Matrix2cd m;
  m << 0, -kI, kI, 0;
  return m;
}

inline Eigen::Matrix2cd pauli_z() {
  Eigen::Matrix2cd m;
  m << 1, 0, 0, -1;
  return m;
}

/// n . sigma for a real 3-vector n.
inline Eigen::Matrix2cd pauli_dot(const Vec3& n) {
  return n.x() * pauli_x() + n.y() * pauli_y() + n.z() * pauli_z();
}

/// Kronecker product of two 2x2 matrices; the first factor is spin I, the
/// second spin S, over the basis |aa>, |ab>, |ba>, |bb>.
inline Eigen::Matrix4cd kron(const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b) {
  Eigen::Matrix4cd out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  return out;
}

/// Largest entry of |U U^dagger - 1|.
template <typename Derived>
double unitarity_defect(const Eigen::MatrixBase<Derived>& u) {
  using Plain = typename Derived::PlainObject;
  const Plain prod = u * u.adjoint();
  return (prod - Plain::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff();
}

}  // namespace robgate
