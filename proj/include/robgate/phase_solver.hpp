#pragma once

// Numerical rediscovery of the BB1 phases: expand the composite quaternion
// in the pulse-length error g by finite differences and cancel the
// first-order terms.

#include <array>
#include <cmath>
#include <functional>
#include <sstream>
#include <string>

#include "robgate/composite.hpp"
#include "robgate/error.hpp"
#include "robgate/pulse.hpp"
#include "robgate/rotor.hpp"

namespace robgate {

/// Builds a sequence from the two free phases (phi1, phi2).
using PhaseTemplate = std::function<PulseSequence(double, double)>;

/// (theta p)_0 180_phi1 360_phi2 180_phi1 (theta (1-p))_0.
inline PhaseTemplate bb1_template(double theta, double cluster_position = 0.5) {
  return [=](double phi1, double phi2) {
    return PulseSequence{Pulse::rf(theta * cluster_position, 0.0), Pulse::rf(kPi, phi1),
                         Pulse::rf(kTwoPi, phi2), Pulse::rf(kPi, phi1),
                         Pulse::rf(theta * (1.0 - cluster_position), 0.0)};
  };
}

/// Components are ordered (s, v_x, v_y, v_z).
struct SeriesCoefficients {
  std::array<double, 4> value{};
  std::array<double, 4> first{};
  std::array<double, 4> second{};  // zero unless order == 2
  double step = 0.0;
  int order = 1;
};

namespace detail {

inline std::array<double, 4> components(const Quaternion& q) {
  return {q.s, q.v.x(), q.v.y(), q.v.z()};
}

inline Quaternion aligned(const Quaternion& q, const Quaternion& ref) {
  return q.dot(ref) >= 0.0 ? q : -q;
}

inline Quaternion quaternion_at(const PulseSequence& seq, double g) {
  return sequence_quaternion(seq, ErrorModel::pulse_length(g));
}

// Five-point central stencil at offsets -2h, -h, 0, h, 2h.
struct Stencil {
  std::array<Quaternion, 5> q;
};

inline Stencil sample(const PulseSequence& seq, double h, const Quaternion& ref) {
  Stencil st;
  for (int k = -2; k <= 2; ++k) st.q[k + 2] = aligned(quaternion_at(seq, k * h), ref);
  return st;
}

inline Quaternion first_derivative(const Stencil& st, double h) {
  auto d = [&](auto get) {
    return (get(st.q[0]) - 8.0 * get(st.q[1]) + 8.0 * get(st.q[3]) - get(st.q[4])) / (12.0 * h);
  };
  return {d([](const Quaternion& q) { return q.s; }),
          Vec3{d([](const Quaternion& q) { return q.v.x(); }),
               d([](const Quaternion& q) { return q.v.y(); }),
               d([](const Quaternion& q) { return q.v.z(); })}};
}

inline std::array<double, 4> second_derivative(const Stencil& st, double h) {
  std::array<double, 4> out{};
  std::array<std::array<double, 4>, 5> c;
  for (int i = 0; i < 5; ++i) c[i] = components(st.q[i]);
  for (int j = 0; j < 4; ++j)
    out[j] = (-c[0][j] + 16.0 * c[1][j] - 30.0 * c[2][j] + 16.0 * c[3][j] - c[4][j]) /
             (12.0 * h * h);
  return out;
}

}  // namespace detail

/// Derivatives of the composite quaternion at g = 0, in the gauge v_x > 0.
inline SeriesCoefficients estimate_series(const PhaseTemplate& family, double phi1, double phi2,
                                          int order, double h = 1e-4) {
  if (order != 1 && order != 2) throw ValidationError("series order must be 1 or 2");
  if (!(h > 0.0)) throw ValidationError("finite-difference step must be positive");
  const PulseSequence seq = family(phi1, phi2);
  Quaternion ref = detail::quaternion_at(seq, 0.0);
  if (std::abs(ref.v.x()) < kInputTol)
    throw GaugeError("v_x vanishes at g = 0; the v_x > 0 gauge is undefined");
  if (ref.v.x() < 0.0) ref = -ref;

  const detail::Stencil st = detail::sample(seq, h, ref);
  SeriesCoefficients out;
  out.step = h;
  out.order = order;
  out.value = detail::components(ref);
  out.first = detail::components(detail::first_derivative(st, h));
  if (order == 2) out.second = detail::second_derivative(st, h);
  return out;
}

/// First-order error in the body frame: q(g) = q(0) * {1, g eps} + O(g^2).
/// Independent of the quaternion sign, so it is defined for every target.
inline Vec3 first_order_error(const PulseSequence& seq, double h = 1e-4) {
  const Quaternion ref = detail::quaternion_at(seq, 0.0);
  const detail::Stencil st = detail::sample(seq, h, ref);
  return hamilton_product(conjugate(ref), detail::first_derivative(st, h)).v;
}

struct SolverOptions {
  double step = 1e-4;  // finite-difference h
  double cluster_position = 0.5;
  double tolerance = 1e-10;  // in phi1
  int max_iterations = 200;
};

struct Bb1Phases {
  double phi1 = 0.0;
  double phi2 = 0.0;
  int iterations = 0;
  double residual = 0.0;  // first-order error at the solution
};

/// Fixes phi2 = 3 phi1 (which removes the transverse first-order error) and
/// root-finds phi1 in (pi/2, pi) so that the remaining first-order error
/// along the target axis vanishes.
inline Bb1Phases solve_bb1_phases(double theta, const SolverOptions& opt = {}) {
  if (!(theta > 0.0 && theta <= kTwoPi))
    throw ValidationError("target angle must lie in (0, 2 pi]");
  const PhaseTemplate family = bb1_template(theta, opt.cluster_position);
  auto residual = [&](double phi1) {
    return first_order_error(family(phi1, 3.0 * phi1), opt.step).x();
  };

  double a = kPi / 2 + 1e-6;
  double b = kPi - 1e-6;
  double fa = residual(a);
  double fb = residual(b);
  if (fa == 0.0) return {a, 3.0 * a, 0, 0.0};
  if (fb == 0.0) return {b, 3.0 * b, 0, 0.0};
  if ((fa > 0.0) == (fb > 0.0)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "phase root not bracketed for theta = " << theta << ": residual(" << a << ") = " << fa
        << ", residual(" << b << ") = " << fb;
    throw SolverError(msg.str());
  }

  // Illinois variant of regula falsi; falls back to bisection if the
  // secant point leaves the bracket.
  double c = a;
  double fc = fa;
  int side = 0;
  int it = 0;
  for (; it < opt.max_iterations; ++it) {
    double next = (a * fb - b * fa) / (fb - fa);
    if (!(next > a && next < b)) next = 0.5 * (a + b);
    const double step = std::abs(next - c);
    c = next;
    fc = residual(c);
    if (fc == 0.0) break;
    if ((fc > 0.0) == (fb > 0.0)) {
      b = c;
      fb = fc;
      if (side == -1) fa *= 0.5;
      side = -1;
    } else {
      a = c;
      fa = fc;
      if (side == 1) fb *= 0.5;
      side = 1;
    }
    if (b - a < opt.tolerance || (it > 0 && step < 0.5 * opt.tolerance)) break;
  }
  if (it == opt.max_iterations)
    throw SolverError("phase root finder did not converge within the iteration limit");
  return {c, 3.0 * c, it + 1, std::abs(fc)};
}

/// Same problem without the phi2 = 3 phi1 constraint: Gauss-Newton on the
/// full first-order error vector over (phi1, phi2).
inline Bb1Phases solve_bb1_phases_free(double theta, double phi1_start, double phi2_start,
                                       const SolverOptions& opt = {}) {
  if (!(theta > 0.0 && theta <= kTwoPi))
    throw ValidationError("target angle must lie in (0, 2 pi]");
  const PhaseTemplate family = bb1_template(theta, opt.cluster_position);
  auto err = [&](const Eigen::Vector2d& p) { return first_order_error(family(p[0], p[1]), opt.step); };

  Eigen::Vector2d p{phi1_start, phi2_start};
  Vec3 r = err(p);
  constexpr double jac_step = 1e-6;
  int it = 0;
  for (; it < opt.max_iterations && r.norm() > 1e-13; ++it) {
    Eigen::Matrix<double, 3, 2> jac;
    for (int k = 0; k < 2; ++k) {
      Eigen::Vector2d dp = Eigen::Vector2d::Zero();
      dp[k] = jac_step;
      jac.col(k) = (err(p + dp) - err(p - dp)) / (2.0 * jac_step);
    }
    const Eigen::Vector2d delta = jac.colPivHouseholderQr().solve(-r);
    double lambda = 1.0;
    Eigen::Vector2d trial = p + delta;
    Vec3 rt = err(trial);
    while (rt.norm() >= r.norm() && lambda > 1e-6) {
      lambda *= 0.5;
      trial = p + lambda * delta;
      rt = err(trial);
    }
    if (rt.norm() >= r.norm()) break;
    const double moved = (trial - p).norm();
    p = trial;
    r = rt;
    if (moved < opt.tolerance) break;
  }
  if (r.norm() > 1e-8)
    throw SolverError("free phase search did not reach a first-order zero");
  return {wrap_phase(p[0]), wrap_phase(p[1]), it, r.norm()};
}

}  // namespace robgate
