#pragma once

// Two-spin (I, S) gates under the Ising coupling pi J 2 I_z S_z with a
// fractional coupling error g = J_real / J_nominal - 1.
//
// Basis order is |aa>, |ab>, |ba>, |bb> with spin I first.

#include <cmath>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "robgate/composite.hpp"
#include "robgate/error.hpp"
#include "robgate/pulse.hpp"
#include "robgate/spin_ops.hpp"
#include "robgate/tolerances.hpp"

namespace robgate {

enum class Spin { I, S };

struct CouplingError {
  double g = 0.0;

  static CouplingError make(double g) {
    if (!(g >= -1.0)) throw ValidationError("coupling error g must be >= -1");
    return {g};
  }
};

/// Lifts a single-spin operator onto spin I or S.
inline TwoQubitUnitary on_spin(Spin spin, const SingleQubitUnitary& u) {
  return spin == Spin::I ? kron(u, SingleQubitUnitary::Identity())
                         : kron(SingleQubitUnitary::Identity(), u);
}

/// exp(-i angle (1+g) 2 I_z S_z).
inline TwoQubitUnitary ising_evolution(double angle, const CouplingError& e) {
  const double half = 0.5 * angle * (1.0 + e.g);
  const Complex even = std::polar(1.0, -half);
  const Complex odd = std::polar(1.0, half);
  TwoQubitUnitary u = TwoQubitUnitary::Zero();
  u(0, 0) = even;
  u(1, 1) = odd;
  u(2, 2) = odd;
  u(3, 3) = even;
  return u;
}

/// Error-free rotation by `angle` about +y of one spin.
inline TwoQubitUnitary y_rotation(Spin spin, double angle) {
  return on_spin(spin, pulse_unitary(Pulse{std::abs(angle), angle >= 0 ? kPi / 2 : 3 * kPi / 2,
                                           Generator::transverse},
                                     {}));
}

/// theta_phi = exp(-i theta (1+g) (2 I_z S_z cos phi + 2 I_z S_x sin phi)),
/// realised as phi_{-y} . delay(theta) . phi_{+y} on `spin` (time order).
/// Only the delay picks up the coupling error.
inline TwoQubitUnitary tilted_evolution(double theta, double phi, const CouplingError& e,
                                        Spin spin = Spin::S) {
  return y_rotation(spin, phi) * ising_evolution(theta, e) * y_rotation(spin, -phi);
}

// --- Pulse programs -------------------------------------------------------

/// Unit of delay time t = 1/4J, i.e. a coupling angle of pi/4.
inline constexpr double kDelayUnitAngle = kPi / 4;

struct IsingDelay {
  int multiple = 0;  // of t = 1/4J
  double angle() const { return multiple * kDelayUnitAngle; }
  bool operator==(const IsingDelay&) const = default;
};

struct SpinPulse {
  Spin spin = Spin::S;
  double angle = 0.0;  // radians, >= 0
  double phase = 0.0;  // radians; pi/2 = +y, 3pi/2 = -y
  bool operator==(const SpinPulse&) const = default;
};

using IsingElement = std::variant<IsingDelay, SpinPulse>;
using IsingProgram = std::vector<IsingElement>;

inline double robust_ising_phase() { return bb1_phase(kPi / 2); }  // arccos(-1/8)

/// Free evolution for 2t: the plain pi/2 Ising gate.
inline IsingProgram simple_ising_program() { return {IsingDelay{2}}; }

/// BB1 over the coupling: (pi/4)_0 (pi)_phi (2pi)_3phi (pi)_phi (pi/4)_0 in
/// tilted evolutions. Adjacent sandwich pulses cancel down to phi boxes:
///   1  phi_-y  4  phi_-y phi_-y  8  phi_+y phi_+y  4  phi_+y  1
/// where the numbers are delays in units of t = 1/4J.
inline IsingProgram robust_ising_program(Spin spin = Spin::S) {
  const double phi = robust_ising_phase();
  const SpinPulse minus{spin, phi, 3 * kPi / 2};
  const SpinPulse plus{spin, phi, kPi / 2};
  return {IsingDelay{1}, minus, IsingDelay{4}, minus, minus, IsingDelay{8},
          plus,          plus,  IsingDelay{4}, plus,  IsingDelay{1}};
}

struct PulseOptions {
  bool robust = false;            // replace each spin pulse by its BB1 composite
  ErrorModel error{};             // pulse-length error of the spin pulses
};

inline SingleQubitUnitary spin_pulse_unitary(const SpinPulse& p, const PulseOptions& opt) {
  if (opt.robust) return sequence_unitary(build_bb1(p.angle, p.phase), opt.error);
  return pulse_unitary(Pulse::rf(p.angle, p.phase), opt.error);
}

inline TwoQubitUnitary simulate_ising_program(std::span<const IsingElement> program,
                                              const CouplingError& e,
                                              const PulseOptions& pulses = {}) {
  if (program.empty()) throw ValidationError("Ising program is empty");
  TwoQubitUnitary u = TwoQubitUnitary::Identity();
  for (const IsingElement& el : program) {
    if (const auto* d = std::get_if<IsingDelay>(&el)) {
      u = ising_evolution(d->angle(), e) * u;
    } else {
      const auto& p = std::get<SpinPulse>(el);
      u = on_spin(p.spin, spin_pulse_unitary(p, pulses)) * u;
    }
  }
  return u;
}

/// Delay multiples in time order, e.g. {1, 4, 8, 4, 1}.
inline std::vector<int> delay_multiples(std::span<const IsingElement> program) {
  std::vector<int> out;
  for (const IsingElement& el : program)
    if (const auto* d = std::get_if<IsingDelay>(&el)) out.push_back(d->multiple);
  return out;
}

struct RobustIsingOptions {
  PulseOptions pulses{};
  Spin sandwich_spin = Spin::S;
};

/// The bare pi/2 Ising evolution, simple or BB1-compensated.
inline TwoQubitUnitary robust_ising_gate(const CouplingError& e, bool robust,
                                         const RobustIsingOptions& opt = {}) {
  if (!robust) return ising_evolution(kPi / 2, e);
  return simulate_ising_program(robust_ising_program(opt.sandwich_spin), e, opt.pulses);
}

// --- Fidelity -------------------------------------------------------------

/// |Tr(V U^dagger)| / Tr(U U^dagger).
template <typename DV, typename DU>
double propagator_fidelity(const Eigen::MatrixBase<DV>& v, const Eigen::MatrixBase<DU>& u) {
  return std::abs((v * u.adjoint()).trace()) / (u * u.adjoint()).trace().real();
}

/// 1 - propagator fidelity for unitary U, as ||V - e^{ia} U||^2 / 2n at the
/// optimal phase a. Accurate far below double-precision epsilon.
template <typename DV, typename DU>
double propagator_infidelity(const Eigen::MatrixBase<DV>& v, const Eigen::MatrixBase<DU>& u) {
  const Complex tr = (v * u.adjoint()).trace();
  const Complex phase = std::abs(tr) > 0.0 ? tr / std::abs(tr) : Complex{1.0, 0.0};
  return (v - phase * u).squaredNorm() / (2.0 * static_cast<double>(u.rows()));
}

// --- Controlled-phase and CNOT ----------------------------------------------

inline TwoQubitUnitary ideal_controlled_phase() {
  TwoQubitUnitary u = TwoQubitUnitary::Identity();
  u(3, 3) = -1.0;
  return u;
}

inline TwoQubitUnitary canonical_cnot() {
  TwoQubitUnitary u = TwoQubitUnitary::Zero();
  u(0, 0) = u(1, 1) = 1.0;
  u(2, 3) = u(3, 2) = 1.0;
  return u;
}

inline SingleQubitUnitary hadamard() { return (pauli_x() + pauli_z()) / std::sqrt(2.0); }

/// Error-free local dressing applied after the pi/2 Ising evolution:
/// e^{-i pi/4} exp(+i pi/2 I_z) exp(+i pi/2 S_z), i.e. 90 degree rotations
/// about -z on both spins. Turns exp(-i pi/2 2 I_z S_z) into diag(1,1,1,-1).
inline TwoQubitUnitary cphase_dressing() {
  const SingleQubitUnitary rz = pulse_unitary(Pulse::free_evolution(kPi / 2), {}).adjoint();
  return std::polar(1.0, -kPi / 4) * kron(rz, rz);
}

inline TwoQubitUnitary controlled_phase_gate(const CouplingError& e, bool robust,
                                             const RobustIsingOptions& opt = {}) {
  return cphase_dressing() * robust_ising_gate(e, robust, opt);
}

/// Hadamards on the target S before and after the controlled-phase gate.
inline TwoQubitUnitary cnot_from_cphase(const CouplingError& e, bool robust,
                                        const RobustIsingOptions& opt = {}) {
  const TwoQubitUnitary h = on_spin(Spin::S, hadamard());
  return h * controlled_phase_gate(e, robust, opt) * h;
}

}  // namespace robgate
