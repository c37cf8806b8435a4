#include <catch_amalgamated.hpp>

#include "oracle/expm_oracle.hpp"
#include "robgate/robgate.hpp"
#include "test_support.hpp"

using namespace robgate;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;
using testing_support::diff_up_to_phase;
using testing_support::max_abs_diff;

namespace {

double ising_infidelity(double g, bool robust, const RobustIsingOptions& opt = {}) {
  return propagator_infidelity(robust_ising_gate(CouplingError::make(g), robust, opt),
                               ising_evolution(kPi / 2, {}));
}

}  // namespace

TEST_CASE("Ising evolution against the matrix exponential", "[ising]") {
  for (double a : {0.0, 0.3, kPi / 4, kPi / 2, kPi, 2.5 * kPi})
    CHECK(max_abs_diff(ising_evolution(a, {}), oracle::ising(a)) < 1e-13);
  CHECK(max_abs_diff(ising_evolution(kPi / 2, CouplingError::make(0.2)), oracle::ising(0.6 * kPi)) <
        1e-13);
  CHECK(max_abs_diff(ising_evolution(kTwoPi, {}), -TwoQubitUnitary::Identity()) < 1e-15);
  CHECK_THROWS_AS(CouplingError::make(-1.5), ValidationError);
}

TEST_CASE("tilted evolution against the matrix exponential", "[ising]") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> th(0.0, 3 * kPi);
  std::uniform_real_distribution<double> ph(-kPi, kPi);
  for (int i = 0; i < 200; ++i) {
    const double theta = th(rng);
    const double phi = ph(rng);
    REQUIRE(max_abs_diff(tilted_evolution(theta, phi, {}, Spin::S), oracle::tilted_s(theta, phi)) <
            1e-12);
    REQUIRE(max_abs_diff(tilted_evolution(theta, phi, {}, Spin::I), oracle::tilted_i(theta, phi)) <
            1e-12);
  }
  CHECK(max_abs_diff(tilted_evolution(1.1, 0.0, {}), ising_evolution(1.1, {})) < 1e-15);
  // A full 2 pi tilted rotation is trivial up to global phase for any tilt.
  for (double phi : {0.4, 1.9, 2.8})
    CHECK(diff_up_to_phase(tilted_evolution(kTwoPi, phi, {}), TwoQubitUnitary::Identity()) < 1e-14);
  // The coupling error scales the tilted rotation angle.
  CHECK(max_abs_diff(tilted_evolution(1.0, 0.7, CouplingError::make(0.3)),
                     oracle::tilted_s(1.3, 0.7)) < 1e-12);
}

TEST_CASE("robust program layout", "[ising]") {
  const IsingProgram p = robust_ising_program();
  CHECK(delay_multiples(p) == std::vector<int>{1, 4, 8, 4, 1});
  int total = 0;
  for (int m : delay_multiples(p)) total += m;
  CHECK(total == 18);  // 1/4J units: pi/4 + pi + 2pi + pi + pi/4 of coupling
  CHECK(delay_multiples(simple_ising_program()) == std::vector<int>{2});
  CHECK_THAT(rad_to_deg(robust_ising_phase()), WithinAbs(97.18075578145829, 1e-9));
  for (const IsingElement& el : p)
    if (const auto* s = std::get_if<SpinPulse>(&el)) {
      CHECK(s->spin == Spin::S);
      CHECK(s->angle == robust_ising_phase());
    }
}

TEST_CASE("robust program equals the tilted BB1 product", "[ising]") {
  const double phi = robust_ising_phase();
  for (double g : {0.0, 0.05, -0.2}) {
    const CouplingError e = CouplingError::make(g);
    const oracle::Mat want = oracle::tilted_s((1 + g) * kPi / 4, 0.0) *
                             oracle::tilted_s((1 + g) * kPi, phi) *
                             oracle::tilted_s((1 + g) * kTwoPi, 3 * phi) *
                             oracle::tilted_s((1 + g) * kPi, phi) *
                             oracle::tilted_s((1 + g) * kPi / 4, 0.0);
    CHECK(diff_up_to_phase(robust_ising_gate(e, true), want) < 1e-12);
  }
}

TEST_CASE("simple Ising gate fidelity", "[ising]") {
  for (double g = -0.5; g <= 0.5; g += 0.05) {
    const TwoQubitUnitary v = robust_ising_gate(CouplingError::make(g), false);
    REQUIRE_THAT(propagator_fidelity(v, ising_evolution(kPi / 2, {})),
                 WithinAbs(std::cos(g * kPi / 4), 1e-14));
  }
}

TEST_CASE("robust Ising gate fidelity", "[ising]") {
  CHECK(ising_infidelity(0.0, true) < 1e-28);
  CHECK_THAT(ising_infidelity(0.1, true), WithinRel(9.2e-7, 0.01));
  for (double g = -0.1; g <= 0.1 + 1e-12; g += 0.01) REQUIRE(ising_infidelity(g, true) < 1e-6);
  // Leading term 63 pi^6 g^6 / 65536.
  for (double g : {0.01, 0.03}) {
    const double lead = 63 * std::pow(kPi, 6) * std::pow(g, 6) / 65536;
    CHECK_THAT(ising_infidelity(g, true), WithinRel(lead, 0.1));
  }
  for (double g = -1.0; g <= 1.0 + 1e-12; g += 0.1)
    REQUIRE(ising_infidelity(g, true) <= ising_infidelity(g, false) + 1e-14);
}

TEST_CASE("robust Ising gate tracks single-spin BB1", "[ising]") {
  const Quaternion target = quaternion_from_axis_angle(kPi / 2, Vec3::UnitX());
  const PulseSequence bb1 = build_bb1(kPi / 2, 0.0);
  for (double g = -1.0; g <= 1.0 + 1e-12; g += 0.05) {
    const double single =
        quaternion_infidelity(sequence_quaternion(bb1, ErrorModel::pulse_length(g)), target);
    REQUIRE_THAT(ising_infidelity(g, true), WithinAbs(single, 1e-10));
  }
}

TEST_CASE("sandwich pulses on either spin", "[ising]") {
  RobustIsingOptions on_i;
  on_i.sandwich_spin = Spin::I;
  for (double g : {-0.3, 0.1, 0.4}) {
    const CouplingError e = CouplingError::make(g);
    CHECK_THAT(propagator_infidelity(robust_ising_gate(e, true, on_i), ising_evolution(kPi / 2, {})),
               WithinAbs(ising_infidelity(g, true), 1e-13));
  }
}

TEST_CASE("all Ising propagators are unitary", "[ising][property]") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> gd(-1.0, 1.0);
  for (int i = 0; i < 100; ++i) {
    const CouplingError e = CouplingError::make(gd(rng));
    REQUIRE(unitarity_defect(robust_ising_gate(e, false)) < 1e-13);
    REQUIRE(unitarity_defect(robust_ising_gate(e, true)) < 1e-13);
    REQUIRE(unitarity_defect(cnot_from_cphase(e, true)) < 1e-13);
  }
}

TEST_CASE("propagator fidelity ignores global phase", "[ising]") {
  std::mt19937_64 rng(6);
  const TwoQubitUnitary v = robust_ising_gate(CouplingError::make(0.3), true);
  const TwoQubitUnitary u = ising_evolution(kPi / 2, {});
  for (double a : {0.1, 1.0, 2.5, -3.0}) {
    const Complex ph = std::polar(1.0, a);
    CHECK_THAT(propagator_fidelity(ph * v, u), WithinAbs(propagator_fidelity(v, u), 1e-15));
    CHECK_THAT(propagator_infidelity(v, ph * u), WithinAbs(propagator_infidelity(v, u), 1e-15));
  }
  CHECK_THAT(propagator_fidelity(u, u), WithinAbs(1.0, 1e-15));
}

TEST_CASE("controlled-phase dressing", "[ising]") {
  CHECK(max_abs_diff(controlled_phase_gate({}, false), ideal_controlled_phase()) < 1e-15);
  CHECK(diff_up_to_phase(controlled_phase_gate({}, true), ideal_controlled_phase()) < 1e-13);
  const TwoQubitUnitary hs = on_spin(Spin::S, hadamard());
  CHECK(max_abs_diff(hs * ideal_controlled_phase() * hs, canonical_cnot()) < 1e-15);
  CHECK(max_abs_diff(cnot_from_cphase({}, false), canonical_cnot()) < 1e-15);

  // Local, error-free dressing leaves the gate fidelity unchanged.
  for (double g : {0.05, 0.2, -0.4})
    for (bool robust : {false, true}) {
      const CouplingError e = CouplingError::make(g);
      const double bare = ising_infidelity(g, robust);
      CHECK_THAT(propagator_infidelity(controlled_phase_gate(e, robust), ideal_controlled_phase()),
                 WithinAbs(bare, 1e-14));
      CHECK_THAT(propagator_infidelity(cnot_from_cphase(e, robust), canonical_cnot()),
                 WithinAbs(bare, 1e-14));
    }
}

TEST_CASE("composite spin pulses", "[ising]") {
  // Without coupling error a pulse-length error only rescales the tilt and
  // the program stays exact; combined with a coupling error it does not.
  RobustIsingOptions opt;
  opt.pulses.error = ErrorModel::pulse_length(0.05);
  CHECK(ising_infidelity(0.0, true, opt) < 1e-28);
  const double plain = ising_infidelity(0.05, true, opt);
  opt.pulses.robust = true;
  const double compensated = ising_infidelity(0.05, true, opt);
  CHECK(plain > 1e-4);
  CHECK(compensated < plain * 1e-3);
  // With error-free pulses the two options coincide.
  RobustIsingOptions exact;
  exact.pulses.robust = true;
  CHECK_THAT(ising_infidelity(0.1, true, exact), WithinAbs(ising_infidelity(0.1, true), 1e-14));
}
