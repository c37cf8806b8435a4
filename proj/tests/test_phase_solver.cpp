#include <catch_amalgamated.hpp>

#include "robgate/robgate.hpp"

using namespace robgate;
using Catch::Matchers::WithinAbs;

namespace {

PhaseTemplate naive_template(double theta) {
  return [=](double, double) { return build_naive(theta, 0.0); };
}

double not_infidelity(const PulseSequence& seq, double g) {
  return quaternion_infidelity(sequence_quaternion(seq, ErrorModel::pulse_length(g)),
                               Quaternion{0.0, Vec3::UnitX()});
}

// Least-squares fit of y = c2 x^2 + c4 x^4 + c6 x^6.
Eigen::Vector3d even_fit(const std::vector<double>& x, const std::vector<double>& y) {
  Eigen::MatrixXd a(x.size(), 3);
  Eigen::VectorXd b(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double x2 = x[i] * x[i];
    a.row(i) << x2, x2 * x2, x2 * x2 * x2;
    b[i] = y[i];
  }
  return a.colPivHouseholderQr().solve(b);
}

}  // namespace

TEST_CASE("estimate_series on the naive pulse", "[phase_solver]") {
  const SeriesCoefficients c = estimate_series(naive_template(kPi), 0.0, 0.0, 1);
  CHECK_THAT(c.value[0], WithinAbs(0.0, 1e-15));
  CHECK_THAT(c.value[1], WithinAbs(1.0, 1e-15));
  CHECK_THAT(c.first[0], WithinAbs(-kPi / 2, 1e-8));
  CHECK_THAT(c.first[1], WithinAbs(0.0, 1e-8));

  const SeriesCoefficients c2 = estimate_series(naive_template(kPi), 0.0, 0.0, 2);
  // s(g) = -sin(g pi / 2): no curvature; v_x(g) = cos(g pi / 2).
  CHECK_THAT(c2.second[0], WithinAbs(0.0, 1e-5));
  CHECK_THAT(c2.second[1], WithinAbs(-kPi * kPi / 4, 1e-5));
}

TEST_CASE("estimate_series on BB1", "[phase_solver]") {
  const double phi = bb1_phase(kPi);
  const SeriesCoefficients c = estimate_series(bb1_template(kPi), phi, 3 * phi, 2);
  for (double d : c.first) CHECK(std::abs(d) < 1e-8);
  // A single detuned phase re-opens the first-order error.
  const SeriesCoefficients off = estimate_series(bb1_template(kPi), phi + 0.1, 3 * phi, 1);
  const double mag = std::hypot(off.first[0], off.first[1], off.first[2]);
  CHECK(mag > 0.1);
}

TEST_CASE("first-order error along the phase curve phi2 = 3 phi1", "[phase_solver]") {
  // For the NOT gate the scalar derivative is -(pi/2)(1 + 4 cos phi1).
  for (double phi1 : {0.3, 1.0, 1.7, 2.0, 2.5, 3.0}) {
    const SeriesCoefficients c = estimate_series(bb1_template(kPi), phi1, 3 * phi1, 1);
    INFO("phi1 = " << phi1);
    CHECK_THAT(c.first[0], WithinAbs(-0.5 * kPi * (1 + 4 * std::cos(phi1)), 1e-7));
    CHECK_THAT(c.first[2], WithinAbs(0.0, 1e-7));
  }
}

TEST_CASE("estimate_series validation", "[phase_solver]") {
  const double phi = bb1_phase(kTwoPi);
  CHECK_THROWS_AS(estimate_series(bb1_template(kTwoPi), phi, 3 * phi, 1), GaugeError);
  CHECK_THROWS_AS(estimate_series(bb1_template(kPi), 1.8, 5.4, 3), ValidationError);
  CHECK_THROWS_AS(estimate_series(bb1_template(kPi), 1.8, 5.4, 1, 0.0), ValidationError);
}

TEST_CASE("estimate_series is stable under step halving", "[phase_solver]") {
  const SeriesCoefficients a = estimate_series(bb1_template(kPi / 2), 1.2, 3.1, 2, 1e-3);
  const SeriesCoefficients b = estimate_series(bb1_template(kPi / 2), 1.2, 3.1, 2, 5e-4);
  for (int j = 0; j < 4; ++j) {
    CHECK_THAT(a.first[j], WithinAbs(b.first[j], 1e-9));
    CHECK_THAT(a.second[j], WithinAbs(b.second[j], 1e-6));
  }
}

TEST_CASE("solve_bb1_phases recovers the closed-form phases", "[phase_solver]") {
  for (double theta : {kPi / 4, kPi / 2, kPi, 1.5 * kPi, kTwoPi}) {
    const Bb1Phases r = solve_bb1_phases(theta);
    INFO("theta = " << theta);
    CHECK_THAT(r.phi1, WithinAbs(bb1_phase(theta), 1e-6));
    CHECK_THAT(r.phi2, WithinAbs(3 * r.phi1, 1e-15));
    CHECK(r.residual < 1e-8);
  }
  CHECK_THAT(rad_to_deg(solve_bb1_phases(kTwoPi).phi1), WithinAbs(120.0, 1e-6));
  CHECK_THAT(rad_to_deg(solve_bb1_phases(1e-3).phi1), WithinAbs(90.0, 1e-2));
}

TEST_CASE("solve_bb1_phases domain and bracketing", "[phase_solver]") {
  CHECK_THROWS_AS(solve_bb1_phases(0.0), ValidationError);
  CHECK_THROWS_AS(solve_bb1_phases(-1.0), ValidationError);
  CHECK_THROWS_AS(solve_bb1_phases(kTwoPi + 1e-3), ValidationError);
  // The root approaches pi/2 as theta -> 0 and leaves the search interval.
  CHECK_THROWS_AS(solve_bb1_phases(1e-7), SolverError);
}

TEST_CASE("solved phases cancel the quadratic and quartic error terms", "[phase_solver]") {
  const Bb1Phases r = solve_bb1_phases(kPi);
  const PulseSequence seq = bb1_template(kPi)(r.phi1, r.phi2);
  std::vector<double> x, y;
  for (int i = 0; i <= 40; ++i) {
    const double g = 1e-3 + i * (1e-2 - 1e-3) / 40;
    x.push_back(g);
    y.push_back(not_infidelity(seq, g));
  }
  const Eigen::Vector3d c = even_fit(x, y);
  CHECK(std::abs(c[0]) < 1e-6);
  CHECK(std::abs(c[1]) < 1e-6);
  CHECK_THAT(c[2], WithinAbs(5 * std::pow(kPi, 6) / 1024, 0.05));

  // The naive pulse has an obvious g^2 term for comparison.
  std::vector<double> yn;
  for (double g : x) yn.push_back(not_infidelity(build_naive(kPi, 0.0), g));
  CHECK_THAT(even_fit(x, yn)[0], WithinAbs(kPi * kPi / 8, 1e-6));
}

TEST_CASE("solver output is insensitive to the finite-difference step", "[phase_solver]") {
  SolverOptions coarse;
  coarse.step = 1e-4;
  SolverOptions fine;
  fine.step = 5e-5;
  for (double theta : {kPi / 2, kPi}) {
    CHECK_THAT(solve_bb1_phases(theta, coarse).phi1, WithinAbs(solve_bb1_phases(theta, fine).phi1, 1e-9));
  }
}

TEST_CASE("free two-phase search lands on phi2 = 3 phi1", "[phase_solver]") {
  for (double theta : {kPi / 2, kPi}) {
    const Bb1Phases r = solve_bb1_phases_free(theta, 1.9, 5.5);
    const double gap = std::remainder(r.phi2 - 3 * r.phi1, kTwoPi);
    INFO("theta = " << theta);
    CHECK(std::abs(gap) < 1e-4);
    CHECK_THAT(r.phi1, WithinAbs(bb1_phase(theta), 1e-4));
  }
}

TEST_CASE("negative phase branch is equally good", "[phase_solver]") {
  const double phi = bb1_phase(kPi);
  const PulseSequence pos = bb1_template(kPi)(phi, 3 * phi);
  const PulseSequence neg = bb1_template(kPi)(-phi, -3 * phi);
  for (double g = -0.5; g <= 0.5; g += 0.05)
    REQUIRE_THAT(not_infidelity(neg, g), WithinAbs(not_infidelity(pos, g), 1e-12));
  const Vec3 e = first_order_error(neg);
  CHECK(e.norm() < 1e-8);
}
