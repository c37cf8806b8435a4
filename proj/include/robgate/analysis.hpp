#pragma once

// Fidelity sweeps over the systematic error g and power-law order
// estimation of the infidelity.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "robgate/composite.hpp"
#include "robgate/error.hpp"
#include "robgate/ising.hpp"
#include "robgate/pulse.hpp"
#include "robgate/rotor.hpp"

namespace robgate {

struct Grid {
  double g_min = -1.0;
  double g_max = 1.0;
  int steps = 401;

  /// Evenly spaced samples; a degenerate interval yields one sample.
  std::vector<double> points() const {
    if (steps < 2) throw ValidationError("grid needs at least 2 steps");
    if (!std::isfinite(g_min) || !std::isfinite(g_max) || g_max < g_min)
      throw ValidationError("grid bounds must be finite with g_min <= g_max");
    if (g_min == g_max) return {g_min};
    std::vector<double> out(static_cast<std::size_t>(steps));
    const double n = steps - 1;
    for (int i = 0; i < steps; ++i) out[i] = ((n - i) * g_min + i * g_max) / n;
    return out;
  }
};

enum class MetricKind { quaternion_vs_ideal, propagator_vs_ideal, inversion_efficiency, state_overlap };

struct Metric {
  MetricKind kind = MetricKind::quaternion_vs_ideal;
  BlochVector initial{0.0, 0.0, 1.0};  // state_overlap only

  static Metric quaternion() { return {MetricKind::quaternion_vs_ideal, {}}; }
  static Metric propagator() { return {MetricKind::propagator_vs_ideal, {}}; }
  static Metric inversion() { return {MetricKind::inversion_efficiency, {}}; }
  static Metric state_overlap(const BlochVector& b) { return {MetricKind::state_overlap, b}; }

  std::string name() const {
    switch (kind) {
      case MetricKind::quaternion_vs_ideal: return "quaternion";
      case MetricKind::propagator_vs_ideal: return "propagator";
      case MetricKind::inversion_efficiency: return "inversion";
      case MetricKind::state_overlap: return "state";
    }
    return "?";
  }
};

/// A pulse sequence together with the rotation it is meant to implement.
struct SingleQubitGate {
  std::string name;
  PulseSequence sequence;
  SingleQubitUnitary ideal = SingleQubitUnitary::Identity();
  double f = 0.0;  // fixed off-resonance fraction during the sweep

  static SingleQubitGate from(const SequenceFamily& fam) {
    return {std::string(to_string(fam.name)), fam.build(), fam.ideal(), 0.0};
  }

  SingleQubitUnitary at(double g) const { return sequence_unitary(sequence, ErrorModel::make(g, f)); }
};

struct TwoQubitGate {
  std::string name;
  std::function<TwoQubitUnitary(double)> implemented;
  TwoQubitUnitary ideal = TwoQubitUnitary::Identity();

  static TwoQubitGate ising(bool robust, const RobustIsingOptions& opt = {}) {
    return {robust ? "ising-robust" : "ising-simple",
            [=](double g) { return robust_ising_gate(CouplingError::make(g), robust, opt); },
            ising_evolution(kPi / 2, {})};
  }
};

namespace detail {

inline BlochVector normalized(const BlochVector& b) {
  const double n = b.norm();
  if (n == 0.0) throw ValidationError("initial Bloch vector must be non-zero");
  return BlochVector::from(b.vec() / n);
}

// 1 - a.b for unit vectors, as half the squared chord.
inline double chord_infidelity(const Vec3& a, const Vec3& b) { return 0.5 * (a - b).squaredNorm(); }

}  // namespace detail

/// Metric value at error g. For inversion this is the -I_z component.
inline double metric_value(const SingleQubitGate& gate, const Metric& m, double g) {
  const SingleQubitUnitary u = gate.at(g);
  switch (m.kind) {
    case MetricKind::quaternion_vs_ideal:
      return quaternion_fidelity(quaternion_from_unitary(u), quaternion_from_unitary(gate.ideal));
    case MetricKind::propagator_vs_ideal:
      return propagator_fidelity(u, gate.ideal);
    case MetricKind::inversion_efficiency:
      return -apply_to_state(u, {0.0, 0.0, 1.0}).z;
    case MetricKind::state_overlap: {
      const BlochVector b = detail::normalized(m.initial);
      const Vec3 out = apply_to_state(u, b).vec();
      const Vec3 want = apply_to_state(gate.ideal, b).vec();
      return out.dot(want) / (out.norm() * want.norm());
    }
  }
  return std::numeric_limits<double>::quiet_NaN();
}

/// 1 - metric_value, computed without cancellation.
inline double metric_infidelity(const SingleQubitGate& gate, const Metric& m, double g) {
  const SingleQubitUnitary u = gate.at(g);
  switch (m.kind) {
    case MetricKind::quaternion_vs_ideal:
      return quaternion_infidelity(quaternion_from_unitary(u), quaternion_from_unitary(gate.ideal));
    case MetricKind::propagator_vs_ideal:
      return propagator_infidelity(u, gate.ideal);
    case MetricKind::inversion_efficiency:
      return detail::chord_infidelity(apply_to_state(u, {0.0, 0.0, 1.0}).vec(), -Vec3::UnitZ());
    case MetricKind::state_overlap: {
      const BlochVector b = detail::normalized(m.initial);
      const Vec3 out = apply_to_state(u, b).vec();
      const Vec3 want = apply_to_state(gate.ideal, b).vec();
      return detail::chord_infidelity(out.normalized(), want.normalized());
    }
  }
  return std::numeric_limits<double>::quiet_NaN();
}

inline double metric_value(const TwoQubitGate& gate, double g) {
  return propagator_fidelity(gate.implemented(g), gate.ideal);
}

inline double metric_infidelity(const TwoQubitGate& gate, double g) {
  return propagator_infidelity(gate.implemented(g), gate.ideal);
}

struct CurveSample {
  double g = 0.0;
  double value = 0.0;
  bool operator==(const CurveSample&) const = default;
};

struct FidelityCurve {
  std::string sequence;
  std::string metric;
  std::vector<CurveSample> samples;
};

inline FidelityCurve fidelity_sweep(const std::string& sequence, const std::string& metric,
                                    const std::function<double(double)>& value, const Grid& grid) {
  FidelityCurve c{sequence, metric, {}};
  for (double g : grid.points()) c.samples.push_back({g, value(g)});
  return c;
}

inline FidelityCurve fidelity_sweep(const SingleQubitGate& gate, const Metric& m, const Grid& grid) {
  return fidelity_sweep(gate.name, m.name(), [&](double g) { return metric_value(gate, m, g); },
                        grid);
}

inline FidelityCurve fidelity_sweep(const TwoQubitGate& gate, const Grid& grid) {
  return fidelity_sweep(gate.name, "propagator", [&](double g) { return metric_value(gate, g); },
                        grid);
}

// --- Order estimation -------------------------------------------------------

struct PowerLawFit {
  double exponent = 0.0;
  double coefficient = 0.0;
  double residual = 0.0;  // rms of log residuals
};

/// Least-squares line through (log x, log y).
inline PowerLawFit fit_power_law(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw ValidationError("power-law fit needs >= 2 points");
  const auto n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double denom = n * sxx - sx * sx;
  if (denom == 0.0) throw ValidationError("power-law fit needs distinct abscissae");
  PowerLawFit fit;
  fit.exponent = (n * sxy - sx * sy) / denom;
  const double intercept = (sy - fit.exponent * sx) / n;
  fit.coefficient = std::exp(intercept);
  double ss = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = std::log(y[i]) - (intercept + fit.exponent * std::log(x[i]));
    ss += r * r;
  }
  fit.residual = std::sqrt(ss / n);
  return fit;
}

enum class OrderStatus { fitted, exact, window_exhausted };

struct OrderWindow {
  double g_lo = 1e-4;
  double g_hi = 0.5;
  int samples = 80;
  bool log_spacing = true;
  double floor = 1e-12;    // numeric noise floor on 1 - F
  double ceiling = 1e-2;   // keeps the fit in the leading-order regime

  /// Fixed linear window used for very high orders.
  static OrderWindow high_order() { return {0.05, 0.3, 26, false, 1e-12, 1.0}; }
};

struct OrderEstimate {
  OrderStatus status = OrderStatus::fitted;
  double exponent = 0.0;
  double coefficient = 0.0;
  double g_min = 0.0;
  double g_max = 0.0;
  double residual = 0.0;
  int samples = 0;
  std::optional<double> hint;  // expected exponent, if the caller supplied one

  double hint_deviation() const { return hint ? exponent - *hint : 0.0; }
};

inline std::vector<double> window_points(const OrderWindow& w) {
  if (!(w.g_lo > 0.0 && w.g_hi > w.g_lo) || w.samples < 2)
    throw ValidationError("order window must satisfy 0 < g_lo < g_hi with >= 2 samples");
  std::vector<double> g(static_cast<std::size_t>(w.samples));
  const double n = w.samples - 1;
  for (int i = 0; i < w.samples; ++i) {
    const double t = i / n;
    g[i] = w.log_spacing ? std::exp((1 - t) * std::log(w.g_lo) + t * std::log(w.g_hi))
                         : (1 - t) * w.g_lo + t * w.g_hi;
  }
  return g;
}

/// Fits 1 - F ~ c g^p over the samples with floor < 1 - F < ceiling. If the
/// infidelity stays below the floor everywhere the result is `exact`.
inline OrderEstimate estimate_error_order(const std::function<double(double)>& infidelity,
                                          const OrderWindow& window = {},
                                          std::optional<double> expected_order = std::nullopt) {
  std::vector<double> xs, ys;
  double worst = 0.0;
  for (double g : window_points(window)) {
    const double y = infidelity(g);
    worst = std::max(worst, y);
    if (y > window.floor && y < window.ceiling) {
      xs.push_back(g);
      ys.push_back(y);
    }
  }
  OrderEstimate est;
  est.hint = expected_order;
  if (worst <= window.floor) {
    est.status = OrderStatus::exact;
    return est;
  }
  if (xs.size() < 4)
    throw WindowExhausted("only " + std::to_string(xs.size()) +
                          " samples between the noise floor and the ceiling");
  const PowerLawFit fit = fit_power_law(xs, ys);
  est.exponent = fit.exponent;
  est.coefficient = fit.coefficient;
  est.residual = fit.residual;
  est.g_min = xs.front();
  est.g_max = xs.back();
  est.samples = static_cast<int>(xs.size());
  return est;
}

inline OrderEstimate estimate_error_order(const SingleQubitGate& gate, const Metric& m,
                                          const OrderWindow& window = {},
                                          std::optional<double> expected_order = std::nullopt) {
  return estimate_error_order([&](double g) { return metric_infidelity(gate, m, g); }, window,
                              expected_order);
}

inline OrderEstimate estimate_error_order(const TwoQubitGate& gate, const OrderWindow& window = {},
                                          std::optional<double> expected_order = std::nullopt) {
  return estimate_error_order([&](double g) { return metric_infidelity(gate, g); }, window,
                              expected_order);
}

// --- Per-state surveys ------------------------------------------------------

struct AxisReport {
  std::string label;
  BlochVector axis;
  OrderEstimate estimate;
  std::string message;  // set when the window was exhausted
};

inline const std::vector<std::pair<std::string, BlochVector>>& cardinal_axes() {
  static const std::vector<std::pair<std::string, BlochVector>> axes{
      {"+x", {1, 0, 0}}, {"-x", {-1, 0, 0}}, {"+y", {0, 1, 0}},
      {"-y", {0, -1, 0}}, {"+z", {0, 0, 1}}, {"-z", {0, 0, -1}}};
  return axes;
}

inline std::vector<AxisReport> state_error_survey(const SingleQubitGate& gate,
                                                  const OrderWindow& window = {}) {
  std::vector<AxisReport> out;
  for (const auto& [label, axis] : cardinal_axes()) {
    AxisReport r{label, axis, {}, {}};
    try {
      r.estimate = estimate_error_order(gate, Metric::state_overlap(axis), window);
    } catch (const WindowExhausted& e) {
      r.estimate.status = OrderStatus::window_exhausted;
      r.message = e.what();
    }
    out.push_back(std::move(r));
  }
  return out;
}

/// Axis in the xz plane at `angle` from +z towards +x.
inline BlochVector xz_axis(double angle) { return {std::sin(angle), 0.0, std::cos(angle)}; }

struct ScanPoint {
  double angle_deg = 0.0;
  double exponent = 0.0;  // NaN when no fit was possible
};

struct HighOrderAxis {
  double grid_angle_deg = 0.0;
  double grid_exponent = 0.0;
  double angle_deg = 0.0;  // refined
  OrderEstimate estimate;  // at the refined angle
};

struct AxisScan {
  std::vector<ScanPoint> scan;
  std::vector<HighOrderAxis> maxima;
};

struct AxisScanOptions {
  OrderWindow window = OrderWindow::high_order();
  double probe_g = 2e-3;  // refinement minimises the infidelity here
};

namespace detail {

inline double fitted_exponent(const SingleQubitGate& gate, double angle, const OrderWindow& w) {
  try {
    const OrderEstimate e = estimate_error_order(gate, Metric::state_overlap(xz_axis(angle)), w);
    if (e.status == OrderStatus::fitted) return e.exponent;
  } catch (const WindowExhausted&) {
  }
  return std::numeric_limits<double>::quiet_NaN();
}

template <typename F>
double golden_minimum(F f, double lo, double hi, double tol) {
  const double r = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - r * (b - a), d = a + r * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > tol) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - r * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + r * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace detail

/// Scans initial states around the full xz circle for local maxima of the
/// fitted error order, then refines each maximum to the axis where the
/// small-g infidelity is smallest.
inline AxisScan find_high_order_axes(const SingleQubitGate& gate, double resolution_deg,
                                     const AxisScanOptions& opt = {}) {
  if (!(resolution_deg > 0.0 && resolution_deg <= 1.0))
    throw ValidationError("scan resolution must lie in (0, 1] degrees");
  const int n = static_cast<int>(std::ceil(360.0 / resolution_deg - 1e-9));
  const double step = 360.0 / n;

  AxisScan out;
  out.scan.reserve(n);
  for (int i = 0; i < n; ++i) {
    const double deg = i * step;
    out.scan.push_back({deg, detail::fitted_exponent(gate, deg_to_rad(deg), opt.window)});
  }

  auto val = [&](int i) {
    const double e = out.scan[static_cast<std::size_t>((i + n) % n)].exponent;
    return std::isnan(e) ? -std::numeric_limits<double>::infinity() : e;
  };
  for (int i = 0; i < n; ++i) {
    if (!(val(i) > val(i - 1) && val(i) >= val(i + 1))) continue;
    const double grid = out.scan[i].angle_deg;
    auto probe = [&](double deg) {
      return metric_infidelity(gate, Metric::state_overlap(xz_axis(deg_to_rad(deg))), opt.probe_g);
    };
    const double best = detail::golden_minimum(probe, grid - step, grid + step, 1e-9);
    HighOrderAxis ax;
    ax.grid_angle_deg = grid;
    ax.grid_exponent = out.scan[i].exponent;
    ax.angle_deg = std::fmod(best + 360.0, 360.0);
    ax.estimate = estimate_error_order(gate, Metric::state_overlap(xz_axis(deg_to_rad(best))),
                                       opt.window);
    out.maxima.push_back(ax);
  }
  return out;
}

}  // namespace robgate
