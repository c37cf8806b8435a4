#pragma once

// Subcommand bodies for the robgate CLI. Each writes data to `out` and
// returns a process exit status; argument parsing lives in robgate.cpp.

#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "robgate/robgate.hpp"

namespace robgate::cli {

inline std::string sci(double x, int digits = 3) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*e", digits, x);
  return buf;
}

// --- table1 -----------------------------------------------------------------

enum class RowSource { simulated, expansion };

struct Table1Row {
  double g = 0.0;
  double naive = 0.0;
  double bb1 = 0.0;
  RowSource source = RowSource::simulated;
};

inline double naive_not_infidelity(double g) {
  const SingleQubitGate gate = SingleQubitGate::from({SequenceName::naive, kPi, 0.0});
  return metric_infidelity(gate, Metric::quaternion(), g);
}

inline double bb1_not_infidelity(double g) {
  const SingleQubitGate gate = SingleQubitGate::from({SequenceName::bb1, kPi, 0.0});
  return metric_infidelity(gate, Metric::quaternion(), g);
}

/// Leading-order infidelities: pi^2 g^2 / 8 and 5 pi^6 g^6 / 1024.
inline double naive_not_expansion(double g) { return kPi * kPi * g * g / 8.0; }
inline double bb1_not_expansion(double g) { return 5.0 * std::pow(kPi * g, 6) / 1024.0; }

inline const std::vector<double>& table1_errors() {
  static const std::vector<double> g{0.1, 0.03, 0.01, 0.003, 0.001};
  return g;
}

/// Rows with |g| <= 0.003 (g = 0 included) sit too close to the resolution of F
/// itself, so they come from the leading-order expansion unless `direct`.
inline std::vector<Table1Row> table1_rows(const std::vector<double>& extra_rows, bool direct) {
  std::vector<double> gs = table1_errors();
  gs.insert(gs.end(), extra_rows.begin(), extra_rows.end());
  std::vector<Table1Row> rows;
  for (double g : gs) {
    const bool expand = !direct && std::abs(g) <= 0.003;
    if (expand)
      rows.push_back({g, naive_not_expansion(g), bb1_not_expansion(g), RowSource::expansion});
    else
      rows.push_back({g, naive_not_infidelity(g), bb1_not_infidelity(g), RowSource::simulated});
  }
  return rows;
}

inline int cmd_table1(const std::vector<double>& extra_rows, bool direct, std::ostream& out) {
  char buf[128];
  std::snprintf(buf, sizeof buf, "%-8s %-11s %-11s %s\n", "g", "naive", "bb1", "source");
  out << buf;
  for (const Table1Row& r : table1_rows(extra_rows, direct)) {
    std::snprintf(buf, sizeof buf, "%-8s %-11s %-11s %s\n", format_double(r.g).c_str(),
                  sci(r.naive, 2).c_str(), sci(r.bb1, 2).c_str(),
                  r.source == RowSource::expansion ? "expansion" : "simulated");
    out << buf;
  }
  return 0;
}

// --- sweep ------------------------------------------------------------------

struct SweepOptions {
  std::string sequence = "bb1";  // naive | conventional | bb1 | ising-simple | ising-robust
  double theta_deg = 180.0;
  double phase_deg = 0.0;
  double cluster = 0.5;
  double offres = 0.0;
  std::string metric = "quaternion";  // quaternion | propagator | inversion | state
  std::vector<double> initial{0.0, 0.0, 1.0};
  double g_min = -1.0;
  double g_max = 1.0;
  int steps = 401;
};

inline std::optional<Metric> parse_metric(const std::string& name, const std::vector<double>& initial) {
  if (name == "quaternion") return Metric::quaternion();
  if (name == "propagator") return Metric::propagator();
  if (name == "inversion") return Metric::inversion();
  if (name == "state") {
    if (initial.size() != 3) throw ValidationError("--initial needs three components");
    return Metric::state_overlap({initial[0], initial[1], initial[2]});
  }
  return std::nullopt;
}

/// Throws ValidationError for unknown names or inconsistent options.
inline FidelityCurve sweep_curve(const SweepOptions& o) {
  const Grid grid{o.g_min, o.g_max, o.steps};
  if (o.sequence == "ising-simple" || o.sequence == "ising-robust") {
    if (o.metric != "propagator") throw ValidationError("Ising gates support only --metric propagator");
    return fidelity_sweep(TwoQubitGate::ising(o.sequence == "ising-robust"), grid);
  }
  const auto name = parse_sequence_name(o.sequence);
  if (!name) throw ValidationError("unknown sequence '" + o.sequence + "'");
  const auto metric = parse_metric(o.metric, o.initial);
  if (!metric) throw ValidationError("unknown metric '" + o.metric + "'");
  SequenceFamily fam{*name, deg_to_rad(o.theta_deg), deg_to_rad(o.phase_deg), o.cluster};
  SingleQubitGate gate = SingleQubitGate::from(fam);
  gate.f = o.offres;
  return fidelity_sweep(gate, *metric, grid);
}

inline int cmd_sweep(const SweepOptions& o, const std::string& out_path, std::ostream& out,
                     std::ostream& err) {
  FidelityCurve curve;
  try {
    curve = sweep_curve(o);
  } catch (const ValidationError& e) {
    err << "sweep: " << e.what() << '\n';
    return 2;
  }
  if (out_path.empty() || out_path == "-") {
    write_curve_csv(out, curve);
    return 0;
  }
  std::ofstream file(out_path);
  if (!file) {
    err << "sweep: cannot open '" << out_path << "' for writing\n";
    return 1;
  }
  write_curve_csv(file, curve);
  file.close();
  if (!file) {
    err << "sweep: write to '" << out_path << "' failed\n";
    return 1;
  }
  return 0;
}

// --- solve ------------------------------------------------------------------

inline int cmd_solve(double theta_deg, std::ostream& out, std::ostream& err) {
  try {
    const Bb1Phases p = solve_bb1_phases(deg_to_rad(theta_deg));
    const double ref = bb1_phase(deg_to_rad(theta_deg));
    out << "theta_deg = " << format_double(theta_deg) << '\n'
        << "phi1_deg = " << format_double(rad_to_deg(p.phi1)) << '\n'
        << "phi2_deg = " << format_double(rad_to_deg(wrap_phase(p.phi2))) << '\n'
        << "reference_phi1_deg = " << format_double(rad_to_deg(ref)) << '\n'
        << "reference_phi2_deg = " << format_double(rad_to_deg(wrap_phase(3 * ref))) << '\n'
        << "difference_deg = " << format_double(rad_to_deg(p.phi1 - ref)) << '\n';
    return 0;
  } catch (const ValidationError& e) {
    err << "solve: " << e.what() << '\n';
    return 2;
  } catch (const SolverError& e) {
    err << "solve: " << e.what() << '\n';
    return 1;
  }
}

// --- ising ------------------------------------------------------------------

struct IsingOptions {
  double g = 0.0;
  bool robust = false;
  bool robust_pulses = false;
  double pulse_error = 0.0;
  std::string spin = "S";
};

inline RobustIsingOptions to_robust_options(const IsingOptions& o) {
  RobustIsingOptions r;
  r.pulses.robust = o.robust_pulses;
  r.pulses.error = ErrorModel::pulse_length(o.pulse_error);
  r.sandwich_spin = o.spin == "I" ? Spin::I : Spin::S;
  return r;
}

inline IsingProgram ising_program(const IsingOptions& o) {
  return o.robust ? robust_ising_program(to_robust_options(o).sandwich_spin) : simple_ising_program();
}

/// Fidelity of the dressed controlled-phase gate against diag(1,1,1,-1).
inline double ising_fidelity(const IsingOptions& o) {
  const TwoQubitUnitary u =
      controlled_phase_gate(CouplingError::make(o.g), o.robust, to_robust_options(o));
  return propagator_fidelity(u, ideal_controlled_phase());
}

inline int cmd_ising(const IsingOptions& o, const std::string& export_path, std::ostream& out,
                     std::ostream& err) {
  double fid = 0.0, infid = 0.0;
  try {
    const TwoQubitUnitary u =
        controlled_phase_gate(CouplingError::make(o.g), o.robust, to_robust_options(o));
    fid = propagator_fidelity(u, ideal_controlled_phase());
    infid = propagator_infidelity(u, ideal_controlled_phase());
  } catch (const ValidationError& e) {
    err << "ising: " << e.what() << '\n';
    return 2;
  }
  out << "gate = " << (o.robust ? "robust" : "simple") << '\n'
      << "g = " << format_double(o.g) << '\n'
      << "fidelity = " << format_double(fid) << '\n'
      << "infidelity = " << sci(infid) << '\n';
  if (!export_path.empty()) {
    std::ofstream file(export_path);
    if (!file) {
      err << "ising: cannot open '" << export_path << "' for writing\n";
      return 1;
    }
    write_pulse_program(file, to_pulse_program(ising_program(o)));
    file.close();
    if (!file) {
      err << "ising: write to '" << export_path << "' failed\n";
      return 1;
    }
  }
  return 0;
}

// --- axes -------------------------------------------------------------------

inline int cmd_axes(double resolution_deg, const std::string& scan_path, std::ostream& out,
                    std::ostream& err) {
  AxisScan scan;
  try {
    scan = find_high_order_axes(SingleQubitGate::from({SequenceName::bb1, kPi, 0.0}), resolution_deg);
  } catch (const ValidationError& e) {
    err << "axes: " << e.what() << '\n';
    return 2;
  }
  out << "# BB1 NOT gate: initial states in the xz plane, angle from +z towards +x\n";
  out << "grid_angle_deg,grid_exponent,axis_angle_deg,exponent\n";
  for (const HighOrderAxis& a : scan.maxima)
    out << format_double(a.grid_angle_deg) << ',' << format_double(a.grid_exponent) << ','
        << format_double(a.angle_deg) << ',' << format_double(a.estimate.exponent) << '\n';
  if (!scan_path.empty()) {
    std::ofstream file(scan_path);
    if (!file) {
      err << "axes: cannot open '" << scan_path << "' for writing\n";
      return 1;
    }
    file << "angle_deg,exponent\n";
    for (const ScanPoint& p : scan.scan)
      file << format_double(p.angle_deg) << ',' << format_double(p.exponent) << '\n';
  }
  return 0;
}

}  // namespace robgate::cli
