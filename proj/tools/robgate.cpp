#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "commands.hpp"

int main(int argc, char** argv) {
  namespace cli = robgate::cli;
  CLI::App app{"Composite-pulse robust gates: tables, sweeps, phase solving, Ising programs"};
  app.require_subcommand(1);

  auto* table1 = app.add_subcommand("table1", "Infidelities of naive and BB1 NOT gates");
  std::vector<double> extra_rows;
  bool direct = false;
  table1->add_option("--extra-row", extra_rows, "Additional g values to tabulate");
  table1->add_flag("--direct", direct, "Simulate every row instead of expanding small-g rows");

  auto* sweep = app.add_subcommand("sweep", "Write a fidelity curve over g as CSV");
  cli::SweepOptions so;
  std::string out_path = "-";
  sweep->add_option("--sequence", so.sequence, "Sequence family")
      ->check(CLI::IsMember({"naive", "conventional", "bb1", "ising-simple", "ising-robust"}));
  sweep->add_option("--theta", so.theta_deg, "Target angle in degrees")->capture_default_str();
  sweep->add_option("--phase", so.phase_deg, "Target phase in degrees")->capture_default_str();
  sweep->add_option("--cluster", so.cluster, "BB1 cluster position in [0,1]")->capture_default_str();
  sweep->add_option("--offres", so.offres, "Fixed off-resonance fraction f")->capture_default_str();
  sweep->add_option("--metric", so.metric, "Metric")
      ->check(CLI::IsMember({"quaternion", "propagator", "inversion", "state"}))
      ->capture_default_str();
  sweep->add_option("--initial", so.initial, "Initial Bloch vector for --metric state")
      ->expected(3)
      ->delimiter(',');
  sweep->add_option("--gmin", so.g_min, "Smallest g")->capture_default_str();
  sweep->add_option("--gmax", so.g_max, "Largest g")->capture_default_str();
  sweep->add_option("--steps", so.steps, "Number of samples")->capture_default_str();
  sweep->add_option("--out", out_path, "Output CSV path, '-' for stdout")->capture_default_str();

  auto* solve = app.add_subcommand("solve", "Find BB1 phases numerically");
  double theta_deg = 180.0;
  solve->add_option("--theta", theta_deg, "Target angle in degrees, (0, 360]")->capture_default_str();

  auto* ising = app.add_subcommand("ising", "Controlled-phase fidelity of the Ising gate");
  cli::IsingOptions io;
  std::string export_path;
  ising->add_option("--g", io.g, "Fractional coupling error")->capture_default_str();
  ising->add_flag("--robust", io.robust, "Use the BB1-compensated gate");
  ising->add_flag("--robust-pulses", io.robust_pulses, "Replace each box pulse by BB1");
  ising->add_option("--pulse-error", io.pulse_error, "Pulse-length error of the box pulses")
      ->capture_default_str();
  ising->add_option("--spin", io.spin, "Spin carrying the box pulses")
      ->check(CLI::IsMember({"I", "S"}))
      ->capture_default_str();
  ising->add_option("--export", export_path, "Write the pulse program to this path");

  auto* axes = app.add_subcommand("axes", "Locate the highest-order initial axes of BB1");
  double resolution = 1.0;
  std::string scan_path;
  axes->add_option("--resolution", resolution, "Angular step in degrees (<= 1)")
      ->capture_default_str();
  axes->add_option("--scan", scan_path, "Write the full scan as CSV");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*table1) return cli::cmd_table1(extra_rows, direct, std::cout);
    if (*sweep) return cli::cmd_sweep(so, out_path, std::cout, std::cerr);
    if (*solve) return cli::cmd_solve(theta_deg, std::cout, std::cerr);
    if (*ising) return cli::cmd_ising(io, export_path, std::cout, std::cerr);
    if (*axes) return cli::cmd_axes(resolution, scan_path, std::cout, std::cerr);
  } catch (const std::exception& e) {
    std::cerr << "robgate: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
