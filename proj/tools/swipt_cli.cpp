#include <cstdio>
#include <exception>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "swipt/allocation.hpp"
#include "swipt/errors.hpp"
#include "swipt/io.hpp"
#include "swipt/sweep.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitRuntime = 2;

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

struct SolveArgs {
  std::string problem;
  std::string channels;
  std::optional<double> q_min_mw;
  std::optional<double> c_min_kbps;
  std::int64_t resolution = swipt::kDefaultResolution;
};

double constraint_si(const SolveArgs& args) {
  if (args.problem == "p1") {
    if (!args.q_min_mw) {
      throw swipt::ParameterError("problem p1 needs --qmin-mw");
    }
    return *args.q_min_mw * 1e-3;
  }
  if (!args.c_min_kbps) {
    throw swipt::ParameterError("problem p2 needs --cmin-kbps");
  }
  return *args.c_min_kbps * 1e3;
}

int run_solve(const SolveArgs& args) {
  const auto [ch, p] = swipt::load_channels(args.channels);
  const swipt::SubcarrierMetrics m = swipt::compute_metrics(ch, p);
  const double constraint = constraint_si(args);
  const swipt::SolveOutcome out =
      args.problem == "p1" ? swipt::solve_p1(m, constraint, args.resolution)
                           : swipt::solve_p2(m, constraint, args.resolution);
  const char* obj_unit = args.problem == "p1" ? "bps" : "w";
  const char* con_unit = args.problem == "p1" ? "w" : "bps";
  std::cout << "problem " << args.problem << '\n'
            << "mask " << out.mask.to_string() << '\n'
            << "objective_" << obj_unit << ' ' << fmt(out.objective) << '\n'
            << "constraint_" << con_unit << ' ' << fmt(out.constraint_value)
            << '\n';
  if (out.upper_bound) {
    std::cout << "upper_bound_" << obj_unit << ' ' << fmt(*out.upper_bound)
              << '\n';
  }
  std::cout << "feasible " << (out.feasible ? "true" : "false") << '\n'
            << "solver dp" << '\n';
  return kExitOk;
}

int run_bound(const SolveArgs& args) {
  const auto [ch, p] = swipt::load_channels(args.channels);
  const swipt::SubcarrierMetrics m = swipt::compute_metrics(ch, p);
  const double constraint = constraint_si(args);
  try {
    if (args.problem == "p1") {
      const swipt::UpperBound ub = swipt::upper_bound_c(m, constraint);
      std::cout << "C_up_bps " << fmt(ub.bound) << '\n';
      if (ub.critical_pos) {
        std::cout << "critical_position " << *ub.critical_pos + 1 << '\n';
      }
    } else {
      const swipt::UpperBound ub = swipt::upper_bound_q(m, constraint);
      std::cout << "Q_up_w " << fmt(ub.bound) << '\n';
      if (ub.critical_pos) {
        std::cout << "critical_position " << *ub.critical_pos + 1 << '\n';
      }
    }
    std::cout << "feasible true\n";
  } catch (const swipt::InfeasibleConstraint&) {
    std::cout << "feasible false\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Frequency-switching SWIPT subcarrier allocation toolkit"};
  app.require_subcommand(1);

  // sweep
  std::string cfg_path, out_path, plot_path;
  bool verbose = false;
  bool serial = false;
  CLI::App* sweep = app.add_subcommand(
      "sweep", "Run a seeded Monte Carlo sweep and write a CSV");
  sweep->add_option("--config", cfg_path, "sweep configuration file")->required();
  sweep->add_option("--out", out_path, "output CSV path")->required();
  sweep->add_option("--plot-script", plot_path,
                    "also write a matplotlib stub reading the CSV");
  sweep->add_flag("--verbose", verbose, "append the feedback_bits column");
  sweep->add_flag("--serial", serial, "use the serial reference sweep");

  // solve / bound
  SolveArgs solve_args;
  CLI::App* solve = app.add_subcommand(
      "solve", "Solve one deterministic instance from a channel file");
  solve->add_option("--problem", solve_args.problem, "p1 or p2")
      ->required()
      ->check(CLI::IsMember({"p1", "p2"}));
  solve->add_option("--channels", solve_args.channels, "channel file")->required();
  solve->add_option("--qmin-mw", solve_args.q_min_mw, "P1 harvest floor, mW");
  solve->add_option("--cmin-kbps", solve_args.c_min_kbps, "P2 capacity floor, kb/s");
  solve->add_option("--resolution", solve_args.resolution, "DP weight bins");

  SolveArgs bound_args;
  CLI::App* bound = app.add_subcommand(
      "bound", "Print the continuous-relaxation bound for one instance");
  bound->add_option("--problem", bound_args.problem, "p1 or p2")
      ->required()
      ->check(CLI::IsMember({"p1", "p2"}));
  bound->add_option("--channels", bound_args.channels, "channel file")->required();
  bound->add_option("--qmin-mw", bound_args.q_min_mw, "P1 harvest floor, mW");
  bound->add_option("--cmin-kbps", bound_args.c_min_kbps, "P2 capacity floor, kb/s");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    if (sweep->parsed()) {
      const swipt::SimConfig cfg = swipt::load_config(cfg_path);
      const std::vector<swipt::SweepRecord> records =
          serial ? swipt::run_sweep_serial(cfg) : swipt::run_sweep(cfg);
      swipt::emit_csv(records, std::filesystem::path(out_path), verbose);
      if (!plot_path.empty()) {
        swipt::write_plot_stub(plot_path, out_path);
      }
      return kExitOk;
    }
    if (solve->parsed()) return run_solve(solve_args);
    return run_bound(bound_args);
  } catch (const swipt::ParameterError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const swipt::IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
}
