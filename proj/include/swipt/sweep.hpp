#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "swipt/channel.hpp"
#include "swipt/power_alloc.hpp"

namespace swipt {

enum class Scheme { FsSa, FsSpa, Ts, Ps, CUp, QUp };

// Canonical tokens used in config files and CSV output.
std::string scheme_name(Scheme s);
std::optional<Scheme> parse_scheme(const std::string& token);

/// Sweep configuration in the units the experiments are quoted in (mW, kHz,
/// kb/s, dB); conversion to SI happens at the accessors.
struct SimConfig {
  std::size_t num_subcarriers = 32;
  double bandwidth_khz = 15.0;
  double efficiency = 0.5;
  double total_power_mw = 128.0;
  double q_min_mw = 12.0;
  double c_min_kbps = 400.0;
  std::optional<double> p_t_max_mw;    // per-subcarrier cap for the P2 power stage
  std::vector<double> noise_grid_db;   // 1/sigma_z^2 grid, dB
  std::uint64_t trials = 10000;
  std::uint64_t seed = 1;
  std::int64_t resolution = kDefaultResolution;
  std::vector<Scheme> schemes;
  Problem problem = Problem::P1;
  double mean_channel_power = 1.0;     // E[|H_k|^2]
  int spa_iterations = 1;

  // Testing hook: when set, every trial uses these gains instead of a fresh
  // Rayleigh draw.
  std::optional<std::vector<std::complex<double>>> fixed_gains;

  double bandwidth_hz() const { return bandwidth_khz * 1e3; }
  double total_power_w() const { return total_power_mw * 1e-3; }
  double equal_power_w() const {
    return total_power_w() / static_cast<double>(num_subcarriers);
  }
  double q_min_w() const { return q_min_mw * 1e-3; }
  double c_min_bps() const { return c_min_kbps * 1e3; }
  std::optional<double> cap_w() const {
    if (!p_t_max_mw) return std::nullopt;
    return *p_t_max_mw * 1e-3;
  }
  static double noise_variance_w(double inv_noise_db) {
    return std::pow(10.0, -inv_noise_db / 10.0);
  }
};

/// Aggregated result of one (noise point, scheme) cell. Means are over
/// feasible trials only; infeasible draws are counted in
/// `infeasible_fraction`. For TS/PS the "counts" are the resource-fraction
/// equivalents (1 - ratio) * K and ratio * K, and for the bound schemes the
/// fractional relaxation masses, so info + harvest always totals K.
struct SweepRecord {
  double noise_db = 0.0;
  Scheme scheme = Scheme::FsSa;
  double mean_objective = 0.0;
  double mean_constraint = 0.0;
  double mean_info_count = 0.0;
  double mean_harvest_count = 0.0;
  double infeasible_fraction = 0.0;
  std::uint64_t trials = 0;

  bool operator==(const SweepRecord&) const = default;
};

struct SchemeResult {
  double objective = 0.0;
  double constraint_value = 0.0;
  double info_count = 0.0;
  double harvest_count = 0.0;
  bool feasible = false;
};

void validate_config(const SimConfig& cfg);

/// Per-trial stream derived from (seed, noise index, trial index) only, so
/// results never depend on worker count or scheduling.
Rng derive_trial_rng(std::uint64_t seed, std::size_t noise_index,
                     std::uint64_t trial_index);

/// Evaluate every configured scheme on one channel draw (all schemes see the
/// same realization). Exposed for tests and single-shot tooling.
std::vector<SchemeResult> evaluate_schemes(const SimConfig& cfg,
                                           const ChannelRealization& ch);

/// Monte Carlo sweep, trials fanned out with OpenMP. SWIPT_THREADS caps the
/// worker count (0 or unset = all available). Output is identical to
/// run_sweep_serial for any worker count.
std::vector<SweepRecord> run_sweep(const SimConfig& cfg);

/// Single-threaded reference implementation kept for testing and
/// benchmarking against the parallel path.
std::vector<SweepRecord> run_sweep_serial(const SimConfig& cfg);

}  // namespace swipt
