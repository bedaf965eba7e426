#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "swipt/channel.hpp"

namespace swipt {

inline constexpr std::int64_t kDefaultResolution = 1 << 14;
inline constexpr std::size_t kDpMemoryBudgetBytes = std::size_t{256} << 20;
inline constexpr std::size_t kBruteForceMaxItems = 24;

/// Integer knapsack built from one frame's metrics. Weights are rounded UP
/// and the capacity down, so any selection feasible here is feasible in the
/// original continuous problem; values are rounded to nearest.
struct KnapsackInstance {
  std::vector<std::int64_t> values;
  std::vector<std::int64_t> weights;
  std::int64_t capacity = 0;
  double value_scale = 1.0;   // physical units per value unit
  double weight_scale = 1.0;  // physical units per weight unit
  std::vector<std::size_t> item_index_map;  // item position -> subcarrier
};

struct KnapsackSolution {
  std::vector<std::uint8_t> selected;
  std::int64_t objective = 0;
};

enum class Solver { Dp, BruteForce };

struct SolveOutcome {
  AllocationMask mask;
  double objective = 0.0;        // C_T for P1, Q_T for P2 (physical units)
  double constraint_value = 0.0; // Q_T for P1, C_T for P2, re-evaluated
  std::optional<double> upper_bound;
  bool feasible = false;
  Solver solver = Solver::Dp;
  std::optional<PowerVector> powers;  // set when power allocation ran
};

/// Subcarriers ordered by decreasing C_k / Q_k. Zero-harvest subcarriers
/// with positive capacity sort first (infinite ratio), zero/zero ones last;
/// remaining ties break toward the lower original index.
struct RelaxationOrder {
  std::vector<std::size_t> indices;
  std::optional<std::size_t> critical_index;
};

/// Continuous-relaxation bound. `fractional` is indexed by original
/// subcarrier and holds the relaxed indicator (s-hat for the capacity bound,
/// s-hat-complement for the harvest bound). `critical_pos` is the 0-based
/// position of the critical subcarrier within `order.indices`, absent when
/// the constraint never binds.
struct UpperBound {
  double bound = 0.0;
  std::optional<std::size_t> critical_pos;
  std::vector<double> fractional;
  RelaxationOrder order;
};

KnapsackInstance build_p1_instance(const SubcarrierMetrics& m, double q_min_w,
                                   std::int64_t resolution);
KnapsackInstance build_p2_instance(const SubcarrierMetrics& m, double c_min_bps,
                                   std::int64_t resolution);

/// Exact 0/1 knapsack by dynamic programming over the weight axis, selection
/// recovered by backtracking. Among equal-objective selections the one using
/// lower item indices wins.
KnapsackSolution dp_solve(const KnapsackInstance& inst,
                          std::size_t memory_budget_bytes = kDpMemoryBudgetBytes);

/// Exhaustive oracle, guarded to kBruteForceMaxItems items.
KnapsackSolution brute_force_solve(const KnapsackInstance& inst);

RelaxationOrder relaxation_order(const SubcarrierMetrics& m);

/// Dantzig bound for the capacity problem: C_T <= C_up for every allocation
/// harvesting at least q_min.
UpperBound upper_bound_c(const SubcarrierMetrics& m, double q_min_w);

/// Dantzig bound for the harvest problem: Q_T <= Q_up for every allocation
/// delivering at least c_min.
UpperBound upper_bound_q(const SubcarrierMetrics& m, double c_min_bps);

/// Maximize C_T subject to Q_T >= q_min (equal transmit powers assumed by the
/// caller). Infeasible constraints yield a flagged all-harvest fallback
/// instead of throwing, so Monte Carlo sweeps can record and continue.
SolveOutcome solve_p1(const SubcarrierMetrics& m, double q_min_w,
                      std::int64_t resolution = kDefaultResolution);

/// Maximize Q_T subject to C_T >= c_min; mirror of solve_p1.
SolveOutcome solve_p2(const SubcarrierMetrics& m, double c_min_bps,
                      std::int64_t resolution = kDefaultResolution);

}  // namespace swipt
