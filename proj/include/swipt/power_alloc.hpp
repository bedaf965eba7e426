#pragma once

#include <optional>
#include <vector>

#include "swipt/allocation.hpp"
#include "swipt/channel.hpp"

namespace swipt {

/// Transmit power budget for one side of the partition.
struct PowerBudget {
  double total_w = 0.0;
  std::optional<double> per_subcarrier_cap_w;

  // With n target subcarriers a capped budget must fit under n * cap.
  bool fits(std::size_t n) const {
    return !per_subcarrier_cap_w ||
           total_w <= static_cast<double>(n) * *per_subcarrier_cap_w;
  }
};

struct WaterfillResult {
  std::vector<double> powers_w;  // aligned with the input gains
  double water_level = 0.0;      // mu; P_k = max(0, mu - 1/g_k)
  bool degenerate = false;       // all gains zero with positive budget
};

/// Capacity-optimal split of `budget_w` over subcarriers with effective power
/// gains g_k = |H_k|^2 / sigma_z^2. Closed-form active-set solution; no
/// iterative root finding. All-zero gains with a positive budget return a
/// zero allocation flagged degenerate.
WaterfillResult waterfill(const std::vector<double>& power_gains,
                          double budget_w);

/// All budget on the subcarrier with the largest harvest gain eta_k |H_k|^2;
/// ties go to the lowest index.
std::vector<double> single_best_alloc(const std::vector<double>& harvest_gains,
                                      double budget_w);

/// Maximize sum gain_k * P_k subject to sum P_k <= budget and 0 <= P_k <= cap.
/// Greedy fill in decreasing gain order, which is optimal for this
/// single-constraint box LP.
std::vector<double> capped_alloc(const std::vector<double>& harvest_gains,
                                 double budget_w, double cap_w);

enum class Problem { P1, P2 };

/// Subcarrier allocation followed by per-set power allocation. Iteration 1
/// solves the allocation under equal power, then redistributes that set's
/// power budget (water-filling for P1, capped/single-best for P2) while the
/// other set keeps the equal level. Further iterations repeat the allocation
/// under the updated powers. The returned outcome carries the composite
/// power vector; no upper bound is attached because the equal-power bound
/// does not cover the reallocated objective.
SolveOutcome spa_pipeline(const ChannelRealization& ch, Problem problem,
                          double constraint, double equal_power_w,
                          std::optional<double> cap_w, int iterations = 1,
                          std::int64_t resolution = kDefaultResolution);

}  // namespace swipt
