#include "swipt/allocation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "swipt/errors.hpp"

namespace swipt {

namespace {

constexpr double kValueBins = 1073741824.0;  // 2^30

void check_metrics(const SubcarrierMetrics& m) {
  if (m.size() == 0 || m.harvests_w.size() != m.size()) {
    throw ParameterError("metrics are empty or have mismatched lengths");
  }
}

// Quantize one side of the tradeoff into an integer knapsack. `weights_from`
// becomes the constraint axis (rounded up), `values_from` the objective
// (rounded to nearest).
KnapsackInstance build_instance(const std::vector<double>& values_from,
                                const std::vector<double>& weights_from,
                                double threshold, std::int64_t resolution) {
  if (resolution < 1) {
    throw ParameterError("resolution must be a positive integer");
  }
  const std::size_t n = values_from.size();
  KnapsackInstance inst;
  inst.item_index_map.resize(n);
  std::iota(inst.item_index_map.begin(), inst.item_index_map.end(),
            std::size_t{0});
  inst.values.resize(n);
  inst.weights.resize(n);

  const double max_value = *std::max_element(values_from.begin(), values_from.end());
  inst.value_scale = max_value > 0.0 ? max_value / kValueBins : 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    inst.values[i] = std::llround(values_from[i] / inst.value_scale);
  }

  if (threshold <= 0.0) {
    // Degenerate: no weight budget at all. Zero-weight items stay selectable.
    inst.capacity = 0;
    inst.weight_scale = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
      inst.weights[i] = weights_from[i] > 0.0 ? 1 : 0;
    }
    return inst;
  }

  inst.capacity = resolution;
  inst.weight_scale = threshold / static_cast<double>(resolution);
  for (std::size_t i = 0; i < n; ++i) {
    const double bins = std::ceil(weights_from[i] / inst.weight_scale);
    // Anything heavier than the capacity can never be selected; clamp before
    // the cast to keep the conversion in range.
    inst.weights[i] = bins > static_cast<double>(inst.capacity)
                          ? inst.capacity + 1
                          : static_cast<std::int64_t>(bins);
  }
  return inst;
}

}  // namespace

KnapsackInstance build_p1_instance(const SubcarrierMetrics& m, double q_min_w,
                                   std::int64_t resolution) {
  check_metrics(m);
  const double sum_q = m.total_harvest();
  if (q_min_w > sum_q) {
    throw InfeasibleConstraint("required harvested power exceeds the frame total");
  }
  return build_instance(m.capacities_bps, m.harvests_w, sum_q - q_min_w,
                        resolution);
}

KnapsackInstance build_p2_instance(const SubcarrierMetrics& m, double c_min_bps,
                                   std::int64_t resolution) {
  check_metrics(m);
  const double sum_c = m.total_capacity();
  if (c_min_bps > sum_c) {
    throw InfeasibleConstraint("required capacity exceeds the frame total");
  }
  return build_instance(m.harvests_w, m.capacities_bps, sum_c - c_min_bps,
                        resolution);
}

KnapsackSolution dp_solve(const KnapsackInstance& inst,
                          std::size_t memory_budget_bytes) {
  const std::size_t n = inst.values.size();
  if (inst.weights.size() != n) {
    throw ParameterError("knapsack values/weights length mismatch");
  }
  if (inst.capacity < 0) {
    throw ParameterError("knapsack capacity must be nonnegative");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (inst.values[i] < 0 || inst.weights[i] < 0) {
      throw ParameterError("knapsack values/weights must be nonnegative");
    }
  }

  const std::size_t cols = static_cast<std::size_t>(inst.capacity) + 1;
  const std::size_t words_per_row = (cols + 63) / 64;
  const std::size_t bytes = cols * sizeof(std::int64_t) +
                            n * words_per_row * sizeof(std::uint64_t);
  if (bytes > memory_budget_bytes) {
    throw ResourceLimit("dp table would exceed the memory budget; lower the resolution");
  }

  std::vector<std::int64_t> best(cols, 0);
  std::vector<std::uint64_t> take(n * words_per_row, 0);

  for (std::size_t i = 0; i < n; ++i) {
    const std::int64_t w = inst.weights[i];
    if (w > inst.capacity) continue;
    const std::int64_t v = inst.values[i];
    std::uint64_t* row = take.data() + i * words_per_row;
    for (std::int64_t c = inst.capacity; c >= w; --c) {
      const std::int64_t cand = best[static_cast<std::size_t>(c - w)] + v;
      // Strict improvement only: on ties we skip, which steers the
      // backtracked selection toward lower item indices.
      if (cand > best[static_cast<std::size_t>(c)]) {
        best[static_cast<std::size_t>(c)] = cand;
        row[static_cast<std::size_t>(c) >> 6] |= std::uint64_t{1} << (c & 63);
      }
    }
  }

  KnapsackSolution sol;
  sol.selected.assign(n, 0);
  sol.objective = best[cols - 1];
  std::int64_t c = inst.capacity;
  for (std::size_t i = n; i-- > 0;) {
    const std::uint64_t* row = take.data() + i * words_per_row;
    if (row[static_cast<std::size_t>(c) >> 6] >> (c & 63) & 1u) {
      sol.selected[i] = 1;
      c -= inst.weights[i];
    }
  }
  return sol;
}

KnapsackSolution brute_force_solve(const KnapsackInstance& inst) {
  const std::size_t n = inst.values.size();
  if (inst.weights.size() != n) {
    throw ParameterError("knapsack values/weights length mismatch");
  }
  if (n > kBruteForceMaxItems) {
    throw ResourceLimit("brute force is guarded to 24 items");
  }
  KnapsackSolution best;
  best.selected.assign(n, 0);
  best.objective = 0;
  const std::uint32_t count = std::uint32_t{1} << n;
  for (std::uint32_t subset = 0; subset < count; ++subset) {
    std::int64_t weight = 0;
    std::int64_t value = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (subset >> i & 1u) {
        weight += inst.weights[i];
        value += inst.values[i];
      }
    }
    if (weight <= inst.capacity && value > best.objective) {
      best.objective = value;
      for (std::size_t i = 0; i < n; ++i) {
        best.selected[i] = static_cast<std::uint8_t>(subset >> i & 1u);
      }
    }
  }
  return best;
}

RelaxationOrder relaxation_order(const SubcarrierMetrics& m) {
  check_metrics(m);
  const std::size_t n = m.size();
  const auto& c = m.capacities_bps;
  const auto& q = m.harvests_w;

  // tier 0: Q=0, C>0 (infinite ratio); tier 1: Q>0; tier 2: Q=0, C=0.
  auto tier = [&](std::size_t k) {
    if (q[k] > 0.0) return 1;
    return c[k] > 0.0 ? 0 : 2;
  };

  RelaxationOrder order;
  order.indices.resize(n);
  std::iota(order.indices.begin(), order.indices.end(), std::size_t{0});
  std::sort(order.indices.begin(), order.indices.end(),
            [&](std::size_t a, std::size_t b) {
              const int ta = tier(a);
              const int tb = tier(b);
              if (ta != tb) return ta < tb;
              if (ta == 1) {
                const double ra = c[a] / q[a];
                const double rb = c[b] / q[b];
                if (ra != rb) return ra > rb;
              }
              return a < b;
            });
  return order;
}

UpperBound upper_bound_c(const SubcarrierMetrics& m, double q_min_w) {
  check_metrics(m);
  const double sum_q = m.total_harvest();
  if (q_min_w > sum_q) {
    throw InfeasibleConstraint("required harvested power exceeds the frame total");
  }
  const double q_th = sum_q - q_min_w;

  UpperBound ub;
  ub.order = relaxation_order(m);
  const std::size_t n = m.size();
  ub.fractional.assign(n, 0.0);

  double prefix_q = 0.0;
  for (std::size_t pos = 0; pos < n; ++pos) {
    const std::size_t k = ub.order.indices[pos];
    if (prefix_q + m.harvests_w[k] > q_th) {
      ub.critical_pos = pos;
      ub.order.critical_index = pos;
      const double residual = q_th - prefix_q;  // room left for the critical item
      const double frac = residual / m.harvests_w[k];
      ub.fractional[k] = frac;
      ub.bound += (m.capacities_bps[k] / m.harvests_w[k]) * residual;
      return ub;
    }
    prefix_q += m.harvests_w[k];
    ub.fractional[k] = 1.0;
    ub.bound += m.capacities_bps[k];
  }
  // Constraint never binds: every subcarrier can carry information.
  return ub;
}

UpperBound upper_bound_q(const SubcarrierMetrics& m, double c_min_bps) {
  check_metrics(m);
  const double sum_c = m.total_capacity();
  if (c_min_bps > sum_c) {
    throw InfeasibleConstraint("required capacity exceeds the frame total");
  }
  const double c_th = sum_c - c_min_bps;

  UpperBound ub;
  ub.order = relaxation_order(m);
  const std::size_t n = m.size();
  ub.fractional.assign(n, 0.0);

  // The harvest side fills from the tail of the capacity-to-harvest order
  // (best Q per unit of capacity spent); the critical subcarrier is the
  // first one, scanning upward from the tail, whose cumulative capacity
  // exceeds the capacity budget.
  double suffix_c = 0.0;
  for (std::size_t pos = n; pos-- > 0;) {
    const std::size_t k = ub.order.indices[pos];
    if (suffix_c + m.capacities_bps[k] > c_th) {
      ub.critical_pos = pos;
      ub.order.critical_index = pos;
      const double residual = c_th - suffix_c;
      const double frac = residual / m.capacities_bps[k];
      ub.fractional[k] = frac;
      ub.bound += (m.harvests_w[k] / m.capacities_bps[k]) * residual;
      return ub;
    }
    suffix_c += m.capacities_bps[k];
    ub.fractional[k] = 1.0;
    ub.bound += m.harvests_w[k];
  }
  return ub;
}

namespace {

SolveOutcome finish_p1(const SubcarrierMetrics& m, double q_min_w,
                       AllocationMask mask, double bound) {
  const Totals t = totals(m, mask);
  SolveOutcome out;
  out.mask = std::move(mask);
  out.objective = t.capacity_bps;
  out.constraint_value = t.harvested_w;
  out.upper_bound = bound;
  out.feasible = t.harvested_w >= q_min_w;
  out.solver = Solver::Dp;
  return out;
}

SolveOutcome finish_p2(const SubcarrierMetrics& m, double c_min_bps,
                       AllocationMask mask, double bound) {
  const Totals t = totals(m, mask);
  SolveOutcome out;
  out.mask = std::move(mask);
  out.objective = t.harvested_w;
  out.constraint_value = t.capacity_bps;
  out.upper_bound = bound;
  out.feasible = t.capacity_bps >= c_min_bps;
  out.solver = Solver::Dp;
  return out;
}

}  // namespace

SolveOutcome solve_p1(const SubcarrierMetrics& m, double q_min_w,
                      std::int64_t resolution) {
  check_metrics(m);
  try {
    const std::size_t n = m.size();
    if (q_min_w <= 0.0) {
      // Vacuous constraint: the unconstrained optimum keeps every subcarrier
      // on the information side. Quantization round-up would needlessly shave
      // items here, so skip the knapsack.
      return finish_p1(m, q_min_w, AllocationMask::all_information(n),
                       upper_bound_c(m, q_min_w).bound);
    }
    const KnapsackInstance inst = build_p1_instance(m, q_min_w, resolution);
    const KnapsackSolution sol = dp_solve(inst);
    AllocationMask mask = AllocationMask::all_harvest(n);
    for (std::size_t i = 0; i < sol.selected.size(); ++i) {
      if (sol.selected[i]) mask.bits[inst.item_index_map[i]] = 1;
    }
    return finish_p1(m, q_min_w, std::move(mask), upper_bound_c(m, q_min_w).bound);
  } catch (const InfeasibleConstraint&) {
    // Best effort toward the unreachable target: harvest everything.
    SolveOutcome out = finish_p1(m, q_min_w,
                                 AllocationMask::all_harvest(m.size()), 0.0);
    out.upper_bound.reset();
    out.feasible = false;
    return out;
  }
}

SolveOutcome solve_p2(const SubcarrierMetrics& m, double c_min_bps,
                      std::int64_t resolution) {
  check_metrics(m);
  try {
    const std::size_t n = m.size();
    if (c_min_bps <= 0.0) {
      return finish_p2(m, c_min_bps, AllocationMask::all_harvest(n),
                       upper_bound_q(m, c_min_bps).bound);
    }
    const KnapsackInstance inst = build_p2_instance(m, c_min_bps, resolution);
    const KnapsackSolution sol = dp_solve(inst);
    // Selected items are the harvested ones.
    AllocationMask mask = AllocationMask::all_information(n);
    for (std::size_t i = 0; i < sol.selected.size(); ++i) {
      if (sol.selected[i]) mask.bits[inst.item_index_map[i]] = 0;
    }
    return finish_p2(m, c_min_bps, std::move(mask),
                     upper_bound_q(m, c_min_bps).bound);
  } catch (const InfeasibleConstraint&) {
    SolveOutcome out = finish_p2(m, c_min_bps,
                                 AllocationMask::all_information(m.size()), 0.0);
    out.upper_bound.reset();
    out.feasible = false;
    return out;
  }
}

}  // namespace swipt
