#include "swipt/power_alloc.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "swipt/errors.hpp"

namespace swipt {

namespace {

void check_gains(const std::vector<double>& gains) {
  for (double g : gains) {
    if (!(g >= 0.0) || !std::isfinite(g)) {
      throw ParameterError("gains must be nonnegative and finite");
    }
  }
}

void check_budget(double budget_w) {
  if (!(budget_w >= 0.0) || !std::isfinite(budget_w)) {
    throw ParameterError("power budget must be nonnegative");
  }
}

}  // namespace

WaterfillResult waterfill(const std::vector<double>& power_gains,
                          double budget_w) {
  check_gains(power_gains);
  check_budget(budget_w);
  const std::size_t n = power_gains.size();

  WaterfillResult res;
  res.powers_w.assign(n, 0.0);

  std::vector<std::size_t> active;  // candidates with positive gain
  for (std::size_t k = 0; k < n; ++k) {
    if (power_gains[k] > 0.0) active.push_back(k);
  }
  if (active.empty()) {
    if (budget_w > 0.0) res.degenerate = true;
    return res;
  }
  std::sort(active.begin(), active.end(), [&](std::size_t a, std::size_t b) {
    return power_gains[a] > power_gains[b];
  });

  if (budget_w == 0.0) {
    res.water_level = 1.0 / power_gains[active.front()];
    return res;
  }

  // Largest m with (budget + sum of the m smallest inverses) / m above the
  // m-th inverse; those m subcarriers are wet.
  std::size_t m = 1;
  double inv_sum = 1.0 / power_gains[active[0]];
  double level = budget_w + inv_sum;
  for (std::size_t i = 1; i < active.size(); ++i) {
    const double inv = 1.0 / power_gains[active[i]];
    const double cand_sum = inv_sum + inv;
    const double cand_level = (budget_w + cand_sum) / static_cast<double>(i + 1);
    if (cand_level > inv) {
      m = i + 1;
      inv_sum = cand_sum;
      level = cand_level;
    } else {
      break;
    }
  }
  res.water_level = level;
  for (std::size_t i = 0; i < m; ++i) {
    res.powers_w[active[i]] = level - 1.0 / power_gains[active[i]];
  }
  return res;
}

std::vector<double> single_best_alloc(const std::vector<double>& harvest_gains,
                                      double budget_w) {
  if (harvest_gains.empty()) {
    throw EmptySetError("single_best_alloc needs a non-empty subcarrier set");
  }
  check_gains(harvest_gains);
  check_budget(budget_w);
  const std::size_t best = static_cast<std::size_t>(std::distance(
      harvest_gains.begin(),
      std::max_element(harvest_gains.begin(), harvest_gains.end())));
  std::vector<double> out(harvest_gains.size(), 0.0);
  out[best] = budget_w;  // max_element keeps the first maximum on ties
  return out;
}

std::vector<double> capped_alloc(const std::vector<double>& harvest_gains,
                                 double budget_w, double cap_w) {
  check_gains(harvest_gains);
  check_budget(budget_w);
  if (!(cap_w > 0.0) || !std::isfinite(cap_w)) {
    throw ParameterError("per-subcarrier cap must be positive");
  }
  const std::size_t n = harvest_gains.size();
  if (budget_w > static_cast<double>(n) * cap_w) {
    throw ResourceInfeasible("budget exceeds n * cap");
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (harvest_gains[a] != harvest_gains[b]) {
      return harvest_gains[a] > harvest_gains[b];
    }
    return a < b;
  });

  std::vector<double> out(n, 0.0);
  double remaining = budget_w;
  for (std::size_t k : order) {
    if (remaining <= 0.0) break;
    const double p = std::min(cap_w, remaining);
    out[k] = p;
    remaining -= p;
  }
  return out;
}

SolveOutcome spa_pipeline(const ChannelRealization& ch, Problem problem,
                          double constraint, double equal_power_w,
                          std::optional<double> cap_w, int iterations,
                          std::int64_t resolution) {
  if (iterations < 1) {
    throw ParameterError("spa_pipeline needs at least one iteration");
  }
  if (!(equal_power_w >= 0.0) || !std::isfinite(equal_power_w)) {
    throw ParameterError("equal power level must be nonnegative");
  }
  const std::size_t n = ch.num_subcarriers();
  PowerVector p = PowerVector::uniform(n, equal_power_w);
  SolveOutcome sa;

  for (int it = 0; it < iterations; ++it) {
    const SubcarrierMetrics m = compute_metrics(ch, p);
    sa = problem == Problem::P1 ? solve_p1(m, constraint, resolution)
                                : solve_p2(m, constraint, resolution);
    if (!sa.feasible) {
      sa.powers = std::move(p);  // power stage skipped
      return sa;
    }

    // Budgets derive from the equal-power baseline; power never crosses the
    // partition.
    p = PowerVector::uniform(n, equal_power_w);
    if (problem == Problem::P1) {
      const std::vector<std::size_t> info = sa.mask.info_indices();
      if (!info.empty()) {
        std::vector<double> gains(info.size());
        for (std::size_t i = 0; i < info.size(); ++i) {
          gains[i] = ch.power_gain(info[i]) / ch.noise_variance_w;
        }
        const double budget = equal_power_w * static_cast<double>(info.size());
        const WaterfillResult wf = waterfill(gains, budget);
        for (std::size_t i = 0; i < info.size(); ++i) {
          p.watts[info[i]] = wf.powers_w[i];
        }
      }
    } else {
      const std::vector<std::size_t> harvest = sa.mask.harvest_indices();
      if (!harvest.empty()) {
        std::vector<double> gains(harvest.size());
        for (std::size_t i = 0; i < harvest.size(); ++i) {
          gains[i] = ch.efficiencies[harvest[i]] * ch.power_gain(harvest[i]);
        }
        const PowerBudget budget{
            equal_power_w * static_cast<double>(harvest.size()), cap_w};
        const std::vector<double> alloc =
            budget.per_subcarrier_cap_w
                ? capped_alloc(gains, budget.total_w, *budget.per_subcarrier_cap_w)
                : single_best_alloc(gains, budget.total_w);
        for (std::size_t i = 0; i < harvest.size(); ++i) {
          p.watts[harvest[i]] = alloc[i];
        }
      }
    }
  }

  const SubcarrierMetrics m = compute_metrics(ch, p);
  const Totals t = totals(m, sa.mask);
  SolveOutcome out = sa;
  if (problem == Problem::P1) {
    out.objective = t.capacity_bps;
    out.constraint_value = t.harvested_w;
    out.feasible = t.harvested_w >= constraint;
  } else {
    out.objective = t.harvested_w;
    out.constraint_value = t.capacity_bps;
    out.feasible = t.capacity_bps >= constraint;
  }
  out.upper_bound.reset();
  out.powers = std::move(p);
  return out;
}

}  // namespace swipt
