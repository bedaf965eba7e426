#include "swipt/baselines.hpp"

#include <algorithm>
#include <cmath>

#include "swipt/errors.hpp"

namespace swipt {

namespace {

constexpr double kFeasibilityRelTol = 1e-9;
constexpr double kBisectionTol = 1e-12;

bool meets(double achieved, double required) {
  return achieved >= required - kFeasibilityRelTol * std::abs(required);
}

double clamp01(double x) { return std::clamp(x, 0.0, 1.0); }

// Capacity seen by the decoder when fraction `rho` of the received power is
// harvested.
double ps_capacity(const ChannelRealization& ch, const PowerVector& p,
                   double rho) {
  double c = 0.0;
  for (std::size_t k = 0; k < ch.num_subcarriers(); ++k) {
    const double snr = ch.power_gain(k) * p.watts[k] / ch.noise_variance_w;
    c += ch.bandwidth_hz * std::log1p((1.0 - rho) * snr) / M_LN2;
  }
  return c;
}

}  // namespace

SwitchSolution ts_solve(const SubcarrierMetrics& m, Objective objective,
                        double constraint) {
  const double sum_c = m.total_capacity();
  const double sum_q = m.total_harvest();
  SwitchSolution s;
  if (objective == Objective::Capacity) {
    const double q_min = constraint;
    if (q_min > sum_q) {
      s.ratio = 1.0;
      s.capacity_bps = 0.0;
      s.harvested_w = sum_q;
      s.feasible = false;
      return s;
    }
    s.ratio = q_min <= 0.0 ? 0.0 : clamp01(q_min / sum_q);
    s.capacity_bps = (1.0 - s.ratio) * sum_c;
    s.harvested_w = s.ratio * sum_q;
    s.feasible = meets(s.harvested_w, q_min);
  } else {
    const double c_min = constraint;
    if (c_min > sum_c) {
      s.ratio = 0.0;
      s.capacity_bps = sum_c;
      s.harvested_w = 0.0;
      s.feasible = false;
      return s;
    }
    s.ratio = c_min <= 0.0 ? 1.0 : clamp01(1.0 - c_min / sum_c);
    s.capacity_bps = (1.0 - s.ratio) * sum_c;
    s.harvested_w = s.ratio * sum_q;
    s.feasible = meets(s.capacity_bps, c_min);
  }
  return s;
}

SwitchSolution ps_solve(const SubcarrierMetrics& m,
                        const ChannelRealization& ch, const PowerVector& p,
                        Objective objective, double constraint) {
  if (p.watts.size() != ch.num_subcarriers() ||
      m.size() != ch.num_subcarriers()) {
    throw ParameterError("metrics/channel/power lengths do not match");
  }
  const double sum_q = m.total_harvest();
  SwitchSolution s;

  if (objective == Objective::Capacity) {
    const double q_min = constraint;
    if (q_min > sum_q) {
      s.ratio = 1.0;
      s.capacity_bps = 0.0;
      s.harvested_w = sum_q;
      s.feasible = false;
      return s;
    }
    s.ratio = q_min <= 0.0 ? 0.0 : clamp01(q_min / sum_q);
    s.capacity_bps = ps_capacity(ch, p, s.ratio);
    s.harvested_w = s.ratio * sum_q;
    s.feasible = meets(s.harvested_w, q_min);
    return s;
  }

  const double c_min = constraint;
  const double c_full = ps_capacity(ch, p, 0.0);
  if (c_full < c_min) {
    s.ratio = 0.0;
    s.capacity_bps = c_full;
    s.harvested_w = 0.0;
    s.feasible = false;
    return s;
  }
  if (c_min <= 0.0) {
    s.ratio = 1.0;
    s.capacity_bps = 0.0;
    s.harvested_w = sum_q;
    s.feasible = true;
    return s;
  }
  // C(rho) is continuous and strictly decreasing; keep lo on the feasible
  // side so the returned point satisfies the constraint.
  double lo = 0.0;
  double hi = 1.0;
  while (hi - lo > kBisectionTol) {
    const double mid = 0.5 * (lo + hi);
    if (ps_capacity(ch, p, mid) >= c_min) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  s.ratio = lo;
  s.capacity_bps = ps_capacity(ch, p, lo);
  s.harvested_w = lo * sum_q;
  s.feasible = meets(s.capacity_bps, c_min);
  return s;
}

}  // namespace swipt
