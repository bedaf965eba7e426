#pragma once

#include "swipt/channel.hpp"

namespace swipt {

enum class Objective { Capacity, Harvest };

/// Time-switching or power-splitting operating point. `ratio` is the share
/// of the resource (time for TS, received power for PS) routed to the
/// harvester. A feasible solution meets its binding constraint within
/// relative 1e-9.
struct SwitchSolution {
  double ratio = 0.0;
  double capacity_bps = 0.0;
  double harvested_w = 0.0;
  bool feasible = false;
};

/// Time switching over all K subcarriers: Q(a) = a * sum Q_k,
/// C(a) = (1 - a) * sum C_k.
SwitchSolution ts_solve(const SubcarrierMetrics& m, Objective objective,
                        double constraint);

/// Power splitting over all K subcarriers: Q(r) = r * sum Q_k,
/// C(r) = sum B log2(1 + (1 - r) |H_k|^2 gamma_k). The harvest objective
/// inverts C by bisection (C is strictly decreasing in r).
SwitchSolution ps_solve(const SubcarrierMetrics& m,
                        const ChannelRealization& ch, const PowerVector& p,
                        Objective objective, double constraint);

}  // namespace swipt
