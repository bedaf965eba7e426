#include "swipt/channel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "swipt/errors.hpp"

namespace swipt {

namespace {

bool all_finite(const std::vector<std::complex<double>>& v) {
  return std::all_of(v.begin(), v.end(), [](const std::complex<double>& z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
  });
}

// Uniform double in [0, 1) from the full 64-bit output, pinned bit pattern.
double canonical(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

ChannelRealization::ChannelRealization(double bandwidth_hz,
                                       double noise_variance_w,
                                       std::vector<std::complex<double>> gains,
                                       std::vector<double> efficiencies)
    : bandwidth_hz(bandwidth_hz),
      noise_variance_w(noise_variance_w),
      gains(std::move(gains)),
      efficiencies(std::move(efficiencies)) {
  if (this->gains.empty()) {
    throw ParameterError("channel needs at least one subcarrier");
  }
  if (!(bandwidth_hz > 0.0) || !std::isfinite(bandwidth_hz)) {
    throw ParameterError("bandwidth must be positive");
  }
  if (!(noise_variance_w > 0.0) || !std::isfinite(noise_variance_w)) {
    throw ParameterError("noise variance must be positive");
  }
  if (this->efficiencies.size() != this->gains.size()) {
    throw ParameterError("efficiencies/gains length mismatch");
  }
  if (!all_finite(this->gains)) {
    throw ParameterError("channel gains must be finite");
  }
  for (double eta : this->efficiencies) {
    if (!(eta > 0.0) || eta > 1.0) {
      throw ParameterError("conversion efficiency must lie in (0, 1]");
    }
  }
}

PowerVector PowerVector::uniform(std::size_t num_subcarriers,
                                 double per_subcarrier_w) {
  if (num_subcarriers == 0) {
    throw ParameterError("power vector needs at least one subcarrier");
  }
  if (!(per_subcarrier_w >= 0.0) || !std::isfinite(per_subcarrier_w)) {
    throw ParameterError("per-subcarrier power must be nonnegative");
  }
  return PowerVector{std::vector<double>(num_subcarriers, per_subcarrier_w)};
}

double PowerVector::total() const {
  return std::accumulate(watts.begin(), watts.end(), 0.0);
}

double SubcarrierMetrics::total_capacity() const {
  return std::accumulate(capacities_bps.begin(), capacities_bps.end(), 0.0);
}

double SubcarrierMetrics::total_harvest() const {
  return std::accumulate(harvests_w.begin(), harvests_w.end(), 0.0);
}

AllocationMask AllocationMask::all_information(std::size_t num_subcarriers) {
  return AllocationMask{std::vector<std::uint8_t>(num_subcarriers, 1)};
}

AllocationMask AllocationMask::all_harvest(std::size_t num_subcarriers) {
  return AllocationMask{std::vector<std::uint8_t>(num_subcarriers, 0)};
}

AllocationMask AllocationMask::complement() const {
  AllocationMask out = *this;
  for (auto& b : out.bits) b = static_cast<std::uint8_t>(1 - b);
  return out;
}

std::size_t AllocationMask::info_count() const {
  return static_cast<std::size_t>(
      std::count(bits.begin(), bits.end(), std::uint8_t{1}));
}

std::vector<std::size_t> AllocationMask::info_indices() const {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < bits.size(); ++k) {
    if (bits[k]) out.push_back(k);
  }
  return out;
}

std::vector<std::size_t> AllocationMask::harvest_indices() const {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < bits.size(); ++k) {
    if (!bits[k]) out.push_back(k);
  }
  return out;
}

std::string AllocationMask::to_string() const {
  std::string s;
  s.reserve(bits.size());
  for (auto b : bits) s.push_back(b ? '1' : '0');
  return s;
}

std::vector<std::complex<double>> sample_rayleigh(std::size_t num_subcarriers,
                                                  Rng& rng, double mean_power) {
  if (num_subcarriers == 0) {
    throw ParameterError("sample_rayleigh needs at least one subcarrier");
  }
  if (!(mean_power > 0.0) || !std::isfinite(mean_power)) {
    throw ParameterError("mean channel power must be positive");
  }
  // Marsaglia polar method; one accepted (u, v) pair yields both Gaussian
  // components of a gain. Hand-rolled so the stream stays identical across
  // standard library implementations.
  const double scale = std::sqrt(mean_power / 2.0);
  std::vector<std::complex<double>> gains;
  gains.reserve(num_subcarriers);
  for (std::size_t k = 0; k < num_subcarriers; ++k) {
    double u, v, s;
    do {
      u = 2.0 * canonical(rng) - 1.0;
      v = 2.0 * canonical(rng) - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double r = std::sqrt(-2.0 * std::log(s) / s);
    gains.emplace_back(scale * r * u, scale * r * v);
  }
  return gains;
}

ChannelRealization make_rayleigh_channel(std::size_t num_subcarriers,
                                         double bandwidth_hz,
                                         double noise_variance_w,
                                         double efficiency, Rng& rng,
                                         double mean_power) {
  return ChannelRealization(
      bandwidth_hz, noise_variance_w,
      sample_rayleigh(num_subcarriers, rng, mean_power),
      std::vector<double>(num_subcarriers, efficiency));
}

SubcarrierMetrics compute_metrics(const ChannelRealization& ch,
                                  const PowerVector& p) {
  const std::size_t n = ch.num_subcarriers();
  if (p.watts.size() != n) {
    throw ParameterError("power vector length does not match channel");
  }
  SubcarrierMetrics m;
  m.capacities_bps.resize(n);
  m.harvests_w.resize(n);
  m.snrs.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double pw = p.watts[k];
    if (!(pw >= 0.0) || !std::isfinite(pw)) {
      throw ParameterError("transmit powers must be nonnegative");
    }
    const double gamma = pw / ch.noise_variance_w;
    const double g2 = ch.power_gain(k);
    m.snrs[k] = gamma;
    m.capacities_bps[k] = ch.bandwidth_hz * std::log2(1.0 + g2 * gamma);
    m.harvests_w[k] = ch.efficiencies[k] * g2 * pw;
  }
  return m;
}

Totals totals(const SubcarrierMetrics& m, const AllocationMask& mask) {
  if (mask.bits.size() != m.size()) {
    throw ParameterError("mask length does not match metrics");
  }
  Totals t;
  for (std::size_t k = 0; k < m.size(); ++k) {
    if (mask.bits[k]) {
      t.capacity_bps += m.capacities_bps[k];
    } else {
      t.harvested_w += m.harvests_w[k];
    }
  }
  return t;
}

}  // namespace swipt
