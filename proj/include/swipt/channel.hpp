#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace swipt {

// Deterministic random source. mt19937_64 output is pinned by the standard,
// so seeded draws reproduce across platforms and stdlib versions.
using Rng = std::mt19937_64;

/// One fading draw of the multi-carrier frame. All quantities are strict SI
/// (watts, Hz); mW/kHz inputs are converted at the configuration boundary.
struct ChannelRealization {
  double bandwidth_hz = 0.0;      // per-subcarrier bandwidth B
  double noise_variance_w = 0.0;  // AWGN variance sigma_z^2
  std::vector<std::complex<double>> gains;  // channel coefficients H_k
  std::vector<double> efficiencies;         // RF-to-DC conversion eta_k

  ChannelRealization(double bandwidth_hz, double noise_variance_w,
                     std::vector<std::complex<double>> gains,
                     std::vector<double> efficiencies);

  std::size_t num_subcarriers() const { return gains.size(); }

  // |H_k|^2; every consumer works with the power gain.
  double power_gain(std::size_t k) const { return std::norm(gains[k]); }
};

/// Average transmit power per subcarrier, watts.
struct PowerVector {
  std::vector<double> watts;

  static PowerVector uniform(std::size_t num_subcarriers, double per_subcarrier_w);

  double total() const;
};

/// Per-subcarrier capacity, harvestable power and SNR under a given power
/// vector.
struct SubcarrierMetrics {
  std::vector<double> capacities_bps;  // C_k
  std::vector<double> harvests_w;      // Q_k
  std::vector<double> snrs;            // gamma_k = P_t,k / sigma_z^2

  std::size_t size() const { return capacities_bps.size(); }
  double total_capacity() const;
  double total_harvest() const;
};

/// Binary information/energy split: bit k = 1 routes subcarrier k to the
/// information decoder, 0 to the energy harvester.
struct AllocationMask {
  std::vector<std::uint8_t> bits;

  static AllocationMask all_information(std::size_t num_subcarriers);
  static AllocationMask all_harvest(std::size_t num_subcarriers);

  AllocationMask complement() const;
  std::size_t info_count() const;
  std::size_t harvest_count() const { return bits.size() - info_count(); }
  std::vector<std::size_t> info_indices() const;
  std::vector<std::size_t> harvest_indices() const;
  std::string to_string() const;  // e.g. "101"
};

struct Totals {
  double capacity_bps = 0.0;  // C_T over the information set
  double harvested_w = 0.0;   // Q_T over the harvest set
};

/// K i.i.d. complex Gaussian gains with E[|H_k|^2] = mean_power.
/// Deterministic given the generator state.
std::vector<std::complex<double>> sample_rayleigh(std::size_t num_subcarriers,
                                                  Rng& rng, double mean_power);

ChannelRealization make_rayleigh_channel(std::size_t num_subcarriers,
                                         double bandwidth_hz,
                                         double noise_variance_w,
                                         double efficiency, Rng& rng,
                                         double mean_power = 1.0);

/// gamma_k = P_t,k / sigma_z^2; C_k = B log2(1 + |H_k|^2 gamma_k);
/// Q_k = eta_k |H_k|^2 P_t,k.
SubcarrierMetrics compute_metrics(const ChannelRealization& ch,
                                  const PowerVector& p);

/// C_T = sum of C_k over the information set, Q_T = sum of Q_k over the
/// harvest set.
Totals totals(const SubcarrierMetrics& m, const AllocationMask& mask);

}  // namespace swipt
