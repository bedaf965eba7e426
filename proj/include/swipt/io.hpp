#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "swipt/channel.hpp"
#include "swipt/sweep.hpp"

namespace swipt {

/// Flat key=value sweep configuration. `#` starts a comment; unknown keys
/// are rejected. See README for the key list.
SimConfig load_config(const std::filesystem::path& path);

/// Deterministic channel file: a key=value preamble (bandwidth_hz,
/// noise_variance_w) followed by one `gain_re gain_im eta power_w` row per
/// subcarrier.
std::pair<ChannelRealization, PowerVector> load_channels(
    const std::filesystem::path& path);

/// CSV with header noise_db,scheme,mean_objective,mean_constraint,
/// mean_info_count,mean_harvest_count,infeasible_fraction,trials; rows
/// sorted by (noise_db, scheme); 12 significant digits. `verbose` appends a
/// feedback_bits column (K bits of allocation feedback per trial).
void emit_csv(const std::vector<SweepRecord>& records, std::ostream& out,
              bool verbose = false);
void emit_csv(const std::vector<SweepRecord>& records,
              const std::filesystem::path& path, bool verbose = false);

std::vector<SweepRecord> parse_csv(std::istream& in);
std::vector<SweepRecord> parse_csv_file(const std::filesystem::path& path);

/// Matplotlib stub that plots mean objective vs noise for each scheme in a
/// sweep CSV.
void write_plot_stub(const std::filesystem::path& script_path,
                     const std::filesystem::path& csv_path);

}  // namespace swipt
