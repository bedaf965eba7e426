#include "swipt/io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "swipt/errors.hpp"

namespace swipt {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) out.push_back(item);
  return out;
}

double parse_double(const std::string& s, const std::string& key) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ParameterError("invalid numeric value '" + s + "' for " + key);
  }
}

std::uint64_t parse_u64(const std::string& s, const std::string& key) {
  try {
    std::size_t pos = 0;
    const unsigned long long v = std::stoull(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return static_cast<std::uint64_t>(v);
  } catch (const std::exception&) {
    throw ParameterError("invalid integer value '" + s + "' for " + key);
  }
}

std::string format_g(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

constexpr const char* kCsvHeader =
    "noise_db,scheme,mean_objective,mean_constraint,mean_info_count,"
    "mean_harvest_count,infeasible_fraction,trials";

}  // namespace

SimConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open config file: " + path.string());
  }
  SimConfig cfg;
  cfg.schemes.clear();
  cfg.noise_grid_db.clear();
  bool schemes_set = false;

  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ParameterError(path.string() + ":" + std::to_string(lineno) +
                           ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (value.empty()) {
      throw ParameterError(path.string() + ":" + std::to_string(lineno) +
                           ": empty value for " + key);
    }

    if (key == "k") {
      cfg.num_subcarriers = static_cast<std::size_t>(parse_u64(value, key));
    } else if (key == "bandwidth_khz") {
      cfg.bandwidth_khz = parse_double(value, key);
    } else if (key == "eta") {
      cfg.efficiency = parse_double(value, key);
    } else if (key == "total_power_mw") {
      cfg.total_power_mw = parse_double(value, key);
    } else if (key == "q_min_mw") {
      cfg.q_min_mw = parse_double(value, key);
    } else if (key == "c_min_kbps") {
      cfg.c_min_kbps = parse_double(value, key);
    } else if (key == "p_t_max_mw") {
      cfg.p_t_max_mw = parse_double(value, key);
    } else if (key == "noise_grid_db") {
      for (const std::string& tok : split(value, ',')) {
        cfg.noise_grid_db.push_back(parse_double(trim(tok), key));
      }
    } else if (key == "trials") {
      cfg.trials = parse_u64(value, key);
    } else if (key == "seed") {
      cfg.seed = parse_u64(value, key);
    } else if (key == "resolution") {
      cfg.resolution = static_cast<std::int64_t>(parse_u64(value, key));
    } else if (key == "schemes") {
      cfg.schemes.clear();
      for (const std::string& tok : split(value, ',')) {
        const auto s = parse_scheme(trim(tok));
        if (!s) {
          throw ParameterError(path.string() + ":" + std::to_string(lineno) +
                               ": unknown scheme '" + trim(tok) + "'");
        }
        cfg.schemes.push_back(*s);
      }
      schemes_set = true;
    } else if (key == "problem") {
      if (value == "p1" || value == "P1") {
        cfg.problem = Problem::P1;
      } else if (value == "p2" || value == "P2") {
        cfg.problem = Problem::P2;
      } else {
        throw ParameterError(path.string() + ":" + std::to_string(lineno) +
                             ": problem must be p1 or p2");
      }
    } else if (key == "mean_power") {
      cfg.mean_channel_power = parse_double(value, key);
    } else if (key == "spa_iterations") {
      cfg.spa_iterations = static_cast<int>(parse_u64(value, key));
    } else {
      throw ParameterError(path.string() + ":" + std::to_string(lineno) +
                           ": unknown config key '" + key + "'");
    }
  }

  if (!schemes_set) {
    cfg.schemes = cfg.problem == Problem::P1
                      ? std::vector<Scheme>{Scheme::FsSa, Scheme::FsSpa,
                                            Scheme::Ts, Scheme::Ps, Scheme::CUp}
                      : std::vector<Scheme>{Scheme::FsSa, Scheme::FsSpa,
                                            Scheme::Ts, Scheme::Ps, Scheme::QUp};
  }
  validate_config(cfg);
  return cfg;
}

std::pair<ChannelRealization, PowerVector> load_channels(
    const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open channel file: " + path.string());
  }
  double bandwidth_hz = 0.0;
  double noise_variance_w = 0.0;
  std::vector<std::complex<double>> gains;
  std::vector<double> etas;
  std::vector<double> powers;

  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq != std::string::npos) {
      const std::string key = trim(line.substr(0, eq));
      const std::string value = trim(line.substr(eq + 1));
      if (key == "bandwidth_hz") {
        bandwidth_hz = parse_double(value, key);
      } else if (key == "noise_variance_w") {
        noise_variance_w = parse_double(value, key);
      } else {
        throw ParameterError(path.string() + ":" + std::to_string(lineno) +
                             ": unknown channel key '" + key + "'");
      }
      continue;
    }
    std::istringstream row(line);
    double re, im, eta, pw;
    if (!(row >> re >> im >> eta >> pw)) {
      throw ParameterError(path.string() + ":" + std::to_string(lineno) +
                           ": expected 'gain_re gain_im eta power_w'");
    }
    std::string leftover;
    if (row >> leftover) {
      throw ParameterError(path.string() + ":" + std::to_string(lineno) +
                           ": trailing tokens after the subcarrier row");
    }
    gains.emplace_back(re, im);
    etas.push_back(eta);
    powers.push_back(pw);
  }
  if (gains.empty()) {
    throw ParameterError(path.string() + ": no subcarrier rows");
  }
  return {ChannelRealization(bandwidth_hz, noise_variance_w, std::move(gains),
                             std::move(etas)),
          PowerVector{std::move(powers)}};
}

void emit_csv(const std::vector<SweepRecord>& records, std::ostream& out,
              bool verbose) {
  if (records.empty()) {
    throw EmptyResultError("no sweep records to emit");
  }
  std::vector<SweepRecord> sorted = records;
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const SweepRecord& a, const SweepRecord& b) {
                     if (a.noise_db != b.noise_db) return a.noise_db < b.noise_db;
                     return scheme_name(a.scheme) < scheme_name(b.scheme);
                   });
  out << kCsvHeader;
  if (verbose) out << ",feedback_bits";
  out << '\n';
  for (const SweepRecord& r : sorted) {
    out << format_g(r.noise_db) << ',' << scheme_name(r.scheme) << ','
        << format_g(r.mean_objective) << ',' << format_g(r.mean_constraint)
        << ',' << format_g(r.mean_info_count) << ','
        << format_g(r.mean_harvest_count) << ','
        << format_g(r.infeasible_fraction) << ',' << r.trials;
    if (verbose) {
      // One feedback bit per subcarrier per trial.
      out << ',' << std::llround(r.mean_info_count + r.mean_harvest_count);
    }
    out << '\n';
  }
}

void emit_csv(const std::vector<SweepRecord>& records,
              const std::filesystem::path& path, bool verbose) {
  std::ofstream out(path);
  if (!out) {
    throw IoError("cannot open output file: " + path.string());
  }
  emit_csv(records, out, verbose);
  out.flush();
  if (!out) {
    throw IoError("failed while writing: " + path.string());
  }
}

std::vector<SweepRecord> parse_csv(std::istream& in) {
  std::string header;
  if (!std::getline(in, header)) {
    throw ParameterError("csv stream is empty");
  }
  if (!header.starts_with(kCsvHeader)) {
    throw ParameterError("unexpected csv header: " + header);
  }
  std::vector<SweepRecord> records;
  std::string line;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    const std::vector<std::string> cells = split(line, ',');
    if (cells.size() < 8) {
      throw ParameterError("csv row has too few cells: " + line);
    }
    SweepRecord r;
    r.noise_db = parse_double(cells[0], "noise_db");
    const auto scheme = parse_scheme(cells[1]);
    if (!scheme) throw ParameterError("unknown scheme in csv: " + cells[1]);
    r.scheme = *scheme;
    r.mean_objective = parse_double(cells[2], "mean_objective");
    r.mean_constraint = parse_double(cells[3], "mean_constraint");
    r.mean_info_count = parse_double(cells[4], "mean_info_count");
    r.mean_harvest_count = parse_double(cells[5], "mean_harvest_count");
    r.infeasible_fraction = parse_double(cells[6], "infeasible_fraction");
    r.trials = parse_u64(cells[7], "trials");
    records.push_back(r);
  }
  return records;
}

std::vector<SweepRecord> parse_csv_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open csv file: " + path.string());
  }
  return parse_csv(in);
}

void write_plot_stub(const std::filesystem::path& script_path,
                     const std::filesystem::path& csv_path) {
  std::ofstream out(script_path);
  if (!out) {
    throw IoError("cannot open plot script for writing: " + script_path.string());
  }
  out << "#!/usr/bin/env python3\n"
         "\"\"\"Plot mean objective vs 1/sigma_z^2 for each scheme in a sweep CSV.\"\"\"\n"
         "import csv\n"
         "from collections import defaultdict\n"
         "\n"
         "import matplotlib.pyplot as plt\n"
         "\n"
         "curves = defaultdict(list)\n"
         "with open("
      << csv_path << ") as fh:\n"
         "    for row in csv.DictReader(fh):\n"
         "        curves[row[\"scheme\"]].append(\n"
         "            (float(row[\"noise_db\"]), float(row[\"mean_objective\"])))\n"
         "\n"
         "for scheme, points in sorted(curves.items()):\n"
         "    points.sort()\n"
         "    plt.plot([x for x, _ in points], [y for _, y in points], marker=\"o\", label=scheme)\n"
         "plt.xlabel(\"1/sigma_z^2 [dB]\")\n"
         "plt.ylabel(\"mean objective\")\n"
         "plt.legend()\n"
         "plt.grid(True)\n"
         "plt.show()\n";
  if (!out) {
    throw IoError("failed while writing: " + script_path.string());
  }
}

}  // namespace swipt
