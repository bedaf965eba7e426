#include "swipt/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <stdexcept>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "swipt/allocation.hpp"
#include "swipt/baselines.hpp"
#include "swipt/errors.hpp"

namespace swipt {

std::string scheme_name(Scheme s) {
  switch (s) {
    case Scheme::FsSa: return "FS-SA";
    case Scheme::FsSpa: return "FS-SPA";
    case Scheme::Ts: return "TS";
    case Scheme::Ps: return "PS";
    case Scheme::CUp: return "C_up";
    case Scheme::QUp: return "Q_up";
  }
  throw ParameterError("unknown scheme");
}

std::optional<Scheme> parse_scheme(const std::string& token) {
  if (token == "FS-SA") return Scheme::FsSa;
  if (token == "FS-SPA") return Scheme::FsSpa;
  if (token == "TS") return Scheme::Ts;
  if (token == "PS") return Scheme::Ps;
  if (token == "C_up") return Scheme::CUp;
  if (token == "Q_up") return Scheme::QUp;
  return std::nullopt;
}

void validate_config(const SimConfig& cfg) {
  if (cfg.num_subcarriers == 0) throw ParameterError("k must be >= 1");
  if (cfg.trials == 0) throw ParameterError("trials must be >= 1");
  if (cfg.noise_grid_db.empty()) throw ParameterError("noise grid is empty");
  if (cfg.schemes.empty()) throw ParameterError("no schemes requested");
  if (!(cfg.bandwidth_khz > 0.0)) throw ParameterError("bandwidth must be positive");
  if (!(cfg.efficiency > 0.0) || cfg.efficiency > 1.0) {
    throw ParameterError("eta must lie in (0, 1]");
  }
  if (!(cfg.total_power_mw > 0.0)) throw ParameterError("total power must be positive");
  if (cfg.resolution < 1) throw ParameterError("resolution must be >= 1");
  if (!(cfg.mean_channel_power > 0.0)) {
    throw ParameterError("mean channel power must be positive");
  }
  if (cfg.spa_iterations < 1) throw ParameterError("spa_iterations must be >= 1");
  if (cfg.p_t_max_mw && !(*cfg.p_t_max_mw > 0.0)) {
    throw ParameterError("p_t_max must be positive");
  }
  if (cfg.problem == Problem::P2 && cfg.p_t_max_mw &&
      *cfg.p_t_max_mw * 1e-3 < cfg.equal_power_w()) {
    throw ParameterError(
        "p_t_max below the equal per-subcarrier power leaves the capped "
        "reallocation infeasible");
  }
  for (Scheme s : cfg.schemes) {
    if (s == Scheme::CUp && cfg.problem != Problem::P1) {
      throw ParameterError("scheme C_up applies to problem p1 only");
    }
    if (s == Scheme::QUp && cfg.problem != Problem::P2) {
      throw ParameterError("scheme Q_up applies to problem p2 only");
    }
  }
  if (cfg.fixed_gains && cfg.fixed_gains->size() != cfg.num_subcarriers) {
    throw ParameterError("fixed gains length must equal k");
  }
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

int resolve_threads() {
#ifdef _OPENMP
  if (const char* env = std::getenv("SWIPT_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && v > 0) return static_cast<int>(v);
  }
  return omp_get_max_threads();
#else
  return 1;
#endif
}

double constraint_of(const SimConfig& cfg) {
  return cfg.problem == Problem::P1 ? cfg.q_min_w() : cfg.c_min_bps();
}

SchemeResult from_outcome(const SolveOutcome& out) {
  SchemeResult r;
  r.objective = out.objective;
  r.constraint_value = out.constraint_value;
  r.info_count = static_cast<double>(out.mask.info_count());
  r.harvest_count = static_cast<double>(out.mask.harvest_count());
  r.feasible = out.feasible;
  return r;
}

SchemeResult from_switch(const SwitchSolution& s, Problem problem,
                         std::size_t k) {
  SchemeResult r;
  if (problem == Problem::P1) {
    r.objective = s.capacity_bps;
    r.constraint_value = s.harvested_w;
  } else {
    r.objective = s.harvested_w;
    r.constraint_value = s.capacity_bps;
  }
  const double kd = static_cast<double>(k);
  r.info_count = (1.0 - s.ratio) * kd;
  r.harvest_count = s.ratio * kd;
  r.feasible = s.feasible;
  return r;
}

SchemeResult infeasible_bound(const SubcarrierMetrics& m, Problem problem) {
  SchemeResult r;
  r.feasible = false;
  if (problem == Problem::P1) {
    r.constraint_value = m.total_harvest();
    r.harvest_count = static_cast<double>(m.size());
  } else {
    r.constraint_value = m.total_capacity();
    r.info_count = static_cast<double>(m.size());
  }
  return r;
}

}  // namespace

Rng derive_trial_rng(std::uint64_t seed, std::size_t noise_index,
                     std::uint64_t trial_index) {
  std::uint64_t h = splitmix64(seed);
  h = splitmix64(h ^ splitmix64(static_cast<std::uint64_t>(noise_index) + 1));
  h = splitmix64(h ^ splitmix64(trial_index + 1));
  return Rng(h);
}

std::vector<SchemeResult> evaluate_schemes(const SimConfig& cfg,
                                           const ChannelRealization& ch) {
  const PowerVector equal =
      PowerVector::uniform(cfg.num_subcarriers, cfg.equal_power_w());
  const SubcarrierMetrics m = compute_metrics(ch, equal);
  const double constraint = constraint_of(cfg);

  std::vector<SchemeResult> out;
  out.reserve(cfg.schemes.size());
  for (Scheme s : cfg.schemes) {
    switch (s) {
      case Scheme::FsSa: {
        const SolveOutcome o = cfg.problem == Problem::P1
                                   ? solve_p1(m, constraint, cfg.resolution)
                                   : solve_p2(m, constraint, cfg.resolution);
        out.push_back(from_outcome(o));
        break;
      }
      case Scheme::FsSpa: {
        const SolveOutcome o = spa_pipeline(
            ch, cfg.problem, constraint, cfg.equal_power_w(),
            cfg.problem == Problem::P2 ? cfg.cap_w() : std::nullopt,
            cfg.spa_iterations, cfg.resolution);
        out.push_back(from_outcome(o));
        break;
      }
      case Scheme::Ts: {
        const Objective obj = cfg.problem == Problem::P1 ? Objective::Capacity
                                                         : Objective::Harvest;
        out.push_back(from_switch(ts_solve(m, obj, constraint), cfg.problem,
                                  cfg.num_subcarriers));
        break;
      }
      case Scheme::Ps: {
        const Objective obj = cfg.problem == Problem::P1 ? Objective::Capacity
                                                         : Objective::Harvest;
        out.push_back(from_switch(ps_solve(m, ch, equal, obj, constraint),
                                  cfg.problem, cfg.num_subcarriers));
        break;
      }
      case Scheme::CUp: {
        try {
          const UpperBound ub = upper_bound_c(m, constraint);
          SchemeResult r;
          r.objective = ub.bound;
          double info_mass = 0.0;
          double harvested = 0.0;
          for (std::size_t k = 0; k < m.size(); ++k) {
            info_mass += ub.fractional[k];
            harvested += (1.0 - ub.fractional[k]) * m.harvests_w[k];
          }
          r.constraint_value = harvested;
          r.info_count = info_mass;
          r.harvest_count = static_cast<double>(m.size()) - info_mass;
          r.feasible = true;
          out.push_back(r);
        } catch (const InfeasibleConstraint&) {
          out.push_back(infeasible_bound(m, cfg.problem));
        }
        break;
      }
      case Scheme::QUp: {
        try {
          const UpperBound ub = upper_bound_q(m, constraint);
          SchemeResult r;
          r.objective = ub.bound;
          double harvest_mass = 0.0;
          double capacity = 0.0;
          for (std::size_t k = 0; k < m.size(); ++k) {
            harvest_mass += ub.fractional[k];
            capacity += (1.0 - ub.fractional[k]) * m.capacities_bps[k];
          }
          r.constraint_value = capacity;
          r.harvest_count = harvest_mass;
          r.info_count = static_cast<double>(m.size()) - harvest_mass;
          r.feasible = true;
          out.push_back(r);
        } catch (const InfeasibleConstraint&) {
          out.push_back(infeasible_bound(m, cfg.problem));
        }
        break;
      }
    }
  }
  return out;
}

namespace {

ChannelRealization draw_channel(const SimConfig& cfg, double noise_w,
                                Rng& rng) {
  if (cfg.fixed_gains) {
    return ChannelRealization(
        cfg.bandwidth_hz(), noise_w, *cfg.fixed_gains,
        std::vector<double>(cfg.num_subcarriers, cfg.efficiency));
  }
  return make_rayleigh_channel(cfg.num_subcarriers, cfg.bandwidth_hz(),
                               noise_w, cfg.efficiency, rng,
                               cfg.mean_channel_power);
}

void evaluate_one_trial(const SimConfig& cfg, std::size_t noise_index,
                        std::uint64_t trial, double noise_w,
                        SchemeResult* slab_row) {
  Rng rng = derive_trial_rng(cfg.seed, noise_index, trial);
  const ChannelRealization ch = draw_channel(cfg, noise_w, rng);
  const std::vector<SchemeResult> eval = evaluate_schemes(cfg, ch);
  std::copy(eval.begin(), eval.end(), slab_row);
}

// Ordered reduction over the trial-indexed slab; identical for any worker
// count because the accumulation order is fixed.
void reduce_noise_point(const SimConfig& cfg, double noise_db,
                        const std::vector<SchemeResult>& slab,
                        std::vector<SweepRecord>& records) {
  const std::size_t num_schemes = cfg.schemes.size();
  for (std::size_t s = 0; s < num_schemes; ++s) {
    SweepRecord rec;
    rec.noise_db = noise_db;
    rec.scheme = cfg.schemes[s];
    rec.trials = cfg.trials;
    std::uint64_t feasible = 0;
    double sum_obj = 0.0, sum_con = 0.0, sum_info = 0.0, sum_harv = 0.0;
    for (std::uint64_t t = 0; t < cfg.trials; ++t) {
      const SchemeResult& r = slab[t * num_schemes + s];
      if (!r.feasible) continue;
      ++feasible;
      sum_obj += r.objective;
      sum_con += r.constraint_value;
      sum_info += r.info_count;
      sum_harv += r.harvest_count;
    }
    if (feasible > 0) {
      const double n = static_cast<double>(feasible);
      rec.mean_objective = sum_obj / n;
      rec.mean_constraint = sum_con / n;
      rec.mean_info_count = sum_info / n;
      rec.mean_harvest_count = sum_harv / n;
    }
    rec.infeasible_fraction =
        static_cast<double>(cfg.trials - feasible) / static_cast<double>(cfg.trials);
    records.push_back(rec);
  }
}

}  // namespace

std::vector<SweepRecord> run_sweep(const SimConfig& cfg) {
  validate_config(cfg);
  const std::size_t num_schemes = cfg.schemes.size();
  std::vector<SweepRecord> records;
  records.reserve(cfg.noise_grid_db.size() * num_schemes);
  const int threads = resolve_threads();

  for (std::size_t ni = 0; ni < cfg.noise_grid_db.size(); ++ni) {
    const double noise_w = SimConfig::noise_variance_w(cfg.noise_grid_db[ni]);
    std::vector<SchemeResult> slab(cfg.trials * num_schemes);
    std::exception_ptr failure = nullptr;
    std::atomic<bool> failed{false};

#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 16) num_threads(threads)
#endif
    for (std::int64_t t = 0; t < static_cast<std::int64_t>(cfg.trials); ++t) {
      if (failed.load(std::memory_order_relaxed)) continue;
      try {
        evaluate_one_trial(cfg, ni, static_cast<std::uint64_t>(t), noise_w,
                           slab.data() + static_cast<std::size_t>(t) * num_schemes);
      } catch (...) {
#ifdef _OPENMP
#pragma omp critical(swipt_sweep_failure)
#endif
        {
          if (!failure) failure = std::current_exception();
          failed.store(true, std::memory_order_relaxed);
        }
      }
    }
    (void)threads;
    if (failure) {
      try {
        std::rethrow_exception(failure);
      } catch (const ResourceLimit& e) {
        throw ResourceLimit(std::string(e.what()) + " (noise point " +
                            std::to_string(cfg.noise_grid_db[ni]) + " dB)");
      }
    }
    reduce_noise_point(cfg, cfg.noise_grid_db[ni], slab, records);
  }
  return records;
}

std::vector<SweepRecord> run_sweep_serial(const SimConfig& cfg) {
  validate_config(cfg);
  const std::size_t num_schemes = cfg.schemes.size();
  std::vector<SweepRecord> records;
  records.reserve(cfg.noise_grid_db.size() * num_schemes);

  for (std::size_t ni = 0; ni < cfg.noise_grid_db.size(); ++ni) {
    const double noise_w = SimConfig::noise_variance_w(cfg.noise_grid_db[ni]);
    std::vector<SchemeResult> slab(cfg.trials * num_schemes);
    try {
      for (std::uint64_t t = 0; t < cfg.trials; ++t) {
        evaluate_one_trial(cfg, ni, t, noise_w,
                           slab.data() + static_cast<std::size_t>(t) * num_schemes);
      }
    } catch (const ResourceLimit& e) {
      throw ResourceLimit(std::string(e.what()) + " (noise point " +
                          std::to_string(cfg.noise_grid_db[ni]) + " dB)");
    }
    reduce_noise_point(cfg, cfg.noise_grid_db[ni], slab, records);
  }
  return records;
}

}  // namespace swipt
