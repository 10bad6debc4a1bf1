/*
 * Copyright 2026 ccdel authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <thread>

#include <json.hpp>

#include "gbc.hpp"
#include "placement.hpp"
#include "rng.hpp"
#include "solver.hpp"

namespace ccdel {

namespace {

// Trials are split into a fixed number of chunks and chunk results merged in
// chunk order, so sums do not depend on how many workers actually ran.
constexpr unsigned kChunks = 8;

constexpr double kOrderSlack = 1e-9;

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::vector<double> sorted_exponential_gains(std::uint32_t users, std::uint64_t seed) {
  DetRng rng(seed);
  std::vector<double> gains(users);
  for (auto& g : gains) g = rng.unit_exponential();
  std::sort(gains.begin(), gains.end());
  return gains;
}

double orthogonal_time(const LoadProfile& loads, const std::vector<double>& gains) {
  double total = 0.0;
  for (std::size_t i = 0; i < loads.group_count(); ++i)
    total += loads.load(i) / single_user_capacity(gains[i]);
  return total;
}

double concurrent_time(const LoadProfile& loads, const std::vector<double>& gains) {
  if (loads.empty()) return 0.0;
  double hint = orthogonal_time(loads, gains);
  return solve_boundary(boundary_from_loads(loads, gains), hint);
}

struct Moments {
  double sum = 0.0;
  double sumsq = 0.0;
  void add(double v) {
    sum += v;
    sumsq += v * v;
  }
  void merge(const Moments& other) {
    sum += other.sum;
    sumsq += other.sumsq;
  }
};

struct GapStats {
  double max_ratio = 0.0;
  double sum_ratio = 0.0;
  void add(double r) {
    max_ratio = std::max(max_ratio, r);
    sum_ratio += r;
  }
  void merge(const GapStats& other) {
    max_ratio = std::max(max_ratio, other.max_ratio);
    sum_ratio += other.sum_ratio;
  }
};

/// Precomputed per-grid-entry state shared by sweep and verify.
struct GridEntry {
  Rational cache_size;
  SystemParams params;
  bool has_centralized = false;  // integer t
  LoadProfile dec_loads;
  LoadProfile cen_loads;
};

std::vector<GridEntry> prepare_grid(std::uint32_t users, std::uint32_t files,
                                    const std::vector<Rational>& m_grid) {
  std::vector<GridEntry> entries;
  entries.reserve(m_grid.size());
  for (const Rational& m : m_grid) {
    GridEntry e;
    e.cache_size = m;
    e.params = validate_params(SystemParams::create(users, files, m),
                               PlacementMode::decentralized);
    e.dec_loads = group_loads_decentralized(e.params);
    e.has_centralized = e.params.integer_t();
    if (e.has_centralized) e.cen_loads = group_loads_centralized(e.params);
    entries.push_back(std::move(e));
  }
  return entries;
}

/// Runs fn(chunk_index, first_trial, last_trial) across workers and rethrows
/// the first chunk failure, if any.
template <typename Fn>
void run_chunked(std::uint32_t trials, unsigned threads, Fn&& fn) {
  unsigned workers = threads == 0 ? std::thread::hardware_concurrency() : threads;
  if (workers == 0) workers = 1;
  workers = std::min<unsigned>(workers, kChunks);

  std::vector<std::exception_ptr> errors(kChunks);
  auto run_chunk = [&](unsigned c) {
    std::uint32_t first = static_cast<std::uint32_t>(std::uint64_t{trials} * c / kChunks);
    std::uint32_t last = static_cast<std::uint32_t>(std::uint64_t{trials} * (c + 1) / kChunks);
    try {
      fn(c, first, last);
    } catch (...) {
      errors[c] = std::current_exception();
    }
  };

  if (workers <= 1) {
    for (unsigned c = 0; c < kChunks; ++c) run_chunk(c);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (unsigned c = w; c < kChunks; c += workers) run_chunk(c);
      });
    }
    for (auto& th : pool) th.join();
  }
  for (const auto& err : errors)
    if (err) std::rethrow_exception(err);
}

}  // namespace

ChannelState sample_channel(std::uint32_t users, std::uint64_t seed) {
  if (users == 0) throw Error(Errc::range, "need at least one user");
  return ChannelState(sorted_exponential_gains(users, seed));
}

std::vector<Rational> default_m_grid(std::uint32_t files) {
  Rational n(static_cast<std::int64_t>(files));
  return {Rational(0), n / 4, n / 2, n * 3 / 4, n};
}

SweepResult run_sweep(const SweepConfig& config) {
  if (config.trials == 0) throw Error(Errc::range, "trials must be positive");
  SweepConfig cfg = config;
  if (cfg.m_grid.empty()) cfg.m_grid = default_m_grid(cfg.files);
  std::vector<GridEntry> grid = prepare_grid(cfg.users, cfg.files, cfg.m_grid);

  // Per chunk, per grid entry: moments for (mode x scheme) plus gap stats.
  struct EntryAcc {
    Moments co, cp, do_, dp;
    GapStats gap;
  };
  std::vector<std::vector<EntryAcc>> acc(kChunks, std::vector<EntryAcc>(grid.size()));

  run_chunked(cfg.trials, cfg.threads, [&](unsigned c, std::uint32_t first, std::uint32_t last) {
    for (std::uint32_t trial = first; trial < last; ++trial) {
      std::vector<double> gains =
          sorted_exponential_gains(cfg.users, mix_seed(cfg.base_seed, trial));
      for (std::size_t e = 0; e < grid.size(); ++e) {
        const GridEntry& entry = grid[e];
        EntryAcc& a = acc[c][e];
        double t_do = orthogonal_time(entry.dec_loads, gains);
        double t_dp = concurrent_time(entry.dec_loads, gains);
        a.do_.add(t_do);
        a.dp.add(t_dp);
        if (entry.has_centralized) {
          double t_co = orthogonal_time(entry.cen_loads, gains);
          double t_cp = concurrent_time(entry.cen_loads, gains);
          a.co.add(t_co);
          a.cp.add(t_cp);
          a.gap.add(t_co == 0.0 ? 1.0 : t_do / t_co);
        }
      }
    }
  });

  SweepResult result;
  result.config = cfg;
  double trials = static_cast<double>(cfg.trials);
  auto push_row = [&](const Rational& m, PlacementMode mode, Scheme scheme, const Moments& mm) {
    SweepRow row;
    row.cache_size = m;
    row.mode = mode;
    row.scheme = scheme;
    row.trials = cfg.trials;
    row.mean_time = mm.sum / trials;
    double var = (mm.sumsq - mm.sum * mm.sum / trials) / std::max(trials - 1.0, 1.0);
    row.stderr_time = std::sqrt(std::max(var, 0.0) / trials);
    result.rows.push_back(row);
  };

  for (std::size_t e = 0; e < grid.size(); ++e) {
    EntryAcc total;
    for (unsigned c = 0; c < kChunks; ++c) {
      total.co.merge(acc[c][e].co);
      total.cp.merge(acc[c][e].cp);
      total.do_.merge(acc[c][e].do_);
      total.dp.merge(acc[c][e].dp);
      total.gap.merge(acc[c][e].gap);
    }
    const Rational& m = grid[e].cache_size;
    if (grid[e].has_centralized) {
      push_row(m, PlacementMode::centralized, Scheme::orthogonal, total.co);
      push_row(m, PlacementMode::centralized, Scheme::concurrent, total.cp);
    }
    push_row(m, PlacementMode::decentralized, Scheme::orthogonal, total.do_);
    push_row(m, PlacementMode::decentralized, Scheme::concurrent, total.dp);
    if (grid[e].has_centralized) {
      GapRow gap;
      gap.cache_size = m;
      gap.max_ratio = total.gap.max_ratio;
      gap.mean_ratio = total.gap.sum_ratio / trials;
      result.gaps.push_back(gap);
    }
  }
  return result;
}

std::string sweep_csv(const SweepResult& result) {
  std::string out = "M,mode,scheme,mean_time,stderr_time,trials\n";
  for (const SweepRow& row : result.rows) {
    out += format_double(to_double(row.cache_size));
    out += ',';
    out += mode_name(row.mode);
    out += ',';
    out += scheme_name(row.scheme);
    out += ',';
    out += format_double(row.mean_time);
    out += ',';
    out += format_double(row.stderr_time);
    out += ',';
    out += std::to_string(row.trials);
    out += '\n';
  }
  out += "\nM,metric,value\n";
  for (const GapRow& gap : result.gaps) {
    out += format_double(to_double(gap.cache_size)) + ",max_ratio," +
           format_double(gap.max_ratio) + "\n";
    out += format_double(to_double(gap.cache_size)) + ",mean_ratio," +
           format_double(gap.mean_ratio) + "\n";
  }
  return out;
}

std::string VerifyReport::summary() const {
  return std::to_string(checks) + " checks, " + std::to_string(failures.size()) + " failures";
}

VerifyReport verify_theorems(const VerifyConfig& config) {
  if (config.trials == 0) throw Error(Errc::range, "trials must be positive");
  if (!(config.gap_bound >= 1.0))
    throw Error(Errc::range, "gap bound must be at least 1");
  std::vector<std::uint32_t> k_list = config.k_list;
  if (k_list.empty()) k_list = {2, 4, 8};

  VerifyReport report;
  for (std::uint32_t users : k_list) {
    std::vector<GridEntry> grid = prepare_grid(users, users, default_m_grid(users));
    std::uint64_t k_seed = mix_seed(config.base_seed, users);

    struct ChunkOut {
      std::uint64_t checks = 0;
      std::vector<VerifyFailure> failures;
    };
    std::vector<ChunkOut> outs(kChunks);

    run_chunked(config.trials, 0, [&](unsigned c, std::uint32_t first, std::uint32_t last) {
      ChunkOut& out = outs[c];
      for (std::uint32_t trial = first; trial < last; ++trial) {
        std::uint64_t seed = mix_seed(k_seed, trial);
        std::vector<double> gains = sorted_exponential_gains(users, seed);
        auto context = [&](const GridEntry& e) {
          return "K=" + std::to_string(users) + " M=" + rational_to_string(e.cache_size) +
                 " trial=" + std::to_string(trial) + " seed=" + std::to_string(seed);
        };
        for (const GridEntry& entry : grid) {
          double t_do = orthogonal_time(entry.dec_loads, gains);
          double t_dp = concurrent_time(entry.dec_loads, gains);
          ++out.checks;
          if (t_dp > t_do * (1.0 + kOrderSlack)) {
            out.failures.push_back({"time-ordering",
                                    context(entry) + " randomized: concurrent " +
                                        format_double(t_dp) + " > orthogonal " +
                                        format_double(t_do)});
          }
          if (!entry.has_centralized) continue;
          double t_co = orthogonal_time(entry.cen_loads, gains);
          double t_cp = concurrent_time(entry.cen_loads, gains);
          ++out.checks;
          if (t_cp > t_co * (1.0 + kOrderSlack)) {
            out.failures.push_back({"time-ordering",
                                    context(entry) + " deterministic: concurrent " +
                                        format_double(t_cp) + " > orthogonal " +
                                        format_double(t_co)});
          }
          double ratio = t_co == 0.0 ? 1.0 : t_do / t_co;
          ++out.checks;
          if (ratio < 1.0 - kOrderSlack || ratio > config.gap_bound + kOrderSlack) {
            out.failures.push_back({"orthogonal-gap",
                                    context(entry) + " ratio " + format_double(ratio) +
                                        " outside [1, " + format_double(config.gap_bound) +
                                        "]"});
          }
        }
      }
    });

    for (const ChunkOut& out : outs) {
      report.checks += out.checks;
      report.failures.insert(report.failures.end(), out.failures.begin(), out.failures.end());
    }

    // Equal gains collapse the region boundary onto the orthogonal point, so
    // the two schemes must coincide.
    std::vector<double> equal_gains(users, 1.0);
    // Strictly increasing gains keep at least two distinct group rates, so
    // concurrent must win outright whenever there are two or more groups.
    std::vector<double> rising_gains(users);
    for (std::uint32_t i = 0; i < users; ++i) rising_gains[i] = static_cast<double>(i + 1);

    for (const GridEntry& entry : grid) {
      auto deterministic_cases = [&](const LoadProfile& loads, const char* mode_label) {
        if (loads.empty()) return;
        double t_o = orthogonal_time(loads, equal_gains);
        double t_p = concurrent_time(loads, equal_gains);
        ++report.checks;
        if (std::fabs(t_p - t_o) > kOrderSlack * std::max(t_o, 1.0)) {
          report.failures.push_back({"equal-gain-equality",
                                     "K=" + std::to_string(users) + " M=" +
                                         rational_to_string(entry.cache_size) + " " + mode_label +
                                         ": concurrent " + format_double(t_p) +
                                         " != orthogonal " + format_double(t_o)});
        }
        if (loads.group_count() >= 2) {
          double s_o = orthogonal_time(loads, rising_gains);
          double s_p = concurrent_time(loads, rising_gains);
          ++report.checks;
          if (!(s_o - s_p > 1e-12 * s_o)) {
            report.failures.push_back({"strict-improvement",
                                       "K=" + std::to_string(users) + " M=" +
                                           rational_to_string(entry.cache_size) + " " +
                                           mode_label + ": concurrent " + format_double(s_p) +
                                           " not strictly below orthogonal " +
                                           format_double(s_o)});
          }
        }
      };
      deterministic_cases(entry.dec_loads, "randomized");
      if (entry.has_centralized) deterministic_cases(entry.cen_loads, "deterministic");
    }
  }
  return report;
}

std::string verify_to_json(const VerifyReport& report, int indent) {
  nlohmann::ordered_json j;
  j["ok"] = report.ok();
  j["checks"] = report.checks;
  nlohmann::ordered_json failures = nlohmann::ordered_json::array();
  for (const VerifyFailure& f : report.failures) {
    failures.push_back({{"suite", f.suite}, {"detail", f.detail}});
  }
  j["failures"] = std::move(failures);
  return j.dump(indent);
}

}  // namespace ccdel
