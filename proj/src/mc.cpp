// Copyright 2026 the dirunif authors
// SPDX-License-Identifier: Apache-2.0
#include "dirunif/mc.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstring>
#include <fstream>
#include <stdexcept>

#include "dirunif/parallel.hpp"
#include "dirunif/registry.hpp"
#include "dirunif/rng.hpp"

namespace dirunif {

std::vector<double> mc_null_draws(const StatisticFn& statistic, std::size_t n,
                                  std::size_t p, std::size_t replicates,
                                  std::uint64_t seed, unsigned workers) {
  std::vector<double> draws(replicates);
  parallel_for(replicates, workers, [&](std::size_t r) {
    const auto data = sample_uniform(n, p, Rng::substream_seed(seed, r));
    draws[r] = statistic(data);
  });
  std::sort(draws.begin(), draws.end());
  return draws;
}

std::size_t count_exceedances(const std::vector<double>& sorted_null,
                              double observed, McTail tail) {
  switch (tail) {
    case McTail::upper:
      return static_cast<std::size_t>(
          sorted_null.end() - std::lower_bound(sorted_null.begin(),
                                               sorted_null.end(), observed));
    case McTail::lower:
      return static_cast<std::size_t>(
          std::upper_bound(sorted_null.begin(), sorted_null.end(), observed) -
          sorted_null.begin());
    case McTail::two_sided: {
      const double a = std::abs(observed);
      if (a == 0.0) return sorted_null.size();
      const std::size_t hi = static_cast<std::size_t>(
          sorted_null.end() -
          std::lower_bound(sorted_null.begin(), sorted_null.end(), a));
      const std::size_t lo = static_cast<std::size_t>(
          std::upper_bound(sorted_null.begin(), sorted_null.end(), -a) -
          sorted_null.begin());
      return hi + lo;
    }
  }
  return 0;
}

McResult mc_pvalue(const DirectionalSample& data, const StatisticFn& statistic,
                   const McConfig& cfg, McTail tail) {
  if (cfg.replicates < 99)
    throw std::invalid_argument(
        "Monte Carlo p-values need at least 99 replicates");
  const auto start = std::chrono::steady_clock::now();
  McResult res;
  res.observed = statistic(data);
  auto draws = mc_null_draws(statistic, data.n(), data.dim(), cfg.replicates,
                             cfg.seed, cfg.workers);
  res.exceedances = count_exceedances(draws, res.observed, tail);
  res.pvalue = static_cast<double>(res.exceedances + 1) /
               static_cast<double>(cfg.replicates + 1);
  if (cfg.keep_null_draws) res.null_draws = std::move(draws);
  res.seconds = std::chrono::duration<double>(
                    std::chrono::steady_clock::now() - start)
                    .count();
  return res;
}

// ------------------------------------------------------------ null cache --
namespace {
constexpr char kCacheMagic[4] = {'D', 'U', 'N', 'C'};
constexpr std::uint32_t kCacheVersion = 1;
}  // namespace

void null_cache_store(const std::filesystem::path& path,
                      const NullCacheMeta& meta,
                      const std::vector<double>& sorted_draws) {
  if (sorted_draws.size() != meta.replicates)
    throw std::invalid_argument("cache draw count does not match header");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out.write(kCacheMagic, 4);
  auto put = [&out](const void* ptr, std::size_t bytes) {
    out.write(static_cast<const char*>(ptr), static_cast<std::streamsize>(bytes));
  };
  put(&kCacheVersion, sizeof kCacheVersion);
  const std::uint32_t id_len =
      static_cast<std::uint32_t>(meta.statistic_id.size());
  put(&id_len, sizeof id_len);
  put(meta.statistic_id.data(), id_len);
  put(&meta.n, sizeof meta.n);
  put(&meta.p, sizeof meta.p);
  put(&meta.replicates, sizeof meta.replicates);
  put(&meta.seed, sizeof meta.seed);
  put(sorted_draws.data(), sorted_draws.size() * sizeof(double));
}

std::optional<std::vector<double>> null_cache_load(
    const std::filesystem::path& path, const NullCacheMeta& meta) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  char magic[4];
  in.read(magic, 4);
  if (!in || std::memcmp(magic, kCacheMagic, 4) != 0) return std::nullopt;
  auto get = [&in](void* ptr, std::size_t bytes) {
    in.read(static_cast<char*>(ptr), static_cast<std::streamsize>(bytes));
    return static_cast<bool>(in);
  };
  std::uint32_t version = 0, id_len = 0;
  if (!get(&version, sizeof version) || version != kCacheVersion)
    return std::nullopt;
  if (!get(&id_len, sizeof id_len)) return std::nullopt;
  std::string id(id_len, '\0');
  if (!get(id.data(), id_len)) return std::nullopt;
  NullCacheMeta found;
  found.statistic_id = id;
  if (!get(&found.n, sizeof found.n) || !get(&found.p, sizeof found.p) ||
      !get(&found.replicates, sizeof found.replicates) ||
      !get(&found.seed, sizeof found.seed))
    return std::nullopt;
  if (found.statistic_id != meta.statistic_id || found.n != meta.n ||
      found.p != meta.p || found.replicates != meta.replicates ||
      found.seed != meta.seed)
    return std::nullopt;
  std::vector<double> draws(found.replicates);
  if (!get(draws.data(), draws.size() * sizeof(double))) return std::nullopt;
  return draws;
}

// ------------------------------------------------------------ studies -----
std::vector<StudyRow> level_power_study(const std::vector<StudyCell>& grid,
                                        const StudyConfig& cfg) {
  if (cfg.mc_null_size < 99)
    throw std::invalid_argument(
        "study null-draw sets need at least 99 replicates");
  std::vector<StudyRow> rows;
  rows.reserve(grid.size());
  for (std::size_t ci = 0; ci < grid.size(); ++ci) {
    const StudyCell& cell = grid[ci];
    const std::uint64_t cell_seed = Rng::substream_seed(cfg.seed, ci);
    const ResolvedTest test = resolve_test(cell.test_id);

    RunOptions options;
    options.seed = Rng::substream_seed(cell_seed, 0);  // projection directions
    options.workers = cfg.workers;
    options.mc_replicates = cfg.mc_null_size;

    const StatisticFn stat = statistic_for(test, options, cell.n, cell.p);
    const PvMethod method = default_method(test, cell.p);
    const McTail tail = natural_tail(test.family);

    // Monte Carlo defaults share one null-draw set per cell.
    std::vector<double> null_draws;
    if (method == PvMethod::monte_carlo)
      null_draws = mc_null_draws(stat, cell.n, cell.p, cfg.mc_null_size,
                                 Rng::substream_seed(cell_seed, 1),
                                 cfg.workers);

    // Mixture laws are cached process-wide; build once with all workers
    // before fanning out the single-threaded replicate loop.
    if (method == PvMethod::asymptotic &&
        (test.family == "rothman" || test.family == "sobolev")) {
      const auto warm = sample_uniform(std::max<std::size_t>(cell.n, 2),
                                       cell.p, Rng::substream_seed(cell_seed, 3));
      run_test(cell.test_id, warm, options);
    }

    std::vector<unsigned char> reject(cfg.replicates, 0);
    const std::uint64_t data_seed = Rng::substream_seed(cell_seed, 2);
    parallel_for(cfg.replicates, cfg.workers, [&](std::size_t r) {
      const auto data = draw_alternative(cell.alternative, cell.n, cell.p,
                                         Rng::substream_seed(data_seed, r));
      double pvalue;
      if (method == PvMethod::monte_carlo) {
        const double value = stat(data);
        const std::size_t b = count_exceedances(null_draws, value, tail);
        pvalue = static_cast<double>(b + 1) /
                 static_cast<double>(null_draws.size() + 1);
      } else {
        RunOptions per = options;
        per.workers = 1;
        const auto outcome = run_test(cell.test_id, data, per);
        pvalue = outcome.p_value;
      }
      reject[r] = pvalue <= cell.alpha ? 1 : 0;
    });

    StudyRow row;
    row.cell = cell;
    row.replicates = cfg.replicates;
    for (auto b : reject) row.rejections += b;
    row.rate = static_cast<double>(row.rejections) /
               static_cast<double>(cfg.replicates);
    row.std_error =
        std::sqrt(row.rate * (1.0 - row.rate) /
                  static_cast<double>(cfg.replicates));
    rows.push_back(row);
  }
  return rows;
}

}  // namespace dirunif
