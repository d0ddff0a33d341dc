// Copyright 2026 the dirunif authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "dirunif/sample.hpp"
#include "dirunif/samplers.hpp"

namespace dirunif {

using StatisticFn = std::function<double(const DirectionalSample&)>;

enum class McTail { upper, lower, two_sided };

struct McConfig {
  std::size_t replicates = 999;  // must be >= 99
  std::uint64_t seed = 1;
  unsigned workers = 0;          // 0 = hardware concurrency
  bool keep_null_draws = false;
};

struct McResult {
  double observed = 0.0;
  std::size_t exceedances = 0;
  double pvalue = 1.0;                // (b+1)/(M+1)
  std::vector<double> null_draws;     // sorted; only if requested
  double seconds = 0.0;
};

/// Null draws of a statistic over M uniform datasets of shape (n, p).
/// Replicate r uses the substream keyed by (seed, r), so the result does
/// not depend on the worker count. Returned sorted ascending.
std::vector<double> mc_null_draws(const StatisticFn& statistic, std::size_t n,
                                  std::size_t p, std::size_t replicates,
                                  std::uint64_t seed, unsigned workers = 0);

/// Monte Carlo p-value of an observed dataset: simulates uniform datasets
/// of the same shape and counts replicates at least as extreme for the
/// requested tail (ties count as exceedances).
McResult mc_pvalue(const DirectionalSample& data, const StatisticFn& statistic,
                   const McConfig& cfg, McTail tail = McTail::upper);

/// Exceedance count of `observed` against sorted null draws.
std::size_t count_exceedances(const std::vector<double>& sorted_null,
                              double observed, McTail tail);

// ------------------------------------------------------------ null cache --
struct NullCacheMeta {
  std::string statistic_id;
  std::uint64_t n = 0;
  std::uint32_t p = 0;
  std::uint64_t replicates = 0;
  std::uint64_t seed = 0;
};

/// Binary cache of sorted null draws; a hit requires an exact header match.
void null_cache_store(const std::filesystem::path& path,
                      const NullCacheMeta& meta,
                      const std::vector<double>& sorted_draws);
std::optional<std::vector<double>> null_cache_load(
    const std::filesystem::path& path, const NullCacheMeta& meta);

// ------------------------------------------------------------ studies -----
struct StudyCell {
  std::string test_id;
  AlternativeSpec alternative;
  std::size_t n = 100;
  std::size_t p = 2;
  double alpha = 0.05;
};

struct StudyRow {
  StudyCell cell;
  std::size_t replicates = 0;
  std::size_t rejections = 0;
  double rate = 0.0;
  double std_error = 0.0;
};

struct StudyConfig {
  std::size_t replicates = 1000;   // datasets per cell
  std::size_t mc_null_size = 9999; // null draws for Monte Carlo p-values
  std::uint64_t seed = 1;
  unsigned workers = 0;
};

/// Rejection-rate table over a grid of (test, alternative, n, p, alpha)
/// cells. Tests whose default p-value method is Monte Carlo share one
/// null-draw set per cell, drawn once with mc_null_size replicates.
std::vector<StudyRow> level_power_study(const std::vector<StudyCell>& grid,
                                        const StudyConfig& cfg);

}  // namespace dirunif
