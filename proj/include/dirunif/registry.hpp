// Copyright 2026 the dirunif authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dirunif/mc.hpp"
#include "dirunif/nulldist.hpp"
#include "dirunif/sample.hpp"
#include "dirunif/sobolev.hpp"

namespace dirunif {

enum class PvMethod { exact, asymptotic, monte_carlo };

std::string to_string(PvMethod method);

struct TestOutcome {
  std::string test;
  double statistic = 0.0;
  double p_value = 1.0;
  PvMethod method = PvMethod::asymptotic;
  std::size_t n = 0;
  std::size_t p = 0;
  std::vector<std::string> warnings;
  // Extra key/value detail (selected order, directions count, ...) echoed
  // into the CLI config object.
  std::vector<std::pair<std::string, std::string>> extras;
};

struct RunOptions {
  enum class Method { automatic, exact, asymptotic, monte_carlo };
  Method method = Method::automatic;
  std::size_t mc_replicates = 999;
  std::uint64_t seed = 1;
  unsigned workers = 0;
  RegimeSpec regime{};
  bool regime_auto = true;
  bool rao_normal = false;               // normal reading of the Rao law
  bool coherence_packing_roles = false;  // corrected dimension/count pairing
  bool hermans_rasson_centered = false;  // drop the additive constants
  std::size_t projection_k = 0;          // 0 = default by dimension
  int rothman_truncation = kRothmanDefaultTruncation;
  int jupp_cap = kJuppDefaultCap;
  std::optional<McTail> tail_override;
};

/// A test id with its inline parameters resolved: plain names, or
/// "rothman:<t>" and "sobolev:<weights-file>".
struct ResolvedTest {
  std::string id;      // canonical echo
  std::string family;  // base name
  double rothman_t = 0.5;
  SobolevWeights custom_weights;
};

ResolvedTest resolve_test(const std::string& id);

/// Reads one weight per line (comments and blanks skipped) for
/// "sobolev:<file>".
SobolevWeights load_weights_file(const std::filesystem::path& path);

/// Test ids applicable to data of dimension p, in reporting order. The two
/// high-dimensional procedures are included only when `highdim` is set.
std::vector<std::string> default_test_ids(std::size_t p, bool highdim);

bool is_circular_only(const std::string& family);
bool is_highdim(const std::string& family);
std::size_t min_sample_size(const std::string& family);
McTail natural_tail(const std::string& family);

/// Statistic evaluator used for Monte Carlo calibration. Captures all test
/// parameters; for the projection family the directions are fixed from
/// options.seed so every replicate sees the same projections.
StatisticFn statistic_for(const ResolvedTest& test, const RunOptions& options,
                          std::size_t n, std::size_t p);

/// What `--pvalue auto` resolves to for this test on data of dimension p.
PvMethod default_method(const ResolvedTest& test, std::size_t p);

/// Runs one test end to end: guards, statistic, p-value by the resolved
/// method. Throws std::invalid_argument with a diagnostic naming the test
/// and dimension on a test/dimension mismatch.
TestOutcome run_test(const std::string& id, const DirectionalSample& sample,
                     const RunOptions& options);

}  // namespace dirunif
