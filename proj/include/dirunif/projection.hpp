// Copyright 2026 the dirunif authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "dirunif/sample.hpp"

namespace dirunif {

struct ProjectionConfig {
  std::size_t k = 0;              // 0 = default by dimension (25 / 100)
  std::uint64_t seed = 1;         // drives directions and calibration
  std::size_t mc_replicates = 999;
  unsigned workers = 0;

  static std::size_t default_k(std::size_t p) { return p == 2 ? 25 : 100; }
};

/// Projections Y_i = U_i' direction, clamped to [-1, 1].
std::vector<double> project(const DirectionalSample& sample,
                            std::span<const double> direction);

/// Null cdf of a single coordinate of a uniform vector on S^(p-1). Closed
/// forms at p = 2, 3; otherwise Gauss-Legendre quadrature of the density
/// proportional to (1-x^2)^((p-3)/2) after the substitution x = sin(phi).
double projected_null_cdf(double x, std::size_t p);

/// Kolmogorov-Smirnov distance sup_x |F_n(x) - F0(x)| over the projected
/// sample, computed exactly at the jump points.
double projection_ks_statistic(const DirectionalSample& sample,
                               std::span<const double> direction);

struct ProjectionTestResult {
  double statistic;  // K_n for a single direction, min p-value otherwise
  double pvalue;
};

/// Single-projection test; p-value 1 - K(sqrt(n) K_n).
ProjectionTestResult single_projection_test(const DirectionalSample& sample,
                                            std::span<const double> direction);

/// k-projection test: draws directions H_1..H_k from cfg.seed, uses the
/// minimum of the k single-projection p-values, and calibrates that minimum
/// by Monte Carlo conditionally on the same directions. Returns the
/// Monte Carlo p-value (b+1)/(M+1).
ProjectionTestResult multi_projection_test(const DirectionalSample& sample,
                                           const ProjectionConfig& cfg);

}  // namespace dirunif
