// Copyright 2026 the dirunif authors
// SPDX-License-Identifier: Apache-2.0
#include "dirunif/projection.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dirunif/nulldist.hpp"
#include "dirunif/parallel.hpp"
#include "dirunif/rng.hpp"
#include "dirunif/samplers.hpp"

namespace dirunif {

std::vector<double> project(const DirectionalSample& sample,
                            std::span<const double> direction) {
  if (direction.size() != sample.dim())
    throw std::invalid_argument("projection direction dimension mismatch");
  std::vector<double> y(sample.n());
  for (std::size_t i = 0; i < y.size(); ++i) {
    const auto u = sample.point(i);
    double s = 0.0;
    for (std::size_t j = 0; j < u.size(); ++j) s += u[j] * direction[j];
    y[i] = std::min(1.0, std::max(-1.0, s));
  }
  return y;
}

namespace {

// 64-node Gauss-Legendre rule on [-1, 1], generated by Newton iteration on
// the Legendre recurrence; cached after the first call.
const std::vector<std::pair<double, double>>& gauss_legendre64() {
  static const std::vector<std::pair<double, double>> rule = [] {
    constexpr int n = 64;
    std::vector<std::pair<double, double>> r(n);
    for (int i = 0; i < n; ++i) {
      double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
      double pp = 0.0;
      for (int it = 0; it < 100; ++it) {
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= n; ++k) {
          const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
          p0 = p1;
          p1 = p2;
        }
        pp = n * (x * p1 - p0) / (x * x - 1.0);
        const double dx = p1 / pp;
        x -= dx;
        if (std::abs(dx) < 1e-15) break;
      }
      r[i] = {x, 2.0 / ((1.0 - x * x) * pp * pp)};
    }
    return r;
  }();
  return rule;
}

// Integral of cos^m(phi) over [a, b] by Gauss-Legendre.
double cos_power_integral(double m, double a, double b) {
  const auto& rule = gauss_legendre64();
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  double sum = 0.0;
  for (const auto& [x, w] : rule)
    sum += w * std::pow(std::cos(mid + half * x), m);
  return half * sum;
}

}  // namespace

double projected_null_cdf(double x, std::size_t p) {
  if (p < 2) throw std::invalid_argument("projected cdf requires p >= 2");
  if (x < -1.0) {
    if (x < -1.0 - 1e-12) throw std::invalid_argument("x beyond [-1, 1]");
    x = -1.0;
  }
  if (x > 1.0) {
    if (x > 1.0 + 1e-12) throw std::invalid_argument("x beyond [-1, 1]");
    x = 1.0;
  }
  if (p == 2) return 1.0 - std::acos(x) / kPi;
  if (p == 3) return 0.5 * (1.0 + x);
  // After x = sin(phi) the density becomes proportional to cos^(p-2)(phi).
  const double m = static_cast<double>(p) - 2.0;
  const double phi = std::asin(x);
  const double num = cos_power_integral(m, -0.5 * kPi, phi);
  const double den = cos_power_integral(m, -0.5 * kPi, 0.5 * kPi);
  return std::min(1.0, std::max(0.0, num / den));
}

double projection_ks_statistic(const DirectionalSample& sample,
                               std::span<const double> direction) {
  auto y = project(sample, direction);
  std::sort(y.begin(), y.end());
  const double n = static_cast<double>(y.size());
  double ks = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double f0 = projected_null_cdf(y[i], sample.dim());
    ks = std::max(ks, std::abs(f0 - static_cast<double>(i) / n));
    ks = std::max(ks, std::abs(static_cast<double>(i + 1) / n - f0));
  }
  return ks;
}

ProjectionTestResult single_projection_test(const DirectionalSample& sample,
                                            std::span<const double> direction) {
  const double kn = projection_ks_statistic(sample, direction);
  const double n = static_cast<double>(sample.n());
  // The Kolmogorov limit applies to sqrt(n) K_n.
  const double p = 1.0 - kolmogorov_cdf(std::sqrt(n) * kn);
  return {kn, std::min(1.0, std::max(0.0, p))};
}

namespace {

std::vector<std::vector<double>> draw_directions(std::size_t k, std::size_t p,
                                                 std::uint64_t seed) {
  // Stream 0 of the master seed is reserved for the directions.
  Rng rng(seed, 0);
  std::vector<std::vector<double>> dirs(k, std::vector<double>(p));
  for (auto& d : dirs) {
    for (;;) {
      double s = 0.0;
      for (double& v : d) {
        v = rng.normal();
        s += v * v;
      }
      if (s > 1e-24) {
        const double inv = 1.0 / std::sqrt(s);
        for (double& v : d) v *= inv;
        break;
      }
    }
  }
  return dirs;
}

double min_projection_pvalue(const DirectionalSample& sample,
                             const std::vector<std::vector<double>>& dirs) {
  double best = 1.0;
  for (const auto& d : dirs)
    best = std::min(best, single_projection_test(sample, d).pvalue);
  return best;
}

}  // namespace

ProjectionTestResult multi_projection_test(const DirectionalSample& sample,
                                           const ProjectionConfig& cfg) {
  const std::size_t p = sample.dim();
  const std::size_t k = cfg.k ? cfg.k : ProjectionConfig::default_k(p);
  if (cfg.mc_replicates < 99)
    throw std::invalid_argument(
        "multi-projection calibration needs at least 99 replicates");
  const auto dirs = draw_directions(k, p, cfg.seed);
  const double observed = min_projection_pvalue(sample, dirs);
  if (k == 1) {
    // Single projection: the aggregate is that p-value itself.
    return {observed, observed};
  }
  const std::size_t m = cfg.mc_replicates;
  std::vector<double> null_min(m);
  parallel_for(m, cfg.workers, [&](std::size_t r) {
    // Stream r+1: stream 0 generated the directions.
    const auto data = sample_uniform(
        sample.n(), p, Rng::substream_seed(cfg.seed, r + 1));
    null_min[r] = min_projection_pvalue(data, dirs);
  });
  std::size_t b = 0;
  for (double v : null_min)
    if (v <= observed) ++b;
  const double pv =
      static_cast<double>(b + 1) / static_cast<double>(m + 1);
  return {observed, pv};
}

}  // namespace dirunif
