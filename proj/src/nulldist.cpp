// Copyright 2026 the dirunif authors
// SPDX-License-Identifier: Apache-2.0
#include "dirunif/nulldist.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dirunif/parallel.hpp"
#include "dirunif/rng.hpp"
#include "dirunif/sample.hpp"

namespace dirunif {

namespace {
constexpr int kMaxTerms = 10000;
constexpr double kSqrtTwoPi = 2.506628274631000502415765284811;

double clamp01(double p) { return std::min(1.0, std::max(0.0, p)); }
}  // namespace

double kolmogorov_cdf(double x) {
  if (x <= 0.0) return 0.0;
  if (x < 1.0) {
    // Theta-function form, fast for small x.
    double sum = 0.0;
    const double f = kPi * kPi / (8.0 * x * x);
    for (int m = 1; m <= kMaxTerms; ++m) {
      const double odd = 2.0 * m - 1.0;
      const double term = std::exp(-odd * odd * f);
      sum += term;
      if (term < 1e-15) break;
    }
    return clamp01(kSqrtTwoPi / x * sum);
  }
  double sum = 0.0;
  for (int m = 1; m <= kMaxTerms; ++m) {
    const double term = std::exp(-2.0 * m * m * x * x);
    sum += (m % 2 == 1) ? term : -term;
    if (term < 1e-15) break;
  }
  return clamp01(1.0 - 2.0 * sum);
}

double kuiper_pvalue(double v, std::size_t n) {
  if (v <= 0.0) return 1.0;
  double lead = 0.0, corr = 0.0;
  for (int m = 1; m <= kMaxTerms; ++m) {
    const double a = m * m * v * v;
    const double e = std::exp(-2.0 * a);
    const double t1 = (4.0 * a - 1.0) * e;
    const double t2 = m * m * (4.0 * a - 3.0) * e;
    lead += t1;
    corr += t2;
    if (std::abs(t1) < 1e-12 && std::abs(t2) < 1e-12) break;
  }
  const double p =
      2.0 * lead - 8.0 * v / (3.0 * std::sqrt(static_cast<double>(n))) * corr;
  return clamp01(p);
}

double watson_pvalue(double u) {
  if (u <= 0.0) return 1.0;
  return clamp01(1.0 - kolmogorov_cdf(std::sqrt(u) * kPi));
}

double ajne_pvalue(double a) {
  if (a <= 0.0) return 1.0;
  double sum = 0.0;
  for (int m = 1; m <= kMaxTerms; ++m) {
    const double odd = 2.0 * m - 1.0;
    const double term = std::exp(-kPi * kPi * odd * odd * a / 2.0) / odd;
    sum += (m % 2 == 1) ? term : -term;
    if (term < 1e-14) break;
  }
  return clamp01(4.0 / kPi * sum);
}

double hodges_ajne_pvalue(double h) {
  if (h <= 0.0) return 1.0;
  return clamp01(kolmogorov_cdf(kPi / (2.0 * h)));
}

double range_cdf(double t, std::size_t n) {
  if (n < 2) throw std::invalid_argument("range law requires n >= 2");
  if (t <= 0.0) return 0.0;
  if (t >= kTwoPi) return 1.0;
  const double g = 1.0 - t / kTwoPi;
  double binom = 1.0;
  double sum = 0.0;
  for (std::size_t m = 1; m <= n; ++m) {
    binom *= static_cast<double>(n - m + 1) / static_cast<double>(m);
    const double base = 1.0 - static_cast<double>(m) * g;
    if (base <= 0.0) break;
    const double term = binom * std::pow(base, static_cast<double>(n - 1));
    sum += (m % 2 == 1) ? term : -term;
  }
  return clamp01(sum);
}

namespace {

// Regularized lower incomplete gamma P(a, x) by series expansion; valid for
// x < a + 1.
double gamma_p_series(double a, double x) {
  double ap = a;
  double term = 1.0 / a;
  double sum = term;
  for (int i = 0; i < 1000; ++i) {
    ap += 1.0;
    term *= x / ap;
    sum += term;
    if (std::abs(term) < std::abs(sum) * 1e-16) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Regularized upper incomplete gamma Q(a, x) by Lentz continued fraction;
// valid for x >= a + 1.
double gamma_q_cf(double a, double x) {
  const double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= 1000; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < 1e-16) break;
  }
  return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

}  // namespace

double gamma_q(double a, double x) {
  if (a <= 0.0) throw std::invalid_argument("gamma_q requires a > 0");
  if (x <= 0.0) return 1.0;
  if (x < a + 1.0) return clamp01(1.0 - gamma_p_series(a, x));
  return clamp01(gamma_q_cf(a, x));
}

double chisq_pvalue(double x, double df) {
  if (df < 1.0) throw std::invalid_argument("chisq requires df >= 1");
  if (x <= 0.0) return 1.0;
  return gamma_q(0.5 * df, 0.5 * x);
}

double normal_pvalue(double x, double mean, double variance, NormalTail tail) {
  if (!(variance > 0.0))
    throw std::invalid_argument("normal law requires positive variance");
  const double z = (x - mean) / std::sqrt(variance);
  switch (tail) {
    case NormalTail::upper:
      return 0.5 * std::erfc(z / std::sqrt(2.0));
    case NormalTail::lower:
      return 0.5 * std::erfc(-z / std::sqrt(2.0));
    case NormalTail::two_sided:
      return clamp01(std::erfc(std::abs(z) / std::sqrt(2.0)));
  }
  return 1.0;
}

ChiSqMixture::ChiSqMixture(std::vector<double> weights_sq,
                           std::vector<double> dims, std::size_t replicates,
                           std::uint64_t seed, unsigned workers) {
  if (weights_sq.size() != dims.size())
    throw std::invalid_argument("mixture weight/dimension length mismatch");
  if (weights_sq.empty())
    throw std::invalid_argument("empty chi-squared mixture");
  // Zero-weight terms contribute nothing; drop them up front.
  std::vector<double> w, d;
  for (std::size_t i = 0; i < weights_sq.size(); ++i) {
    if (weights_sq[i] != 0.0) {
      w.push_back(weights_sq[i]);
      d.push_back(dims[i]);
    }
  }
  draws_.assign(replicates, 0.0);
  parallel_for(replicates, workers, [&](std::size_t r) {
    Rng rng(seed, r);
    double sum = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i)
      sum += w[i] * rng.chi_squared(d[i]);
    draws_[r] = sum;
  });
  std::sort(draws_.begin(), draws_.end());
}

double ChiSqMixture::pvalue(double x) const {
  const auto it = std::lower_bound(draws_.begin(), draws_.end(), x);
  const std::size_t exceed = static_cast<std::size_t>(draws_.end() - it);
  return static_cast<double>(exceed + 1) /
         static_cast<double>(draws_.size() + 1);
}

double extreme_value_cdf(double z, const RegimeSpec& regime) {
  switch (regime.regime) {
    case Regime::sub_exponential:
      return 1.0 - std::exp(-std::exp(0.5 * z) / std::sqrt(8.0 * kPi));
    case Regime::exponential: {
      const double beta = regime.beta;
      if (!(beta > 0.0))
        throw std::invalid_argument("exponential regime requires beta > 0");
      const double scale =
          std::sqrt(beta / (2.0 * kPi * (1.0 - std::exp(-4.0 * beta))));
      return 1.0 - std::exp(-scale * std::exp(0.5 * (z + 8.0 * beta)));
    }
    case Regime::super_exponential:
      return 1.0 - std::exp(-std::exp(0.5 * z) / std::sqrt(2.0 * kPi));
  }
  return 0.0;
}

}  // namespace dirunif
