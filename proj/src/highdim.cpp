// Copyright 2026 the dirunif authors
// SPDX-License-Identifier: Apache-2.0
#include "dirunif/highdim.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace dirunif {

double rayleigh_standardized(const DirectionalSample& sample) {
  const double p = static_cast<double>(sample.dim());
  const auto m = sample.mean();
  double norm2 = 0.0;
  for (double v : m) norm2 += v * v;
  const double rn = static_cast<double>(sample.n()) * p * norm2;
  return (rn - p) / std::sqrt(2.0 * p);
}

namespace {

// Pairwise dot product; compensated (Neumaier) summation for very long
// vectors where plain accumulation loses cancellation digits.
double pair_dot(std::span<const double> u, std::span<const double> v) {
  if (u.size() <= 10000) {
    double s = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) s += u[i] * v[i];
    return s;
  }
  double sum = 0.0, comp = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double term = u[i] * v[i];
    const double t = sum + term;
    if (std::abs(sum) >= std::abs(term))
      comp += (sum - t) + term;
    else
      comp += (term - t) + sum;
    sum = t;
  }
  return sum + comp;
}

}  // namespace

double coherence(const DirectionalSample& sample) {
  const std::size_t n = sample.n();
  if (n < 2) throw std::invalid_argument("coherence requires n >= 2");
  double best = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto ui = sample.point(i);
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d = std::abs(pair_dot(ui, sample.point(j)));
      if (d > best) best = d;
    }
  }
  return std::min(best, 1.0);
}

RegimeSpec regime_classify(std::size_t n, double p) {
  if (n < 3 || p < 3.0)
    throw std::invalid_argument("regime classification needs n, p >= 3");
  const double r = std::log(p) / static_cast<double>(n);
  if (r < 0.01) return {Regime::sub_exponential, 0.0};
  if (r > 10.0) return {Regime::super_exponential, 0.0};
  return {Regime::exponential, r};
}

CoherenceResult coherence_statistic(const DirectionalSample& sample,
                                    RegimeSpec regime, bool packing_roles) {
  const double n = static_cast<double>(sample.n());
  const double p = static_cast<double>(sample.dim());
  // The count entering the log log term must exceed e.
  if (packing_roles ? n <= std::exp(1.0) : p <= std::exp(1.0))
    throw std::invalid_argument(packing_roles
                                    ? "packing-role coherence needs n > e"
                                    : "coherence statistics need p > e");
  if (regime.regime == Regime::exponential && regime.beta <= 0.0)
    regime.beta = packing_roles ? std::log(n) / p : std::log(p) / n;
  const double ln = coherence(sample);
  CoherenceResult res;
  res.coherence = ln;
  res.regime = regime;
  res.degenerate = ln >= 1.0;
  if (res.degenerate) {
    // log(1 - l^2) diverges; report the strongest possible rejection.
    res.statistic = -std::numeric_limits<double>::infinity();
    res.pvalue = 0.0;
    return res;
  }
  const double cn = std::log1p(-ln * ln);
  const double dim = packing_roles ? p : n;
  const double count = packing_roles ? n : p;
  const double logc = std::log(count);
  if (regime.regime == Regime::super_exponential)
    res.statistic = dim * cn + 4.0 * dim / (dim - 2.0) * logc - std::log(dim);
  else
    res.statistic = dim * cn + 4.0 * logc - std::log(logc);
  res.pvalue = extreme_value_cdf(res.statistic, regime);
  return res;
}

}  // namespace dirunif
