// Copyright 2026 the dirunif authors
// SPDX-License-Identifier: Apache-2.0
#include "dirunif/circular.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dirunif {

KuiperParts kuiper_parts(const OrderedCircular& sample) {
  const std::size_t n = sample.u.size();
  if (n == 0) throw std::invalid_argument("kuiper requires n >= 1");
  const double dn = static_cast<double>(n);
  double plus = -1.0, minus = -1.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double hi = static_cast<double>(i + 1) / dn - sample.u[i];
    const double lo = sample.u[i] - static_cast<double>(i) / dn;
    plus = std::max(plus, hi);
    minus = std::max(minus, lo);
  }
  const double root = std::sqrt(dn);
  return {root * plus, root * minus};
}

double kuiper(const OrderedCircular& sample) {
  const auto parts = kuiper_parts(sample);
  return parts.d_plus + parts.d_minus;
}

double watson(const OrderedCircular& sample) {
  const std::size_t n = sample.u.size();
  if (n == 0) throw std::invalid_argument("watson requires n >= 1");
  const double dn = static_cast<double>(n);
  const double shift = sample.u_mean - 0.5;
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double term =
        (sample.u[i] - (static_cast<double>(i) + 0.5) / dn) - shift;
    sum += term * term;
  }
  return sum + 1.0 / (12.0 * dn);
}

std::size_t half_circle_max_count(const OrderedCircular& sample) {
  const auto& theta = sample.theta;
  const std::size_t n = theta.size();
  if (n == 0) throw std::invalid_argument("empty sample");
  // N(a) counts points at circular distance strictly below pi/2 from a.
  // The supremum over a is attained just after a breakpoint a = theta_j +
  // pi/2 - pi = theta_j - pi/2; evaluating there reduces to counting the
  // half-open arc (theta_j - pi, theta_j]. Points exactly at distance pi/2
  // stay excluded.
  auto count_le = [&](double x) {
    return static_cast<std::size_t>(
        std::upper_bound(theta.begin(), theta.end(), x) - theta.begin());
  };
  std::size_t best = 0;
  for (std::size_t j = 0; j < n; ++j) {
    const double t = theta[j];
    std::size_t c;
    if (t >= kPi) {
      c = count_le(t) - count_le(t - kPi);
    } else {
      c = count_le(t) + (n - count_le(t + kPi));
    }
    best = std::max(best, c);
  }
  return best;
}

double hodges_ajne(const DirectionalSample& sample) {
  if (sample.dim() != 2)
    throw std::invalid_argument("hodges-ajne requires dimension 2");
  const auto oc = order_circular(sample);
  const double n = static_cast<double>(oc.theta.size());
  const double sup = static_cast<double>(half_circle_max_count(oc));
  return 2.0 / std::sqrt(n) * (sup - 0.5 * n);
}

double circular_range(const Spacings& gaps) {
  if (gaps.d.size() < 2)
    throw std::invalid_argument("circular range requires n >= 2");
  return kTwoPi - *std::max_element(gaps.d.begin(), gaps.d.end());
}

double symmetric_spacing(const Spacings& gaps,
                         const std::function<double(double)>& h) {
  const std::size_t n = gaps.d.size();
  if (n < 2) throw std::invalid_argument("spacing tests require n >= 2");
  const double dn = static_cast<double>(n);
  double sum = 0.0;
  for (double d : gaps.d) {
    const double value = h(dn * d / kTwoPi);
    if (!std::isfinite(value))
      throw std::invalid_argument("spacing kernel returned non-finite value");
    sum += value;
  }
  return sum / dn;
}

double rao_spacings(const Spacings& gaps) {
  const std::size_t n = gaps.d.size();
  if (n < 2) throw std::invalid_argument("rao requires n >= 2");
  const double dn = static_cast<double>(n);
  double sum = 0.0;
  for (double d : gaps.d) sum += std::abs(d - kTwoPi / dn);
  return std::sqrt(dn) * (0.5 * sum - kTwoPi * std::exp(-1.0));
}

double greenwood(const Spacings& gaps) {
  const std::size_t n = gaps.d.size();
  if (n < 2) throw std::invalid_argument("greenwood requires n >= 2");
  const double dn = static_cast<double>(n);
  double sum = 0.0;
  for (double d : gaps.d) sum += d * d;
  return std::sqrt(dn) * (dn * sum / (kTwoPi * kTwoPi) - 2.0);
}

double kuiper(const DirectionalSample& sample) {
  return kuiper(order_circular(sample));
}
double watson(const DirectionalSample& sample) {
  return watson(order_circular(sample));
}
double circular_range(const DirectionalSample& sample) {
  return circular_range(spacings(sample));
}
double rao_spacings(const DirectionalSample& sample) {
  return rao_spacings(spacings(sample));
}
double greenwood(const DirectionalSample& sample) {
  return greenwood(spacings(sample));
}

}  // namespace dirunif
