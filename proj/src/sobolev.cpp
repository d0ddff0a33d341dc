// Copyright 2026 the dirunif authors
// SPDX-License-Identifier: Apache-2.0
#include "dirunif/sobolev.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace dirunif {

namespace {

double clamp_unit(double z) {
  if (z > 1.0) {
    if (z > 1.0 + 1e-12) throw std::invalid_argument("argument beyond [-1,1]");
    return 1.0;
  }
  if (z < -1.0) {
    if (z < -1.0 - 1e-12) throw std::invalid_argument("argument beyond [-1,1]");
    return -1.0;
  }
  return z;
}

double dot(std::span<const double> u, std::span<const double> v) {
  double s = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) s += u[i] * v[i];
  return s;
}

// binom(n, k) with exact integer prefixes (each partial product is itself a
// binomial coefficient).
double binom(long long n, long long k) {
  if (k < 0 || k > n) return 0.0;
  k = std::min(k, n - k);
  double r = 1.0;
  for (long long i = 1; i <= k; ++i) {
    r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
    if (r > 1e300) throw std::overflow_error("binomial coefficient overflow");
  }
  return std::round(r);
}

}  // namespace

double gegenbauer(int k, double alpha, double z) {
  if (alpha <= 0.0) throw std::invalid_argument("gegenbauer needs alpha > 0");
  if (k < 0) throw std::invalid_argument("gegenbauer needs k >= 0");
  z = clamp_unit(z);
  if (k == 0) return 1.0;
  double prev = 1.0;            // C_0
  double cur = 2.0 * alpha * z; // C_1
  for (int m = 2; m <= k; ++m) {
    const double next = (2.0 * z * (m + alpha - 1.0) * cur -
                         (m + 2.0 * alpha - 2.0) * prev) /
                        static_cast<double>(m);
    prev = cur;
    cur = next;
  }
  return cur;
}

double eigendim(int p, int k) {
  if (p < 2 || k < 1) throw std::invalid_argument("eigendim needs p>=2, k>=1");
  return binom(p + k - 3, p - 2) + binom(p + k - 2, p - 2);
}

double eigenspace_inner_product(std::span<const double> u,
                                std::span<const double> v, int k) {
  if (u.size() != v.size())
    throw std::invalid_argument("dimension mismatch in inner product");
  const int p = static_cast<int>(u.size());
  const double z = clamp_unit(dot(u, v));
  if (p == 2) return 2.0 * std::cos(k * std::acos(z));
  const double alpha = 0.5 * (p - 2);
  return (1.0 + 2.0 * k / (p - 2.0)) * gegenbauer(k, alpha, z);
}

namespace {

// Squared resultant lengths (2/n)|sum_i e^{ik theta_i}|^2 for k = 1..K.
// For p = 2 the Sobolev double sum equals sum_k v_k^2 times these.
std::vector<double> circular_component_norms(const std::vector<double>& theta,
                                             int kmax) {
  const double n = static_cast<double>(theta.size());
  std::vector<double> c(static_cast<std::size_t>(kmax) + 1, 0.0);
  std::vector<double> cs(theta.size()), sn(theta.size()), ck(theta.size()),
      sk(theta.size());
  for (std::size_t i = 0; i < theta.size(); ++i) {
    cs[i] = std::cos(theta[i]);
    sn[i] = std::sin(theta[i]);
    ck[i] = cs[i];
    sk[i] = sn[i];
  }
  for (int k = 1; k <= kmax; ++k) {
    double sumc = 0.0, sums = 0.0;
    for (std::size_t i = 0; i < theta.size(); ++i) {
      sumc += ck[i];
      sums += sk[i];
      // advance e^{ik theta} -> e^{i(k+1) theta}
      const double nc = ck[i] * cs[i] - sk[i] * sn[i];
      sk[i] = sk[i] * cs[i] + ck[i] * sn[i];
      ck[i] = nc;
    }
    c[k] = 2.0 * (sumc * sumc + sums * sums) / n;
  }
  return c;
}

// Per-order recurrence coefficients: C_k = z a_k C_{k-1} - b_k C_{k-2},
// plus the weight v_k^2 (1 + 2k/(p-2)) applied to each accumulated term.
struct PairwiseCoefficients {
  std::vector<double> a, b, w;
};

PairwiseCoefficients pairwise_coefficients(int p,
                                           const std::vector<double>& vsq) {
  const double alpha = 0.5 * (p - 2);
  const int kmax = static_cast<int>(vsq.size());
  PairwiseCoefficients c;
  c.a.resize(kmax + 1);
  c.b.resize(kmax + 1);
  c.w.resize(kmax + 1);
  for (int k = 1; k <= kmax; ++k) {
    c.a[k] = 2.0 * (k + alpha - 1.0) / k;
    c.b[k] = (k + 2.0 * alpha - 2.0) / k;
    c.w[k] = vsq[k - 1] * (1.0 + 2.0 * k / (p - 2.0));
  }
  return c;
}

double sobolev_pairwise(const DirectionalSample& sample,
                        const std::vector<double>& vsq) {
  const std::size_t n = sample.n();
  const int p = static_cast<int>(sample.dim());
  const int kmax = static_cast<int>(vsq.size());
  const double alpha = 0.5 * (p - 2);
  // Diagonal terms: <t_k(u), t_k(u)> = d_{p,k}.
  double diag = 0.0;
  for (int k = 1; k <= kmax; ++k)
    if (vsq[k - 1] != 0.0) diag += vsq[k - 1] * eigendim(p, k);
  const auto coef = pairwise_coefficients(p, vsq);
  double off = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto ui = sample.point(i);
    for (std::size_t j = i + 1; j < n; ++j) {
      const double z = clamp_unit(dot(ui, sample.point(j)));
      double prev = 1.0;
      double cur = 2.0 * alpha * z;
      double acc = coef.w[1] * cur;
      for (int k = 2; k <= kmax; ++k) {
        const double next = z * coef.a[k] * cur - coef.b[k] * prev;
        prev = cur;
        cur = next;
        acc += coef.w[k] * cur;
      }
      off += acc;
    }
  }
  return diag + 2.0 * off / static_cast<double>(n);
}

}  // namespace

double sobolev_statistic(const DirectionalSample& sample,
                         const SobolevWeights& weights) {
  if (weights.v.empty())
    throw std::invalid_argument("empty Sobolev weight sequence");
  std::vector<double> vsq(weights.v.size());
  for (std::size_t i = 0; i < vsq.size(); ++i) vsq[i] = weights.v[i] * weights.v[i];
  if (sample.dim() == 2) {
    const auto c =
        circular_component_norms(sample.angles(), static_cast<int>(vsq.size()));
    double s = 0.0;
    for (std::size_t k = 1; k < c.size(); ++k) s += vsq[k - 1] * c[k];
    return s;
  }
  return sobolev_pairwise(sample, vsq);
}

double rayleigh(const DirectionalSample& sample) {
  const auto m = sample.mean();
  double norm2 = 0.0;
  for (double v : m) norm2 += v * v;
  return static_cast<double>(sample.n()) * static_cast<double>(sample.dim()) *
         norm2;
}

namespace {

// Sum of circular distances over all pairs of a sorted angle vector,
// O(n log n) via prefix sums.
double pairwise_circular_distance_sum(const std::vector<double>& sorted) {
  const std::size_t n = sorted.size();
  std::vector<double> prefix(n + 1, 0.0);
  for (std::size_t i = 0; i < n; ++i) prefix[i + 1] = prefix[i] + sorted[i];
  double total = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    // Pairs (i, j) with i < j: gap g = theta_j - theta_i is in [0, 2 pi);
    // d_c = g when g <= pi, else 2 pi - g. Find the first i with gap <= pi.
    const double cut = sorted[j] - kPi;
    const std::size_t i0 = static_cast<std::size_t>(
        std::lower_bound(sorted.begin(), sorted.begin() + j, cut) -
        sorted.begin());
    const double near_count = static_cast<double>(j - i0);
    total += near_count * sorted[j] - (prefix[j] - prefix[i0]);
    total += static_cast<double>(i0) * (kTwoPi - sorted[j]) + prefix[i0];
  }
  return total;
}

}  // namespace

double ajne(const DirectionalSample& sample) {
  const std::size_t n = sample.n();
  const double dn = static_cast<double>(n);
  if (sample.dim() == 2) {
    auto theta = sample.angles();
    std::sort(theta.begin(), theta.end());
    return dn / 4.0 - pairwise_circular_distance_sum(theta) / (dn * kPi);
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto ui = sample.point(i);
    for (std::size_t j = i + 1; j < n; ++j)
      sum += std::acos(clamp_unit(dot(ui, sample.point(j))));
  }
  return dn / 4.0 - sum / (dn * kPi);
}

double rothman(const DirectionalSample& sample, double t, int truncation) {
  if (!(t > 0.0 && t < 1.0))
    throw std::invalid_argument("rothman requires t in (0,1)");
  if (sample.dim() != 2)
    throw std::invalid_argument("rothman requires dimension 2");
  return sobolev_statistic(sample, rothman_weights(t, truncation));
}

std::vector<double> scatter_matrix(const DirectionalSample& sample) {
  const std::size_t p = sample.dim();
  const std::size_t n = sample.n();
  std::vector<double> s(p * p, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const auto u = sample.point(i);
    for (std::size_t a = 0; a < p; ++a)
      for (std::size_t b = 0; b < p; ++b) s[a * p + b] += u[a] * u[b];
  }
  for (double& v : s) v /= static_cast<double>(n);
  return s;
}

double bingham(const DirectionalSample& sample) {
  const auto s = scatter_matrix(sample);
  const double p = static_cast<double>(sample.dim());
  double tr2 = 0.0;
  for (double v : s) tr2 += v * v;  // tr(S^2) for symmetric S
  return static_cast<double>(sample.n()) * p * (p + 2.0) / 2.0 *
         (tr2 - 1.0 / p);
}

double gine_g(const DirectionalSample& sample) {
  const std::size_t n = sample.n();
  const double dn = static_cast<double>(n);
  const double p = static_cast<double>(sample.dim());
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto ui = sample.point(i);
    for (std::size_t j = i + 1; j < n; ++j) {
      const double z = clamp_unit(dot(ui, sample.point(j)));
      sum += std::sqrt(std::max(0.0, 1.0 - z * z));  // sin(acos(z))
    }
  }
  const double log_const = std::log(p - 1.0) +
                           2.0 * std::lgamma(0.5 * (p - 1.0)) -
                           2.0 * std::lgamma(0.5 * p);
  return dn / 2.0 - std::exp(log_const) / (2.0 * dn) * sum;
}

double gine_f(const DirectionalSample& sample) {
  return ajne(sample) + gine_g(sample);
}

double circular_kernel_statistic(const DirectionalSample& sample,
                                 CircularKernel kernel) {
  if (sample.dim() != 2)
    throw std::invalid_argument("circular kernel tests require dimension 2");
  const std::size_t n = sample.n();
  if (n < 2) throw std::invalid_argument("kernel tests require n >= 2");
  const auto theta = sample.angles();
  const double dn = static_cast<double>(n);

  if (kernel == CircularKernel::pycke) {
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        const double c = 2.0 - 2.0 * std::cos(theta[i] - theta[j]);
        if (c <= 0.0)
          throw std::domain_error(
              "pycke statistic undefined for coincident angles");
        sum += -2.0 * std::log(c);
      }
    return sum / (dn - 1.0);
  }

  const bool centered = kernel == CircularKernel::hermans_rasson_centered;
  const double add =
      centered ? 0.0 : -kPi / 2.0 + (dn - 1.0) * 2.895 / kPi;
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const double d = std::abs(theta[i] - theta[j]);
      sum += add + std::abs(kPi - d) + 2.895 * std::abs(std::sin(d)) / 2.0;
    }
  return sum / dn;
}

std::vector<double> jupp_partial_statistics(const DirectionalSample& sample,
                                            int cap) {
  if (cap < 1) throw std::invalid_argument("jupp cap must be >= 1");
  const std::size_t n = sample.n();
  const int p = static_cast<int>(sample.dim());
  std::vector<double> inc(static_cast<std::size_t>(cap), 0.0);
  if (p == 2) {
    const auto c = circular_component_norms(sample.angles(), cap);
    for (int k = 1; k <= cap; ++k) inc[k - 1] = c[k];
  } else {
    const double alpha = 0.5 * (p - 2);
    const auto coef =
        pairwise_coefficients(p, std::vector<double>(cap, 1.0));
    for (std::size_t i = 0; i < n; ++i) {
      const auto ui = sample.point(i);
      for (std::size_t j = i + 1; j < n; ++j) {
        const double z = clamp_unit(dot(ui, sample.point(j)));
        double prev = 1.0;
        double cur = 2.0 * alpha * z;
        inc[0] += coef.w[1] * cur;
        for (int k = 2; k <= cap; ++k) {
          const double next = z * coef.a[k] * cur - coef.b[k] * prev;
          prev = cur;
          cur = next;
          inc[k - 1] += coef.w[k] * cur;
        }
      }
    }
    for (int k = 1; k <= cap; ++k)
      inc[k - 1] = eigendim(p, k) +
                   2.0 * inc[k - 1] / static_cast<double>(n);
  }
  std::vector<double> partial(inc.size());
  double run = 0.0;
  for (std::size_t k = 0; k < inc.size(); ++k) {
    run += inc[k];
    partial[k] = run;
  }
  return partial;
}

JuppResult jupp(const DirectionalSample& sample, int cap) {
  const std::size_t n = sample.n();
  if (n < 2) throw std::invalid_argument("jupp requires n >= 2");
  const int p = static_cast<int>(sample.dim());
  const double logn = std::log(static_cast<double>(n));
  const auto partial = jupp_partial_statistics(sample, cap);
  double dim_sum = 0.0;
  double best = -std::numeric_limits<double>::infinity();
  int best_order = 1;
  for (int l = 1; l <= cap; ++l) {
    dim_sum += eigendim(p, l);
    const double score = partial[l - 1] - dim_sum * logn;
    if (score > best) {
      best = score;
      best_order = l;
    }
  }
  return {best_order, partial[best_order - 1], best_order == cap};
}

SobolevWeights rayleigh_weights() { return {{1.0}, "rayleigh"}; }

SobolevWeights bingham_weights() { return {{0.0, 1.0}, "bingham"}; }

SobolevWeights watson_sobolev_weights(int truncation) {
  SobolevWeights w;
  w.label = "watson";
  w.v.resize(static_cast<std::size_t>(truncation));
  for (int k = 1; k <= truncation; ++k) w.v[k - 1] = 1.0 / (kPi * k);
  return w;
}

SobolevWeights ajne_weights(int truncation) {
  SobolevWeights w;
  w.label = "ajne";
  w.v.resize(static_cast<std::size_t>(truncation), 0.0);
  for (int k = 1; k <= truncation; k += 2) w.v[k - 1] = 1.0 / (kPi * k);
  return w;
}

SobolevWeights rothman_weights(double t, int truncation) {
  if (!(t > 0.0 && t < 1.0))
    throw std::invalid_argument("rothman requires t in (0,1)");
  SobolevWeights w;
  w.label = "rothman";
  w.v.resize(static_cast<std::size_t>(truncation));
  for (int k = 1; k <= truncation; ++k)
    w.v[k - 1] = std::sin(k * kPi * t) / (k * kPi);
  return w;
}

}  // namespace dirunif
