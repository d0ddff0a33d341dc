// Copyright 2026 the dirunif authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace dirunif {

/// Kolmogorov distribution function K(x). Evaluates the theta-function
/// dual series for x < 1 and the alternating series for x >= 1; both are
/// truncated at an absolute next-term cutoff of 1e-15.
double kolmogorov_cdf(double x);

/// Kuiper upper tail P[V_n > v] with the 1/sqrt(n) correction term;
/// clamped to [0, 1].
double kuiper_pvalue(double v, std::size_t n);

/// Watson upper tail: 1 - K(sqrt(u) * pi).
double watson_pvalue(double u);

/// Ajne upper tail: (4/pi) sum_m ((-1)^(m-1)/(2m-1)) exp(-pi^2 (2m-1)^2 a/2).
double ajne_pvalue(double a);

/// Hodges-Ajne upper tail: K(pi / (2h)).
double hodges_ajne_pvalue(double h);

/// Exact circular range law P[T_n <= t]; rejection is for small T_n, so
/// this is also the p-value of the range test.
double range_cdf(double t, std::size_t n);

/// Regularized incomplete gamma Q(a, x) (upper).
double gamma_q(double a, double x);

/// Chi-squared upper tail.
double chisq_pvalue(double x, double df);

enum class NormalTail { upper, lower, two_sided };

double normal_pvalue(double x, double mean, double variance, NormalTail tail);

/// Null law of a truncated chi-squared mixture sum_k w2[k] * chisq(dims[k]),
/// calibrated once by Monte Carlo; p-values are (b+1)/(M+1) against the
/// stored draws.
class ChiSqMixture {
 public:
  ChiSqMixture(std::vector<double> weights_sq, std::vector<double> dims,
               std::size_t replicates, std::uint64_t seed,
               unsigned workers = 0);

  double pvalue(double x) const;  // upper tail
  std::size_t replicates() const { return draws_.size(); }

 private:
  std::vector<double> draws_;  // sorted
};

enum class Regime { sub_exponential, exponential, super_exponential };

struct RegimeSpec {
  Regime regime = Regime::sub_exponential;
  double beta = 0.0;  // exponential regime only
};

/// Extreme value cdfs F_1, F_2(beta), F_3 for the coherence statistics.
double extreme_value_cdf(double z, const RegimeSpec& regime);

}  // namespace dirunif
