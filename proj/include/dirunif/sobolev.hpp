// Copyright 2026 the dirunif authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>
#include <string>
#include <vector>

#include "dirunif/sample.hpp"

namespace dirunif {

/// Weight sequence {v_k}, k = 1..K, defining one Sobolev test. v[i] holds
/// v_{i+1}.
struct SobolevWeights {
  std::vector<double> v;
  std::string label;
};

/// Gegenbauer polynomial C_k^alpha(z) by the three-term recurrence.
/// z is clamped to [-1, 1]; |z| beyond 1 + 1e-12 or alpha <= 0 throw.
double gegenbauer(int k, double alpha, double z);

/// Dimension d_{p,k} of the k-th Laplacian eigenspace on S^(p-1):
/// binom(p+k-3, p-2) + binom(p+k-2, p-2). Exact integer arithmetic via
/// multiplicative binomial evaluation; throws on overflow past 1e300.
double eigendim(int p, int k);

/// Eigenspace inner product <t_k(u), t_k(v)>: 2 cos(k angle(u,v)) for
/// p = 2, (1 + 2k/(p-2)) C_k^{(p-2)/2}(u'v) for p > 2.
double eigenspace_inner_product(std::span<const double> u,
                                std::span<const double> v, int k);

/// Generic Sobolev statistic S_n = (1/n) sum_{i,j} sum_k v_k^2
/// <t_k(U_i), t_k(U_j)>, diagonal included. For p = 2 the double sum
/// collapses to sum_k v_k^2 (2/n) |sum_i e^{ik theta_i}|^2, which is used
/// as an O(nK) evaluation of the same value; p > 2 runs the O(n^2 K)
/// pairwise Gegenbauer recurrence.
double sobolev_statistic(const DirectionalSample& sample,
                         const SobolevWeights& weights);

/// Rayleigh R_n = n p ||U_bar||^2, any p >= 2.
double rayleigh(const DirectionalSample& sample);

/// Ajne A_n = n/4 - (1/(n pi)) sum_{i<j} Psi_ij with Psi_ij the angle
/// between observations. p = 2 uses exact circular distances.
double ajne(const DirectionalSample& sample);

inline constexpr int kRothmanDefaultTruncation = 5000;

/// Rothman A_n(t), evaluated as the Sobolev statistic with weights
/// v_k = sin(k pi t)/(k pi), truncated at `truncation` terms. p = 2 only.
double rothman(const DirectionalSample& sample, double t,
               int truncation = kRothmanDefaultTruncation);

/// Scatter matrix S = (1/n) sum_i U_i U_i', row-major p x p.
std::vector<double> scatter_matrix(const DirectionalSample& sample);

/// Bingham B_n = (n p (p+2) / 2) (tr(S^2) - 1/p).
double bingham(const DirectionalSample& sample);

/// Gine G_n = n/2 - ((p-1) Gamma((p-1)/2)^2 / (2 n Gamma(p/2)^2))
///            sum_{i<j} sin Psi_ij, and F_n = A_n + G_n.
double gine_g(const DirectionalSample& sample);
double gine_f(const DirectionalSample& sample);

enum class CircularKernel {
  hermans_rasson,
  hermans_rasson_centered,  // additive constants dropped
  pycke,
};

/// Kernel tests on the circle. Hermans-Rasson uses the full double sum
/// (1/n) sum_{i,j} h(theta_i - theta_j); Pycke uses the off-diagonal form
/// (1/(n-1)) sum_{i<j} h. Pycke throws on coincident angles (h -> -inf).
double circular_kernel_statistic(const DirectionalSample& sample,
                                 CircularKernel kernel);

inline constexpr int kJuppDefaultCap = 25;

struct JuppResult {
  int order;         // smallest maximizer of the penalized score
  double statistic;  // S_{n, order}
  bool cap_hit;      // penalized score was still rising at the cap
};

/// Jupp data-driven Sobolev test: S_{n,l} uses v_k = 1 for k <= l, and the
/// selector maximizes B_S(l) = S_{n,l} - (sum_{k<=l} d_{p,k}) log n over
/// l = 1..cap, returning the smallest maximizer.
JuppResult jupp(const DirectionalSample& sample, int cap = kJuppDefaultCap);

/// S_{n,l} for l = 1..cap (partial sums of the per-order increments).
std::vector<double> jupp_partial_statistics(const DirectionalSample& sample,
                                            int cap);

// Named weight sequences.
SobolevWeights rayleigh_weights();
SobolevWeights bingham_weights();
SobolevWeights watson_sobolev_weights(int truncation = 20000);
SobolevWeights ajne_weights(int truncation = 5000);
SobolevWeights rothman_weights(double t,
                               int truncation = kRothmanDefaultTruncation);

}  // namespace dirunif
