// Copyright 2026 the dirunif authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "dirunif/nulldist.hpp"
#include "dirunif/sample.hpp"

namespace dirunif {

/// Standardized Rayleigh R_n^St = (R_n - p)/sqrt(2p); asymptotically
/// standard normal when min(n, p) grows.
double rayleigh_standardized(const DirectionalSample& sample);

/// Coherence l_n = max_{i<j} |U_i' U_j|; requires n >= 2.
double coherence(const DirectionalSample& sample);

struct CoherenceResult {
  double statistic;   // C_{n,j} for the selected regime
  double coherence;   // l_n
  RegimeSpec regime;
  double pvalue;      // F_j(C_{n,j})
  bool degenerate;    // l_n = 1 (duplicate or antipodal pair)
};

/// Regime statistics of the coherence test: C_{n,1} (= C_{n,2}) in the
/// sub-exponential/exponential regimes, C_{n,3} in the super-exponential
/// regime, paired with F_1/F_2/F_3. Requires p > e so that log log p is
/// defined. An unset beta (<= 0) in the exponential regime defaults to
/// log(p)/n.
///
/// With `packing_roles` set, the dimension and the observation count swap
/// places in the centerings: C_1 = p log(1-l^2) + 4 log n - log log n and
/// C_3 = p log(1-l^2) + (4p/(p-2)) log n - log p, with regimes driven by
/// log(n)/p. That is the pairing under which the observation-pair
/// coherence of uniform samples actually converges to F_1/F_2/F_3 (the
/// n x p data matrix has the observations as columns of length p once
/// transposed); the default keeps the published pairing.
CoherenceResult coherence_statistic(const DirectionalSample& sample,
                                    RegimeSpec regime,
                                    bool packing_roles = false);

/// Finite-data heuristic on r = log(p)/n; thresholds are configuration,
/// not theory: r < 0.01 sub-exponential, r > 10 super-exponential, else
/// exponential with beta = r. p is real-valued so conceptual scales far
/// beyond any integer dimension can still be classified.
RegimeSpec regime_classify(std::size_t n, double p);

}  // namespace dirunif
