// Copyright 2026 the dirunif authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>

#include "dirunif/sample.hpp"

namespace dirunif {

/// Kuiper one-sided deviations, each already scaled by sqrt(n):
/// d_plus = sqrt(n) max_i {i/n - u_i}, d_minus = sqrt(n) max_i {u_i - (i-1)/n}.
struct KuiperParts {
  double d_plus;
  double d_minus;
};

KuiperParts kuiper_parts(const OrderedCircular& sample);

/// Kuiper V_n = d_plus + d_minus; rotation-invariant, rejects when large.
double kuiper(const OrderedCircular& sample);

/// Watson U_n^2 = sum_i [(u_(i) - (i-1/2)/n) - (u_mean - 1/2)]^2 + 1/(12n).
double watson(const OrderedCircular& sample);

/// Largest number of observations inside an open half-circle; computed
/// exactly by scanning the data-defined breakpoints.
std::size_t half_circle_max_count(const OrderedCircular& sample);

/// Hodges-Ajne H_n = (2/sqrt(n)) (sup_a N(a) - n/2); requires dim == 2.
double hodges_ajne(const DirectionalSample& sample);

/// Circular range T_n = 2*pi - max gap; small values indicate clustering.
double circular_range(const Spacings& gaps);

/// Generic symmetric spacing functional (1/n) sum_i h(n d_i / (2*pi)).
double symmetric_spacing(const Spacings& gaps,
                         const std::function<double(double)>& h);

/// Rao spacings P_n = sqrt(n) (0.5 sum |d_i - 2*pi/n| - 2*pi/e).
double rao_spacings(const Spacings& gaps);

/// Greenwood W_n = sqrt(n) (n sum d_i^2 / (4*pi^2) - 2).
double greenwood(const Spacings& gaps);

// Convenience overloads; ordering/spacing derivation happens internally.
double kuiper(const DirectionalSample& sample);
double watson(const DirectionalSample& sample);
double circular_range(const DirectionalSample& sample);
double rao_spacings(const DirectionalSample& sample);
double greenwood(const DirectionalSample& sample);

}  // namespace dirunif
