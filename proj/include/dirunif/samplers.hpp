// Copyright 2026 the dirunif authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "dirunif/rng.hpp"
#include "dirunif/sample.hpp"

namespace dirunif {

/// Trial bookkeeping for rejection samplers.
struct SamplerStats {
  std::uint64_t trials = 0;
  std::uint64_t accepts = 0;
  double acceptance_rate() const {
    return trials ? static_cast<double>(accepts) / static_cast<double>(trials)
                  : 1.0;
  }
};

/// Uniform on S^(p-1): normalized iid standard normal vectors.
DirectionalSample sample_uniform(std::size_t n, std::size_t p,
                                 std::uint64_t seed);

/// von Mises-Fisher with location mu (unit, dimension p) and concentration
/// kappa >= 0. The cosine of the angle to mu is drawn by rejection from the
/// density proportional to exp(kappa t) (1-t^2)^((p-3)/2) with a beta
/// envelope; the tangent direction is uniform. kappa = 0 reduces to the
/// uniform law.
DirectionalSample sample_vmf(std::size_t n, std::span<const double> mu,
                             double kappa, std::uint64_t seed,
                             SamplerStats* stats = nullptr);

/// Cardioid density (1/(2 pi)) (1 + 2 rho cos(theta - mu)) on the circle,
/// rho in [0, 1/2], sampled by rejection from the uniform envelope.
DirectionalSample sample_cardioid(std::size_t n, double mu, double rho,
                                  std::uint64_t seed,
                                  SamplerStats* stats = nullptr);

/// Circular mixture (1-kappa_mix) uniform + kappa_mix shifted base:
/// the base draw X becomes X - mu, matching a density of the form
/// (1-kappa)/(2 pi) + kappa f(theta + mu).
DirectionalSample sample_mixture8(std::size_t n,
                                  const std::function<double(Rng&)>& base,
                                  double mu, double kappa_mix,
                                  std::uint64_t seed);

/// Antipodally symmetric alternative: vMF(mu, kappa) with a fair sign flip.
DirectionalSample sample_axial(std::size_t n, std::span<const double> mu,
                               double kappa, std::uint64_t seed,
                               SamplerStats* stats = nullptr);

/// Parametric alternative description used by the study engine and CLI.
struct AlternativeSpec {
  enum class Family { uniform, vmf, cardioid, mixture8, axial };
  enum class MixtureBase { cardioid, vmf };

  Family family = Family::uniform;
  double kappa = 0.0;              // vmf / axial concentration
  double rho = 0.0;                // cardioid
  double kappa_mix = 0.0;          // mixture weight in [0, 1]
  MixtureBase base = MixtureBase::cardioid;
  double base_param = 0.5;         // rho or kappa of the mixture base
  std::vector<double> mu;          // location; empty = first axis

  static AlternativeSpec uniform() { return {}; }
  static AlternativeSpec vmf(double kappa) {
    AlternativeSpec a;
    a.family = Family::vmf;
    a.kappa = kappa;
    return a;
  }
  static AlternativeSpec axial(double kappa) {
    AlternativeSpec a;
    a.family = Family::axial;
    a.kappa = kappa;
    return a;
  }
  static AlternativeSpec cardioid(double rho) {
    AlternativeSpec a;
    a.family = Family::cardioid;
    a.rho = rho;
    return a;
  }
};

/// Draws n points of dimension p from the described law.
DirectionalSample draw_alternative(const AlternativeSpec& alt, std::size_t n,
                                   std::size_t p, std::uint64_t seed);

}  // namespace dirunif
