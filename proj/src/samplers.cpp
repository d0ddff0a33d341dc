// Copyright 2026 the dirunif authors
// SPDX-License-Identifier: Apache-2.0
#include "dirunif/samplers.hpp"

#include <cmath>
#include <stdexcept>

namespace dirunif {

namespace {

void check_unit(std::span<const double> mu) {
  double s = 0.0;
  for (double v : mu) s += v * v;
  if (std::abs(std::sqrt(s) - 1.0) > 1e-8)
    throw std::invalid_argument("location parameter must be a unit vector");
  if (mu.size() < 2)
    throw std::invalid_argument("location parameter needs dimension >= 2");
}

// Unit vector from iid normals; redraws the (measure-zero) degenerate case.
void unit_normal_vector(Rng& rng, std::span<double> out) {
  for (;;) {
    double s = 0.0;
    for (double& v : out) {
      v = rng.normal();
      s += v * v;
    }
    if (s > 1e-24) {
      const double inv = 1.0 / std::sqrt(s);
      for (double& v : out) v *= inv;
      return;
    }
  }
}

// Cosine of the angle to mu for vMF(kappa) on S^(p-1); rejection sampler of
// Ulrich/Wood with a symmetric beta envelope.
double vmf_cosine(Rng& rng, double kappa, std::size_t p, SamplerStats* stats) {
  const double m = static_cast<double>(p) - 1.0;
  const double b = m / (2.0 * kappa + std::sqrt(4.0 * kappa * kappa + m * m));
  const double x0 = (1.0 - b) / (1.0 + b);
  const double c = kappa * x0 + m * std::log(1.0 - x0 * x0);
  for (;;) {
    if (stats) ++stats->trials;
    const double z = rng.beta(0.5 * m, 0.5 * m);
    const double w = (1.0 - (1.0 + b) * z) / (1.0 - (1.0 - b) * z);
    const double u = rng.uniform_pos();
    if (kappa * w + m * std::log(1.0 - x0 * w) - c >= std::log(u)) {
      if (stats) ++stats->accepts;
      return w;
    }
  }
}

// One vMF draw appended to out: t mu + sqrt(1-t^2) v with v uniform on the
// tangent sphere at mu.
void vmf_point(Rng& rng, std::span<const double> mu, double kappa,
               SamplerStats* stats, std::vector<double>& scratch,
               std::span<double> out) {
  const std::size_t p = mu.size();
  const double t = kappa == 0.0
                       ? 1.0 - 2.0 * rng.beta(0.5 * (p - 1.0), 0.5 * (p - 1.0))
                       : vmf_cosine(rng, kappa, p, stats);
  // Tangent direction: project a normal vector off mu and normalize.
  scratch.resize(p);
  for (;;) {
    double d = 0.0;
    for (std::size_t i = 0; i < p; ++i) {
      scratch[i] = rng.normal();
      d += scratch[i] * mu[i];
    }
    double s = 0.0;
    for (std::size_t i = 0; i < p; ++i) {
      scratch[i] -= d * mu[i];
      s += scratch[i] * scratch[i];
    }
    if (s > 1e-24) {
      const double scale = std::sqrt(std::max(0.0, 1.0 - t * t) / s);
      for (std::size_t i = 0; i < p; ++i)
        out[i] = t * mu[i] + scale * scratch[i];
      return;
    }
  }
}

void renormalize_rows(std::vector<double>& coords, std::size_t p) {
  for (std::size_t i = 0; i < coords.size(); i += p) {
    double s = 0.0;
    for (std::size_t j = 0; j < p; ++j) s += coords[i + j] * coords[i + j];
    const double inv = 1.0 / std::sqrt(s);
    for (std::size_t j = 0; j < p; ++j) coords[i + j] *= inv;
  }
}

}  // namespace

DirectionalSample sample_uniform(std::size_t n, std::size_t p,
                                 std::uint64_t seed) {
  if (n < 1 || p < 2) throw std::invalid_argument("need n >= 1, p >= 2");
  Rng rng(seed);
  std::vector<double> coords(n * p);
  for (std::size_t i = 0; i < n; ++i)
    unit_normal_vector(rng, {coords.data() + i * p, p});
  return DirectionalSample::from_vectors(std::move(coords), p);
}

DirectionalSample sample_vmf(std::size_t n, std::span<const double> mu,
                             double kappa, std::uint64_t seed,
                             SamplerStats* stats) {
  if (kappa < 0.0) throw std::invalid_argument("vmf requires kappa >= 0");
  check_unit(mu);
  Rng rng(seed);
  const std::size_t p = mu.size();
  std::vector<double> coords(n * p);
  std::vector<double> scratch;
  for (std::size_t i = 0; i < n; ++i)
    vmf_point(rng, mu, kappa, stats, scratch, {coords.data() + i * p, p});
  renormalize_rows(coords, p);
  return DirectionalSample::from_vectors(std::move(coords), p);
}

DirectionalSample sample_cardioid(std::size_t n, double mu, double rho,
                                  std::uint64_t seed, SamplerStats* stats) {
  if (rho < 0.0 || rho > 0.5)
    throw std::invalid_argument("cardioid requires rho in [0, 1/2]");
  Rng rng(seed);
  std::vector<double> angles(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (;;) {
      if (stats) ++stats->trials;
      const double theta = kTwoPi * rng.uniform();
      const double u = rng.uniform();
      if (u * (1.0 + 2.0 * rho) <= 1.0 + 2.0 * rho * std::cos(theta - mu)) {
        if (stats) ++stats->accepts;
        angles[i] = theta;
        break;
      }
    }
  }
  return DirectionalSample::from_angles(angles);
}

DirectionalSample sample_mixture8(std::size_t n,
                                  const std::function<double(Rng&)>& base,
                                  double mu, double kappa_mix,
                                  std::uint64_t seed) {
  if (kappa_mix < 0.0 || kappa_mix > 1.0)
    throw std::invalid_argument("mixture weight must lie in [0, 1]");
  Rng rng(seed);
  std::vector<double> angles(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (rng.uniform() < 1.0 - kappa_mix) {
      angles[i] = kTwoPi * rng.uniform();
    } else {
      angles[i] = reduce_angle(base(rng) - mu);
    }
  }
  return DirectionalSample::from_angles(angles);
}

DirectionalSample sample_axial(std::size_t n, std::span<const double> mu,
                               double kappa, std::uint64_t seed,
                               SamplerStats* stats) {
  if (kappa < 0.0) throw std::invalid_argument("axial requires kappa >= 0");
  check_unit(mu);
  Rng rng(seed);
  const std::size_t p = mu.size();
  std::vector<double> coords(n * p);
  std::vector<double> scratch;
  for (std::size_t i = 0; i < n; ++i) {
    std::span<double> row{coords.data() + i * p, p};
    vmf_point(rng, mu, kappa, stats, scratch, row);
    if (rng.uniform() < 0.5)
      for (double& v : row) v = -v;
  }
  renormalize_rows(coords, p);
  return DirectionalSample::from_vectors(std::move(coords), p);
}

DirectionalSample draw_alternative(const AlternativeSpec& alt, std::size_t n,
                                   std::size_t p, std::uint64_t seed) {
  std::vector<double> mu = alt.mu;
  if (mu.empty()) {
    mu.assign(p, 0.0);
    mu[0] = 1.0;
  }
  if (mu.size() != p)
    throw std::invalid_argument("alternative location has wrong dimension");
  switch (alt.family) {
    case AlternativeSpec::Family::uniform:
      return sample_uniform(n, p, seed);
    case AlternativeSpec::Family::vmf:
      return sample_vmf(n, mu, alt.kappa, seed);
    case AlternativeSpec::Family::axial:
      return sample_axial(n, mu, alt.kappa, seed);
    case AlternativeSpec::Family::cardioid: {
      if (p != 2)
        throw std::invalid_argument("cardioid alternative requires p = 2");
      const double mu_angle = std::atan2(mu[1], mu[0]);
      return sample_cardioid(n, mu_angle, alt.rho, seed);
    }
    case AlternativeSpec::Family::mixture8: {
      if (p != 2)
        throw std::invalid_argument("mixture alternative requires p = 2");
      const double mu_angle = std::atan2(mu[1], mu[0]);
      if (alt.base == AlternativeSpec::MixtureBase::cardioid) {
        const double rho = alt.base_param;
        if (rho < 0.0 || rho > 0.5)
          throw std::invalid_argument("cardioid base rho in [0, 1/2]");
        auto base = [rho](Rng& rng) {
          for (;;) {
            const double theta = kTwoPi * rng.uniform();
            if (rng.uniform() * (1.0 + 2.0 * rho) <=
                1.0 + 2.0 * rho * std::cos(theta))
              return theta;
          }
        };
        return sample_mixture8(n, base, mu_angle, alt.kappa_mix, seed);
      }
      const double kappa = alt.base_param;
      if (kappa < 0.0) throw std::invalid_argument("vmf base kappa >= 0");
      auto base = [kappa](Rng& rng) {
        SamplerStats* no_stats = nullptr;
        std::vector<double> scratch;
        const std::vector<double> e1{1.0, 0.0};
        std::vector<double> pt(2);
        vmf_point(rng, e1, kappa, no_stats, scratch, pt);
        return std::atan2(pt[1], pt[0]);
      };
      return sample_mixture8(n, base, mu_angle, alt.kappa_mix, seed);
    }
  }
  throw std::invalid_argument("unknown alternative family");
}

}  // namespace dirunif
