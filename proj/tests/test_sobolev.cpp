// Copyright 2026 the dirunif authors
// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "dirunif/circular.hpp"
#include "dirunif/rng.hpp"
#include "dirunif/samplers.hpp"
#include "dirunif/sobolev.hpp"
#include "oracle_helpers.hpp"

using namespace dirunif;

namespace {

DirectionalSample random_circular(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> theta(n);
  for (auto& t : theta) t = kTwoPi * rng.uniform();
  return DirectionalSample::from_angles(theta);
}

}  // namespace

TEST_CASE("gegenbauer pinned values") {
  // C_2^{1/2} is the Legendre P_2; at z = 1 every Gegenbauer equals its
  // value C_k^a(1).
  CHECK(gegenbauer(2, 0.5, 1.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(gegenbauer(2, 0.5, 0.4) ==
        doctest::Approx((3.0 * 0.16 - 1.0) / 2.0).epsilon(1e-14));
  CHECK(gegenbauer(1, 1.5, 0.3) == doctest::Approx(0.9).epsilon(1e-14));
  CHECK(gegenbauer(0, 2.0, -0.7) == doctest::Approx(1.0));
  CHECK_THROWS(gegenbauer(3, 0.0, 0.5));
  CHECK_THROWS(gegenbauer(3, 1.0, 1.1));
  CHECK(gegenbauer(3, 1.0, 1.0 + 1e-13) ==
        doctest::Approx(gegenbauer(3, 1.0, 1.0)));
}

TEST_CASE("gegenbauer recurrence agrees with the generating-function oracle") {
  Rng rng(321);
  for (int rep = 0; rep < 100; ++rep) {
    const double z = 2.0 * rng.uniform() - 1.0;
    CHECK(std::abs(gegenbauer(10, 1.5, z) -
                   oracle::gegenbauer_contour_oracle(10, 1.5, z)) < 1e-8);
  }
  for (int k = 0; k <= 12; ++k) {
    const double z = 2.0 * rng.uniform() - 1.0;
    for (double alpha : {0.5, 1.0, 2.5})
      CHECK(std::abs(gegenbauer(k, alpha, z) -
                     oracle::gegenbauer_contour_oracle(k, alpha, z)) < 1e-8);
  }
}

TEST_CASE("eigendim pinned values and exactness") {
  for (int k = 1; k <= 100; ++k) CHECK(eigendim(2, k) == 2.0);
  CHECK(eigendim(3, 5) == 11.0);
  CHECK(eigendim(7, 1) == 7.0);
  for (int p = 2; p <= 12; ++p) CHECK(eigendim(p, 1) == static_cast<double>(p));
  // d_{3,k} = 2k+1.
  for (int k = 1; k <= 40; ++k) CHECK(eigendim(3, k) == 2.0 * k + 1.0);
  // Exact against 128-bit integer binomials on a small grid.
  auto binom128 = [](int n, int k) {
    __int128 r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return static_cast<double>(r);
  };
  for (int p = 2; p <= 10; ++p)
    for (int k = 1; k <= 20; ++k)
      CHECK(eigendim(p, k) ==
            binom128(p + k - 3, p - 2) + binom128(p + k - 2, p - 2));
  CHECK_THROWS(eigendim(400, 800));  // beyond the representable range
}

TEST_CASE("eigenspace inner product") {
  SUBCASE("u = v at k = 1 gives p") {
    for (std::size_t p : {2u, 3u, 5u, 7u}) {
      std::vector<double> u(p, 0.0);
      u[0] = 1.0;
      CHECK(eigenspace_inner_product(u, u, 1) ==
            doctest::Approx(static_cast<double>(p)).epsilon(1e-12));
    }
  }
  SUBCASE("circle at k = 3 and angle pi/3") {
    const std::vector<double> u{1.0, 0.0};
    const std::vector<double> v{std::cos(kPi / 3.0), std::sin(kPi / 3.0)};
    CHECK(eigenspace_inner_product(u, v, 3) == doctest::Approx(-2.0));
  }
  SUBCASE("p = 4, k = 2, orthogonal pair") {
    // Oracle route: (1 + 2k/(p-2)) C_2^1(0) with the Gegenbauer value taken
    // from the generating function, not the recurrence.
    const std::vector<double> u{1.0, 0.0, 0.0, 0.0};
    const std::vector<double> v{0.0, 1.0, 0.0, 0.0};
    const double want =
        (1.0 + 2.0 * 2.0 / 2.0) * oracle::gegenbauer_contour_oracle(2, 1.0, 0.0);
    CHECK(want == doctest::Approx(-3.0).epsilon(1e-9));
    CHECK(eigenspace_inner_product(u, v, 2) == doctest::Approx(want));
  }
  SUBCASE("u = v at k gives the eigenspace dimension") {
    std::vector<double> u{0.0, 0.0, 1.0, 0.0, 0.0};
    for (int k = 1; k <= 6; ++k)
      CHECK(eigenspace_inner_product(u, u, k) ==
            doctest::Approx(eigendim(5, k)).epsilon(1e-10));
  }
}

TEST_CASE("sobolev statistic equals a literal double sum") {
  Rng rng(9);
  SobolevWeights w;
  w.v = {0.7, 0.0, -0.3, 0.2};
  for (std::size_t p : {2u, 4u}) {
    const auto s = sample_uniform(8, p, 500 + p);
    double brute = 0.0;
    for (std::size_t i = 0; i < s.n(); ++i)
      for (std::size_t j = 0; j < s.n(); ++j)
        for (std::size_t k = 1; k <= w.v.size(); ++k)
          brute += w.v[k - 1] * w.v[k - 1] *
                   eigenspace_inner_product(s.point(i), s.point(j),
                                            static_cast<int>(k));
    brute /= static_cast<double>(s.n());
    CHECK(sobolev_statistic(s, w) == doctest::Approx(brute).epsilon(1e-10));
  }
}

TEST_CASE("rayleigh identity: v_1 = 1 Sobolev equals n p |mean|^2") {
  SobolevWeights w = rayleigh_weights();
  for (std::size_t p : {2u, 3u, 5u}) {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      const auto s = sample_uniform(20, p, seed * 11 + p);
      CHECK(std::abs(sobolev_statistic(s, w) - rayleigh(s)) < 1e-10);
    }
  }
  SUBCASE("single point gives exactly p") {
    const auto s = DirectionalSample::from_vectors({0.0, 1.0, 0.0}, 3);
    CHECK(sobolev_statistic(s, w) == doctest::Approx(3.0).epsilon(1e-14));
  }
}

TEST_CASE("rayleigh pinned values") {
  const auto same = DirectionalSample::from_angles({1.2, 1.2, 1.2});
  CHECK(rayleigh(same) == doctest::Approx(6.0));
  const auto anti = DirectionalSample::from_angles({0.7, 0.7 + kPi});
  CHECK(rayleigh(anti) == doctest::Approx(0.0).epsilon(1e-12));
  const auto axes = DirectionalSample::from_angles(
      {0.0, kPi / 2.0, kPi, 1.5 * kPi});
  CHECK(rayleigh(axes) == doctest::Approx(0.0).epsilon(1e-12));
  // Circle form of the statistic via cosine/sine sums.
  const auto s = random_circular(31, 3);
  double c = 0.0, sn = 0.0;
  for (double t : s.angles()) {
    c += std::cos(t);
    sn += std::sin(t);
  }
  CHECK(rayleigh(s) == doctest::Approx((c * c + sn * sn) * 2.0 / 31.0));
}

TEST_CASE("watson as a Sobolev test: v_k = 1/(pi k) gives 4 U_n^2") {
  // The k-th squared resultant has Fourier weight 1/(pi^2 k^2) in S_n but
  // 1/(4 pi^2 k^2) in U_n^2, so the exact finite-n relation is S = 4 U^2;
  // the truncation at K = 20000 contributes ~1e-5.
  const auto w = watson_sobolev_weights(20000);
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto s = random_circular(25, 900 + seed);
    const double sob = sobolev_statistic(s, w);
    CHECK(std::abs(sob - 4.0 * watson(s)) < 1e-4);
  }
}

TEST_CASE("ajne pinned values and oracles") {
  SUBCASE("antipodal pair in any dimension") {
    const auto s2 = DirectionalSample::from_angles({0.4, 0.4 + kPi});
    CHECK(ajne(s2) == doctest::Approx(0.0).epsilon(1e-12));
    const auto s3 =
        DirectionalSample::from_vectors({0, 0, 1, 0, 0, -1}, 3);
    CHECK(ajne(s3) == doctest::Approx(0.0).epsilon(1e-12));
  }
  SUBCASE("single point") {
    CHECK(ajne(DirectionalSample::from_angles({2.0})) ==
          doctest::Approx(0.25));
  }
  SUBCASE("matches the scan-integral oracle on the circle") {
    const auto s = random_circular(30, 123);
    CHECK(std::abs(ajne(s) - oracle::ajne_integral_oracle(s.angles())) < 1e-5);
  }
  SUBCASE("circle fast path equals the pairwise arccos form") {
    const auto s = random_circular(40, 321);
    double sum = 0.0;
    for (std::size_t i = 0; i < s.n(); ++i)
      for (std::size_t j = i + 1; j < s.n(); ++j) {
        double dot = 0.0;
        for (std::size_t c = 0; c < 2; ++c) dot += s.point(i)[c] * s.point(j)[c];
        sum += std::acos(std::clamp(dot, -1.0, 1.0));
      }
    const double pairwise = 40.0 / 4.0 - sum / (40.0 * kPi);
    CHECK(std::abs(ajne(s) - pairwise) < 1e-7);
  }
  SUBCASE("ajne weights reproduce the statistic") {
    const auto s = random_circular(12, 55);
    CHECK(std::abs(sobolev_statistic(s, ajne_weights(400000)) - ajne(s)) <
          1e-5);
  }
}

TEST_CASE("rothman statistic") {
  SUBCASE("t = 1/2 equals ajne") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      const auto s = random_circular(15, 40 + seed);
      CHECK(std::abs(rothman(s, 0.5, 1000000) - ajne(s)) < 1e-6);
    }
  }
  SUBCASE("n = 1 leaves only the diagonal") {
    const auto s = DirectionalSample::from_angles({1.0});
    const auto w = rothman_weights(0.3, 4000);
    double diag = 0.0;
    for (double v : w.v) diag += 2.0 * v * v;
    const double got = rothman(s, 0.3, 4000);
    CHECK(got > 0.0);
    CHECK(got == doctest::Approx(diag).epsilon(1e-12));
  }
  SUBCASE("parameter domain") {
    const auto s = random_circular(5, 1);
    CHECK_THROWS(rothman(s, 0.0));
    CHECK_THROWS(rothman(s, 1.0));
  }
  SUBCASE("mixture identity holds with factor 2") {
    // Integral over t in [0,1] of A_n(t) equals 2 U_n^2: per squared
    // resultant, Integral sin^2(k pi t) dt = 1/2, so the Fourier weight is
    // 1/(2 pi^2 k^2) against U_n^2's 1/(4 pi^2 k^2).
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
      const auto s = random_circular(20, 600 + seed);
      const auto integral = oracle::simpson(
          [&](double t) {
            if (t <= 0.0 || t >= 1.0) return 0.0;
            return rothman(s, t, 2000);
          },
          0.0, 1.0, 201);
      CHECK(std::abs(integral - 2.0 * watson(s)) < 1e-3);
    }
  }
}

TEST_CASE("bingham pinned values and Sobolev identity") {
  SUBCASE("isotropic two points") {
    const auto s = DirectionalSample::from_vectors({1, 0, 0, 1}, 2);
    CHECK(bingham(s) == doctest::Approx(0.0).epsilon(1e-12));
  }
  SUBCASE("all mass on one axis") {
    const auto s = DirectionalSample::from_vectors({1, 0, -1, 0, 1, 0}, 2);
    const double p = 2.0, n = 3.0;
    CHECK(bingham(s) ==
          doctest::Approx(n * p * (p + 2.0) / 2.0 * (1.0 - 1.0 / p)));
  }
  SUBCASE("scatter matrix invariants") {
    const auto s = sample_uniform(50, 4, 8);
    const auto m = scatter_matrix(s);
    double trace = 0.0;
    for (std::size_t i = 0; i < 4; ++i) trace += m[i * 4 + i];
    CHECK(trace == doctest::Approx(1.0).epsilon(1e-10));
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j)
        CHECK(m[i * 4 + j] == doctest::Approx(m[j * 4 + i]).epsilon(1e-12));
  }
  SUBCASE("equals the v_2 = 1 Sobolev statistic") {
    const auto w = bingham_weights();
    for (std::size_t p : {2u, 3u, 5u}) {
      const auto s = sample_uniform(25, p, 70 + p);
      CHECK(std::abs(sobolev_statistic(s, w) - bingham(s)) < 1e-8);
    }
  }
}

TEST_CASE("gine statistics") {
  SUBCASE("single point") {
    const auto s = DirectionalSample::from_vectors({1.0, 0.0, 0.0}, 3);
    CHECK(gine_g(s) == doctest::Approx(0.5));
  }
  SUBCASE("orthogonal pair on the circle") {
    const auto s = DirectionalSample::from_angles({0.0, kPi / 2.0});
    CHECK(gine_g(s) == doctest::Approx(1.0 - kPi / 4.0).epsilon(1e-12));
  }
  SUBCASE("antipodal pair") {
    const auto s = DirectionalSample::from_angles({1.0, 1.0 + kPi});
    CHECK(gine_g(s) == doctest::Approx(1.0).epsilon(1e-10));
  }
  SUBCASE("F = A + G") {
    const auto s = sample_uniform(30, 3, 44);
    CHECK(gine_f(s) == doctest::Approx(ajne(s) + gine_g(s)).epsilon(1e-12));
  }
}

TEST_CASE("circular kernel statistics") {
  SUBCASE("pycke pinned values") {
    const auto anti = DirectionalSample::from_angles({0.3, 0.3 + kPi});
    CHECK(circular_kernel_statistic(anti, CircularKernel::pycke) ==
          doctest::Approx(-2.0 * std::log(4.0)).epsilon(1e-12));
    const auto three = DirectionalSample::from_angles(
        {0.0, kTwoPi / 3.0, 2.0 * kTwoPi / 3.0});
    CHECK(circular_kernel_statistic(three, CircularKernel::pycke) ==
          doctest::Approx(-3.0 * std::log(3.0)).epsilon(1e-12));
  }
  SUBCASE("pycke rejects coincident points") {
    const auto dup = DirectionalSample::from_angles({1.0, 1.0, 2.0});
    CHECK_THROWS_AS(circular_kernel_statistic(dup, CircularKernel::pycke),
                    std::domain_error);
  }
  SUBCASE("hermans-rasson rotation invariance") {
    const auto s = random_circular(40, 77);
    const double base =
        circular_kernel_statistic(s, CircularKernel::hermans_rasson);
    Rng rng(5);
    for (int rep = 0; rep < 20; ++rep) {
      const auto r = DirectionalSample::from_angles(
          oracle::rotate_angles(s.angles(), kTwoPi * rng.uniform()));
      CHECK(std::abs(circular_kernel_statistic(
                         r, CircularKernel::hermans_rasson) -
                     base) < 1e-9);
    }
  }
  SUBCASE("centered variant differs by the additive constant") {
    const auto s = random_circular(15, 6);
    const double full =
        circular_kernel_statistic(s, CircularKernel::hermans_rasson);
    const double centered =
        circular_kernel_statistic(s, CircularKernel::hermans_rasson_centered);
    const double n = 15.0;
    const double shift = n * (-kPi / 2.0 + (n - 1.0) * 2.895 / kPi);
    CHECK(full - centered == doctest::Approx(shift).epsilon(1e-10));
  }
}

TEST_CASE("jupp data-driven test") {
  SUBCASE("S_{n,1} is the Rayleigh statistic") {
    for (std::size_t p : {2u, 3u, 4u}) {
      const auto s = sample_uniform(30, p, 91 + p);
      const auto partial = jupp_partial_statistics(s, 3);
      CHECK(partial[0] == doctest::Approx(rayleigh(s)).epsilon(1e-10));
    }
  }
  SUBCASE("two identical points: exhaustive scan matches the definition") {
    const auto s = DirectionalSample::from_angles({1.0, 1.0});
    const int cap = 6;
    const auto partial = jupp_partial_statistics(s, cap);
    // Every squared resultant is 2n = 4, so S_{n,l} = 4l and the penalized
    // score is B(l) = 4l - 2l log 2; the scan must pick the cap and flag it.
    double best = -1e300;
    int best_l = 0;
    for (int l = 1; l <= cap; ++l) {
      CHECK(partial[l - 1] == doctest::Approx(4.0 * l).epsilon(1e-10));
      const double score = partial[l - 1] - 2.0 * l * std::log(2.0);
      if (score > best) {
        best = score;
        best_l = l;
      }
    }
    const auto res = jupp(s, cap);
    CHECK(res.order == best_l);
    CHECK(res.order == cap);
    CHECK(res.cap_hit);
    CHECK(res.statistic == doctest::Approx(partial[best_l - 1]));
  }
  SUBCASE("smallest maximizer is selected and caps are respected") {
    const auto s = sample_uniform(60, 3, 10);
    const auto res = jupp(s, 25);
    CHECK(res.order >= 1);
    CHECK(res.order <= 25);
    const auto partial = jupp_partial_statistics(s, 25);
    CHECK(res.statistic == doctest::Approx(partial[res.order - 1]));
  }
}

TEST_CASE("orthogonal and permutation invariance of sphere statistics") {
  Rng rng(2024);
  const auto s = sample_uniform(25, 3, 5150);
  const double a0 = ajne(s);
  const double r0 = rayleigh(s);
  const double b0 = bingham(s);
  const double g0 = gine_g(s);
  SobolevWeights w;
  w.v = {0.5, 0.25, 0.125};
  const double s0 = sobolev_statistic(s, w);
  for (int rep = 0; rep < 50; ++rep) {
    const auto q = oracle::random_orthogonal(3, rng);
    const auto rot = oracle::apply_orthogonal(s, q);
    CHECK(std::abs(ajne(rot) - a0) < 1e-9);
    CHECK(std::abs(rayleigh(rot) - r0) < 1e-9);
    CHECK(std::abs(bingham(rot) - b0) < 1e-9);
    CHECK(std::abs(gine_g(rot) - g0) < 1e-9);
    CHECK(std::abs(sobolev_statistic(rot, w) - s0) < 1e-9);
  }
  // Permutation invariance.
  std::vector<std::size_t> perm(s.n());
  std::iota(perm.begin(), perm.end(), 0u);
  std::mt19937 shuffler(99);
  std::shuffle(perm.begin(), perm.end(), shuffler);
  std::vector<double> coords;
  for (std::size_t i : perm)
    coords.insert(coords.end(), s.point(i).begin(), s.point(i).end());
  const auto shuffled = DirectionalSample::from_vectors(coords, 3);
  CHECK(ajne(shuffled) == doctest::Approx(a0).epsilon(1e-12));
  CHECK(rayleigh(shuffled) == doctest::Approx(r0).epsilon(1e-12));
  CHECK(bingham(shuffled) == doctest::Approx(b0).epsilon(1e-12));
  CHECK(sobolev_statistic(shuffled, w) == doctest::Approx(s0).epsilon(1e-12));
}

TEST_CASE("nonnegativity of the Sobolev statistic") {
  Rng rng(31337);
  for (int rep = 0; rep < 25; ++rep) {
    SobolevWeights w;
    w.v.resize(1 + rep % 7);
    for (auto& v : w.v) v = 2.0 * rng.uniform() - 1.0;
    const std::size_t p = 2 + rep % 3;
    const auto s = sample_uniform(12, p, 7000 + rep);
    CHECK(sobolev_statistic(s, w) >= -1e-9);
  }
}
