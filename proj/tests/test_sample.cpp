// Copyright 2026 the dirunif authors
// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "dirunif/rng.hpp"
#include "dirunif/sample.hpp"
#include "oracle_helpers.hpp"

using namespace dirunif;

namespace {

std::filesystem::path write_temp(const std::string& name,
                                 const std::string& content) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream out(path);
  out << content;
  return path;
}

}  // namespace

TEST_CASE("ingest angles: polar conversion") {
  const auto path = write_temp("one_angle.txt", "3.141592653589793\n");
  const auto s = ingest(path, {SampleFormat::angles_rad});
  REQUIRE(s.n() == 1);
  REQUIRE(s.dim() == 2);
  CHECK(s.point(0)[0] == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(std::abs(s.point(0)[1]) < 1e-12);
}

TEST_CASE("ingest vectors: exact unit row accepted unchanged") {
  const auto path = write_temp("triple.txt", "0.6,0.8\n");
  const auto s = ingest(path, {SampleFormat::vectors});
  CHECK(s.point(0)[0] == 0.6);
  CHECK(s.point(0)[1] == 0.8);
}

TEST_CASE("ingest vectors: renormalization band") {
  const auto path = write_temp("near_unit.txt", "0.60001,0.8\n");
  CHECK_THROWS_AS(ingest(path, {SampleFormat::vectors}), ParseError);
  IngestOptions opt{SampleFormat::vectors, true, 1e-3};
  const auto s = ingest(path, opt);
  const double norm = std::hypot(s.point(0)[0], s.point(0)[1]);
  CHECK(norm == doctest::Approx(1.0).epsilon(1e-14));

  // Outside the band the renormalizing ingest fails too.
  const auto bad = write_temp("far_from_unit.txt", "0.7,0.8\n");
  CHECK_THROWS_AS(ingest(bad, opt), ParseError);
}

TEST_CASE("ingest error reporting") {
  SUBCASE("empty file") {
    const auto path = write_temp("empty.txt", "# only a comment\n\n");
    CHECK_THROWS_WITH_AS(ingest(path, {SampleFormat::angles_rad}),
                         doctest::Contains("empty"), ParseError);
  }
  SUBCASE("non-numeric token carries line and column") {
    const auto path = write_temp("bad_token.txt", "0.1,0.99\n0.5,oops\n");
    try {
      ingest(path, {SampleFormat::vectors, true, 0.5});
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      const std::string msg = e.what();
      CHECK(msg.find(":2:2:") != std::string::npos);
      CHECK(msg.find("oops") != std::string::npos);
    }
  }
  SUBCASE("zero-norm row") {
    const auto path = write_temp("zero_row.txt", "0,0\n");
    CHECK_THROWS_WITH_AS(ingest(path, {SampleFormat::vectors}),
                         doctest::Contains("zero-norm"), ParseError);
  }
  SUBCASE("inconsistent row width") {
    const auto path = write_temp("widths.txt", "1,0\n0,1,0\n");
    CHECK_THROWS_WITH_AS(ingest(path, {SampleFormat::vectors}),
                         doctest::Contains("inconsistent"), ParseError);
  }
  SUBCASE("angle format wants one column") {
    const auto path = write_temp("two_cols.txt", "1.0,2.0\n");
    CHECK_THROWS_AS(ingest(path, {SampleFormat::angles_rad}), ParseError);
  }
}

TEST_CASE("degrees convert with pi/180 and reduce mod 2 pi") {
  const auto path = write_temp("degrees.txt", "180\n-90\n450\n");
  const auto s = ingest(path, {SampleFormat::angles_deg});
  const auto a = s.angles();
  CHECK(a[0] == doctest::Approx(kPi));
  CHECK(a[1] == doctest::Approx(1.5 * kPi));
  CHECK(a[2] == doctest::Approx(0.5 * kPi));
}

TEST_CASE("angle view reproduces the vector view") {
  Rng rng(11);
  std::vector<double> raw(40);
  for (auto& t : raw) t = rng.uniform() * 30.0 - 10.0;
  const auto s = DirectionalSample::from_angles(raw);
  const auto view = s.angles();
  for (std::size_t i = 0; i < s.n(); ++i) {
    CHECK(std::abs(std::cos(view[i]) - s.point(i)[0]) < 1e-12);
    CHECK(std::abs(std::sin(view[i]) - s.point(i)[1]) < 1e-12);
    CHECK(view[i] >= 0.0);
    CHECK(view[i] < kTwoPi);
  }
}

TEST_CASE("ordered circular invariants") {
  const auto s = DirectionalSample::from_angles({5.0, 0.25, 3.0, 0.25});
  const auto oc = order_circular(s);
  REQUIRE(oc.u.size() == 4);
  for (std::size_t i = 0; i + 1 < oc.u.size(); ++i)
    CHECK(oc.u[i] <= oc.u[i + 1]);
  for (double u : oc.u) {
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
  double mean = 0.0;
  for (double u : oc.u) mean += u;
  CHECK(oc.u_mean == doctest::Approx(mean / 4.0));
}

TEST_CASE("spacings examples") {
  SUBCASE("antipodal pair") {
    const auto sp = spacings(DirectionalSample::from_angles({0.0, kPi}));
    REQUIRE(sp.d.size() == 2);
    CHECK(sp.d[0] == doctest::Approx(kPi));
    CHECK(sp.d[1] == doctest::Approx(kPi));
  }
  SUBCASE("equally spaced") {
    const auto sp = spacings(DirectionalSample::from_angles(
        {0.0, kPi / 2.0, kPi, 1.5 * kPi}));
    for (double d : sp.d) CHECK(d == doctest::Approx(kPi / 2.0));
  }
  SUBCASE("tied points give a zero gap") {
    const auto sp = spacings(
        DirectionalSample::from_angles({0.0, kPi / 2.0, kPi / 2.0}));
    REQUIRE(sp.d.size() == 3);
    CHECK(sp.d[0] == doctest::Approx(kPi / 2.0));
    CHECK(sp.d[1] == doctest::Approx(0.0));
    CHECK(sp.d[2] == doctest::Approx(1.5 * kPi));
  }
  SUBCASE("preconditions") {
    CHECK_THROWS(spacings(DirectionalSample::from_angles({1.0})));
    const auto s3 = DirectionalSample::from_vectors({1, 0, 0, 0, 1, 0}, 3);
    CHECK_THROWS(spacings(s3));
  }
}

TEST_CASE("spacings sum to 2 pi and are rotation invariant as a multiset") {
  Rng rng(202);
  std::vector<double> theta(25);
  for (auto& t : theta) t = kTwoPi * rng.uniform();
  const auto base = spacings(DirectionalSample::from_angles(theta));
  auto sorted_base = base.d;
  std::sort(sorted_base.begin(), sorted_base.end());
  for (int rep = 0; rep < 100; ++rep) {
    const double shift = kTwoPi * rng.uniform();
    const auto rotated = spacings(
        DirectionalSample::from_angles(oracle::rotate_angles(theta, shift)));
    double total = 0.0;
    for (double d : rotated.d) {
      CHECK(d >= 0.0);
      total += d;
    }
    CHECK(std::abs(total - kTwoPi) < 1e-10);
    auto sorted = rotated.d;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < sorted.size(); ++i)
      CHECK(std::abs(sorted[i] - sorted_base[i]) < 1e-9);
  }
}

TEST_CASE("emit/ingest round trip is exact") {
  Rng rng(7);
  std::vector<double> coords(60 * 3);
  for (std::size_t i = 0; i < 60; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < 3; ++j) {
      coords[i * 3 + j] = rng.normal();
      s += coords[i * 3 + j] * coords[i * 3 + j];
    }
    for (std::size_t j = 0; j < 3; ++j) coords[i * 3 + j] /= std::sqrt(s);
  }
  const auto sample = DirectionalSample::from_vectors(coords, 3);
  const auto path = std::filesystem::temp_directory_path() / "roundtrip.csv";
  emit(sample, path, SampleFormat::vectors);
  const auto back = ingest(path, {SampleFormat::vectors});
  REQUIRE(back.n() == sample.n());
  for (std::size_t i = 0; i < sample.n(); ++i)
    for (std::size_t j = 0; j < 3; ++j)
      CHECK(std::abs(back.point(i)[j] - sample.point(i)[j]) < 1e-12);

  // Emitting the re-ingested sample reproduces the file byte for byte.
  const auto path2 = std::filesystem::temp_directory_path() / "roundtrip2.csv";
  emit(back, path2, SampleFormat::vectors);
  std::ifstream f1(path), f2(path2);
  const std::string s1((std::istreambuf_iterator<char>(f1)), {});
  const std::string s2((std::istreambuf_iterator<char>(f2)), {});
  CHECK(s1 == s2);

  // Angle emission round-trips to 1e-12 as well.
  Rng rng2(8);
  std::vector<double> theta(50);
  for (auto& t : theta) t = kTwoPi * rng2.uniform();
  const auto circ = DirectionalSample::from_angles(theta);
  const auto path3 = std::filesystem::temp_directory_path() / "roundtrip3.csv";
  emit(circ, path3, SampleFormat::angles_rad);
  const auto back3 = ingest(path3, {SampleFormat::angles_rad});
  for (std::size_t i = 0; i < circ.n(); ++i)
    for (std::size_t j = 0; j < 2; ++j)
      CHECK(std::abs(back3.point(i)[j] - circ.point(i)[j]) < 1e-12);
}

TEST_CASE("n = 1 accepted by ingestion; invariants enforced") {
  const auto path = write_temp("single.txt", "0.5\n");
  const auto s = ingest(path, {SampleFormat::angles_rad});
  CHECK(s.n() == 1);
  CHECK_THROWS(DirectionalSample::from_vectors({0.5, 0.5}, 2));
  CHECK_THROWS(DirectionalSample::from_vectors({1.0, 0.0}, 1));
}
