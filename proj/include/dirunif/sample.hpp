// Copyright 2026 the dirunif authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace dirunif {

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr double kTwoPi = 2.0 * kPi;

/// Reduce an angle to [0, 2*pi).
double reduce_angle(double theta);

/// Raised on malformed input files; the message carries file:line:column.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// n observations on the unit sphere S^(p-1), stored row-major as unit
/// vectors. Immutable after construction; the circular (p = 2) angle view
/// is derived on demand. Every stored vector has norm within 1e-10 of 1.
class DirectionalSample {
 public:
  /// Takes row-major coordinates; throws std::invalid_argument unless every
  /// row is unit to 1e-10.
  static DirectionalSample from_vectors(std::vector<double> coords,
                                        std::size_t dim);

  /// Angles in radians; reduced mod 2*pi, stored as (cos, sin) pairs.
  static DirectionalSample from_angles(const std::vector<double>& radians);

  std::size_t n() const { return coords_.size() / dim_; }
  std::size_t dim() const { return dim_; }

  std::span<const double> point(std::size_t i) const {
    return {coords_.data() + i * dim_, dim_};
  }
  const std::vector<double>& coords() const { return coords_; }

  /// Angle view theta_i in [0, 2*pi); requires dim() == 2.
  std::vector<double> angles() const;

  /// Mean vector (not normalized).
  std::vector<double> mean() const;

 private:
  DirectionalSample(std::vector<double> coords, std::size_t dim)
      : coords_(std::move(coords)), dim_(dim) {}
  std::vector<double> coords_;
  std::size_t dim_;
};

/// Sorted circular sample: theta_(1) <= ... <= theta_(n), the normalized
/// values u_i = theta_(i)/(2*pi) in [0, 1), and their mean.
struct OrderedCircular {
  std::vector<double> theta;  // sorted, in [0, 2*pi)
  std::vector<double> u;      // theta/(2*pi), nondecreasing in [0, 1)
  double u_mean = 0.0;
};

/// Arc gaps of a circular sample: d[i] = theta_(i+1) - theta_(i) for
/// i < n-1 and d[n-1] = 2*pi - (theta_(n) - theta_(1)). Sum is 2*pi.
struct Spacings {
  std::vector<double> d;
};

OrderedCircular order_circular(const DirectionalSample& sample);

/// Requires dim == 2 and n >= 2.
Spacings spacings(const DirectionalSample& sample);
Spacings spacings(const OrderedCircular& ordered);

enum class SampleFormat { angles_rad, angles_deg, vectors };

struct IngestOptions {
  SampleFormat format = SampleFormat::angles_rad;
  bool renormalize = false;
  double renorm_band = 1e-3;
};

/// Reads a whitespace- or comma-separated text file. Lines starting with
/// '#' and blank lines are skipped. Angle formats expect one column; the
/// vectors format expects a constant row width p >= 2.
DirectionalSample ingest(const std::filesystem::path& path,
                         const IngestOptions& options);

/// Writes one row per observation with 17 significant digits, commas
/// between columns. Re-ingesting reproduces the coordinates exactly.
void emit(const DirectionalSample& sample, const std::filesystem::path& path,
          SampleFormat format);

SampleFormat parse_format(const std::string& name);

}  // namespace dirunif
