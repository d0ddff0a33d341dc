// Copyright 2026 the dirunif authors
// SPDX-License-Identifier: Apache-2.0
#include "dirunif/sample.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>

namespace dirunif {

double reduce_angle(double theta) {
  double r = std::fmod(theta, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (r >= kTwoPi) r = 0.0;
  return r;
}

DirectionalSample DirectionalSample::from_vectors(std::vector<double> coords,
                                                  std::size_t dim) {
  if (dim < 2) throw std::invalid_argument("dimension must be >= 2");
  if (coords.empty() || coords.size() % dim != 0)
    throw std::invalid_argument("coordinate count not a multiple of dim");
  const std::size_t n = coords.size() / dim;
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < dim; ++j) s += coords[i * dim + j] * coords[i * dim + j];
    if (std::abs(std::sqrt(s) - 1.0) > 1e-10)
      throw std::invalid_argument("row " + std::to_string(i + 1) +
                                  " is not a unit vector");
  }
  return DirectionalSample(std::move(coords), dim);
}

DirectionalSample DirectionalSample::from_angles(
    const std::vector<double>& radians) {
  if (radians.empty()) throw std::invalid_argument("empty angle list");
  std::vector<double> coords(radians.size() * 2);
  for (std::size_t i = 0; i < radians.size(); ++i) {
    const double t = reduce_angle(radians[i]);
    coords[2 * i] = std::cos(t);
    coords[2 * i + 1] = std::sin(t);
  }
  return DirectionalSample(std::move(coords), 2);
}

std::vector<double> DirectionalSample::angles() const {
  if (dim_ != 2)
    throw std::invalid_argument("angle view requires dimension 2");
  std::vector<double> out(n());
  for (std::size_t i = 0; i < out.size(); ++i) {
    double a = std::atan2(coords_[2 * i + 1], coords_[2 * i]);
    if (a < 0.0) a += kTwoPi;
    if (a >= kTwoPi) a = 0.0;
    out[i] = a;
  }
  return out;
}

std::vector<double> DirectionalSample::mean() const {
  std::vector<double> m(dim_, 0.0);
  const std::size_t count = n();
  for (std::size_t i = 0; i < count; ++i)
    for (std::size_t j = 0; j < dim_; ++j) m[j] += coords_[i * dim_ + j];
  for (double& v : m) v /= static_cast<double>(count);
  return m;
}

OrderedCircular order_circular(const DirectionalSample& sample) {
  OrderedCircular oc;
  oc.theta = sample.angles();
  std::stable_sort(oc.theta.begin(), oc.theta.end());
  oc.u.resize(oc.theta.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < oc.theta.size(); ++i) {
    oc.u[i] = oc.theta[i] / kTwoPi;
    sum += oc.u[i];
  }
  oc.u_mean = sum / static_cast<double>(oc.u.size());
  return oc;
}

Spacings spacings(const OrderedCircular& ordered) {
  const std::size_t n = ordered.theta.size();
  if (n < 2) throw std::invalid_argument("spacings require n >= 2");
  Spacings sp;
  sp.d.resize(n);
  for (std::size_t i = 0; i + 1 < n; ++i)
    sp.d[i] = ordered.theta[i + 1] - ordered.theta[i];
  sp.d[n - 1] = kTwoPi - (ordered.theta[n - 1] - ordered.theta[0]);
  return sp;
}

Spacings spacings(const DirectionalSample& sample) {
  return spacings(order_circular(sample));
}

SampleFormat parse_format(const std::string& name) {
  if (name == "angles-rad") return SampleFormat::angles_rad;
  if (name == "angles-deg") return SampleFormat::angles_deg;
  if (name == "vectors") return SampleFormat::vectors;
  throw std::invalid_argument("unknown format '" + name + "'");
}

namespace {

bool is_separator(char c) {
  return c == ' ' || c == '\t' || c == '\r' || c == ',' || c == ';';
}

struct Token {
  std::string text;
  std::size_t column;  // 1-based token index within the line
};

std::vector<Token> tokenize(const std::string& line) {
  std::vector<Token> tokens;
  std::size_t i = 0, col = 0;
  while (i < line.size()) {
    while (i < line.size() && is_separator(line[i])) ++i;
    if (i >= line.size()) break;
    std::size_t start = i;
    while (i < line.size() && !is_separator(line[i])) ++i;
    tokens.push_back({line.substr(start, i - start), ++col});
  }
  return tokens;
}

double parse_double(const Token& tok, const std::string& file,
                    std::size_t lineno) {
  double value = 0.0;
  const char* first = tok.text.data();
  const char* last = first + tok.text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last || !std::isfinite(value))
    throw ParseError(file + ":" + std::to_string(lineno) + ":" +
                     std::to_string(tok.column) + ": non-numeric token '" +
                     tok.text + "'");
  return value;
}

}  // namespace

DirectionalSample ingest(const std::filesystem::path& path,
                         const IngestOptions& options) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path.string() + "'");
  const std::string file = path.string();

  std::vector<double> values;
  std::size_t width = 0;
  std::size_t lineno = 0;
  std::string line;
  std::vector<std::size_t> row_lines;  // source line of each data row
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line[0] == '#') continue;
    const auto tokens = tokenize(line);
    if (tokens.empty()) continue;
    if (width == 0) {
      width = tokens.size();
    } else if (tokens.size() != width) {
      throw ParseError(file + ":" + std::to_string(lineno) +
                       ": inconsistent row width (" +
                       std::to_string(tokens.size()) + " columns, expected " +
                       std::to_string(width) + ")");
    }
    for (const auto& tok : tokens) values.push_back(parse_double(tok, file, lineno));
    row_lines.push_back(lineno);
  }
  if (values.empty()) throw ParseError(file + ": empty file");

  const bool angle_input = options.format != SampleFormat::vectors;
  if (angle_input) {
    if (width != 1)
      throw ParseError(file + ": angle formats expect one column, got " +
                       std::to_string(width));
    if (options.format == SampleFormat::angles_deg)
      for (double& v : values) v *= kPi / 180.0;
    return DirectionalSample::from_angles(values);
  }

  if (width < 2)
    throw ParseError(file + ": vectors format needs row width >= 2, got " +
                     std::to_string(width));
  const std::size_t n = values.size() / width;
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < width; ++j) s += values[i * width + j] * values[i * width + j];
    const double norm = std::sqrt(s);
    const std::string where = file + ":" + std::to_string(row_lines[i]);
    if (norm < 1e-300) throw ParseError(where + ": zero-norm row");
    if (options.renormalize) {
      if (std::abs(norm - 1.0) > options.renorm_band)
        throw ParseError(where + ": norm " + std::to_string(norm) +
                         " outside renormalization band");
      for (std::size_t j = 0; j < width; ++j) values[i * width + j] /= norm;
    } else if (std::abs(norm - 1.0) > 1e-10) {
      throw ParseError(where + ": norm " + std::to_string(norm) +
                       " is not 1 (use renormalize for near-unit rows)");
    }
  }
  return DirectionalSample::from_vectors(std::move(values), width);
}

void emit(const DirectionalSample& sample, const std::filesystem::path& path,
          SampleFormat format) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  char buf[64];
  if (format == SampleFormat::vectors) {
    for (std::size_t i = 0; i < sample.n(); ++i) {
      const auto pt = sample.point(i);
      for (std::size_t j = 0; j < pt.size(); ++j) {
        std::snprintf(buf, sizeof buf, "%.17g", pt[j]);
        out << (j ? "," : "") << buf;
      }
      out << '\n';
    }
  } else {
    const double scale = format == SampleFormat::angles_deg ? 180.0 / kPi : 1.0;
    for (double a : sample.angles()) {
      std::snprintf(buf, sizeof buf, "%.17g", a * scale);
      out << buf << '\n';
    }
  }
}

}  // namespace dirunif
