// Copyright 2026 The octet Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "octet/codec.hpp"
#include "octet/quantizer.hpp"

namespace octet {

/// Zero-centred source with unit scale. The uniform source is
/// U(-sqrt(3), sqrt(3)) so that it has unit variance like the Gaussian.
class Distribution {
 public:
  enum class Kind { kUniform, kGaussian, kStudentT };

  static Distribution uniform() { return Distribution(Kind::kUniform, 0); }
  static Distribution gaussian() { return Distribution(Kind::kGaussian, 0); }
  /// Throws std::invalid_argument unless nu > 1.
  static Distribution student_t(double nu);

  Kind kind() const { return kind_; }
  double nu() const { return nu_; }
  /// "uniform", "gaussian", "student_t(2)".
  std::string name() const;

  /// n draws from a generator seeded with `seed`.
  std::vector<double> sample(std::size_t n, std::uint64_t seed) const;

 private:
  Distribution(Kind kind, double nu) : kind_(kind), nu_(nu) {}

  Kind kind_;
  double nu_;
};

/// Replaces round(fraction * n) entries, at positions drawn without
/// replacement, with +-magnitude (random sign). Throws std::invalid_argument
/// unless 0 <= fraction <= 1 and magnitude is finite.
std::vector<double> inject_outliers(std::vector<double> values,
                                    double fraction, double magnitude,
                                    std::uint64_t seed);

/// "uniform", "gaussian", "student_t" / "student-t" (uses `nu`).
Distribution parse_distribution(const std::string& text, double nu);

/// Inverted, normalized RMSE. The reference span is sqrt(12) * rms(x), the
/// width of a uniform source with the same power as the data, so an ideal
/// b-bit uniform quantizer of a matched uniform source scores b bits.
struct BitsOfAccuracy {
  double rmse = 0;
  double bits = 0;
};

double reference_span(std::span<const double> samples);
/// log2(span) - log2(rmse * sqrt(12)).
double bits_from_rmse(double rmse, double span);

inline constexpr std::size_t kMinSamples = 100'000;
inline constexpr std::size_t kDefaultSamples = 1'000'000;

/// Quantizes `samples` per-tensor with the given range method and scores the
/// result against `span`.
BitsOfAccuracy score_samples(std::span<const double> samples,
                             const Format& fmt, RangeMethod method,
                             double span);

/// Monte-Carlo estimate with mse_search calibration, the best case for each
/// format. Throws std::invalid_argument if n < kMinSamples.
BitsOfAccuracy expected_mse(const Distribution& dist, const Format& fmt,
                            std::size_t n, std::uint64_t seed);

struct Codebook {
  std::vector<double> levels;      // strictly increasing
  std::vector<double> thresholds;  // midpoints between adjacent levels
  double mse = 0;
  std::vector<double> mse_history;  // one entry per completed iteration
  int iterations = 0;
};

struct LloydOptions {
  int levels = 255;
  int max_iters = 20000;
  /// Stop once the relative MSE improvement of an iteration drops below this.
  double tol = 1e-10;
};

/// Lloyd-Max codebook on a sample. Alternates nearest-level cells and
/// centroid updates; a level whose cell empties is moved into the cell with
/// the largest squared error, split at that cell's mean. The default start
/// places levels with density proportional to p(x)^(1/3). Each entry of
/// `starts` (opts.levels values each) is run as an additional start and the
/// lowest-MSE result is returned, so the result is never worse than any start.
Codebook lloyd_max(std::span<const double> samples, const LloydOptions& opts,
                   std::span<const std::vector<double>> starts = {});
Codebook lloyd_max(const Distribution& dist, std::size_t n,
                   std::uint64_t seed, const LloydOptions& opts);

/// One sweep row. `format` is a format name or "lloyd_max".
struct MseRow {
  std::string distribution;
  std::string format;
  double rmse = 0;
  double bits = 0;
  std::size_t n = 0;
  std::uint64_t seed = 0;
};

struct SweepOptions {
  std::size_t n = kDefaultSamples;
  std::uint64_t seed = 0;
  bool include_lloyd_max = true;
  LloydOptions lloyd;
};

/// Stream seed for distribution `index` of a sweep.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

/// Distributions x (formats + lloyd_max). Every cell of one distribution uses
/// the same sample, drawn with derive_seed(seed, distribution index), so the
/// rows of a column are compared on common data. Row order: distributions in
/// input order, then formats in input order, then lloyd_max.
std::vector<MseRow> sweep(std::span<const Distribution> dists,
                          std::span<const Format> formats,
                          const SweepOptions& opts);

}  // namespace octet
