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

#include "octet/distmse.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

#include "octet/sorted_sample.hpp"

namespace octet {

namespace {

const double kSqrt12 = std::sqrt(12.0);

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Adds one level by splitting the populated cell with the largest squared
// error at its mean. Returns false if no cell holds two distinct values.
bool split_worst_cell(const SortedSample& sample, std::vector<double>& levels) {
  const auto data = sample.values();
  const auto bounds = sample.cell_bounds(levels);
  std::size_t worst = levels.size();
  double worst_err = -1;
  for (std::size_t j = 0; j < levels.size(); ++j) {
    const std::size_t b = bounds[j];
    const std::size_t e = bounds[j + 1];
    if (e - b < 2 || data[b] == data[e - 1]) continue;
    const double err = sample.moments(b, e).squared_error_to(levels[j]);
    if (err > worst_err) {
      worst_err = err;
      worst = j;
    }
  }
  if (worst == levels.size()) return false;

  const std::size_t b = bounds[worst];
  const std::size_t e = bounds[worst + 1];
  const auto whole = sample.moments(b, e);
  const double mean = static_cast<double>(whole.sum / whole.count);
  std::size_t cut = std::clamp(sample.lower_bound(mean), b + 1, e - 1);
  if (data[cut] == data[cut - 1]) {
    cut = static_cast<std::size_t>(
        std::upper_bound(data.begin() + b, data.begin() + e, data[cut - 1]) -
        data.begin());
  }
  const auto left = sample.moments(b, cut);
  const auto right = sample.moments(cut, e);
  levels[worst] = static_cast<double>(left.sum / left.count);
  levels.push_back(static_cast<double>(right.sum / right.count));
  std::sort(levels.begin(), levels.end());
  return true;
}

// Asymptotically optimal starting point: level density proportional to
// p(x)^(1/3), with p estimated on equal-count bins of the sorted sample. A bin
// of width w holding a fixed share of the data then carries weight w^(2/3).
std::vector<double> compander_levels(const SortedSample& sample,
                                     std::size_t count) {
  const auto data = sample.values();
  const std::size_t n = data.size();
  const std::size_t bins = std::clamp<std::size_t>(n / 64, 1, 4096);
  std::vector<double> edges(bins + 1);
  for (std::size_t j = 0; j <= bins; ++j) edges[j] = data[j * (n - 1) / bins];
  std::vector<double> cumulative(bins + 1, 0.0);
  for (std::size_t j = 0; j < bins; ++j) {
    cumulative[j + 1] =
        cumulative[j] + std::pow(edges[j + 1] - edges[j], 2.0 / 3.0);
  }
  std::vector<double> levels(count);
  const double total = cumulative.back();
  for (std::size_t i = 0; i < count; ++i) {
    const double q = (i + 0.5) / count;
    if (total == 0) {
      levels[i] = data[std::min(static_cast<std::size_t>(q * n), n - 1)];
      continue;
    }
    const double target = q * total;
    const auto it =
        std::upper_bound(cumulative.begin(), cumulative.end(), target);
    const std::size_t j = std::min<std::size_t>(
        static_cast<std::size_t>(it - cumulative.begin()) - 1, bins - 1);
    const double weight = cumulative[j + 1] - cumulative[j];
    const double t = weight > 0 ? (target - cumulative[j]) / weight : 0.0;
    levels[i] = edges[j] + t * (edges[j + 1] - edges[j]);
  }
  return levels;
}

Codebook lloyd_iterate(const SortedSample& sample, std::vector<double> levels,
                       const LloydOptions& opts) {
  const std::size_t n = sample.size();
  const std::size_t count = levels.size();
  Codebook book;
  double previous = sample.sum_squared_error(levels) / n;
  for (int iter = 0; iter < opts.max_iters; ++iter) {
    const auto bounds = sample.cell_bounds(levels);
    std::vector<double> next;
    next.reserve(count);
    for (std::size_t j = 0; j < levels.size(); ++j) {
      if (bounds[j] == bounds[j + 1]) continue;
      const auto m = sample.moments(bounds[j], bounds[j + 1]);
      next.push_back(static_cast<double>(m.sum / m.count));
    }
    const bool had_empty = next.size() < levels.size();
    while (next.size() < count && split_worst_cell(sample, next)) {
    }
    levels = std::move(next);

    const double current = sample.sum_squared_error(levels) / n;
    book.mse_history.push_back(current);
    book.iterations = iter + 1;
    const bool converged =
        current == 0 || (previous - current) <= opts.tol * previous;
    previous = current;
    if (converged && !had_empty) break;
  }

  book.mse = previous;
  book.levels = std::move(levels);
  book.thresholds.resize(book.levels.size() - 1);
  for (std::size_t j = 0; j + 1 < book.levels.size(); ++j) {
    book.thresholds[j] = 0.5 * (book.levels[j] + book.levels[j + 1]);
  }
  return book;
}

}  // namespace

Distribution Distribution::student_t(double nu) {
  if (!(nu > 1.0) || !std::isfinite(nu)) {
    std::ostringstream msg;
    msg << "student_t needs nu > 1, got " << nu;
    throw std::invalid_argument(msg.str());
  }
  return Distribution(Kind::kStudentT, nu);
}

std::string Distribution::name() const {
  switch (kind_) {
    case Kind::kUniform:
      return "uniform";
    case Kind::kGaussian:
      return "gaussian";
    case Kind::kStudentT: {
      std::ostringstream out;
      out << "student_t(" << nu_ << ")";
      return out.str();
    }
  }
  return "unknown";
}

std::vector<double> Distribution::sample(std::size_t n,
                                         std::uint64_t seed) const {
  std::mt19937_64 gen(seed);
  std::vector<double> out(n);
  switch (kind_) {
    case Kind::kUniform: {
      const double half_width = std::sqrt(3.0);
      std::uniform_real_distribution<double> d(-half_width, half_width);
      for (double& x : out) x = d(gen);
      break;
    }
    case Kind::kGaussian: {
      std::normal_distribution<double> d(0.0, 1.0);
      for (double& x : out) x = d(gen);
      break;
    }
    case Kind::kStudentT: {
      std::student_t_distribution<double> d(nu_);
      for (double& x : out) x = d(gen);
      break;
    }
  }
  return out;
}

std::vector<double> inject_outliers(std::vector<double> values,
                                    double fraction, double magnitude,
                                    std::uint64_t seed) {
  if (!(fraction >= 0 && fraction <= 1)) {
    throw std::invalid_argument("outlier fraction must be in [0, 1]");
  }
  if (!std::isfinite(magnitude)) {
    throw std::invalid_argument("outlier magnitude must be finite");
  }
  const auto count = static_cast<std::size_t>(
      std::llround(fraction * static_cast<double>(values.size())));
  std::vector<std::size_t> index(values.size());
  for (std::size_t i = 0; i < index.size(); ++i) index[i] = i;
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution negative(0.5);
  // Partial Fisher-Yates: the first `count` slots become the chosen positions.
  for (std::size_t i = 0; i < count; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, index.size() - 1);
    std::swap(index[i], index[pick(rng)]);
    values[index[i]] = negative(rng) ? -magnitude : magnitude;
  }
  return values;
}

Distribution parse_distribution(const std::string& text, double nu) {
  if (text == "uniform") return Distribution::uniform();
  if (text == "gaussian" || text == "normal") return Distribution::gaussian();
  if (text == "student_t" || text == "student-t" || text == "t") {
    return Distribution::student_t(nu);
  }
  throw std::invalid_argument("bad distribution '" + text +
                              "' (expected uniform, gaussian or student_t)");
}

double reference_span(std::span<const double> samples) {
  if (samples.empty()) throw std::invalid_argument("empty sample");
  long double power = 0;
  for (double x : samples) power += static_cast<long double>(x) * x;
  return kSqrt12 * std::sqrt(static_cast<double>(power / samples.size()));
}

double bits_from_rmse(double rmse, double span) {
  return std::log2(span) - std::log2(rmse * kSqrt12);
}

BitsOfAccuracy score_samples(std::span<const double> samples,
                             const Format& fmt, RangeMethod method,
                             double span) {
  const Tensor t = Tensor::from_values({samples.begin(), samples.end()});
  QuantizerConfig cfg{fmt, PerTensor{}, method, {}};
  cfg = calibrate(t, std::move(cfg));
  const ErrorStats stats = error_stats(t, quantize_dequantize(t, cfg));
  return {stats.rmse, bits_from_rmse(stats.rmse, span)};
}

BitsOfAccuracy expected_mse(const Distribution& dist, const Format& fmt,
                            std::size_t n, std::uint64_t seed) {
  if (n < kMinSamples) {
    throw std::invalid_argument("expected_mse needs at least " +
                                std::to_string(kMinSamples) + " samples");
  }
  const std::vector<double> samples = dist.sample(n, seed);
  return score_samples(samples, fmt, RangeMethod::kMseSearch,
                       reference_span(samples));
}

Codebook lloyd_max(std::span<const double> samples, const LloydOptions& opts,
                   std::span<const std::vector<double>> starts) {
  if (opts.levels < 2) throw std::invalid_argument("lloyd_max needs >= 2 levels");
  const SortedSample sample(samples);
  const std::size_t count = static_cast<std::size_t>(opts.levels);

  Codebook best = lloyd_iterate(sample, compander_levels(sample, count), opts);
  for (const auto& start : starts) {
    if (start.size() != count) {
      throw std::invalid_argument("lloyd_max start has " +
                                  std::to_string(start.size()) +
                                  " levels, expected " +
                                  std::to_string(count));
    }
    std::vector<double> levels(start.begin(), start.end());
    std::sort(levels.begin(), levels.end());
    Codebook book = lloyd_iterate(sample, std::move(levels), opts);
    if (book.mse < best.mse) best = std::move(book);
  }
  return best;
}

Codebook lloyd_max(const Distribution& dist, std::size_t n,
                   std::uint64_t seed, const LloydOptions& opts) {
  return lloyd_max(dist.sample(n, seed), opts, {});
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  return splitmix64(master ^ splitmix64(index + 1));
}

std::vector<MseRow> sweep(std::span<const Distribution> dists,
                          std::span<const Format> formats,
                          const SweepOptions& opts) {
  if (opts.n < kMinSamples) {
    throw std::invalid_argument("sweep needs at least " +
                                std::to_string(kMinSamples) + " samples");
  }
  std::vector<MseRow> rows;
  for (std::size_t d = 0; d < dists.size(); ++d) {
    const std::uint64_t seed = derive_seed(opts.seed, d);
    const std::vector<double> samples = dists[d].sample(opts.n, seed);
    const double span = reference_span(samples);
    for (const Format& fmt : formats) {
      const BitsOfAccuracy score =
          score_samples(samples, fmt, RangeMethod::kMseSearch, span);
      rows.push_back({dists[d].name(), format_name(fmt), score.rmse,
                      score.bits, opts.n, seed});
    }
    if (opts.include_lloyd_max) {
      const Codebook book = lloyd_max(samples, opts.lloyd);
      const double rmse = std::sqrt(book.mse);
      rows.push_back({dists[d].name(), "lloyd_max", rmse,
                      bits_from_rmse(rmse, span), opts.n, seed});
    }
  }
  return rows;
}

}  // namespace octet
