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

#include "octet/quantizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "octet/sorted_sample.hpp"

namespace octet {

namespace {

// Scales computed as max|x| / G can land one ulp short of covering max|x|.
constexpr double kClipTolerance = 8 * std::numeric_limits<double>::epsilon();

std::optional<int> resolve_axis(const Tensor& t, const Granularity& g) {
  const auto* per_channel = std::get_if<PerChannel>(&g);
  if (per_channel == nullptr) return std::nullopt;
  const std::optional<int> axis =
      per_channel->axis ? per_channel->axis : t.channel_axis();
  if (!axis) {
    throw std::invalid_argument(
        "per-channel quantization needs a channel axis");
  }
  if (*axis < 0 || static_cast<std::size_t>(*axis) >= t.rank()) {
    throw std::invalid_argument("channel axis " + std::to_string(*axis) +
                                " out of range for rank " +
                                std::to_string(t.rank()));
  }
  return axis;
}

// Group id per element plus the number of groups.
struct Grouping {
  std::size_t groups = 1;
  std::optional<ChannelIndexer> indexer;

  std::size_t group_of(std::size_t flat) const {
    return indexer ? indexer->channel_of(flat) : 0;
  }
};

Grouping make_grouping(const Tensor& t, const Granularity& g) {
  Grouping out;
  if (auto axis = resolve_axis(t, g)) {
    out.indexer.emplace(t.shape(), *axis);
    out.groups = out.indexer->channels();
  }
  return out;
}

std::vector<std::vector<double>> split_groups(const Tensor& t,
                                              const Grouping& grouping) {
  std::vector<std::vector<double>> groups(grouping.groups);
  const auto data = t.data();
  if (grouping.groups == 1) {
    groups[0].assign(data.begin(), data.end());
    return groups;
  }
  for (auto& g : groups) g.reserve(data.size() / grouping.groups);
  for (std::size_t i = 0; i < data.size(); ++i) {
    groups[grouping.group_of(i)].push_back(data[i]);
  }
  return groups;
}

double direct_squared_error(std::span<const double> group, const Format& fmt,
                            double scale) {
  double total = 0;
  for (double x : group) {
    const double err = x - scale * project(x / scale, fmt);
    total += err * err;
  }
  return total;
}

double candidate_scale(double minmax, int percent) {
  return percent == 100 ? minmax : minmax * percent / 100.0;
}

}  // namespace

std::string to_string(RangeMethod method) {
  return method == RangeMethod::kMinMax ? "minmax" : "mse";
}

RangeMethod parse_range_method(const std::string& text) {
  if (text == "minmax") return RangeMethod::kMinMax;
  if (text == "mse" || text == "mse_search") return RangeMethod::kMseSearch;
  throw std::invalid_argument("bad range method '" + text +
                              "' (expected minmax or mse)");
}

std::string to_string(const Granularity& granularity) {
  if (const auto* pc = std::get_if<PerChannel>(&granularity)) {
    return pc->axis ? "per-channel=" + std::to_string(*pc->axis)
                    : "per-channel";
  }
  return "per-tensor";
}

Granularity parse_granularity(const std::string& text) {
  if (text == "per-tensor") return PerTensor{};
  if (text == "per-channel") return PerChannel{};
  const std::string prefix = "per-channel=";
  if (text.rfind(prefix, 0) == 0) {
    const std::string digits = text.substr(prefix.size());
    if (!digits.empty() &&
        std::all_of(digits.begin(), digits.end(),
                    [](char c) { return c >= '0' && c <= '9'; })) {
      return PerChannel{std::stoi(digits)};
    }
  }
  throw std::invalid_argument("bad granularity '" + text +
                              "' (expected per-tensor or per-channel=AXIS)");
}

double minmax_scale(std::span<const double> group, const Format& fmt) {
  double peak = 0;
  for (double x : group) peak = std::max(peak, std::fabs(x));
  if (peak == 0) return 1.0;
  return peak / max_value(fmt);
}

double mse_search_scale(std::span<const double> group, const Format& fmt) {
  if (std::all_of(group.begin(), group.end(),
                  [](double x) { return x == 0; })) {
    return 1.0;
  }
  const double minmax = minmax_scale(group, fmt);

  const SortedSample sample(group);
  const std::vector<double> grid = grid_values(fmt);
  std::vector<double> levels(grid.size());
  auto candidate_error = [&](double scale) {
    std::transform(grid.begin(), grid.end(), levels.begin(),
                   [scale](double v) { return v * scale; });
    return sample.sum_squared_error(levels);
  };

  int best_percent = 100;
  double best_error = candidate_error(minmax);
  for (int k = kMseSearchFirstPercent; k <= kMseSearchLastPercent; ++k) {
    if (k == 100) continue;
    const double err = candidate_error(candidate_scale(minmax, k));
    if (err < best_error) {
      best_error = err;
      best_percent = k;
    }
  }
  if (best_percent == 100) return minmax;

  // The prefix-sum evaluator agrees with elementwise quantization only up to
  // rounding; confirm the winner against min-max on the real path.
  const double best = candidate_scale(minmax, best_percent);
  if (direct_squared_error(group, fmt, best) >
      direct_squared_error(group, fmt, minmax)) {
    return minmax;
  }
  return best;
}

QuantizerConfig calibrate(const Tensor& t, QuantizerConfig cfg) {
  if (t.empty()) throw std::invalid_argument("cannot calibrate empty tensor");
  const Grouping grouping = make_grouping(t, cfg.granularity);
  const auto groups = split_groups(t, grouping);
  cfg.scales.clear();
  cfg.scales.reserve(groups.size());
  for (const auto& g : groups) {
    cfg.scales.push_back(cfg.range_method == RangeMethod::kMinMax
                             ? minmax_scale(g, cfg.format)
                             : mse_search_scale(g, cfg.format));
  }
  return cfg;
}

Tensor quantize_dequantize(const Tensor& t, const QuantizerConfig& cfg) {
  if (!cfg.calibrated()) {
    throw std::invalid_argument("quantizer config is not calibrated");
  }
  const Grouping grouping = make_grouping(t, cfg.granularity);
  if (cfg.scales.size() != grouping.groups) {
    throw std::invalid_argument(
        "config has " + std::to_string(cfg.scales.size()) +
        " scales, tensor has " + std::to_string(grouping.groups) + " groups");
  }
  const auto data = t.data();
  std::vector<double> out(data.size());
  for (std::size_t i = 0; i < data.size(); ++i) {
    const double s = cfg.scales[grouping.group_of(i)];
    out[i] = s * project(data[i] / s, cfg.format);
  }
  return t.with_data(std::move(out));
}

ErrorStats error_stats(const Tensor& original, const Tensor& quantized) {
  if (original.shape() != quantized.shape()) {
    throw std::invalid_argument("error_stats: shape mismatch");
  }
  const auto a = original.data();
  const auto b = quantized.data();
  ErrorStats stats;
  if (a.empty()) {
    stats.sqnr_db = kSqnrCapDb;
    return stats;
  }
  long double signal = 0;
  long double noise = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double err = a[i] - b[i];
    signal += static_cast<long double>(a[i]) * a[i];
    noise += static_cast<long double>(err) * err;
    stats.max_abs_err = std::max(stats.max_abs_err, std::fabs(err));
  }
  stats.mse = static_cast<double>(noise / a.size());
  stats.rmse = std::sqrt(stats.mse);
  if (noise == 0) {
    stats.sqnr_db = kSqnrCapDb;
  } else if (signal == 0) {
    stats.sqnr_db = -kSqnrCapDb;
  } else {
    stats.sqnr_db = std::clamp(
        static_cast<double>(10 * std::log10(signal / noise)), -kSqnrCapDb,
        kSqnrCapDb);
  }
  return stats;
}

ErrorStats error_stats(const Tensor& original, const Tensor& quantized,
                       const QuantizerConfig& cfg) {
  ErrorStats stats = error_stats(original, quantized);
  if (!cfg.calibrated() || original.empty()) return stats;
  const Grouping grouping = make_grouping(original, cfg.granularity);
  const double top = max_value(cfg.format) * (1 + kClipTolerance);
  const auto data = original.data();
  std::size_t clipped = 0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (std::fabs(data[i]) > cfg.scales[grouping.group_of(i)] * top) {
      ++clipped;
    }
  }
  stats.clipped_fraction = static_cast<double>(clipped) / data.size();
  return stats;
}

std::vector<FormatScore> best_format_report(const Tensor& t,
                                            std::span<const Format> formats,
                                            Granularity granularity,
                                            RangeMethod range_method) {
  if (formats.empty()) {
    throw std::invalid_argument("best_format_report needs a format");
  }
  std::vector<FormatScore> scores;
  scores.reserve(formats.size());
  for (const Format& fmt : formats) {
    QuantizerConfig cfg{fmt, granularity, range_method, {}};
    cfg = calibrate(t, std::move(cfg));
    const Tensor q = quantize_dequantize(t, cfg);
    scores.push_back({fmt, cfg, error_stats(t, q, cfg)});
  }
  std::stable_sort(scores.begin(), scores.end(),
                   [](const FormatScore& a, const FormatScore& b) {
                     return a.stats.mse < b.stats.mse;
                   });
  return scores;
}

}  // namespace octet
