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

#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "octet/codec.hpp"
#include "octet/tensor.hpp"

namespace octet {

enum class RangeMethod { kMinMax, kMseSearch };

struct PerTensor {
  friend bool operator==(PerTensor, PerTensor) = default;
};

/// One scale per slice along `axis`; falls back to the tensor's own channel
/// axis when unset.
struct PerChannel {
  std::optional<int> axis;
  friend bool operator==(const PerChannel&, const PerChannel&) = default;
};

using Granularity = std::variant<PerTensor, PerChannel>;

/// Symmetric quantizer: q(x) = s * project(x / s) for the scale s of the
/// group x belongs to. Scales are empty until calibrate() fills them.
struct QuantizerConfig {
  Format format = IntFormat(8);
  Granularity granularity = PerTensor{};
  RangeMethod range_method = RangeMethod::kMinMax;
  std::vector<double> scales;

  bool calibrated() const { return !scales.empty(); }
};

struct ErrorStats {
  double mse = 0;
  double rmse = 0;
  double sqnr_db = 0;
  double max_abs_err = 0;
  double clipped_fraction = 0;
};

/// Reported SQNR for exact reconstructions.
inline constexpr double kSqnrCapDb = 200.0;

/// The mse_search scale grid: s_max * k / 100 for k in [10, 120], where
/// s_max is the min-max scale.
inline constexpr int kMseSearchFirstPercent = 10;
inline constexpr int kMseSearchLastPercent = 120;

std::string to_string(RangeMethod method);
RangeMethod parse_range_method(const std::string& text);
std::string to_string(const Granularity& granularity);
/// "per-tensor", "per-channel" or "per-channel=AXIS".
Granularity parse_granularity(const std::string& text);

/// Min-max scale for one group: max|x| maps to the format's largest value.
/// All-zero groups get scale 1.
double minmax_scale(std::span<const double> group, const Format& fmt);

/// Scale from the mse_search grid minimizing squared error on the group.
/// Never worse than the min-max scale on the same data.
double mse_search_scale(std::span<const double> group, const Format& fmt);

/// Returns `cfg` with one scale per group. Throws std::invalid_argument for
/// an empty tensor or a per-channel config without a usable axis.
QuantizerConfig calibrate(const Tensor& t, QuantizerConfig cfg);

/// Throws std::invalid_argument if `cfg` is uncalibrated or its scale count
/// does not match the tensor's grouping.
Tensor quantize_dequantize(const Tensor& t, const QuantizerConfig& cfg);

/// Plain elementwise statistics; clipped_fraction is left at 0 because the
/// grid is unknown. Throws std::invalid_argument on shape mismatch.
ErrorStats error_stats(const Tensor& original, const Tensor& quantized);
/// As above, with clipped_fraction taken from the calibrated config.
ErrorStats error_stats(const Tensor& original, const Tensor& quantized,
                       const QuantizerConfig& cfg);

struct FormatScore {
  Format format;
  QuantizerConfig config;
  ErrorStats stats;
};

/// Calibrates every format with the same granularity and range method and
/// returns them sorted by ascending MSE (stable for ties).
std::vector<FormatScore> best_format_report(const Tensor& t,
                                            std::span<const Format> formats,
                                            Granularity granularity,
                                            RangeMethod range_method);

}  // namespace octet
