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

#include "octet/convert.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace octet {

namespace {

// A candidate scale kept as the exact ratio value / level. FP8 values have at
// most 8 significant bits and levels fit in 15 bits, so value * k and
// level * round(q) are exact in double and the exactness test below is free of
// rounding.
struct RationalScale {
  double value;
  int level;

  double approx() const { return value / level; }

  // Integer level k with v == k * value / level, if any.
  std::optional<double> exact_level(double v) const {
    const double numerator = v * level;
    const double k = std::nearbyint(numerator / value);
    if (k * value == numerator) return k;
    return std::nullopt;
  }
};

GridMatch evaluate(const std::vector<double>& values, const IntFormat& int_fmt,
                   const RationalScale& scale) {
  const double top = int_fmt.max_level();
  const double s = scale.approx();
  GridMatch m;
  m.int_scale = s;

  bool any_lossy = false;
  double covered = 0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double v = values[i];
    const auto k = scale.exact_level(v);
    if (k && std::fabs(*k) <= top) {
      ++m.exact_count;
      const double lo = i == 0 ? v : 0.5 * (values[i - 1] + v);
      const double hi = i + 1 == values.size() ? v : 0.5 * (v + values[i + 1]);
      covered += hi - lo;
      continue;
    }
    const double level = std::clamp(std::nearbyint(v / s), -top, top);
    m.max_conversion_err = std::max(m.max_conversion_err,
                                    std::fabs(v - level * s));
    if (!any_lossy) m.lossy_lo = v;
    m.lossy_hi = v;
    any_lossy = true;
  }
  const double span = values.back() - values.front();
  m.exact_fraction = covered / span;
  m.exact_count_fraction = static_cast<double>(m.exact_count) / values.size();
  return m;
}

}  // namespace

GridMatch evaluate_grid_match(const FpFormat& fp, const IntFormat& int_fmt,
                              double int_scale) {
  if (!(int_scale > 0) || !std::isfinite(int_scale)) {
    throw std::invalid_argument("integer scale must be positive and finite");
  }
  // s / 1 is exact as a ratio; exactness is then tested against s itself.
  return evaluate(enumerate_values(fp), int_fmt, RationalScale{int_scale, 1});
}

GridMatch match_grid(const FpFormat& fp, const IntFormat& int_fmt) {
  const std::vector<double> values = enumerate_values(fp);
  std::vector<RationalScale> candidates;
  for (double v : values) {
    if (v <= 0) continue;
    for (int k = 1; k <= int_fmt.max_level(); ++k) {
      candidates.push_back({v, k});
    }
  }
  std::sort(candidates.begin(), candidates.end(),
            [](const RationalScale& a, const RationalScale& b) {
              return a.approx() < b.approx();
            });

  GridMatch best;
  double last = 0;
  bool first = true;
  for (const RationalScale& c : candidates) {
    if (!first && c.approx() == last) continue;
    last = c.approx();
    const GridMatch m = evaluate(values, int_fmt, c);
    if (first || m.exact_count > best.exact_count ||
        (m.exact_count == best.exact_count &&
         m.max_conversion_err < best.max_conversion_err)) {
      best = m;
    }
    first = false;
  }
  return best;
}

Conversion convert_tensor(const Tensor& t, const QuantizerConfig& fp_config,
                          QuantizerConfig int_config) {
  if (!std::holds_alternative<FpFormat>(fp_config.format)) {
    throw std::invalid_argument("convert_tensor: source config is not FP8");
  }
  if (!std::holds_alternative<IntFormat>(int_config.format)) {
    throw std::invalid_argument("convert_tensor: target config is not INT");
  }
  const Tensor on_grid = quantize_dequantize(t, fp_config);
  const auto src = t.data();
  const auto snapped = on_grid.data();
  for (std::size_t i = 0; i < src.size(); ++i) {
    const double tol = kOnGridTolerance *
                       std::max(std::fabs(src[i]), std::fabs(snapped[i]));
    if (std::fabs(src[i] - snapped[i]) > tol) {
      throw std::invalid_argument("convert_tensor: element " +
                                  std::to_string(i) +
                                  " is not on the FP8 grid");
    }
  }
  if (!int_config.calibrated()) int_config = calibrate(t, std::move(int_config));
  Tensor converted = quantize_dequantize(t, int_config);
  ErrorStats stats = error_stats(t, converted, int_config);
  return {std::move(converted), std::move(int_config), stats};
}

QuantizerConfig matched_int_config(const QuantizerConfig& fp_config,
                                   const IntFormat& int_fmt) {
  const auto* fp = std::get_if<FpFormat>(&fp_config.format);
  if (fp == nullptr || !fp_config.calibrated()) {
    throw std::invalid_argument(
        "matched_int_config needs a calibrated FP8 config");
  }
  const double ratio = match_grid(*fp, int_fmt).int_scale;
  QuantizerConfig out{int_fmt, fp_config.granularity,
                      fp_config.range_method, {}};
  for (double s : fp_config.scales) out.scales.push_back(s * ratio);
  return out;
}

}  // namespace octet
