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
#include <vector>

#include "octet/codec.hpp"
#include "octet/quantizer.hpp"
#include "octet/tensor.hpp"

namespace octet {

/// How well a scaled integer grid reproduces a minifloat value set.
///
/// A value is exact when it equals int_scale * k for some level k of the
/// integer format. exact_fraction weighs each FP8 value by the width of its
/// rounding cell (midpoint to midpoint, clipped at +-max), i.e. it is the
/// share of the format's range [-max, max] whose values survive conversion
/// unchanged. exact_count is the plain number of exact values out of 255.
struct GridMatch {
  double int_scale = 0;
  double exact_fraction = 0;
  std::size_t exact_count = 0;
  double exact_count_fraction = 0;
  double max_conversion_err = 0;
  /// Smallest and largest non-exact value; both 0 if every value is exact.
  double lossy_lo = 0;
  double lossy_hi = 0;
};

/// Searches the scales v / k (v a positive FP value, k a positive integer
/// level) for the one putting the most FP values exactly on the integer grid.
/// Ties go to the smaller worst-case conversion error, then the smaller
/// scale.
GridMatch match_grid(const FpFormat& fp, const IntFormat& int_fmt);

/// Evaluates one candidate scale without searching.
GridMatch evaluate_grid_match(const FpFormat& fp, const IntFormat& int_fmt,
                              double int_scale);

struct Conversion {
  Tensor tensor;
  QuantizerConfig int_config;
  ErrorStats stats;
};

/// Relative tolerance for "already on the FP8 grid" (covers float32 storage).
inline constexpr double kOnGridTolerance = 1e-6;

/// Requantizes a tensor that already lies on the scaled FP8 grid described by
/// `fp_config` (calibrated, FpFormat) onto an integer grid. An uncalibrated
/// `int_config` is calibrated on the tensor with its own range method; a
/// calibrated one is used as is. Stats compare against the FP8-grid input.
/// Throws std::invalid_argument if an element is off the FP8 grid.
Conversion convert_tensor(const Tensor& t, const QuantizerConfig& fp_config,
                          QuantizerConfig int_config);

/// Integer config whose scales are the FP8 scales times match_grid's scale.
QuantizerConfig matched_int_config(const QuantizerConfig& fp_config,
                                   const IntFormat& int_fmt);

}  // namespace octet
