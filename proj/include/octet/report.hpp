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

#include <span>
#include <string>
#include <vector>

#include "octet/codec.hpp"
#include "octet/convert.hpp"
#include "octet/distmse.hpp"
#include "octet/gatecost.hpp"
#include "octet/quantizer.hpp"

// CSV renderers. Every table has a fixed header row and numbers are written
// in shortest round-trip form, so output is byte-stable for equal inputs.
namespace octet::report {

std::string number(double v);

/// code,value. FP8 codes are the 8-bit word; integer codes are
/// sign-magnitude words of the format's width. Sorted by value.
std::string formats_csv(const Format& fmt);

/// distribution,format,rmse,bits,n,seed
std::string mse_sweep_csv(std::span<const MseRow> rows);

/// format,accumulator,multiply,align,accumulate,normalize_round,registers,
/// total,ratio_vs_int8_fixed
std::string gates_csv(std::span<const gates::GridCell> cells);

struct TensorRanking {
  std::string name;
  std::vector<FormatScore> scores;  // ascending MSE
};

/// tensor,rank,format,granularity,range,mse,rmse,sqnr_db,max_abs_err,
/// clipped_fraction
std::string tensor_report_csv(std::span<const TensorRanking> rankings,
                              const Granularity& granularity,
                              RangeMethod range);

/// fp_format,int_format,int_scale,exact_fraction,max_conversion_err,
/// lossy_lo,lossy_hi
std::string grid_match_csv(const FpFormat& fp, const IntFormat& int_fmt,
                           const GridMatch& match);

struct TensorConversion {
  std::string name;
  std::string range;  // "minmax", "mse" or "matched"
  Conversion result;
};

/// tensor,fp_format,int_format,range,int_scale,mse,rmse,sqnr_db,
/// max_abs_err,clipped_fraction. int_scale is the first group's scale.
std::string conversion_csv(const FpFormat& fp, const IntFormat& int_fmt,
                           std::span<const TensorConversion> rows);

}  // namespace octet::report
