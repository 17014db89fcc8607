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

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "octet/codec.hpp"

namespace octet::gates {

/// Cost unit: one gate-equivalent is a 2-input simple gate, C = sum(F_in - 1).
using GateCount = std::int64_t;

struct GatePrimitive {
  std::string_view name;
  GateCount cost;
};

inline constexpr GateCount kAnd2 = 1;
inline constexpr GateCount kOr2 = 1;
inline constexpr GateCount kAoi21 = 2;
inline constexpr GateCount kOai21 = 2;
inline constexpr GateCount kMux2 = 3;
inline constexpr GateCount kXor2 = 3;
inline constexpr GateCount kHalfAdder = 3;
inline constexpr GateCount kFullAdder = 2 * kHalfAdder + kOr2;
inline constexpr GateCount kFlipFlop = 2 * kMux2;

inline constexpr std::array<GatePrimitive, 9> kPrimitives{{
    {"AND2", kAnd2},
    {"OR2", kOr2},
    {"AOI21", kAoi21},
    {"OAI21", kOai21},
    {"MUX2", kMux2},
    {"XOR2", kXor2},
    {"HA", kHalfAdder},
    {"FA", kFullAdder},
    {"FF", kFlipFlop},
}};

enum class Component {
  kAdd,               // N-bit add
  kIncrement,         // N-bit increment
  kPartialProducts,   // N*N PP bits
  kPartialReduce,     // N*N PP reduce
  kShiftLeft,         // N-bit << [0, k]
  kShiftRightSigned,  // N-bit >> [0, k] signed
  kShiftLeftWiden,    // N-bit << [0, k] widen
  kLeadingZeros,      // N-bit leading-zero count
  kRegister,          // N flip-flops
};

/// "add", "increment", "pp_bits", "pp_reduce", "shl", "shr_signed",
/// "shl_widen", "lzc", "register". Throws std::invalid_argument otherwise.
Component parse_component(std::string_view name);
std::string_view component_name(Component kind);

/// Closed-form gate count. Throws std::invalid_argument for n < 1 or k < 0.
GateCount component_cost(Component kind, int n, int k = 0);

struct FixedAccumulator {
  /// Defaults to product width + 12 (FX+12).
  std::optional<int> width;
};

/// Floating-point accumulator with the given field widths.
struct FloatAccumulator {
  int exponent_bits;
  int mantissa_bits;
  friend bool operator==(const FloatAccumulator&,
                         const FloatAccumulator&) = default;
};

inline constexpr FloatAccumulator kFp16Accumulator{5, 10};
inline constexpr FloatAccumulator kFp32Accumulator{8, 23};

using Accumulator = std::variant<FixedAccumulator, FloatAccumulator>;

struct MacSpec {
  Format input;
  Accumulator accumulator;
};

struct GateReport {
  GateCount multiply = 0;
  GateCount align = 0;
  GateCount accumulate = 0;
  GateCount normalize_round = 0;
  GateCount registers = 0;
  GateCount total = 0;
};

/// Extra accumulator bits on top of the full product (FX+12: 4096 extreme
/// products before overflow).
inline constexpr int kGuardBits = 12;

/// Signed fixed-point width of one product: 2 * magnitude bits + sign.
/// 15 for INT8, 37 for FP8-E4M3.
int product_width(const Format& input);
/// Fixed accumulator width in effect for `spec` (FX+12 by default).
int fixed_accumulator_width(const Format& input, const FixedAccumulator& acc);

GateReport mac_cost(const MacSpec& spec);

std::string accumulator_name(const Accumulator& acc);

struct GridCell {
  std::string format;
  std::string accumulator;
  GateReport report;
  double ratio_vs_int8_fixed = 0;
};

/// {INT8, E2, E3, E4, E5} x {FX+12, FP16, FP32}, row-major by format.
std::vector<GridCell> report_grid();

}  // namespace octet::gates
