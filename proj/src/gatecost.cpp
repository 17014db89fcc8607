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

// MAC composition. Every term below is one block of a single multiply-add
// datapath; where a block admits several implementations the smallest gate
// count is taken, which is the most favourable choice for floating point.
//
// Fixed-point (Kulisch) accumulator:
//   integer inputs   multiplier -> W-bit adder -> W-bit register
//   float inputs     multiplier -> product register -> widening align shift
//                    -> two's complement -> W-bit adder -> W-bit register
// Floating-point accumulator:
//   multiplier -> product register -> exponent compare, swap, align shift
//   with sticky -> significand add -> negate, leading-zero count, normalize
//   shift, exponent update, round-nearest-even -> accumulator register

#include "octet/gatecost.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <string>

namespace octet::gates {

namespace {

// ceil(log2(k + 1)): mux levels of a barrel shifter with shift range [0, k].
GateCount shift_levels(int k) {
  return k <= 0 ? 0 : std::bit_width(static_cast<unsigned>(k));
}

GateCount add(int n) { return component_cost(Component::kAdd, n); }
GateCount inc(int n) { return component_cost(Component::kIncrement, n); }
GateCount ff(int n) { return component_cost(Component::kRegister, n); }

bool is_integer_path(const Format& input) {
  if (std::holds_alternative<IntFormat>(input)) return true;
  // E0 has no exponent field: a sign-magnitude integer grid.
  return std::get<FpFormat>(input).exponent_bits() == 0;
}

int integer_bits(const Format& input) {
  if (const auto* i = std::get_if<IntFormat>(&input)) return i->bits();
  return 8;
}

// Magnitude bits of one operand on a common fixed-point grid: from the
// smallest subnormal step 2^(1-B-M) up to the top binade 2^(2^E-1-B).
int operand_magnitude_bits(const Format& input) {
  if (const auto* i = std::get_if<IntFormat>(&input)) return i->bits() - 1;
  const auto& fp = std::get<FpFormat>(input);
  return (1 << fp.exponent_bits()) - 1 + fp.mantissa_bits();
}

GateCount multiplier(const Format& input) {
  if (is_integer_path(input)) {
    // Baugh-Wooley: the sign rows use NAND in place of AND at equal cost.
    const int n = integer_bits(input);
    return component_cost(Component::kPartialProducts, n) +
           component_cost(Component::kPartialReduce, n);
  }
  const auto& fp = std::get<FpFormat>(input);
  const int e = fp.exponent_bits();
  const int significand = fp.mantissa_bits() + 1;
  const GateCount sign = kXor2;
  const GateCount array = component_cost(Component::kPartialProducts,
                                         significand) +
                          component_cost(Component::kPartialReduce,
                                         significand);
  const GateCount exponent_add = add(e);
  // Implicit bit = OR of the stored exponent bits, per operand.
  const GateCount implicit_bits = 2 * (e - 1) * kOr2;
  return sign + array + exponent_add + implicit_bits;
}

// Sign, exponent and significand of the product as it leaves the multiplier.
int float_product_bits(const FpFormat& fp) {
  return 1 + (fp.exponent_bits() + 1) + 2 * (fp.mantissa_bits() + 1);
}

GateReport fixed_mac(const Format& input, const FixedAccumulator& acc) {
  const int width = fixed_accumulator_width(input, acc);
  GateReport r;
  r.multiply = multiplier(input);
  r.accumulate = add(width);
  r.registers = ff(width);
  if (is_integer_path(input)) return r;

  const auto& fp = std::get<FpFormat>(input);
  const int significand = 2 * (fp.mantissa_bits() + 1);
  // Full span of product exponents: each operand spans 2^E - 2 binades.
  const int shift_range = 2 * ((1 << fp.exponent_bits()) - 2);
  r.registers += ff(float_product_bits(fp));
  r.align = component_cost(Component::kShiftLeftWiden, significand,
                           shift_range) +
            // conditional invert into two's complement ...
            (significand + shift_range) * kXor2;
  // ... whose +1 rides in as the adder's carry-in.
  r.accumulate += kFullAdder - kHalfAdder;
  return r;
}

GateReport float_mac(const Format& input, const FloatAccumulator& acc) {
  const int ea = acc.exponent_bits;
  const int significand = acc.mantissa_bits + 1;
  const int product_magnitude =
      is_integer_path(input)
          ? 2 * (integer_bits(input) - 1)
          : 2 * (std::get<FpFormat>(input).mantissa_bits() + 1);
  // Guard, round and sticky below the wider of the two significands.
  const int work = std::max(significand, product_magnitude) + 3;

  GateReport r;
  r.multiply = multiplier(input);

  const GateCount product_register =
      is_integer_path(input)
          ? ff(1 + product_magnitude)
          : ff(float_product_bits(std::get<FpFormat>(input)));
  r.registers = product_register + ff(1 + ea + acc.mantissa_bits);

  const GateCount exponent_difference = add(ea + 1);
  const GateCount absolute_difference = ea * kXor2 + inc(ea);
  const GateCount swap = 2 * work * kMux2;
  const GateCount align_shift =
      component_cost(Component::kShiftRightSigned, work, work);
  const GateCount sticky = (work - 1) * kOr2;
  r.align =
      exponent_difference + absolute_difference + swap + align_shift + sticky;

  const GateCount effective_subtract = work * kXor2;
  r.accumulate = effective_subtract + add(work + 1);

  const GateCount negate = (work + 1) * kXor2 + inc(work + 1);
  const GateCount leading_zeros =
      component_cost(Component::kLeadingZeros, work + 1);
  const GateCount normalize_shift =
      component_cost(Component::kShiftLeft, work + 1, work);
  const GateCount carry_shift = work * kMux2;
  const GateCount exponent_update = add(ea) + inc(ea);
  const GateCount round_decision = 2 * kAoi21;
  const GateCount round_increment = inc(significand);
  const GateCount round_carry = inc(ea);
  r.normalize_round = negate + leading_zeros + normalize_shift + carry_shift +
                      exponent_update + round_decision + round_increment +
                      round_carry;
  return r;
}

}  // namespace

Component parse_component(std::string_view name) {
  for (Component c :
       {Component::kAdd, Component::kIncrement, Component::kPartialProducts,
        Component::kPartialReduce, Component::kShiftLeft,
        Component::kShiftRightSigned, Component::kShiftLeftWiden,
        Component::kLeadingZeros, Component::kRegister}) {
    if (component_name(c) == name) return c;
  }
  throw std::invalid_argument("unknown component '" + std::string(name) + "'");
}

std::string_view component_name(Component kind) {
  switch (kind) {
    case Component::kAdd:
      return "add";
    case Component::kIncrement:
      return "increment";
    case Component::kPartialProducts:
      return "pp_bits";
    case Component::kPartialReduce:
      return "pp_reduce";
    case Component::kShiftLeft:
      return "shl";
    case Component::kShiftRightSigned:
      return "shr_signed";
    case Component::kShiftLeftWiden:
      return "shl_widen";
    case Component::kLeadingZeros:
      return "lzc";
    case Component::kRegister:
      return "register";
  }
  return "unknown";
}

GateCount component_cost(Component kind, int n, int k) {
  if (n < 1 || k < 0) {
    throw std::invalid_argument("component_cost: need n >= 1 and k >= 0");
  }
  const GateCount N = n;
  const GateCount K = k;
  switch (kind) {
    case Component::kAdd:
      return (N - 1) * kFullAdder + kHalfAdder;
    case Component::kIncrement:
      return N * kHalfAdder;
    case Component::kPartialProducts:
      return N * N * kAnd2;
    case Component::kPartialReduce:
      return (N - 1) * (N - 1) * kFullAdder + (N - 1) * kHalfAdder;
    case Component::kShiftLeft:
      return N * shift_levels(k) * kMux2 - K * (kMux2 - kAnd2);
    case Component::kShiftRightSigned:
      return (N - 1) * shift_levels(k) * kMux2;
    case Component::kShiftLeftWiden:
      return (N - 2) * shift_levels(k) * kMux2 + K * (kMux2 + kAnd2);
    case Component::kLeadingZeros: {
      // Prefix-OR chain, one-hot of the first set bit, then an OR tree per
      // output bit over half of the one-hot lines.
      const GateCount levels = shift_levels(n - 1);
      return (N - 1) * kOr2 + N * kAnd2 +
             levels * std::max<GateCount>(N / 2 - 1, 0) * kOr2;
    }
    case Component::kRegister:
      return N * kFlipFlop;
  }
  throw std::invalid_argument("unknown component");
}

int product_width(const Format& input) {
  return 2 * operand_magnitude_bits(input) + 1;
}

int fixed_accumulator_width(const Format& input, const FixedAccumulator& acc) {
  const int width = acc.width.value_or(product_width(input) + kGuardBits);
  if (width < 1) throw std::invalid_argument("accumulator width must be >= 1");
  return width;
}

GateReport mac_cost(const MacSpec& spec) {
  GateReport r = std::visit(
      [&](const auto& acc) {
        if constexpr (std::is_same_v<std::decay_t<decltype(acc)>,
                                     FixedAccumulator>) {
          return fixed_mac(spec.input, acc);
        } else {
          return float_mac(spec.input, acc);
        }
      },
      spec.accumulator);
  r.total = r.multiply + r.align + r.accumulate + r.normalize_round +
            r.registers;
  return r;
}

std::string accumulator_name(const Accumulator& acc) {
  if (const auto* f = std::get_if<FixedAccumulator>(&acc)) {
    return f->width ? "fx" + std::to_string(*f->width) : "fx+12";
  }
  const auto& fl = std::get<FloatAccumulator>(acc);
  if (fl == kFp16Accumulator) return "fp16";
  if (fl == kFp32Accumulator) return "fp32";
  return "fp_e" + std::to_string(fl.exponent_bits) + "m" +
         std::to_string(fl.mantissa_bits);
}

std::vector<GridCell> report_grid() {
  const std::vector<Format> formats{IntFormat(8), FpFormat(2), FpFormat(3),
                                    FpFormat(4), FpFormat(5)};
  const std::vector<Accumulator> accumulators{
      FixedAccumulator{}, kFp16Accumulator, kFp32Accumulator};
  const GateCount baseline =
      mac_cost({IntFormat(8), FixedAccumulator{}}).total;

  std::vector<GridCell> cells;
  for (const Format& fmt : formats) {
    for (const Accumulator& acc : accumulators) {
      GridCell cell{format_name(fmt), accumulator_name(acc),
                    mac_cost({fmt, acc}), 0.0};
      cell.ratio_vs_int8_fixed =
          static_cast<double>(cell.report.total) / baseline;
      cells.push_back(std::move(cell));
    }
  }
  return cells;
}

}  // namespace octet::gates
