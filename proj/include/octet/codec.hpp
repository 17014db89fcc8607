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

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace octet {

/// 8-bit minifloat: one sign bit, `exponent_bits` exponent bits and
/// 7 - exponent_bits mantissa bits. Stored exponent 0 encodes subnormals
/// (implicit bit 0, exponent 1 - bias). There is no Inf; the pattern 0x80
/// (negative zero) is reserved and decodes to NaN.
class FpFormat {
 public:
  /// Default bias 2^(E-1), or 0 when E == 0.
  explicit FpFormat(int exponent_bits);
  FpFormat(int exponent_bits, int bias);

  int exponent_bits() const { return exponent_bits_; }
  int mantissa_bits() const { return 7 - exponent_bits_; }
  int bias() const { return bias_; }

  /// Largest finite magnitude, 2^(2^E - 1 - B) * (2 - 2^-M).
  double max_value() const;
  /// Spacing of the subnormal grid, 2^(1 - B - M).
  double subnormal_step() const;

  /// "e4", or "e4b10" when the bias is not the default.
  std::string name() const;

  static int default_bias(int exponent_bits);

  friend bool operator==(const FpFormat&, const FpFormat&) = default;

 private:
  int exponent_bits_;
  int bias_;
};

/// Symmetric sign-magnitude integer grid {-(2^(b-1) - 1), ..., 2^(b-1) - 1}.
class IntFormat {
 public:
  explicit IntFormat(int bits);

  int bits() const { return bits_; }
  int max_level() const { return (1 << (bits_ - 1)) - 1; }
  double max_value() const { return max_level(); }
  std::string name() const;

  friend bool operator==(const IntFormat&, const IntFormat&) = default;

 private:
  int bits_;
};

using Format = std::variant<FpFormat, IntFormat>;

struct Code8 {
  std::uint8_t bits = 0;

  static constexpr std::uint8_t kReserved = 0x80;

  bool sign() const { return (bits & 0x80) != 0; }
  std::uint8_t magnitude() const { return bits & 0x7F; }
  friend bool operator==(Code8, Code8) = default;
};

/// Total. Code 0x80 yields quiet NaN.
double decode(Code8 code, const FpFormat& fmt);

/// Round to nearest, ties to even mantissa. Magnitudes past the largest
/// value clip to it; zero and values rounding to zero encode as +0.
/// Throws std::domain_error for NaN or infinite input.
Code8 encode(double x, const FpFormat& fmt);

/// All 255 finite values, strictly increasing.
std::vector<double> enumerate_values(const FpFormat& fmt);
/// 2^b - 1 integers, strictly increasing.
std::vector<double> enumerate_int_values(const IntFormat& fmt);

// Format-generic helpers used by the quantizer.
std::vector<double> grid_values(const Format& fmt);
double max_value(const Format& fmt);
std::string format_name(const Format& fmt);
/// Nearest representable value (unscaled) with clipping.
double project(double x, const Format& fmt);

/// Parses "e4", "fp8-e4", "e4m3", "e4b10", "int8", "int4", "int16".
/// Throws std::invalid_argument on anything else.
Format parse_format(const std::string& text);

}  // namespace octet
