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

#include "octet/codec.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <limits>
#include <regex>
#include <stdexcept>

namespace octet {

namespace {

constexpr int kMaxBiasMagnitude = 512;

int parse_int(std::string_view text, std::string_view whole) {
  int value = 0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || text.empty()) {
    throw std::invalid_argument("bad format string '" + std::string(whole) +
                                "'");
  }
  return value;
}

}  // namespace

FpFormat::FpFormat(int exponent_bits)
    : FpFormat(exponent_bits, default_bias(exponent_bits)) {}

FpFormat::FpFormat(int exponent_bits, int bias)
    : exponent_bits_(exponent_bits), bias_(bias) {
  if (exponent_bits < 0 || exponent_bits > 7) {
    throw std::invalid_argument("exponent bits must be in [0, 7], got " +
                                std::to_string(exponent_bits));
  }
  if (bias < -kMaxBiasMagnitude || bias > kMaxBiasMagnitude) {
    throw std::invalid_argument("bias out of range: " + std::to_string(bias));
  }
}

int FpFormat::default_bias(int exponent_bits) {
  return exponent_bits >= 1 ? 1 << (exponent_bits - 1) : 0;
}

double FpFormat::max_value() const {
  return decode(Code8{0x7F}, *this);
}

double FpFormat::subnormal_step() const {
  return std::ldexp(1.0, 1 - bias_ - mantissa_bits());
}

std::string FpFormat::name() const {
  std::string out = "e" + std::to_string(exponent_bits_);
  if (bias_ != default_bias(exponent_bits_)) {
    out += "b" + std::to_string(bias_);
  }
  return out;
}

IntFormat::IntFormat(int bits) : bits_(bits) {
  if (bits < 2 || bits > 16) {
    throw std::invalid_argument("integer bits must be in [2, 16], got " +
                                std::to_string(bits));
  }
}

std::string IntFormat::name() const { return "int" + std::to_string(bits_); }

double decode(Code8 code, const FpFormat& fmt) {
  if (code.bits == Code8::kReserved) {
    return std::numeric_limits<double>::quiet_NaN();
  }
  const int m_bits = fmt.mantissa_bits();
  const int exponent = code.magnitude() >> m_bits;
  const int mantissa = code.magnitude() & ((1 << m_bits) - 1);
  double magnitude;
  if (exponent == 0) {
    magnitude = std::ldexp(mantissa, 1 - fmt.bias() - m_bits);
  } else {
    magnitude = std::ldexp((1 << m_bits) + mantissa,
                           exponent - fmt.bias() - m_bits);
  }
  return code.sign() ? -magnitude : magnitude;
}

Code8 encode(double x, const FpFormat& fmt) {
  if (!std::isfinite(x)) {
    throw std::domain_error("cannot encode non-finite value");
  }
  const int m_bits = fmt.mantissa_bits();
  const double magnitude = std::fabs(x);

  // The magnitude code (exponent << M | mantissa) is monotone in value, so a
  // mantissa carry out of a binade rolls into the next exponent for free.
  int code = 0;
  if (magnitude >= fmt.max_value()) {
    code = 0x7F;
  } else if (magnitude > 0.0) {
    const int binade = std::ilogb(magnitude);
    const int min_normal = 1 - fmt.bias();
    if (binade < min_normal || fmt.exponent_bits() == 0) {
      code = static_cast<int>(
          std::nearbyint(std::ldexp(magnitude, fmt.bias() - 1 + m_bits)));
    } else {
      const double scaled = std::ldexp(magnitude, m_bits - binade);
      const int significand = static_cast<int>(std::nearbyint(scaled));
      code = ((binade + fmt.bias()) << m_bits) + significand - (1 << m_bits);
    }
    code = std::min(code, 0x7F);
  }
  if (code == 0) return Code8{0};
  return Code8{static_cast<std::uint8_t>((x < 0 ? 0x80 : 0) | code)};
}

std::vector<double> enumerate_values(const FpFormat& fmt) {
  std::vector<double> values;
  values.reserve(255);
  for (int c = 0xFF; c > 0x80; --c) {
    values.push_back(decode(Code8{static_cast<std::uint8_t>(c)}, fmt));
  }
  for (int c = 0; c <= 0x7F; ++c) {
    values.push_back(decode(Code8{static_cast<std::uint8_t>(c)}, fmt));
  }
  return values;
}

std::vector<double> enumerate_int_values(const IntFormat& fmt) {
  std::vector<double> values;
  const int top = fmt.max_level();
  values.reserve(2 * top + 1);
  for (int k = -top; k <= top; ++k) values.push_back(k);
  return values;
}

std::vector<double> grid_values(const Format& fmt) {
  return std::visit(
      [](const auto& f) -> std::vector<double> {
        if constexpr (std::is_same_v<std::decay_t<decltype(f)>, FpFormat>) {
          return enumerate_values(f);
        } else {
          return enumerate_int_values(f);
        }
      },
      fmt);
}

double max_value(const Format& fmt) {
  return std::visit([](const auto& f) { return f.max_value(); }, fmt);
}

std::string format_name(const Format& fmt) {
  return std::visit([](const auto& f) { return f.name(); }, fmt);
}

double project(double x, const Format& fmt) {
  if (const auto* fp = std::get_if<FpFormat>(&fmt)) {
    return decode(encode(x, *fp), *fp);
  }
  const double top = std::get<IntFormat>(fmt).max_value();
  if (!std::isfinite(x)) {
    throw std::domain_error("cannot encode non-finite value");
  }
  return std::clamp(std::nearbyint(x), -top, top);
}

Format parse_format(const std::string& text) {
  static const std::regex kInt(R"(int(\d+))");
  static const std::regex kFp(R"((?:fp8[-_])?e(\d)(?:m(\d))?(?:b(-?\d+))?)");
  std::string s;
  for (char c : text) s.push_back(static_cast<char>(std::tolower(c)));

  std::smatch match;
  if (std::regex_match(s, match, kInt)) {
    return IntFormat(parse_int(match.str(1), text));
  }
  if (!std::regex_match(s, match, kFp)) {
    throw std::invalid_argument("bad format string '" + text + "'");
  }
  const int e = parse_int(match.str(1), text);
  if (match[2].matched && parse_int(match.str(2), text) != 7 - e) {
    throw std::invalid_argument("bad format string '" + text +
                                "': exponent and mantissa bits must sum to 7");
  }
  if (match[3].matched) return FpFormat(e, parse_int(match.str(3), text));
  return FpFormat(e);
}

}  // namespace octet
