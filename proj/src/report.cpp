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

#include "octet/report.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace octet::report {

namespace {

std::string hex_code(unsigned code, int bits) {
  const int digits = (bits + 3) / 4;
  char buf[16];
  std::snprintf(buf, sizeof(buf), "0x%0*X", digits, code);
  return buf;
}

void stats_columns(std::ostringstream& out, const ErrorStats& s) {
  out << number(s.mse) << ',' << number(s.rmse) << ',' << number(s.sqnr_db)
      << ',' << number(s.max_abs_err) << ',' << number(s.clipped_fraction);
}

}  // namespace

std::string number(double v) {
  if (v == 0) return "0";
  char buf[64];
  const auto result = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, result.ptr);
}

std::string formats_csv(const Format& fmt) {
  std::ostringstream out;
  out << "code,value\n";
  if (const auto* fp = std::get_if<FpFormat>(&fmt)) {
    for (int c = 0xFF; c > 0x80; --c) {
      const Code8 code{static_cast<std::uint8_t>(c)};
      out << hex_code(c, 8) << ',' << number(decode(code, *fp)) << '\n';
    }
    for (int c = 0; c <= 0x7F; ++c) {
      const Code8 code{static_cast<std::uint8_t>(c)};
      out << hex_code(c, 8) << ',' << number(decode(code, *fp)) << '\n';
    }
    return out.str();
  }
  const auto& int_fmt = std::get<IntFormat>(fmt);
  const int top = int_fmt.max_level();
  const unsigned sign_bit = 1u << (int_fmt.bits() - 1);
  for (int k = -top; k <= top; ++k) {
    const unsigned code =
        k < 0 ? sign_bit | static_cast<unsigned>(-k) : static_cast<unsigned>(k);
    out << hex_code(code, int_fmt.bits()) << ',' << k << '\n';
  }
  return out.str();
}

std::string mse_sweep_csv(std::span<const MseRow> rows) {
  std::ostringstream out;
  out << "distribution,format,rmse,bits,n,seed\n";
  for (const MseRow& r : rows) {
    out << r.distribution << ',' << r.format << ',' << number(r.rmse) << ','
        << number(r.bits) << ',' << r.n << ',' << r.seed << '\n';
  }
  return out.str();
}

std::string gates_csv(std::span<const gates::GridCell> cells) {
  std::ostringstream out;
  out << "format,accumulator,multiply,align,accumulate,normalize_round,"
         "registers,total,ratio_vs_int8_fixed\n";
  for (const auto& c : cells) {
    const auto& r = c.report;
    out << c.format << ',' << c.accumulator << ',' << r.multiply << ','
        << r.align << ',' << r.accumulate << ',' << r.normalize_round << ','
        << r.registers << ',' << r.total << ','
        << number(c.ratio_vs_int8_fixed) << '\n';
  }
  return out.str();
}

std::string tensor_report_csv(std::span<const TensorRanking> rankings,
                              const Granularity& granularity,
                              RangeMethod range) {
  std::ostringstream out;
  out << "tensor,rank,format,granularity,range,mse,rmse,sqnr_db,max_abs_err,"
         "clipped_fraction\n";
  for (const auto& ranking : rankings) {
    for (std::size_t i = 0; i < ranking.scores.size(); ++i) {
      const auto& score = ranking.scores[i];
      out << ranking.name << ',' << i + 1 << ',' << format_name(score.format)
          << ',' << to_string(granularity) << ',' << to_string(range) << ',';
      stats_columns(out, score.stats);
      out << '\n';
    }
  }
  return out.str();
}

std::string grid_match_csv(const FpFormat& fp, const IntFormat& int_fmt,
                           const GridMatch& match) {
  std::ostringstream out;
  out << "fp_format,int_format,int_scale,exact_fraction,max_conversion_err,"
         "lossy_lo,lossy_hi\n";
  out << fp.name() << ',' << int_fmt.name() << ',' << number(match.int_scale)
      << ',' << number(match.exact_fraction) << ','
      << number(match.max_conversion_err) << ',' << number(match.lossy_lo)
      << ',' << number(match.lossy_hi) << '\n';
  return out.str();
}

std::string conversion_csv(const FpFormat& fp, const IntFormat& int_fmt,
                           std::span<const TensorConversion> rows) {
  std::ostringstream out;
  out << "tensor,fp_format,int_format,range,int_scale,mse,rmse,sqnr_db,"
         "max_abs_err,clipped_fraction\n";
  for (const auto& row : rows) {
    out << row.name << ',' << fp.name() << ',' << int_fmt.name() << ','
        << row.range << ',' << number(row.result.int_config.scales.front()) << ',';
    stats_columns(out, row.result.stats);
    out << '\n';
  }
  return out.str();
}

}  // namespace octet::report
