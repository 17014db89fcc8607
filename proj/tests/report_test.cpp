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

#include <gtest/gtest.h>

#include <sstream>
#include <string>
#include <vector>

#include "octet/report.hpp"

namespace octet {
namespace {

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

TEST(Report, NumbersRoundTrip) {
  EXPECT_EQ(report::number(0.0), "0");
  EXPECT_EQ(report::number(-0.0), "0");
  EXPECT_EQ(report::number(240.0), "240");
  EXPECT_EQ(report::number(0.1), "0.1");
  const double x = 0.9554707845052083;
  EXPECT_EQ(std::stod(report::number(x)), x);
}

TEST(Report, FormatsTable) {
  const auto fp = lines(report::formats_csv(FpFormat(4)));
  ASSERT_EQ(fp.size(), 256u);
  EXPECT_EQ(fp[0], "code,value");
  EXPECT_EQ(fp[1], "0xFF,-240");
  EXPECT_EQ(fp[128], "0x00,0");
  EXPECT_EQ(fp[255], "0x7F,240");

  const auto i8 = lines(report::formats_csv(IntFormat(8)));
  ASSERT_EQ(i8.size(), 256u);
  EXPECT_EQ(i8[1], "0xFF,-127");
  EXPECT_EQ(i8[128], "0x00,0");
  EXPECT_EQ(i8[255], "0x7F,127");
  const auto i4 = lines(report::formats_csv(IntFormat(4)));
  ASSERT_EQ(i4.size(), 16u);
  EXPECT_EQ(i4[1], "0xF,-7");
}

TEST(Report, GateTableHeaderAndRows) {
  const auto grid = gates::report_grid();
  const auto rows = lines(report::gates_csv(grid));
  ASSERT_EQ(rows.size(), 16u);
  EXPECT_EQ(rows[0],
            "format,accumulator,multiply,align,accumulate,normalize_round,"
            "registers,total,ratio_vs_int8_fixed");
  EXPECT_EQ(rows[1].rfind("int8,fx+12,", 0), 0u);
}

TEST(Report, GridMatchRow) {
  const auto rows = lines(report::grid_match_csv(
      FpFormat(4), IntFormat(8), match_grid(FpFormat(4), IntFormat(8))));
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0],
            "fp_format,int_format,int_scale,exact_fraction,"
            "max_conversion_err,lossy_lo,lossy_hi");
  EXPECT_EQ(rows[1], "e4,int8,2,0.9554707845052083,1,-15,15");
}

TEST(Report, SweepRows) {
  const std::vector<MseRow> rows = {{"uniform", "int8", 0.5, 8, 100, 7}};
  const auto out = lines(report::mse_sweep_csv(rows));
  ASSERT_EQ(out.size(), 2u);
  EXPECT_EQ(out[0], "distribution,format,rmse,bits,n,seed");
  EXPECT_EQ(out[1], "uniform,int8,0.5,8,100,7");
}

}  // namespace
}  // namespace octet
