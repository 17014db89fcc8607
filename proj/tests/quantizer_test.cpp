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

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <vector>

#include "octet/distmse.hpp"
#include "octet/quantizer.hpp"

namespace octet {
namespace {

const std::vector<Format> kFormats = {IntFormat(8), FpFormat(2), FpFormat(3),
                                      FpFormat(4), FpFormat(5)};

Tensor gaussian_tensor(std::size_t n, std::uint64_t seed) {
  return Tensor::from_values(Distribution::gaussian().sample(n, seed));
}

QuantizerConfig calibrated(const Tensor& t, Format fmt,
                           RangeMethod method = RangeMethod::kMinMax,
                           Granularity g = PerTensor{}) {
  return calibrate(t, {fmt, g, method, {}});
}

// Squared error of one scale, element by element.
double direct_mse(std::span<const double> x, const Format& fmt, double s) {
  long double sum = 0;
  for (double v : x) {
    const double e = v - s * project(v / s, fmt);
    sum += static_cast<long double>(e) * e;
  }
  return static_cast<double>(sum / x.size());
}

TEST(Quantizer, MinMaxScaleExample) {
  const Tensor t = Tensor::from_values({-2, 0, 2});
  const auto cfg = calibrated(t, IntFormat(8));
  ASSERT_EQ(cfg.scales.size(), 1u);
  EXPECT_DOUBLE_EQ(cfg.scales[0], 2.0 / 127);
  const Tensor q = quantize_dequantize(t, cfg);
  EXPECT_DOUBLE_EQ(q.data()[0], -2.0);
  EXPECT_DOUBLE_EQ(q.data()[2], 2.0);
}

TEST(Quantizer, AllZeroGroupGetsUnitScale) {
  const Tensor t = Tensor::from_values({0, 0, 0});
  for (auto method : {RangeMethod::kMinMax, RangeMethod::kMseSearch}) {
    const auto cfg = calibrated(t, FpFormat(4), method);
    EXPECT_EQ(cfg.scales[0], 1.0);
    const Tensor q = quantize_dequantize(t, cfg);
    for (double v : q.data()) EXPECT_EQ(v, 0.0);
  }
}

TEST(Quantizer, ErrorsOnBadInput) {
  EXPECT_THROW(calibrate(Tensor(), {}), std::invalid_argument);
  const Tensor t = Tensor::from_values({1, 2});
  EXPECT_THROW(quantize_dequantize(t, {}), std::invalid_argument);
  EXPECT_THROW(calibrate(t, {IntFormat(8), PerChannel{}, {}, {}}),
               std::invalid_argument);
  EXPECT_THROW(error_stats(t, Tensor::from_values({1})), std::invalid_argument);
}

TEST(Quantizer, ErrorStatsBasics) {
  const Tensor a = Tensor::from_values({1, -1});
  const auto s = error_stats(a, Tensor::from_values({0, 0}));
  EXPECT_EQ(s.mse, 1.0);
  EXPECT_EQ(s.rmse, 1.0);
  EXPECT_EQ(s.max_abs_err, 1.0);
  EXPECT_NEAR(s.sqnr_db, 0.0, 1e-12);
  const auto exact = error_stats(a, a);
  EXPECT_EQ(exact.mse, 0.0);
  EXPECT_EQ(exact.sqnr_db, kSqnrCapDb);
}

TEST(Quantizer, IdempotentAndOnGrid) {
  const Tensor t = gaussian_tensor(4096, 3);
  for (const Format& fmt : kFormats) {
    for (auto method : {RangeMethod::kMinMax, RangeMethod::kMseSearch}) {
      const auto cfg = calibrated(t, fmt, method);
      const Tensor q = quantize_dequantize(t, cfg);
      const Tensor qq = quantize_dequantize(q, cfg);
      const auto grid = grid_values(fmt);
      const std::set<double> scaled = [&] {
        std::set<double> out;
        for (double g : grid) out.insert(cfg.scales[0] * g);
        return out;
      }();
      for (std::size_t i = 0; i < t.size(); ++i) {
        ASSERT_EQ(q.data()[i], qq.data()[i]);
        ASSERT_TRUE(scaled.count(q.data()[i])) << q.data()[i];
      }
    }
  }
}

TEST(Quantizer, ScalingEquivariance) {
  const Tensor t = gaussian_tensor(2048, 4);
  for (const Format& fmt : kFormats) {
    const auto cfg = calibrated(t, fmt);
    for (double alpha : {0.25, 2.0, 1024.0}) {
      QuantizerConfig scaled_cfg = cfg;
      scaled_cfg.scales[0] *= alpha;
      const Tensor a = quantize_dequantize(t.scaled(alpha), scaled_cfg);
      const Tensor b = quantize_dequantize(t, cfg);
      for (std::size_t i = 0; i < t.size(); ++i) {
        ASSERT_EQ(a.data()[i], alpha * b.data()[i]);
      }
    }
  }
}

TEST(Quantizer, MinMaxNeverClips) {
  const Tensor t = gaussian_tensor(10000, 5);
  for (const Format& fmt : kFormats) {
    const auto cfg = calibrated(t, fmt);
    const auto stats = error_stats(t, quantize_dequantize(t, cfg), cfg);
    EXPECT_EQ(stats.clipped_fraction, 0.0) << format_name(fmt);
  }
}

TEST(Quantizer, MseSearchBeatsMinMax) {
  const Tensor t = gaussian_tensor(100000, 6);
  for (const Format& fmt : kFormats) {
    const auto mm = calibrated(t, fmt, RangeMethod::kMinMax);
    const auto ms = calibrated(t, fmt, RangeMethod::kMseSearch);
    const double mse_mm = error_stats(t, quantize_dequantize(t, mm)).mse;
    const double mse_ms = error_stats(t, quantize_dequantize(t, ms)).mse;
    EXPECT_LE(mse_ms, mse_mm) << format_name(fmt);
  }
  // INT8 on Gaussian data gains by clipping the tails.
  const auto mm = calibrated(t, IntFormat(8), RangeMethod::kMinMax);
  const auto ms = calibrated(t, IntFormat(8), RangeMethod::kMseSearch);
  EXPECT_LT(ms.scales[0], mm.scales[0]);
  EXPECT_LT(error_stats(t, quantize_dequantize(t, ms)).mse,
            error_stats(t, quantize_dequantize(t, mm)).mse);
  const auto clipped = error_stats(t, quantize_dequantize(t, ms), ms);
  EXPECT_GT(clipped.clipped_fraction, 0.0);
}

TEST(Quantizer, MseSearchMatchesFineGridOracle) {
  const Tensor t = gaussian_tensor(100000, 7);
  const double s_max = minmax_scale(t.data(), IntFormat(8));
  double best = std::numeric_limits<double>::infinity();
  for (int k = 100; k <= 1200; ++k) {
    best = std::min(best, direct_mse(t.data(), IntFormat(8), s_max * k / 1000));
  }
  long double power = 0;
  for (double v : t.data()) power += static_cast<long double>(v) * v;
  const double oracle_db =
      10 * std::log10(static_cast<double>(power / t.size()) / best);
  const auto cfg = calibrated(t, IntFormat(8), RangeMethod::kMseSearch);
  const double got = error_stats(t, quantize_dequantize(t, cfg)).sqnr_db;
  EXPECT_NEAR(got, oracle_db, 0.5);
  EXPECT_LE(got, oracle_db + 1e-9);
}

TEST(Quantizer, PerChannelNoWorseThanPerTensor) {
  auto values = Distribution::gaussian().sample(4 * 512, 8);
  const double gains[] = {1.0, 3.0, 0.2, 12.0};
  for (std::size_t i = 0; i < values.size(); ++i) values[i] *= gains[i / 512];
  const Tensor t({4, 512}, values, 0);
  for (const Format& fmt : kFormats) {
    for (auto method : {RangeMethod::kMinMax, RangeMethod::kMseSearch}) {
      const auto pt = calibrated(t, fmt, method);
      const auto pc = calibrated(t, fmt, method, PerChannel{});
      ASSERT_EQ(pc.scales.size(), 4u);
      const double mse_pt = error_stats(t, quantize_dequantize(t, pt)).mse;
      const double mse_pc = error_stats(t, quantize_dequantize(t, pc)).mse;
      EXPECT_LT(mse_pc, mse_pt) << format_name(fmt);
    }
  }
}

TEST(Quantizer, PerChannelAxisSelectsSlices) {
  // Axis 1 of a 2x3 tensor: columns {1,-4}, {2,5}, {-3,6}.
  const Tensor t({2, 3}, {1, 2, -3, -4, 5, 6});
  const auto cfg = calibrated(t, IntFormat(8), RangeMethod::kMinMax,
                              PerChannel{1});
  ASSERT_EQ(cfg.scales.size(), 3u);
  EXPECT_DOUBLE_EQ(cfg.scales[0], 4.0 / 127);
  EXPECT_DOUBLE_EQ(cfg.scales[1], 5.0 / 127);
  EXPECT_DOUBLE_EQ(cfg.scales[2], 6.0 / 127);
  EXPECT_EQ(parse_granularity("per-channel=1"), Granularity(PerChannel{1}));
  EXPECT_EQ(to_string(Granularity(PerChannel{1})), "per-channel=1");
  EXPECT_THROW(parse_granularity("per-row"), std::invalid_argument);
}

TEST(Quantizer, BestFormatRankings) {
  const auto top = [](const Tensor& t) {
    return best_format_report(t, kFormats, PerTensor{},
                              RangeMethod::kMseSearch);
  };
  const Tensor uniform =
      Tensor::from_values(Distribution::uniform().sample(65536, 9));
  EXPECT_EQ(format_name(top(uniform).front().format), "int8");

  const auto gauss = top(gaussian_tensor(65536, 10));
  const std::string first = format_name(gauss.front().format);
  EXPECT_TRUE(first == "e2" || first == "int8") << first;
  EXPECT_EQ(format_name(gauss.back().format), "e5");
  for (std::size_t i = 1; i < gauss.size(); ++i) {
    EXPECT_LE(gauss[i - 1].stats.mse, gauss[i].stats.mse);
  }

  const Tensor outliers = Tensor::from_values(inject_outliers(
      Distribution::gaussian().sample(65536, 11), 0.001, 20.0, 12));
  const auto ranked = top(outliers);
  const auto pos = [&](const std::string& name) {
    for (std::size_t i = 0; i < ranked.size(); ++i) {
      if (format_name(ranked[i].format) == name) return i;
    }
    return ranked.size();
  };
  EXPECT_LT(pos("e4"), pos("int8"));
}

TEST(Quantizer, ArgminInvariantUnderScaling) {
  const std::vector<Tensor> tensors = {
      Tensor::from_values(Distribution::uniform().sample(20000, 13)),
      gaussian_tensor(20000, 14),
      Tensor::from_values(Distribution::student_t(2).sample(20000, 15)),
  };
  for (const Tensor& t : tensors) {
    for (auto method : {RangeMethod::kMinMax, RangeMethod::kMseSearch}) {
      const auto base = format_name(
          best_format_report(t, kFormats, PerTensor{}, method).front().format);
      for (double alpha : {1e-3, 0.37, 7.5, 1e4}) {
        const auto scaled =
            best_format_report(t.scaled(alpha), kFormats, PerTensor{}, method);
        EXPECT_EQ(format_name(scaled.front().format), base) << alpha;
      }
    }
  }
}

TEST(Quantizer, ParseRangeMethod) {
  EXPECT_EQ(parse_range_method("minmax"), RangeMethod::kMinMax);
  EXPECT_EQ(parse_range_method("mse"), RangeMethod::kMseSearch);
  EXPECT_EQ(parse_range_method("mse_search"), RangeMethod::kMseSearch);
  EXPECT_THROW(parse_range_method("percentile"), std::invalid_argument);
}

}  // namespace
}  // namespace octet
