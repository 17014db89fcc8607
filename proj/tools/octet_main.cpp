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

// octet: FP8 / INT8 format analysis reports as CSV.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "octet/codec.hpp"
#include "octet/convert.hpp"
#include "octet/distmse.hpp"
#include "octet/gatecost.hpp"
#include "octet/quantizer.hpp"
#include "octet/report.hpp"
#include "octet/tensor_file.hpp"

namespace {

using namespace octet;

// Error tied to one flag or file; printed as "<subject>: <message>".
class UsageError : public std::runtime_error {
 public:
  UsageError(const std::string& subject, const std::string& message)
      : std::runtime_error(subject + ": " + message) {}
};

template <typename Fn>
auto for_flag(const std::string& flag, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const UsageError&) {
    throw;
  } catch (const std::exception& e) {
    throw UsageError(flag, e.what());
  }
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> items;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    if (!item.empty()) items.push_back(item);
  }
  return items;
}

std::vector<Format> parse_format_list(const std::string& flag,
                                      const std::string& text) {
  return for_flag(flag, [&] {
    std::vector<Format> formats;
    for (const auto& item : split_list(text)) {
      formats.push_back(parse_format(item));
    }
    if (formats.empty()) throw std::invalid_argument("no formats given");
    return formats;
  });
}

FpFormat parse_fp8(const std::string& flag, const std::string& text) {
  return for_flag(flag, [&] {
    const Format fmt = parse_format(text);
    const auto* fp = std::get_if<FpFormat>(&fmt);
    if (fp == nullptr) {
      throw std::invalid_argument("'" + text + "' is not an FP8 format");
    }
    return *fp;
  });
}

void emit(const std::string& out_path, const std::string& text) {
  if (out_path.empty()) {
    std::cout << text;
    std::cout.flush();
    if (!std::cout) throw std::runtime_error("failed writing to stdout");
    return;
  }
  std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
  if (!out) throw UsageError("--out", "cannot open '" + out_path + "'");
  out << text;
  if (!out) throw UsageError("--out", "failed writing '" + out_path + "'");
}

Tensor load(const std::string& path) {
  try {
    return read_tensor_file(path);
  } catch (const std::exception& e) {
    throw UsageError(path, e.what());
  }
}

struct FormatsArgs {
  std::string fp8;
  std::optional<int> int_bits;
  std::string out;
};

void run_formats(const FormatsArgs& a) {
  Format fmt = IntFormat(8);
  if (!a.fp8.empty()) {
    fmt = parse_fp8("--fp8", a.fp8);
  } else if (a.int_bits) {
    fmt = for_flag("--int", [&] { return Format(IntFormat(*a.int_bits)); });
  } else {
    throw UsageError("formats", "one of --fp8 or --int is required");
  }
  emit(a.out, report::formats_csv(fmt));
}

struct SweepArgs {
  std::uint64_t seed = 0;
  std::size_t samples = kDefaultSamples;
  std::string formats = "int8,e2,e3,e4,e5";
  std::string dists = "uniform,gaussian,student_t";
  double nu = 2.0;
  bool no_lloyd = false;
  std::string out;
};

void run_sweep(const SweepArgs& a) {
  const std::vector<Format> formats = parse_format_list("--formats", a.formats);
  const std::vector<Distribution> dists = for_flag("--dists", [&] {
    std::vector<Distribution> out;
    for (const auto& item : split_list(a.dists)) {
      out.push_back(parse_distribution(item, a.nu));
    }
    if (out.empty()) throw std::invalid_argument("no distributions given");
    return out;
  });
  if (a.samples < kMinSamples) {
    throw UsageError("--samples",
                     "must be at least " + std::to_string(kMinSamples));
  }
  SweepOptions opts;
  opts.n = a.samples;
  opts.seed = a.seed;
  opts.include_lloyd_max = !a.no_lloyd;
  emit(a.out, report::mse_sweep_csv(sweep(dists, formats, opts)));
}

struct TensorReportArgs {
  std::vector<std::string> files;
  std::string formats = "int8,e2,e3,e4,e5";
  std::string granularity = "per-tensor";
  std::string range = "minmax";
  std::string out;
};

void run_tensor_report(const TensorReportArgs& a) {
  const std::vector<Format> formats = parse_format_list("--formats", a.formats);
  const Granularity granularity = for_flag(
      "--granularity", [&] { return parse_granularity(a.granularity); });
  const RangeMethod range =
      for_flag("--range", [&] { return parse_range_method(a.range); });

  std::vector<report::TensorRanking> rankings;
  for (const auto& path : a.files) {
    const Tensor t = load(path);
    auto scores = for_flag(path, [&] {
      return best_format_report(t, formats, granularity, range);
    });
    rankings.push_back({path, std::move(scores)});
  }
  emit(a.out, report::tensor_report_csv(rankings, granularity, range));
}

struct ConvertArgs {
  std::string fp8;
  int int_bits = 8;
  std::vector<std::string> files;
  std::string range = "minmax";
  std::optional<double> fp_scale;
  std::string out;
};

void run_convert(const ConvertArgs& a) {
  const FpFormat fp = parse_fp8("--fp8", a.fp8);
  const IntFormat int_fmt =
      for_flag("--int", [&] { return IntFormat(a.int_bits); });
  if (a.files.empty()) {
    emit(a.out, report::grid_match_csv(fp, int_fmt, match_grid(fp, int_fmt)));
    return;
  }
  if (a.range != "matched") {
    for_flag("--range", [&] { return parse_range_method(a.range); });
  }
  if (a.fp_scale && !(*a.fp_scale > 0)) {
    throw UsageError("--fp-scale", "must be positive");
  }

  std::vector<report::TensorConversion> rows;
  for (const auto& path : a.files) {
    const Tensor t = load(path);
    QuantizerConfig fp_config{fp, PerTensor{}, RangeMethod::kMinMax, {}};
    if (a.fp_scale) {
      fp_config.scales = {*a.fp_scale};
    } else {
      fp_config = calibrate(t, std::move(fp_config));
    }
    QuantizerConfig int_config{int_fmt, PerTensor{}, RangeMethod::kMinMax, {}};
    if (a.range == "matched") {
      int_config = matched_int_config(fp_config, int_fmt);
    } else {
      int_config.range_method = parse_range_method(a.range);
    }
    Conversion result = for_flag(
        path, [&] { return convert_tensor(t, fp_config, int_config); });
    rows.push_back({path, a.range, std::move(result)});
  }
  emit(a.out, report::conversion_csv(fp, int_fmt, rows));
}

struct SynthArgs {
  std::string dist = "gaussian";
  double nu = 2.0;
  std::string shape = "65536";
  std::uint64_t seed = 0;
  double outlier_fraction = 0;
  double outlier_scale = 20;
  std::string snap;
  std::string out;
};

void run_synth(const SynthArgs& a) {
  const Distribution dist =
      for_flag("--dist", [&] { return parse_distribution(a.dist, a.nu); });
  const std::vector<std::size_t> shape = for_flag("--shape", [&] {
    std::vector<std::size_t> dims;
    for (const auto& item : split_list(a.shape)) {
      std::size_t used = 0;
      const unsigned long long d = std::stoull(item, &used);
      if (used != item.size() || d == 0) {
        throw std::invalid_argument("bad dimension '" + item + "'");
      }
      dims.push_back(static_cast<std::size_t>(d));
    }
    if (dims.empty()) throw std::invalid_argument("empty shape");
    return dims;
  });
  std::size_t count = 1;
  for (std::size_t d : shape) count *= d;

  std::vector<double> values = dist.sample(count, a.seed);
  if (a.outlier_fraction > 0) {
    values = for_flag("--outlier-fraction", [&] {
      return inject_outliers(std::move(values), a.outlier_fraction,
                             a.outlier_scale, derive_seed(a.seed, 1));
    });
  }
  Tensor t(shape, std::move(values));
  if (!a.snap.empty()) {
    const FpFormat fp = parse_fp8("--snap", a.snap);
    const QuantizerConfig cfg =
        calibrate(t, {fp, PerTensor{}, RangeMethod::kMinMax, {}});
    t = quantize_dequantize(t, cfg);
  }
  if (a.out.empty()) throw UsageError("--out", "required");
  try {
    write_tensor_file(a.out, t);
  } catch (const std::exception& e) {
    throw UsageError("--out", e.what());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"octet: FP8 and INT8 format analysis, CSV reports"};
  app.require_subcommand(1);

  FormatsArgs formats_args;
  auto* formats = app.add_subcommand("formats", "List every value of a format");
  auto* fp8_opt = formats->add_option("--fp8", formats_args.fp8,
                                      "FP8 format, e.g. e4, e4m3, e4b10");
  formats->add_option("--int", formats_args.int_bits, "Integer bit width")
      ->excludes(fp8_opt);
  formats->add_option("--out", formats_args.out, "Output CSV (default stdout)");

  SweepArgs sweep_args;
  auto* mse = app.add_subcommand(
      "mse-sweep", "Bits of accuracy per distribution and format");
  mse->add_option("--seed", sweep_args.seed, "Master seed")
      ->capture_default_str();
  mse->add_option("--samples", sweep_args.samples, "Samples per distribution")
      ->capture_default_str();
  mse->add_option("--formats", sweep_args.formats, "Comma-separated formats")
      ->capture_default_str();
  mse->add_option("--dists", sweep_args.dists,
                  "Comma-separated distributions")
      ->capture_default_str();
  mse->add_option("--nu", sweep_args.nu, "Student-t degrees of freedom")
      ->capture_default_str();
  mse->add_flag("--no-lloyd", sweep_args.no_lloyd, "Skip Lloyd-Max rows");
  mse->add_option("--out", sweep_args.out, "Output CSV (default stdout)");

  std::string gates_out;
  auto* gates = app.add_subcommand(
      "gates", "MAC gate counts per format and accumulator");
  gates->add_option("--out", gates_out, "Output CSV (default stdout)");

  TensorReportArgs report_args;
  auto* tensor_report = app.add_subcommand(
      "tensor-report", "Rank formats by MSE for each tensor file");
  tensor_report->add_option("files", report_args.files, "Tensor files")
      ->required();
  tensor_report->add_option("--formats", report_args.formats,
                            "Comma-separated formats")
      ->capture_default_str();
  tensor_report->add_option("--granularity", report_args.granularity,
                            "per-tensor or per-channel=AXIS")
      ->capture_default_str();
  tensor_report->add_option("--range", report_args.range, "minmax or mse")
      ->capture_default_str();
  tensor_report->add_option("--out", report_args.out,
                            "Output CSV (default stdout)");

  ConvertArgs convert_args;
  auto* convert = app.add_subcommand(
      "convert", "FP8 to INT grid overlap, or convert FP8-grid tensors");
  convert->add_option("--fp8", convert_args.fp8, "Source FP8 format")
      ->required();
  convert->add_option("--int", convert_args.int_bits, "Target integer bits")
      ->capture_default_str();
  convert->add_option("files", convert_args.files, "Tensor files on the grid");
  convert->add_option("--range", convert_args.range,
                      "INT scale: minmax, mse or matched")
      ->capture_default_str();
  convert->add_option("--fp-scale", convert_args.fp_scale,
                      "FP8 scale of the files (default: min-max)");
  convert->add_option("--out", convert_args.out, "Output CSV (default stdout)");

  SynthArgs synth_args;
  auto* synth = app.add_subcommand("synth", "Write a synthetic tensor file");
  synth->add_option("--dist", synth_args.dist,
                    "uniform, gaussian or student_t")
      ->capture_default_str();
  synth->add_option("--nu", synth_args.nu, "Student-t degrees of freedom")
      ->capture_default_str();
  synth->add_option("--shape", synth_args.shape, "Comma-separated dims")
      ->capture_default_str();
  synth->add_option("--seed", synth_args.seed, "Seed")->capture_default_str();
  synth->add_option("--outlier-fraction", synth_args.outlier_fraction,
                    "Share of entries replaced by outliers")
      ->capture_default_str();
  synth->add_option("--outlier-scale", synth_args.outlier_scale,
                    "Outlier magnitude in units of the distribution scale")
      ->capture_default_str();
  synth->add_option("--snap", synth_args.snap,
                    "Project onto a min-max scaled FP8 grid");
  synth->add_option("--out", synth_args.out, "Output tensor file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*formats) run_formats(formats_args);
    if (*mse) run_sweep(sweep_args);
    if (*gates) emit(gates_out, report::gates_csv(gates::report_grid()));
    if (*tensor_report) run_tensor_report(report_args);
    if (*convert) run_convert(convert_args);
    if (*synth) run_synth(synth_args);
  } catch (const std::exception& e) {
    std::cerr << "octet: error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
