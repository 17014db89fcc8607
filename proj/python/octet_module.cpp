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

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "octet/codec.hpp"
#include "octet/convert.hpp"
#include "octet/distmse.hpp"
#include "octet/gatecost.hpp"
#include "octet/quantizer.hpp"
#include "octet/report.hpp"
#include "octet/tensor_file.hpp"

namespace py = pybind11;

namespace {

using namespace octet;

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

Tensor to_tensor(const Array& a, std::optional<int> channel_axis) {
  std::vector<std::size_t> shape(a.shape(), a.shape() + a.ndim());
  if (shape.empty()) shape.push_back(1);
  std::vector<double> data(a.data(), a.data() + a.size());
  return Tensor(std::move(shape), std::move(data), channel_axis);
}

Array to_array(const Tensor& t) {
  Array out(std::vector<py::ssize_t>(t.shape().begin(), t.shape().end()));
  std::copy(t.data().begin(), t.data().end(), out.mutable_data());
  return out;
}

Format format_arg(const py::object& obj) {
  if (py::isinstance<py::str>(obj)) return parse_format(obj.cast<std::string>());
  if (py::isinstance<FpFormat>(obj)) return obj.cast<FpFormat>();
  return obj.cast<IntFormat>();
}

std::vector<Format> format_list(const py::iterable& items) {
  std::vector<Format> out;
  for (const auto& item : items) {
    out.push_back(format_arg(py::reinterpret_borrow<py::object>(item)));
  }
  return out;
}

QuantizerConfig make_config(const py::object& fmt, const std::string& range,
                            const std::string& granularity) {
  return {format_arg(fmt), parse_granularity(granularity),
          parse_range_method(range), {}};
}

py::dict stats_dict(const ErrorStats& s) {
  py::dict d;
  d["mse"] = s.mse;
  d["rmse"] = s.rmse;
  d["sqnr_db"] = s.sqnr_db;
  d["max_abs_err"] = s.max_abs_err;
  d["clipped_fraction"] = s.clipped_fraction;
  return d;
}

}  // namespace

PYBIND11_MODULE(_octet, m) {
  m.doc() = "FP8 and INT8 format analysis";

  py::class_<FpFormat>(m, "FpFormat")
      .def(py::init<int>(), py::arg("exponent_bits"))
      .def(py::init<int, int>(), py::arg("exponent_bits"), py::arg("bias"))
      .def_property_readonly("exponent_bits", &FpFormat::exponent_bits)
      .def_property_readonly("mantissa_bits", &FpFormat::mantissa_bits)
      .def_property_readonly("bias", &FpFormat::bias)
      .def_property_readonly("max_value", &FpFormat::max_value)
      .def_property_readonly("name", &FpFormat::name)
      .def("__repr__",
           [](const FpFormat& f) { return "FpFormat('" + f.name() + "')"; });

  py::class_<IntFormat>(m, "IntFormat")
      .def(py::init<int>(), py::arg("bits"))
      .def_property_readonly("bits", &IntFormat::bits)
      .def_property_readonly("max_value", &IntFormat::max_value)
      .def_property_readonly("name", &IntFormat::name)
      .def("__repr__",
           [](const IntFormat& f) { return "IntFormat('" + f.name() + "')"; });

  m.def("decode", [](int code, const FpFormat& f) {
    return decode(Code8{static_cast<std::uint8_t>(code)}, f);
  }, py::arg("code"), py::arg("fmt"));
  m.def("encode", [](double x, const FpFormat& f) {
    return static_cast<int>(encode(x, f).bits);
  }, py::arg("x"), py::arg("fmt"));
  m.def("grid_values", [](const py::object& fmt) {
    return grid_values(format_arg(fmt));
  }, py::arg("fmt"), "Every representable value of a format, ascending.");

  m.def("quantize", [](const Array& x, const py::object& fmt,
                       const std::string& range, const std::string& granularity,
                       std::optional<int> channel_axis) {
    const Tensor t = to_tensor(x, channel_axis);
    const QuantizerConfig cfg = calibrate(t, make_config(fmt, range, granularity));
    const Tensor q = quantize_dequantize(t, cfg);
    return py::make_tuple(to_array(q), cfg.scales,
                          stats_dict(error_stats(t, q, cfg)));
  }, py::arg("x"), py::arg("fmt"), py::arg("range") = "minmax",
     py::arg("granularity") = "per-tensor", py::arg("channel_axis") = py::none(),
     "Quantize-dequantize; returns (values, scales, stats).");

  m.def("best_format_report", [](const Array& x, const py::iterable& formats,
                                 const std::string& range,
                                 const std::string& granularity,
                                 std::optional<int> channel_axis) {
    const auto ranked = best_format_report(
        to_tensor(x, channel_axis), format_list(formats),
        parse_granularity(granularity), parse_range_method(range));
    py::list out;
    for (const auto& s : ranked) {
      py::dict d = stats_dict(s.stats);
      d["format"] = format_name(s.format);
      out.append(d);
    }
    return out;
  }, py::arg("x"), py::arg("formats"), py::arg("range") = "minmax",
     py::arg("granularity") = "per-tensor", py::arg("channel_axis") = py::none());

  m.def("expected_mse", [](const std::string& dist, const py::object& fmt,
                           std::size_t n, std::uint64_t seed, double nu) {
    const auto r = expected_mse(parse_distribution(dist, nu), format_arg(fmt),
                                n, seed);
    return py::make_tuple(r.rmse, r.bits);
  }, py::arg("dist"), py::arg("fmt"), py::arg("n") = kDefaultSamples,
     py::arg("seed") = 0, py::arg("nu") = 2.0, "Returns (rmse, bits).");

  m.def("lloyd_max", [](const Array& x, int levels, int max_iters, double tol) {
    LloydOptions opts{levels, max_iters, tol};
    const std::span<const double> data(x.data(), x.size());
    const Codebook book = lloyd_max(data, opts);
    py::dict d;
    d["levels"] = book.levels;
    d["thresholds"] = book.thresholds;
    d["mse"] = book.mse;
    d["mse_history"] = book.mse_history;
    d["iterations"] = book.iterations;
    return d;
  }, py::arg("x"), py::arg("levels") = 255, py::arg("max_iters") = 20000,
     py::arg("tol") = 1e-10);

  m.def("mse_sweep_csv", [](const std::vector<std::string>& dists,
                            const py::iterable& formats, std::size_t n,
                            std::uint64_t seed, double nu, bool lloyd) {
    std::vector<Distribution> parsed;
    for (const auto& d : dists) parsed.push_back(parse_distribution(d, nu));
    SweepOptions opts;
    opts.n = n;
    opts.seed = seed;
    opts.include_lloyd_max = lloyd;
    std::vector<MseRow> rows;
    {
      const auto fmts = format_list(formats);
      py::gil_scoped_release release;
      rows = sweep(parsed, fmts, opts);
    }
    return report::mse_sweep_csv(rows);
  }, py::arg("dists") = std::vector<std::string>{"uniform", "gaussian",
                                                  "student_t"},
     py::arg("formats") = std::vector<std::string>{"int8", "e2", "e3", "e4",
                                                    "e5"},
     py::arg("n") = kDefaultSamples, py::arg("seed") = 0, py::arg("nu") = 2.0,
     py::arg("lloyd_max") = true);

  m.def("gates_csv", [] { return report::gates_csv(gates::report_grid()); });
  m.def("mac_cost", [](const py::object& fmt, const std::string& acc) {
    gates::Accumulator a = gates::FixedAccumulator{};
    if (acc == "fp16") {
      a = gates::kFp16Accumulator;
    } else if (acc == "fp32") {
      a = gates::kFp32Accumulator;
    } else if (acc != "fixed") {
      throw std::invalid_argument("accumulator must be fixed, fp16 or fp32");
    }
    const auto r = gates::mac_cost({format_arg(fmt), a});
    py::dict d;
    d["multiply"] = r.multiply;
    d["align"] = r.align;
    d["accumulate"] = r.accumulate;
    d["normalize_round"] = r.normalize_round;
    d["registers"] = r.registers;
    d["total"] = r.total;
    return d;
  }, py::arg("fmt"), py::arg("accumulator") = "fixed");

  m.def("match_grid", [](const py::object& fp, int int_bits) {
    const Format f = format_arg(fp);
    const auto r = match_grid(std::get<FpFormat>(f), IntFormat(int_bits));
    py::dict d;
    d["int_scale"] = r.int_scale;
    d["exact_fraction"] = r.exact_fraction;
    d["exact_count"] = r.exact_count;
    d["max_conversion_err"] = r.max_conversion_err;
    d["lossy_lo"] = r.lossy_lo;
    d["lossy_hi"] = r.lossy_hi;
    return d;
  }, py::arg("fp"), py::arg("int_bits") = 8);

  m.def("read_tensor", [](const std::string& path) {
    return to_array(read_tensor_file(path));
  }, py::arg("path"));
  m.def("write_tensor", [](const std::string& path, const Array& x) {
    write_tensor_file(path, to_tensor(x, std::nullopt));
  }, py::arg("path"), py::arg("x"));

  py::register_exception<TensorFileError>(m, "TensorFileError",
                                          PyExc_ValueError);
}
