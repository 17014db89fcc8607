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

#include "octet/tensor_file.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <limits>

namespace octet {

namespace {

constexpr std::size_t kMagicSize = 6;
// Refuse headers describing more than this many elements.
constexpr std::uint64_t kMaxElements = std::uint64_t{1} << 34;

template <typename T>
T read_le(std::span<const std::uint8_t> bytes, std::size_t offset) {
  T value = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) {
    value |= static_cast<T>(bytes[offset + i]) << (8 * i);
  }
  return value;
}

template <typename T>
void write_le(std::vector<std::uint8_t>& out, T value) {
  for (std::size_t i = 0; i < sizeof(T); ++i) {
    out.push_back(static_cast<std::uint8_t>(value >> (8 * i)));
  }
}

void require(std::span<const std::uint8_t> bytes, std::size_t offset,
             std::size_t need, const std::string& field) {
  if (bytes.size() < offset + need) {
    throw TensorFileError(field, offset,
                          "truncated: need " + std::to_string(need) +
                              " bytes, have " +
                              std::to_string(bytes.size() > offset
                                                 ? bytes.size() - offset
                                                 : 0));
  }
}

}  // namespace

TensorFileError::TensorFileError(const std::string& field, std::size_t offset,
                                 const std::string& detail)
    : std::runtime_error("tensor file: bad " + field + " at offset " +
                         std::to_string(offset) + ": " + detail),
      field_(field),
      offset_(offset),
      detail_(detail) {}

Tensor parse_tensor(std::span<const std::uint8_t> bytes) {
  std::size_t offset = 0;
  require(bytes, offset, kMagicSize, "magic");
  if (std::memcmp(bytes.data(), kTensorMagic, kMagicSize) != 0) {
    throw TensorFileError("magic", 0, "expected \"QTNSR1\"");
  }
  offset += kMagicSize;

  require(bytes, offset, 4, "ndim");
  const auto ndim = read_le<std::uint32_t>(bytes, offset);
  if (ndim == 0) throw TensorFileError("ndim", offset, "must be >= 1");
  offset += 4;

  std::vector<std::size_t> shape;
  std::uint64_t count = 1;
  for (std::uint32_t d = 0; d < ndim; ++d) {
    const std::string field = "dims[" + std::to_string(d) + "]";
    require(bytes, offset, 8, field);
    const auto dim = read_le<std::uint64_t>(bytes, offset);
    if (dim == 0) throw TensorFileError(field, offset, "must be >= 1");
    if (dim > kMaxElements / count) {
      throw TensorFileError(field, offset, "tensor too large");
    }
    count *= dim;
    shape.push_back(static_cast<std::size_t>(dim));
    offset += 8;
  }

  require(bytes, offset, 1, "dtype");
  if (bytes[offset] != kDtypeFloat32) {
    throw TensorFileError("dtype", offset,
                          "unsupported dtype " + std::to_string(bytes[offset]));
  }
  offset += 1;

  const std::size_t payload = static_cast<std::size_t>(count) * 4;
  require(bytes, offset, payload, "payload");
  if (bytes.size() != offset + payload) {
    throw TensorFileError("payload", offset + payload,
                          std::to_string(bytes.size() - offset - payload) +
                              " trailing bytes");
  }
  std::vector<double> data(static_cast<std::size_t>(count));
  for (std::size_t i = 0; i < data.size(); ++i) {
    const float value =
        std::bit_cast<float>(read_le<std::uint32_t>(bytes, offset + 4 * i));
    if (!std::isfinite(value)) {
      throw TensorFileError("payload", offset + 4 * i,
                            "element " + std::to_string(i) + " is not finite");
    }
    data[i] = value;
  }
  return Tensor(std::move(shape), std::move(data));
}

std::vector<std::uint8_t> serialize_tensor(const Tensor& t) {
  if (t.empty()) throw std::invalid_argument("cannot serialize empty tensor");
  std::vector<std::uint8_t> out(kTensorMagic, kTensorMagic + kMagicSize);
  write_le<std::uint32_t>(out, static_cast<std::uint32_t>(t.rank()));
  for (std::size_t d : t.shape()) write_le<std::uint64_t>(out, d);
  out.push_back(kDtypeFloat32);
  out.reserve(out.size() + 4 * t.size());
  for (double v : t.data()) {
    write_le<std::uint32_t>(out,
                            std::bit_cast<std::uint32_t>(static_cast<float>(v)));
  }
  return out;
}

Tensor read_tensor_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  const std::vector<std::uint8_t> bytes(std::istreambuf_iterator<char>(in),
                                        {});
  try {
    return parse_tensor(bytes);
  } catch (const TensorFileError& e) {
    throw TensorFileError(e.field(), e.offset(),
                          e.detail() + " in '" + path + "'");
  }
}

void write_tensor_file(const std::string& path, const Tensor& t) {
  const std::vector<std::uint8_t> bytes = serialize_tensor(t);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
}

}  // namespace octet
