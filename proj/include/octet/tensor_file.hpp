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

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "octet/tensor.hpp"

namespace octet {

// Tensor container, all integers little-endian:
//
//   offset  size        field
//   0       6           magic "QTNSR1"
//   6       4           ndim (u32, >= 1)
//   10      8 * ndim    dims (u64 each, >= 1)
//   10+8n   1           dtype (0 = float32)
//   11+8n   4 * prod    payload, row-major float32

inline constexpr char kTensorMagic[] = "QTNSR1";
inline constexpr std::uint8_t kDtypeFloat32 = 0;

class TensorFileError : public std::runtime_error {
 public:
  TensorFileError(const std::string& field, std::size_t offset,
                  const std::string& detail);

  const std::string& field() const { return field_; }
  std::size_t offset() const { return offset_; }
  const std::string& detail() const { return detail_; }

 private:
  std::string field_;
  std::size_t offset_;
  std::string detail_;
};

Tensor parse_tensor(std::span<const std::uint8_t> bytes);
/// Elements are narrowed to float32.
std::vector<std::uint8_t> serialize_tensor(const Tensor& t);

/// Throws TensorFileError for malformed content and std::runtime_error if the
/// file cannot be read or written.
Tensor read_tensor_file(const std::string& path);
void write_tensor_file(const std::string& path, const Tensor& t);

}  // namespace octet
