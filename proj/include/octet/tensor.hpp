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
#include <optional>
#include <span>
#include <vector>

namespace octet {

/// Dense row-major array of finite reals.
class Tensor {
 public:
  Tensor() = default;
  /// Throws std::invalid_argument if the shape does not match the data, a
  /// dimension is zero, the channel axis is out of range, or an element is
  /// not finite.
  Tensor(std::vector<std::size_t> shape, std::vector<double> data,
         std::optional<int> channel_axis = std::nullopt);

  /// 1-D tensor.
  static Tensor from_values(std::vector<double> data);

  const std::vector<std::size_t>& shape() const { return shape_; }
  std::span<const double> data() const { return data_; }
  std::span<double> mutable_data() { return data_; }
  std::size_t size() const { return data_.size(); }
  std::size_t rank() const { return shape_.size(); }
  bool empty() const { return data_.empty(); }
  std::optional<int> channel_axis() const { return channel_axis_; }

  Tensor with_data(std::vector<double> data) const;
  Tensor scaled(double factor) const;

 private:
  std::vector<std::size_t> shape_;
  std::vector<double> data_;
  std::optional<int> channel_axis_;
};

/// Maps flat indices to their slice along one axis.
class ChannelIndexer {
 public:
  ChannelIndexer(const std::vector<std::size_t>& shape, int axis);

  std::size_t channels() const { return channels_; }
  std::size_t channel_of(std::size_t flat) const {
    return (flat / inner_) % channels_;
  }

 private:
  std::size_t channels_ = 1;
  std::size_t inner_ = 1;
};

}  // namespace octet
