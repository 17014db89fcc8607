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

#include "octet/tensor.hpp"

#include <cmath>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <string>

namespace octet {

Tensor::Tensor(std::vector<std::size_t> shape, std::vector<double> data,
               std::optional<int> channel_axis)
    : shape_(std::move(shape)),
      data_(std::move(data)),
      channel_axis_(channel_axis) {
  std::size_t count = 1;
  for (std::size_t d : shape_) {
    if (d == 0) throw std::invalid_argument("tensor dimension is zero");
    count *= d;
  }
  if (shape_.empty()) count = data_.empty() ? 0 : 1;
  if (count != data_.size()) {
    throw std::invalid_argument("tensor shape holds " + std::to_string(count) +
                                " elements, data has " +
                                std::to_string(data_.size()));
  }
  if (channel_axis_ &&
      (*channel_axis_ < 0 ||
       static_cast<std::size_t>(*channel_axis_) >= shape_.size())) {
    throw std::invalid_argument("channel axis " +
                                std::to_string(*channel_axis_) +
                                " out of range for rank " +
                                std::to_string(shape_.size()));
  }
  for (std::size_t i = 0; i < data_.size(); ++i) {
    if (!std::isfinite(data_[i])) {
      throw std::invalid_argument("tensor element " + std::to_string(i) +
                                  " is not finite");
    }
  }
}

Tensor Tensor::from_values(std::vector<double> data) {
  if (data.empty()) return Tensor();
  std::vector<std::size_t> shape{data.size()};
  return Tensor(std::move(shape), std::move(data));
}

Tensor Tensor::with_data(std::vector<double> data) const {
  return Tensor(shape_, std::move(data), channel_axis_);
}

Tensor Tensor::scaled(double factor) const {
  std::vector<double> out(data_);
  for (double& v : out) v *= factor;
  return with_data(std::move(out));
}

ChannelIndexer::ChannelIndexer(const std::vector<std::size_t>& shape,
                               int axis) {
  if (axis < 0 || static_cast<std::size_t>(axis) >= shape.size()) {
    throw std::invalid_argument("channel axis " + std::to_string(axis) +
                                " out of range for rank " +
                                std::to_string(shape.size()));
  }
  channels_ = shape[axis];
  inner_ = std::accumulate(shape.begin() + axis + 1, shape.end(),
                           std::size_t{1}, std::multiplies<>());
}

}  // namespace octet
