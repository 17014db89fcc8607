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

#include "octet/sorted_sample.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace octet {

double SortedSample::Moments::squared_error_to(double c) const {
  const long double lc = c;
  const long double err = sum_sq - 2 * lc * sum + lc * lc * count;
  return err > 0 ? static_cast<double>(err) : 0.0;
}

SortedSample::SortedSample(std::span<const double> values)
    : sorted_(values.begin(), values.end()) {
  if (sorted_.empty()) throw std::invalid_argument("empty sample");
  std::sort(sorted_.begin(), sorted_.end());
  prefix_sum_.resize(sorted_.size() + 1);
  prefix_sum_sq_.resize(sorted_.size() + 1);
  for (std::size_t i = 0; i < sorted_.size(); ++i) {
    const long double x = sorted_[i];
    prefix_sum_[i + 1] = prefix_sum_[i] + x;
    prefix_sum_sq_[i + 1] = prefix_sum_sq_[i] + x * x;
  }
}

double SortedSample::max_abs() const {
  return std::max(std::fabs(sorted_.front()), std::fabs(sorted_.back()));
}

std::size_t SortedSample::lower_bound(double x) const {
  return static_cast<std::size_t>(
      std::lower_bound(sorted_.begin(), sorted_.end(), x) - sorted_.begin());
}

SortedSample::Moments SortedSample::moments(std::size_t begin,
                                            std::size_t end) const {
  return Moments{end - begin, prefix_sum_[end] - prefix_sum_[begin],
                 prefix_sum_sq_[end] - prefix_sum_sq_[begin]};
}

std::vector<std::size_t> SortedSample::cell_bounds(
    std::span<const double> levels) const {
  std::vector<std::size_t> bounds(levels.size() + 1);
  bounds.front() = 0;
  bounds.back() = sorted_.size();
  for (std::size_t j = 1; j < levels.size(); ++j) {
    bounds[j] = lower_bound(0.5 * (levels[j - 1] + levels[j]));
  }
  return bounds;
}

double SortedSample::sum_squared_error(std::span<const double> levels) const {
  const auto bounds = cell_bounds(levels);
  double total = 0;
  for (std::size_t j = 0; j < levels.size(); ++j) {
    if (bounds[j] == bounds[j + 1]) continue;
    total += moments(bounds[j], bounds[j + 1]).squared_error_to(levels[j]);
  }
  return total;
}

}  // namespace octet
