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
#include <span>
#include <vector>

namespace octet {

/// A sorted copy of a sample with prefix sums of x and x^2, so the squared
/// error of nearest-level assignment to any sorted codebook costs
/// O(levels * log n) instead of O(n).
class SortedSample {
 public:
  struct Moments {
    std::size_t count = 0;
    long double sum = 0;
    long double sum_sq = 0;

    /// Sum of (x - c)^2 over the range, clamped at zero.
    double squared_error_to(double c) const;
  };

  explicit SortedSample(std::span<const double> values);

  std::size_t size() const { return sorted_.size(); }
  std::span<const double> values() const { return sorted_; }
  double min() const { return sorted_.front(); }
  double max() const { return sorted_.back(); }
  double max_abs() const;

  /// First index whose value is >= x.
  std::size_t lower_bound(double x) const;
  /// Moments of sorted elements [begin, end).
  Moments moments(std::size_t begin, std::size_t end) const;

  /// Cell boundaries for nearest-level assignment: element i belongs to level
  /// j iff bounds[j] <= i < bounds[j + 1]. Elements exactly on a midpoint go
  /// to the upper level; both neighbours are equidistant so the error does
  /// not depend on that choice.
  std::vector<std::size_t> cell_bounds(std::span<const double> levels) const;

  /// Sum over the sample of squared distance to the nearest level.
  /// `levels` must be sorted ascending.
  double sum_squared_error(std::span<const double> levels) const;

 private:
  std::vector<double> sorted_;
  std::vector<long double> prefix_sum_;
  std::vector<long double> prefix_sum_sq_;
};

}  // namespace octet
