// Copyright 2026 The saoovqe Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <vector>

namespace saoovqe {

/// Dense rank-4 array with equal extents, row-major (last index fastest).
class Tensor4 {
 public:
  Tensor4() = default;
  explicit Tensor4(std::size_t n, double fill = 0.0) : n_(n), data_(n * n * n * n, fill) {}

  std::size_t dim() const noexcept { return n_; }
  std::size_t size() const noexcept { return data_.size(); }

  double& operator()(std::size_t p, std::size_t q, std::size_t r, std::size_t s) {
    return data_[((p * n_ + q) * n_ + r) * n_ + s];
  }
  double operator()(std::size_t p, std::size_t q, std::size_t r, std::size_t s) const {
    return data_[((p * n_ + q) * n_ + r) * n_ + s];
  }

  double* data() noexcept { return data_.data(); }
  const double* data() const noexcept { return data_.data(); }

  void set_zero();

  /// Writes `value` into all eight chemist-notation images of (pq|rs).
  void set_symmetric(std::size_t p, std::size_t q, std::size_t r, std::size_t s, double value);

  /// Largest deviation between (pq|rs) and any of its eight permutation images.
  double max_symmetry_violation() const;

  /// Sub-block over an ordered index list.
  Tensor4 slice(const std::vector<int>& idx) const;

  Tensor4& operator+=(const Tensor4& other);
  Tensor4& operator*=(double factor);

  friend bool operator==(const Tensor4&, const Tensor4&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<double> data_;
};

Tensor4 operator+(Tensor4 a, const Tensor4& b);
Tensor4 operator*(double factor, Tensor4 a);

}  // namespace saoovqe
