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

#include "saoovqe/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace saoovqe {

void Tensor4::set_zero() { std::fill(data_.begin(), data_.end(), 0.0); }

void Tensor4::set_symmetric(std::size_t p, std::size_t q, std::size_t r, std::size_t s,
                            double value) {
  (*this)(p, q, r, s) = value;
  (*this)(q, p, r, s) = value;
  (*this)(p, q, s, r) = value;
  (*this)(q, p, s, r) = value;
  (*this)(r, s, p, q) = value;
  (*this)(s, r, p, q) = value;
  (*this)(r, s, q, p) = value;
  (*this)(s, r, q, p) = value;
}

double Tensor4::max_symmetry_violation() const {
  double worst = 0.0;
  const auto& t = *this;
  for (std::size_t p = 0; p < n_; ++p)
    for (std::size_t q = 0; q < n_; ++q)
      for (std::size_t r = 0; r < n_; ++r)
        for (std::size_t s = 0; s < n_; ++s) {
          const double v = t(p, q, r, s);
          worst = std::max({worst, std::abs(v - t(q, p, r, s)), std::abs(v - t(p, q, s, r)),
                            std::abs(v - t(r, s, p, q))});
        }
  return worst;
}

Tensor4 Tensor4::slice(const std::vector<int>& idx) const {
  const std::size_t m = idx.size();
  Tensor4 out(m);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b)
      for (std::size_t c = 0; c < m; ++c)
        for (std::size_t d = 0; d < m; ++d)
          out(a, b, c, d) = (*this)(idx[a], idx[b], idx[c], idx[d]);
  return out;
}

Tensor4& Tensor4::operator+=(const Tensor4& other) {
  if (other.n_ != n_) throw std::invalid_argument("Tensor4: extent mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

Tensor4& Tensor4::operator*=(double factor) {
  for (auto& v : data_) v *= factor;
  return *this;
}

Tensor4 operator+(Tensor4 a, const Tensor4& b) { return a += b; }
Tensor4 operator*(double factor, Tensor4 a) { return a *= factor; }

}  // namespace saoovqe
