// Copyright 2026 The rzkp Authors
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

#ifndef RZKP_BITVEC_HPP_
#define RZKP_BITVEC_HPP_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "rzkp/rng.hpp"

namespace rzkp {

// Fixed-length vector over GF(2), packed 64 bits per word, bit i at
// word i/64, position i%64. Unused bits of the last word are kept zero.
class BitVector {
 public:
  BitVector() = default;
  explicit BitVector(size_t n);

  static BitVector random(size_t n, Rng& rng);
  // Uniform over vectors of Hamming weight exactly w.
  static BitVector random_weight(size_t n, size_t w, Rng& rng);

  size_t size() const { return n_; }
  bool get(size_t i) const {
    return (w_[i >> 6] >> (i & 63)) & 1;
  }
  void set(size_t i, bool v) {
    const uint64_t m = uint64_t{1} << (i & 63);
    if (v)
      w_[i >> 6] |= m;
    else
      w_[i >> 6] &= ~m;
  }

  size_t weight() const;
  BitVector operator^(const BitVector& o) const;  // size mismatch -> throw
  bool operator==(const BitVector& o) const = default;

  // Zero-extends to length n (n >= size()).
  BitVector padded(size_t n) const;

  const std::vector<uint64_t>& words() const { return w_; }

  // Byte j carries bits 8j..8j+7, bit i at position i%8 within its byte;
  // hex is those bytes in order, lowercase, two digits each.
  std::string to_hex() const;
  static BitVector from_hex(std::string_view hex, size_t n);

 private:
  size_t n_ = 0;
  std::vector<uint64_t> w_;
};

// Permutation of {0..n-1}, stored as the image table: i maps to image(i).
// Applying to a vector scatters coordinates: out[image(i)] = v[i].
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::vector<uint32_t> images);  // validated

  static Permutation identity(size_t n);
  static Permutation random(size_t n, Rng& rng);  // Fisher-Yates

  size_t size() const { return img_.size(); }
  uint32_t image(size_t i) const { return img_[i]; }
  const std::vector<uint32_t>& images() const { return img_; }

  Permutation inverse() const;
  BitVector apply(const BitVector& v) const;  // size mismatch -> throw

  bool operator==(const Permutation& o) const = default;

 private:
  std::vector<uint32_t> img_;
};

}  // namespace rzkp

#endif  // RZKP_BITVEC_HPP_
