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

#include "rzkp/bitvec.hpp"

#include <bit>
#include <numeric>
#include <stdexcept>

#include "rzkp/errors.hpp"

namespace rzkp {

BitVector::BitVector(size_t n) : n_(n), w_((n + 63) / 64, 0) {}

BitVector BitVector::random(size_t n, Rng& rng) {
  BitVector v(n);
  if (n == 0) return v;
  rng.fill(v.w_.data(), v.w_.size() * 8);
  const size_t tail = n & 63;
  if (tail) v.w_.back() &= (uint64_t{1} << tail) - 1;
  return v;
}

BitVector BitVector::random_weight(size_t n, size_t w, Rng& rng) {
  if (w > n) throw std::invalid_argument("random_weight: w > n");
  // Partial Fisher-Yates: the first w slots of a shuffled index list.
  std::vector<uint32_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  BitVector v(n);
  for (size_t i = 0; i < w; ++i) {
    const size_t j = i + static_cast<size_t>(rng.below(n - i));
    std::swap(idx[i], idx[j]);
    v.set(idx[i], true);
  }
  return v;
}

size_t BitVector::weight() const {
  size_t c = 0;
  for (uint64_t x : w_) c += static_cast<size_t>(std::popcount(x));
  return c;
}

BitVector BitVector::operator^(const BitVector& o) const {
  if (n_ != o.n_) throw Error("BitVector xor: length mismatch");
  BitVector r(n_);
  for (size_t i = 0; i < w_.size(); ++i) r.w_[i] = w_[i] ^ o.w_[i];
  return r;
}

BitVector BitVector::padded(size_t n) const {
  if (n < n_) throw Error("BitVector::padded: target shorter than vector");
  BitVector r(n);
  for (size_t i = 0; i < w_.size(); ++i) r.w_[i] = w_[i];
  return r;
}

std::string BitVector::to_hex() const {
  static const char* kDigits = "0123456789abcdef";
  const size_t bytes = (n_ + 7) / 8;
  std::string out(bytes * 2, '0');
  for (size_t j = 0; j < bytes; ++j) {
    const uint8_t b = static_cast<uint8_t>(w_[j >> 3] >> ((j & 7) * 8));
    out[2 * j] = kDigits[b >> 4];
    out[2 * j + 1] = kDigits[b & 15];
  }
  return out;
}

BitVector BitVector::from_hex(std::string_view hex, size_t n) {
  const size_t bytes = (n + 7) / 8;
  if (hex.size() != bytes * 2) throw ConfigError("bit vector hex: bad length");
  auto nibble = [](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    throw ConfigError("bit vector hex: bad digit");
  };
  BitVector v(n);
  for (size_t j = 0; j < bytes; ++j) {
    const uint8_t b = static_cast<uint8_t>((nibble(hex[2 * j]) << 4) |
                                           nibble(hex[2 * j + 1]));
    v.w_[j >> 3] |= uint64_t{b} << ((j & 7) * 8);
  }
  const size_t tail = n & 63;
  if (!v.w_.empty() && tail && (v.w_.back() >> tail) != 0)
    throw ConfigError("bit vector hex: nonzero padding bits");
  return v;
}

Permutation::Permutation(std::vector<uint32_t> images) : img_(std::move(images)) {
  std::vector<bool> seen(img_.size(), false);
  for (uint32_t x : img_) {
    if (x >= img_.size() || seen[x])
      throw std::invalid_argument("Permutation: images are not a bijection");
    seen[x] = true;
  }
}

Permutation Permutation::identity(size_t n) {
  Permutation p;
  p.img_.resize(n);
  std::iota(p.img_.begin(), p.img_.end(), 0);
  return p;
}

Permutation Permutation::random(size_t n, Rng& rng) {
  Permutation p = identity(n);
  for (size_t i = n; i > 1; --i) {
    const size_t j = static_cast<size_t>(rng.below(i));
    std::swap(p.img_[i - 1], p.img_[j]);
  }
  return p;
}

Permutation Permutation::inverse() const {
  Permutation p;
  p.img_.resize(img_.size());
  for (size_t i = 0; i < img_.size(); ++i) p.img_[img_[i]] = static_cast<uint32_t>(i);
  return p;
}

BitVector Permutation::apply(const BitVector& v) const {
  if (v.size() != img_.size()) throw Error("Permutation::apply: length mismatch");
  BitVector out(v.size());
  for (size_t i = 0; i < img_.size(); ++i)
    if (v.get(i)) out.set(img_[i], true);
  return out;
}

}  // namespace rzkp
