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

#include "rzkp/rng.hpp"

#include <sodium.h>

#include <cstring>
#include <stdexcept>
#include <vector>

namespace rzkp {

namespace {

void ensure_sodium() {
  if (sodium_init() < 0) throw std::runtime_error("libsodium init failed");
}

}  // namespace

Rng::Rng(const std::array<uint8_t, kSeedBytes>& seed) {
  ensure_sodium();
  key_ = seed;
}

Rng Rng::from_string(std::string_view text) {
  ensure_sodium();
  std::array<uint8_t, kSeedBytes> seed{};
  crypto_generichash(seed.data(), seed.size(),
                     reinterpret_cast<const unsigned char*>(text.data()),
                     text.size(), nullptr, 0);
  return Rng(seed);
}

Rng Rng::system() {
  ensure_sodium();
  std::array<uint8_t, kSeedBytes> seed{};
  randombytes_buf(seed.data(), seed.size());
  return Rng(seed);
}

Rng Rng::derive(std::string_view label, uint64_t index) const {
  // subkey = BLAKE2b-256(key = parent key, msg = label || 0x00 || LE64(index))
  std::vector<uint8_t> msg(label.size() + 1 + 8);
  std::memcpy(msg.data(), label.data(), label.size());
  msg[label.size()] = 0;
  for (int i = 0; i < 8; ++i)
    msg[label.size() + 1 + i] = static_cast<uint8_t>(index >> (8 * i));

  Rng child;
  crypto_generichash(child.key_.data(), child.key_.size(), msg.data(),
                     msg.size(), key_.data(), key_.size());
  return child;
}

void Rng::fill(void* out, size_t n) {
  auto* p = static_cast<uint8_t*>(out);
  while (n > 0) {
    if (avail_ == 0) {
      uint8_t ctr[8];
      for (int i = 0; i < 8; ++i)
        ctr[i] = static_cast<uint8_t>(counter_ >> (8 * i));
      ++counter_;
      crypto_generichash(block_.data(), block_.size(), ctr, sizeof ctr,
                         key_.data(), key_.size());
      avail_ = block_.size();
    }
    const size_t take = n < avail_ ? n : avail_;
    std::memcpy(p, block_.data() + (block_.size() - avail_), take);
    avail_ -= take;
    p += take;
    n -= take;
  }
}

uint64_t Rng::next_u64() {
  uint8_t b[8];
  fill(b, sizeof b);
  uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<uint64_t>(b[i]) << (8 * i);
  return v;
}

uint64_t Rng::below(uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("Rng::below: zero bound");
  // Rejection sampling: accept draws under the largest multiple of bound.
  const uint64_t limit = UINT64_MAX - (UINT64_MAX % bound + 1) % bound;
  for (;;) {
    const uint64_t v = next_u64();
    if (v <= limit) return v % bound;
  }
}

double Rng::next_double() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

}  // namespace rzkp
