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

#ifndef RZKP_RNG_HPP_
#define RZKP_RNG_HPP_

#include <array>
#include <cstdint>
#include <string_view>

namespace rzkp {

// Deterministic byte stream: BLAKE2b(key, little-endian block counter),
// 64 bytes per block. Two agents holding the same seed derive identical
// streams, which is how the prover pair (and the verifier pair) agree on
// per-round randomness without talking to each other. Independent streams
// are split off with derive(), which computes a keyed-hash subkey, so
// "round 7's permutation" and "round 7's blind #2" never share bytes.
class Rng {
 public:
  static constexpr size_t kSeedBytes = 32;

  explicit Rng(const std::array<uint8_t, kSeedBytes>& seed);

  // Convenience: seed = BLAKE2b-256(text). Lets configs carry readable seeds.
  static Rng from_string(std::string_view text);

  // Fresh seed from the OS CSPRNG.
  static Rng system();

  // Independent child stream. Same (parent, label, index) -> same child.
  Rng derive(std::string_view label, uint64_t index = 0) const;

  void fill(void* out, size_t n);
  uint64_t next_u64();
  // Uniform in [0, bound) by rejection; bound must be nonzero.
  uint64_t below(uint64_t bound);
  // Uniform in [0,1) with 53 random bits.
  double next_double();

 private:
  Rng() = default;

  std::array<uint8_t, kSeedBytes> key_{};
  uint64_t counter_ = 0;
  std::array<uint8_t, 64> block_{};
  size_t avail_ = 0;
};

}  // namespace rzkp

#endif  // RZKP_RNG_HPP_
