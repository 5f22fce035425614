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

#ifndef RZKP_CODING_HPP_
#define RZKP_CODING_HPP_

#include <cstdint>
#include <optional>
#include <vector>

#include "rzkp/bitvec.hpp"
#include "rzkp/rng.hpp"

namespace rzkp::coding {

// Parity-check matrix of a random binary [n, k] code: (n-k) rows, n columns.
class ParityCheckMatrix {
 public:
  ParityCheckMatrix() = default;
  ParityCheckMatrix(size_t n, size_t k);

  static ParityCheckMatrix random(size_t n, size_t k, Rng& rng);

  size_t n() const { return n_; }
  size_t k() const { return k_; }
  size_t row_count() const { return rows_.size(); }
  const BitVector& row(size_t i) const { return rows_[i]; }
  BitVector& row(size_t i) { return rows_[i]; }

  // Syndrome H * v, length n - k. Length mismatch -> throw.
  BitVector mul(const BitVector& v) const;

  bool operator==(const ParityCheckMatrix& o) const = default;

 private:
  size_t n_ = 0, k_ = 0;
  std::vector<BitVector> rows_;
};

// An instance of the syndrome decoding problem: find e with H*e == s and
// Hamming weight exactly w.
struct SdInstance {
  size_t n = 0, k = 0, w = 0;
  ParityCheckMatrix h;
  BitVector s;  // length n - k
};

struct SdWitness {
  BitVector e;  // length n, weight w
};

// H*e == s and |e| == w and e has length n.
bool check_witness(const SdInstance& inst, const BitVector& e);

// Uniform H plus a planted weight-w error; s = H*e.
SdInstance gen_yes_instance(size_t n, size_t k, size_t w, Rng& rng,
                            SdWitness* witness_out);

// Uniform (H, s) resampled until brute force certifies that no weight-w
// solution exists. SearchLimitError if C(n, w) exceeds max_candidates.
SdInstance gen_no_instance(size_t n, size_t k, size_t w, Rng& rng,
                           uint64_t max_candidates = uint64_t{1} << 22);

// First weight-w solution in lexicographic support order, if any.
// SearchLimitError if C(n, w) exceeds max_candidates.
std::optional<BitVector> brute_force_solve(const SdInstance& inst,
                                           uint64_t max_candidates =
                                               uint64_t{1} << 22);

// Any solution of H*x == s over GF(2), weight unconstrained: Gaussian
// elimination, free variables pinned to zero. nullopt if inconsistent.
std::optional<BitVector> solve_linear(const ParityCheckMatrix& h,
                                      const BitVector& s);

}  // namespace rzkp::coding

#endif  // RZKP_CODING_HPP_
