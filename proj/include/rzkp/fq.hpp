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

#ifndef RZKP_FQ_HPP_
#define RZKP_FQ_HPP_

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "rzkp/bitvec.hpp"
#include "rzkp/rng.hpp"

namespace rzkp::fq {

class FieldParams;
using FieldParamsPtr = std::shared_ptr<const FieldParams>;

// Immutable description of the prime field F_Q, shared by every element.
//
// The protocol fields are Mersenne primes Q = 2^q - 1, where products reduce
// by limb folding (x_hi * 2^q + x_lo == x_hi + x_lo mod Q) instead of
// division. Arbitrary odd prime moduli are supported for tests; those reduce
// the ordinary way.
//
// n_embed > 0 declares that elements of this field will carry protocol values
// for code length n: bit vectors of length n (needs Q >= 2^n) and
// (permutation, syndrome) pairs (needs Q >= n! * 2^n). Both conditions are
// enforced at construction, and the factorial table used by the pair
// embedding is built once here.
class FieldParams : public std::enable_shared_from_this<FieldParams> {
 public:
  // Exponents q for which 2^q - 1 is known prime, as accepted by mersenne().
  static const std::vector<unsigned>& accepted_exponents();

  static FieldParamsPtr mersenne(unsigned q_exponent, unsigned n_embed = 0);
  // Testing entry point: any odd prime (checked probabilistically).
  static FieldParamsPtr from_prime(const mpz_class& p, unsigned n_embed = 0);

  const mpz_class& modulus() const { return q_; }
  bool is_mersenne() const { return q_exponent_ != 0; }
  unsigned q_exponent() const { return q_exponent_; }  // 0 when not Mersenne
  unsigned n_embed() const { return n_embed_; }
  size_t bit_length() const { return bits_; }
  // Serialized element width: ceil(bit_length / 8) bytes, big-endian.
  size_t byte_width() const { return (bits_ + 7) / 8; }

  bool same(const FieldParams& o) const { return q_ == o.q_; }

  // 0!..n_embed!, prebuilt at construction (empty when n_embed == 0).
  const std::vector<mpz_class>& embed_factorials() const { return fact_embed_; }
  // n_embed! * 2^n_embed (0 when n_embed == 0).
  const mpz_class& embed_capacity() const { return embed_cap_; }
  const mpz_class& fermat_exponent() const { return q_minus_2_; }

 private:
  FieldParams() = default;

  mpz_class q_;
  mpz_class q_minus_2_;
  unsigned q_exponent_ = 0;
  unsigned n_embed_ = 0;
  size_t bits_ = 0;
  std::vector<mpz_class> fact_embed_;
  mpz_class embed_cap_;
};

// Value in F_Q. Elements remember their field; combining elements from
// different fields throws ParamsMismatchError.
class FieldElement {
 public:
  FieldElement() = default;  // empty; usable only after assignment
  // Requires 0 <= v < Q.
  FieldElement(mpz_class v, FieldParamsPtr params);
  static FieldElement from_uint(uint64_t v, const FieldParamsPtr& params);

  const mpz_class& value() const { return v_; }
  const FieldParamsPtr& params() const { return p_; }
  bool is_zero() const { return v_ == 0; }

  bool operator==(const FieldElement& o) const;

  friend FieldElement operator+(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator-(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator*(const FieldElement& a, const FieldElement& b);
  FieldElement operator-() const;

  // Multiplicative inverse by Fermat: x^(Q-2). Throws DivisionByZeroError
  // on zero.
  FieldElement inverse() const;

 private:
  mpz_class v_;
  FieldParamsPtr p_;
};

// Uniform over [0, Q): whole bytes are drawn, the top byte is masked down to
// bit_length bits, and out-of-range values are rejected.
FieldElement fe_random(const FieldParamsPtr& params, Rng& rng);

// Fixed-width big-endian bytes (byte_width long).
std::vector<uint8_t> to_bytes(const FieldElement& x);
// nullopt if len != byte_width or the value is >= Q.
std::optional<FieldElement> from_bytes(const uint8_t* data, size_t len,
                                       const FieldParamsPtr& params);

// --- Embeddings ------------------------------------------------------------
//
// Bit vectors map little-endian: bit i contributes 2^i. A (permutation,
// syndrome-bits) pair maps to lehmer_rank(sigma) * 2^n + bits, with the
// Lehmer/factoradic rank taken in lexicographic order. Decoding is total on
// the valid range and returns nullopt outside it — an out-of-range element is
// a protocol outcome (the round is rejected), not an error.

// Requires 2^v.size() <= Q, else CapacityError.
FieldElement encode_bitvec(const BitVector& v, const FieldParamsPtr& params);
// nullopt iff x.value() >= 2^n.
std::optional<BitVector> decode_bitvec(const FieldElement& x, size_t n);

struct PermSyndrome {
  Permutation sigma;
  BitVector bits;  // length n (syndromes are zero-padded up to n by callers)
};

// Requires sigma.size() == bits.size() == n and n! * 2^n <= Q.
FieldElement encode_perm_syndrome(const Permutation& sigma,
                                  const BitVector& bits,
                                  const FieldParamsPtr& params);
// nullopt iff x.value() >= n! * 2^n.
std::optional<PermSyndrome> decode_perm_syndrome(const FieldElement& x,
                                                 size_t n);

// Lexicographic Lehmer rank of sigma in [0, n!). Exposed for tests.
mpz_class lehmer_rank(const Permutation& sigma, const FieldParams& params);
Permutation lehmer_unrank(const mpz_class& rank, size_t n,
                          const FieldParams& params);

}  // namespace rzkp::fq

#endif  // RZKP_FQ_HPP_
