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

#include "rzkp/fq.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <vector>

#include "doctest.h"
#include "rzkp/errors.hpp"
#include "support/bigint_oracle.hpp"
#include "support/stats.hpp"

using namespace rzkp;
using fq::FieldElement;
using fq::FieldParams;
using fq::FieldParamsPtr;

namespace {

FieldElement fe(uint64_t v, const FieldParamsPtr& p) {
  return FieldElement::from_uint(v, p);
}

}  // namespace

TEST_CASE("field construction accepts the vetted exponents only") {
  CHECK_NOTHROW(FieldParams::mersenne(5));
  CHECK_NOTHROW(FieldParams::mersenne(127));
  CHECK_NOTHROW(FieldParams::mersenne(521));
  // 11 gives a composite 2^11 - 1; 607 is prime but not on the list.
  CHECK_THROWS_AS(FieldParams::mersenne(11), std::invalid_argument);
  CHECK_THROWS_AS(FieldParams::mersenne(607), std::invalid_argument);
  CHECK_THROWS_AS(FieldParams::from_prime(mpz_class(15)),
                  std::invalid_argument);
  CHECK_THROWS_AS(FieldParams::from_prime(mpz_class(2)),
                  std::invalid_argument);
  CHECK_NOTHROW(FieldParams::from_prime(mpz_class(31)));

  auto p31 = FieldParams::mersenne(5);
  CHECK(p31->modulus() == 31);
  CHECK(p31->byte_width() == 1);
  auto p13 = FieldParams::mersenne(13);
  CHECK(p13->modulus() == 8191);
  CHECK(p13->byte_width() == 2);
}

TEST_CASE("embedding capacity is enforced at construction") {
  // 3! * 2^3 = 48 <= 127, 4! * 2^4 = 384 > 127.
  CHECK_NOTHROW(FieldParams::mersenne(7, 3));
  CHECK_THROWS_AS(FieldParams::mersenne(7, 4), CapacityError);
  // 16! * 2^16 < 2^61 - 1 < 17! * 2^17.
  CHECK_NOTHROW(FieldParams::mersenne(61, 16));
  CHECK_THROWS_AS(FieldParams::mersenne(61, 17), CapacityError);
}

TEST_CASE("arithmetic matches hand-checked values") {
  auto p31 = FieldParams::mersenne(5);
  auto p127 = FieldParams::mersenne(7);

  CHECK((fe(20, p31) + fe(15, p31)).value() == 4);
  CHECK((fe(6, p31) * fe(7, p31)).value() == 11);
  CHECK((fe(100, p127) * fe(100, p127)).value() == 94);
  CHECK((fe(4, p31) - fe(20, p31)).value() == 15);
  CHECK((-fe(1, p31)).value() == 30);
  CHECK((-fe(0, p31)).value() == 0);
  CHECK(fe(2, p31).inverse().value() == 16);
  CHECK(fe(5, p127).inverse().value() == 51);
  CHECK(FieldElement::from_uint(62, p31).value() == 0);  // 62 = 2 * 31
  CHECK_THROWS_AS(fe(0, p31).inverse(), DivisionByZeroError);
  CHECK_THROWS_AS(fe(1, p31) + fe(1, p127), ParamsMismatchError);
}

TEST_CASE("field axioms hold (exhaustive at Q = 31)") {
  auto p = FieldParams::mersenne(5);
  for (uint64_t a = 0; a < 31; ++a) {
    if (a != 0) {
      auto inv = fe(a, p).inverse();
      CHECK((fe(a, p) * inv).value() == 1);
    }
    for (uint64_t b = 0; b < 31; ++b) {
      CHECK((fe(a, p) + fe(b, p)).value() == (a + b) % 31);
      CHECK((fe(a, p) * fe(b, p)).value() == (a * b) % 31);
      CHECK((fe(a, p) - fe(b, p)) + fe(b, p) == fe(a, p));
      for (uint64_t c = 0; c < 31; c += 7) {
        CHECK((fe(a, p) * (fe(b, p) + fe(c, p))) ==
              (fe(a, p) * fe(b, p) + fe(a, p) * fe(c, p)));
      }
    }
  }
}

TEST_CASE("multiplication agrees with the schoolbook/long-division oracle") {
  Rng rng = Rng::from_string("fq-mul-oracle");
  struct Cfg {
    FieldParamsPtr p;
    int pairs;
  };
  const std::vector<Cfg> cfgs = {
      {FieldParams::mersenne(5), 1000},
      {FieldParams::mersenne(7), 1000},
      {FieldParams::from_prime(mpz_class(101)), 1000},
      {FieldParams::mersenne(521), 1000},
      {FieldParams::mersenne(23209), 1000},
  };
  for (const auto& cfg : cfgs) {
    Rng sub = rng.derive("modulus", cfg.p->bit_length());
    int bad = 0;
    for (int i = 0; i < cfg.pairs; ++i) {
      FieldElement a = fq::fe_random(cfg.p, sub);
      FieldElement b = fq::fe_random(cfg.p, sub);
      const mpz_class expect =
          oracle::mulmod(a.value(), b.value(), cfg.p->modulus());
      if ((a * b).value() != expect) ++bad;
    }
    CHECK(bad == 0);
  }
}

TEST_CASE("Mersenne folding: powers of two wrap to one") {
  auto p = FieldParams::mersenne(23209);
  const unsigned k = 12345;
  FieldElement a(mpz_class(1) << k, p);
  FieldElement b(mpz_class(1) << (23209 - k), p);
  CHECK((a * b).value() == 1);
  // (Q - 1)^2 == 1 since Q - 1 == -1.
  FieldElement m1(p->modulus() - 1, p);
  CHECK((m1 * m1).value() == 1);
}

TEST_CASE("fe_random is in range, deterministic, and uniform enough") {
  auto p31 = FieldParams::mersenne(5);

  Rng r1 = Rng::from_string("fe-random-seed");
  Rng r2 = Rng::from_string("fe-random-seed");
  for (int i = 0; i < 64; ++i)
    CHECK(fq::fe_random(p31, r1) == fq::fe_random(p31, r2));

  Rng rng = Rng::from_string("fe-random-range");
  std::vector<uint64_t> counts(31, 0);
  constexpr int kDraws = 100000;
  for (int i = 0; i < kDraws; ++i) {
    const auto x = fq::fe_random(p31, rng);
    REQUIRE(x.value() >= 0);
    REQUIRE(x.value() < 31);
    counts[x.value().get_ui()]++;
  }
  const double stat = stats::chi_square_uniform(counts, kDraws);
  CHECK(stat < stats::chi_square_quantile_99(30));

  auto p521 = FieldParams::mersenne(521);
  for (int i = 0; i < 2000; ++i) {
    CHECK(fq::fe_random(p521, rng).value() < p521->modulus());
  }
}

TEST_CASE("field element serialization is fixed-width big-endian") {
  auto p13 = FieldParams::mersenne(13);
  CHECK(p13->byte_width() == 2);
  auto bytes = fq::to_bytes(fe(0x1234 % 8191, p13));
  REQUIRE(bytes.size() == 2);
  CHECK(bytes[0] == 0x12);
  CHECK(bytes[1] == 0x34);

  // Round-trip everything at Q = 31; reject Q and above.
  auto p31 = FieldParams::mersenne(5);
  for (uint64_t v = 0; v < 31; ++v) {
    auto b = fq::to_bytes(fe(v, p31));
    REQUIRE(b.size() == 1);
    auto back = fq::from_bytes(b.data(), b.size(), p31);
    REQUIRE(back.has_value());
    CHECK(back->value() == v);
  }
  const uint8_t q_byte = 31;
  CHECK_FALSE(fq::from_bytes(&q_byte, 1, p31).has_value());
  const uint8_t big = 0xFF;
  CHECK_FALSE(fq::from_bytes(&big, 1, p31).has_value());
  const uint8_t two_bytes[2] = {0, 1};
  CHECK_FALSE(fq::from_bytes(two_bytes, 2, p31).has_value());

  auto p521 = FieldParams::mersenne(521);
  CHECK(p521->byte_width() == 66);
  FieldElement top(mpz_class(1) << 520, p521);
  auto tb = fq::to_bytes(top);
  REQUIRE(tb.size() == 66);
  CHECK(tb[0] == 0x01);
  CHECK(std::all_of(tb.begin() + 1, tb.end(), [](uint8_t x) { return !x; }));

  auto p23209 = FieldParams::mersenne(23209);
  CHECK(p23209->byte_width() == 2902);

  Rng rng = Rng::from_string("fe-serial");
  for (int i = 0; i < 50; ++i) {
    auto x = fq::fe_random(p521, rng);
    auto b = fq::to_bytes(x);
    auto back = fq::from_bytes(b.data(), b.size(), p521);
    REQUIRE(back.has_value());
    CHECK(*back == x);
  }
}

TEST_CASE("bit-vector embedding is little-endian and range-checked") {
  auto p127 = FieldParams::mersenne(7);
  BitVector v(5);
  v.set(0, true);
  v.set(2, true);
  v.set(3, true);  // (1,0,1,1,0) -> 1 + 4 + 8
  auto x = fq::encode_bitvec(v, p127);
  CHECK(x.value() == 13);
  auto back = fq::decode_bitvec(x, 5);
  REQUIRE(back.has_value());
  CHECK(*back == v);

  // 2^5 = 32 is out of range for length 5; 31 decodes to all-ones.
  CHECK_FALSE(fq::decode_bitvec(fe(32, p127), 5).has_value());
  auto ones = fq::decode_bitvec(fe(31, p127), 5);
  REQUIRE(ones.has_value());
  CHECK(ones->weight() == 5);

  // Q = 31 cannot hold length-5 vectors (needs 2^5 <= Q).
  auto p31 = FieldParams::mersenne(5);
  CHECK_THROWS_AS(fq::encode_bitvec(v, p31), CapacityError);

  // Random round-trips at length 16.
  auto p61 = FieldParams::mersenne(61, 16);
  Rng rng = Rng::from_string("bitvec-roundtrip");
  for (int i = 0; i < 500; ++i) {
    BitVector r = BitVector::random(16, rng);
    auto e = fq::encode_bitvec(r, p61);
    auto d = fq::decode_bitvec(e, 16);
    REQUIRE(d.has_value());
    CHECK(*d == r);
  }
}

TEST_CASE("permutation-syndrome embedding: exhaustive at n = 3") {
  auto p127 = FieldParams::mersenne(7, 3);

  // Independent enumeration oracle: lexicographic order of images via
  // std::next_permutation; expected index = position * 2^3 + bits.
  std::vector<uint32_t> base = {0, 1, 2};
  std::map<unsigned long, bool> seen;
  unsigned lexpos = 0;
  do {
    for (uint64_t bits = 0; bits < 8; ++bits) {
      Permutation sigma{std::vector<uint32_t>(base)};
      BitVector b(3);
      for (int i = 0; i < 3; ++i) b.set(i, (bits >> i) & 1);
      auto x = fq::encode_perm_syndrome(sigma, b, p127);
      CHECK(x.value() == lexpos * 8 + bits);
      CHECK_FALSE(seen.count(x.value().get_ui()));
      seen[x.value().get_ui()] = true;
      auto back = fq::decode_perm_syndrome(x, 3);
      REQUIRE(back.has_value());
      CHECK(back->sigma == sigma);
      CHECK(back->bits == b);
    }
    ++lexpos;
  } while (std::next_permutation(base.begin(), base.end()));
  CHECK(seen.size() == 48);

  // 48 == 3! * 2^3 is the first out-of-range value.
  CHECK_FALSE(fq::decode_perm_syndrome(fe(48, p127), 3).has_value());

  // (identity, all-zero bits) encodes to zero.
  auto zero =
      fq::encode_perm_syndrome(Permutation::identity(3), BitVector(3), p127);
  CHECK(zero.value() == 0);
}

TEST_CASE("Lehmer rank matches lexicographic enumeration at n = 4") {
  auto p61 = FieldParams::mersenne(61, 4);
  std::vector<uint32_t> base = {0, 1, 2, 3};
  unsigned long expect = 0;
  do {
    Permutation sigma{std::vector<uint32_t>(base)};
    CHECK(fq::lehmer_rank(sigma, *p61) == expect);
    CHECK(fq::lehmer_unrank(mpz_class(expect), 4, *p61) == sigma);
    ++expect;
  } while (std::next_permutation(base.begin(), base.end()));
  CHECK(expect == 24);
}

TEST_CASE("permutation-syndrome embedding round-trips at n = 16") {
  auto p61 = FieldParams::mersenne(61, 16);
  Rng rng = Rng::from_string("perm-syndrome-roundtrip");
  for (int i = 0; i < 200; ++i) {
    Permutation sigma = Permutation::random(16, rng);
    BitVector bits = BitVector::random(16, rng);
    auto x = fq::encode_perm_syndrome(sigma, bits, p61);
    CHECK(x.value() < p61->embed_capacity());
    auto back = fq::decode_perm_syndrome(x, 16);
    REQUIRE(back.has_value());
    CHECK(back->sigma == sigma);
    CHECK(back->bits == bits);
  }

  // Capacity violations throw; out-of-range decodes are values.
  auto p31 = FieldParams::mersenne(5);
  CHECK_THROWS_AS(fq::encode_perm_syndrome(Permutation::identity(3),
                                           BitVector(3), p31),
                  CapacityError);
}

TEST_CASE("permutation-syndrome embedding at protocol scale") {
  // n = 1704 inside Q = 2^23209 - 1: encode/decode a random pair once.
  auto p = FieldParams::mersenne(23209, 1704);
  Rng rng = Rng::from_string("perm-syndrome-fullscale");
  Permutation sigma = Permutation::random(1704, rng);
  BitVector bits = BitVector::random(1704, rng);
  auto x = fq::encode_perm_syndrome(sigma, bits, p);
  CHECK(x.value() < p->embed_capacity());
  auto back = fq::decode_perm_syndrome(x, 1704);
  REQUIRE(back.has_value());
  CHECK(back->sigma == sigma);
  CHECK(back->bits == bits);
}
