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
#include <stdexcept>

#include "rzkp/errors.hpp"

namespace rzkp::fq {

namespace {

std::vector<mpz_class> build_factorials(unsigned n) {
  std::vector<mpz_class> f(n + 1);
  f[0] = 1;
  for (unsigned i = 1; i <= n; ++i) f[i] = f[i - 1] * i;
  return f;
}

// Canonicalize x into [0, Q). Mersenne moduli fold instead of dividing:
// x = hi * 2^q + lo == hi + lo (mod 2^q - 1), iterated until x < 2^q,
// then at most one subtraction (only x == Q itself remains non-canonical).
void reduce_in_place(mpz_class& x, const FieldParams& P) {
  if (P.is_mersenne()) {
    const unsigned q = P.q_exponent();
    while (mpz_sizeinbase(x.get_mpz_t(), 2) > q) {
      mpz_class hi;
      mpz_tdiv_q_2exp(hi.get_mpz_t(), x.get_mpz_t(), q);
      mpz_tdiv_r_2exp(x.get_mpz_t(), x.get_mpz_t(), q);
      x += hi;
    }
    if (x == P.modulus()) x = 0;
  } else {
    mpz_mod(x.get_mpz_t(), x.get_mpz_t(), P.modulus().get_mpz_t());
  }
}

void require_same(const FieldElement& a, const FieldElement& b) {
  if (!a.params() || !b.params())
    throw ParamsMismatchError("field op on an empty element");
  if (!a.params()->same(*b.params()))
    throw ParamsMismatchError("field op across different moduli");
}

// Counts and selects over the set of still-unused indices.
class Fenwick {
 public:
  explicit Fenwick(size_t n) : n_(n), t_(n + 1, 0) {
    for (size_t i = 1; i <= n_; ++i) {
      t_[i] += 1;
      const size_t j = i + (i & (~i + 1));
      if (j <= n_) t_[j] += t_[i];
    }
  }

  // Number of live indices in [0, i).
  uint32_t prefix(size_t i) const {
    uint32_t s = 0;
    for (; i > 0; i -= i & (~i + 1)) s += t_[i];
    return s;
  }

  void remove(size_t i) {
    for (size_t j = i + 1; j <= n_; j += j & (~j + 1)) --t_[j];
  }

  // Index of the k-th live element, 1-based k.
  size_t select(uint32_t k) const {
    size_t pos = 0;
    size_t mask = size_t{1} << (63 - __builtin_clzll(n_ | 1));
    for (; mask > 0; mask >>= 1) {
      const size_t next = pos + mask;
      if (next <= n_ && t_[next] < k) {
        pos = next;
        k -= t_[next];
      }
    }
    return pos;  // 0-based index
  }

 private:
  size_t n_;
  std::vector<uint32_t> t_;
};

mpz_class bits_to_mpz(const BitVector& v) {
  mpz_class x;
  if (!v.words().empty())
    mpz_import(x.get_mpz_t(), v.words().size(), -1, sizeof(uint64_t), 0, 0,
               v.words().data());
  return x;
}

BitVector mpz_to_bits(const mpz_class& x, size_t n) {
  BitVector v(n);
  const size_t nwords = (n + 63) / 64;
  std::vector<uint64_t> w(nwords, 0);
  size_t count = 0;
  if (x != 0)
    mpz_export(w.data(), &count, -1, sizeof(uint64_t), 0, 0, x.get_mpz_t());
  for (size_t i = 0; i < n; ++i)
    if ((w[i >> 6] >> (i & 63)) & 1) v.set(i, true);
  return v;
}

}  // namespace

const std::vector<unsigned>& FieldParams::accepted_exponents() {
  static const std::vector<unsigned> kExp = {5,  7,   13,  17,  19,  31,
                                             61, 89,  107, 127, 521, 23209};
  return kExp;
}

FieldParamsPtr FieldParams::mersenne(unsigned q_exponent, unsigned n_embed) {
  const auto& ok = accepted_exponents();
  if (std::find(ok.begin(), ok.end(), q_exponent) == ok.end())
    throw std::invalid_argument("mersenne: exponent not in the accepted list");

  auto p = std::shared_ptr<FieldParams>(new FieldParams());
  p->q_exponent_ = q_exponent;
  p->bits_ = q_exponent;
  p->q_ = (mpz_class(1) << q_exponent) - 1;
  p->q_minus_2_ = p->q_ - 2;
  p->n_embed_ = n_embed;
  if (n_embed > 0) {
    p->fact_embed_ = build_factorials(n_embed);
    p->embed_cap_ = p->fact_embed_[n_embed] << n_embed;
    if (p->embed_cap_ > p->q_)
      throw CapacityError("field cannot embed (permutation, syndrome) pairs "
                          "at this length: need n! * 2^n <= Q");
  }
  return p;
}

FieldParamsPtr FieldParams::from_prime(const mpz_class& prime,
                                       unsigned n_embed) {
  if (prime < 3 || mpz_even_p(prime.get_mpz_t()))
    throw std::invalid_argument("from_prime: modulus must be an odd prime");
  if (mpz_probab_prime_p(prime.get_mpz_t(), 40) == 0)
    throw std::invalid_argument("from_prime: modulus is composite");

  auto p = std::shared_ptr<FieldParams>(new FieldParams());
  p->q_ = prime;
  p->q_minus_2_ = prime - 2;
  p->bits_ = mpz_sizeinbase(prime.get_mpz_t(), 2);
  p->n_embed_ = n_embed;
  if (n_embed > 0) {
    p->fact_embed_ = build_factorials(n_embed);
    p->embed_cap_ = p->fact_embed_[n_embed] << n_embed;
    if (p->embed_cap_ > p->q_)
      throw CapacityError("field cannot embed (permutation, syndrome) pairs "
                          "at this length: need n! * 2^n <= Q");
  }
  return p;
}

FieldElement::FieldElement(mpz_class v, FieldParamsPtr params)
    : v_(std::move(v)), p_(std::move(params)) {
  if (!p_) throw std::invalid_argument("FieldElement: null params");
  if (v_ < 0 || v_ >= p_->modulus())
    throw std::invalid_argument("FieldElement: value out of range");
}

FieldElement FieldElement::from_uint(uint64_t v, const FieldParamsPtr& params) {
  if (!params) throw std::invalid_argument("from_uint: null params");
  mpz_class x;
  mpz_import(x.get_mpz_t(), 1, -1, sizeof(uint64_t), 0, 0, &v);
  reduce_in_place(x, *params);
  return FieldElement(std::move(x), params);
}

bool FieldElement::operator==(const FieldElement& o) const {
  if (!p_ || !o.p_) return !p_ && !o.p_;
  return p_->same(*o.p_) && v_ == o.v_;
}

FieldElement operator+(const FieldElement& a, const FieldElement& b) {
  require_same(a, b);
  mpz_class r = a.v_ + b.v_;
  if (r >= a.p_->modulus()) r -= a.p_->modulus();
  return FieldElement(std::move(r), a.p_);
}

FieldElement operator-(const FieldElement& a, const FieldElement& b) {
  require_same(a, b);
  mpz_class r = a.v_ - b.v_;
  if (r < 0) r += a.p_->modulus();
  return FieldElement(std::move(r), a.p_);
}

FieldElement operator*(const FieldElement& a, const FieldElement& b) {
  require_same(a, b);
  mpz_class r = a.v_ * b.v_;
  reduce_in_place(r, *a.p_);
  return FieldElement(std::move(r), a.p_);
}

FieldElement FieldElement::operator-() const {
  if (!p_) throw ParamsMismatchError("negating an empty element");
  mpz_class r = v_ == 0 ? mpz_class(0) : mpz_class(p_->modulus() - v_);
  return FieldElement(std::move(r), p_);
}

FieldElement FieldElement::inverse() const {
  if (!p_) throw ParamsMismatchError("inverting an empty element");
  if (v_ == 0) throw DivisionByZeroError("inverse of zero");
  mpz_class r;
  mpz_powm(r.get_mpz_t(), v_.get_mpz_t(), p_->fermat_exponent().get_mpz_t(),
           p_->modulus().get_mpz_t());
  return FieldElement(std::move(r), p_);
}

FieldElement fe_random(const FieldParamsPtr& params, Rng& rng) {
  if (!params) throw std::invalid_argument("fe_random: null params");
  const size_t width = params->byte_width();
  const unsigned top = params->bit_length() % 8;
  const uint8_t mask = top ? static_cast<uint8_t>((1u << top) - 1) : 0xFF;
  std::vector<uint8_t> buf(width);
  mpz_class v;
  do {
    rng.fill(buf.data(), width);
    buf[0] &= mask;
    mpz_import(v.get_mpz_t(), width, 1, 1, 0, 0, buf.data());
  } while (v >= params->modulus());
  return FieldElement(std::move(v), params);
}

std::vector<uint8_t> to_bytes(const FieldElement& x) {
  if (!x.params()) throw std::invalid_argument("to_bytes: empty element");
  const size_t width = x.params()->byte_width();
  std::vector<uint8_t> out(width, 0);
  if (x.value() != 0) {
    const size_t need =
        (mpz_sizeinbase(x.value().get_mpz_t(), 2) + 7) / 8;
    size_t count = 0;
    mpz_export(out.data() + (width - need), &count, 1, 1, 0, 0,
               x.value().get_mpz_t());
  }
  return out;
}

std::optional<FieldElement> from_bytes(const uint8_t* data, size_t len,
                                       const FieldParamsPtr& params) {
  if (!params || len != params->byte_width()) return std::nullopt;
  mpz_class v;
  mpz_import(v.get_mpz_t(), len, 1, 1, 0, 0, data);
  if (v >= params->modulus()) return std::nullopt;
  return FieldElement(std::move(v), params);
}

FieldElement encode_bitvec(const BitVector& v, const FieldParamsPtr& params) {
  if (!params) throw std::invalid_argument("encode_bitvec: null params");
  if ((mpz_class(1) << v.size()) > params->modulus())
    throw CapacityError("encode_bitvec: need 2^n <= Q");
  return FieldElement(bits_to_mpz(v), params);
}

std::optional<BitVector> decode_bitvec(const FieldElement& x, size_t n) {
  if (!x.params()) throw std::invalid_argument("decode_bitvec: empty element");
  mpz_class hi;
  mpz_tdiv_q_2exp(hi.get_mpz_t(), x.value().get_mpz_t(), n);
  if (hi != 0) return std::nullopt;
  return mpz_to_bits(x.value(), n);
}

mpz_class lehmer_rank(const Permutation& sigma, const FieldParams& params) {
  const size_t n = sigma.size();
  const std::vector<mpz_class>& cached = params.embed_factorials();
  const std::vector<mpz_class> local =
      cached.size() > n ? std::vector<mpz_class>()
                        : build_factorials(static_cast<unsigned>(n));
  const std::vector<mpz_class>& fact = cached.size() > n ? cached : local;

  Fenwick live(n);
  mpz_class rank = 0;
  for (size_t i = 0; i < n; ++i) {
    const uint32_t below = live.prefix(sigma.image(i));
    mpz_addmul_ui(rank.get_mpz_t(), fact[n - 1 - i].get_mpz_t(), below);
    live.remove(sigma.image(i));
  }
  return rank;
}

Permutation lehmer_unrank(const mpz_class& rank, size_t n,
                          const FieldParams& params) {
  const std::vector<mpz_class>& cached = params.embed_factorials();
  const std::vector<mpz_class> local =
      cached.size() > n ? std::vector<mpz_class>()
                        : build_factorials(static_cast<unsigned>(n));
  const std::vector<mpz_class>& fact = cached.size() > n ? cached : local;
  if (rank < 0 || rank >= fact[n])
    throw std::invalid_argument("lehmer_unrank: rank out of range");

  Fenwick live(n);
  std::vector<uint32_t> img(n);
  mpz_class x = rank;
  for (size_t i = 0; i < n; ++i) {
    mpz_class digit, rem;
    mpz_tdiv_qr(digit.get_mpz_t(), rem.get_mpz_t(), x.get_mpz_t(),
                fact[n - 1 - i].get_mpz_t());
    x = std::move(rem);
    const uint32_t d = static_cast<uint32_t>(digit.get_ui());
    const size_t pos = live.select(d + 1);
    img[i] = static_cast<uint32_t>(pos);
    live.remove(pos);
  }
  return Permutation(std::move(img));
}

FieldElement encode_perm_syndrome(const Permutation& sigma,
                                  const BitVector& bits,
                                  const FieldParamsPtr& params) {
  if (!params) throw std::invalid_argument("encode_perm_syndrome: null params");
  const size_t n = sigma.size();
  if (bits.size() != n)
    throw std::invalid_argument(
        "encode_perm_syndrome: sigma and bits must share length n");

  mpz_class cap;
  if (params->n_embed() == n && params->n_embed() > 0) {
    cap = params->embed_capacity();
  } else {
    cap = build_factorials(static_cast<unsigned>(n))[n] << n;
  }
  if (cap > params->modulus())
    throw CapacityError("encode_perm_syndrome: need n! * 2^n <= Q");

  mpz_class x = lehmer_rank(sigma, *params);
  x <<= n;
  x |= bits_to_mpz(bits);
  return FieldElement(std::move(x), params);
}

std::optional<PermSyndrome> decode_perm_syndrome(const FieldElement& x,
                                                 size_t n) {
  if (!x.params())
    throw std::invalid_argument("decode_perm_syndrome: empty element");
  const FieldParams& P = *x.params();

  mpz_class cap;
  if (P.n_embed() == n && P.n_embed() > 0) {
    cap = P.embed_capacity();
  } else {
    cap = build_factorials(static_cast<unsigned>(n))[n] << n;
  }
  if (x.value() >= cap) return std::nullopt;

  mpz_class low, rank;
  mpz_tdiv_r_2exp(low.get_mpz_t(), x.value().get_mpz_t(), n);
  mpz_tdiv_q_2exp(rank.get_mpz_t(), x.value().get_mpz_t(), n);

  PermSyndrome out;
  out.sigma = lehmer_unrank(rank, n, P);
  out.bits = mpz_to_bits(low, n);
  return out;
}

}  // namespace rzkp::fq
