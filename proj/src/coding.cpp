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

#include "rzkp/coding.hpp"

#include <gmpxx.h>

#include <bit>
#include <stdexcept>

#include "rzkp/errors.hpp"

namespace rzkp::coding {

ParityCheckMatrix::ParityCheckMatrix(size_t n, size_t k) : n_(n), k_(k) {
  if (k >= n) throw std::invalid_argument("ParityCheckMatrix: need k < n");
  rows_.assign(n - k, BitVector(n));
}

ParityCheckMatrix ParityCheckMatrix::random(size_t n, size_t k, Rng& rng) {
  ParityCheckMatrix h(n, k);
  for (auto& r : h.rows_) r = BitVector::random(n, rng);
  return h;
}

BitVector ParityCheckMatrix::mul(const BitVector& v) const {
  if (v.size() != n_) throw Error("ParityCheckMatrix::mul: length mismatch");
  BitVector out(rows_.size());
  for (size_t i = 0; i < rows_.size(); ++i) {
    uint64_t acc = 0;
    const auto& rw = rows_[i].words();
    const auto& vw = v.words();
    for (size_t j = 0; j < rw.size(); ++j) acc ^= rw[j] & vw[j];
    out.set(i, std::popcount(acc) & 1);
  }
  return out;
}

bool check_witness(const SdInstance& inst, const BitVector& e) {
  return e.size() == inst.n && e.weight() == inst.w && inst.h.mul(e) == inst.s;
}

SdInstance gen_yes_instance(size_t n, size_t k, size_t w, Rng& rng,
                            SdWitness* witness_out) {
  if (w > n) throw std::invalid_argument("gen_yes_instance: w > n");
  SdInstance inst;
  inst.n = n;
  inst.k = k;
  inst.w = w;
  inst.h = ParityCheckMatrix::random(n, k, rng);
  BitVector e = BitVector::random_weight(n, w, rng);
  inst.s = inst.h.mul(e);
  if (witness_out) witness_out->e = std::move(e);
  return inst;
}

namespace {

uint64_t combination_count_capped(size_t n, size_t w, uint64_t cap) {
  mpz_class c;
  mpz_bin_uiui(c.get_mpz_t(), n, w);
  if (c > cap) throw SearchLimitError("weight-w support enumeration too large");
  return c.get_ui();
}

}  // namespace

std::optional<BitVector> brute_force_solve(const SdInstance& inst,
                                           uint64_t max_candidates) {
  combination_count_capped(inst.n, inst.w, max_candidates);
  const size_t n = inst.n, w = inst.w, m = inst.n - inst.k;

  if (w == 0) {
    if (inst.s == BitVector(m)) return BitVector(n);
    return std::nullopt;
  }

  // Columns of H as syndrome-length vectors, so a candidate's syndrome is
  // the XOR of its support columns, maintained incrementally along the
  // lexicographic combination walk.
  std::vector<BitVector> col(n, BitVector(m));
  for (size_t r = 0; r < m; ++r)
    for (size_t c = 0; c < n; ++c)
      if (inst.h.row(r).get(c)) col[c].set(r, true);

  std::vector<size_t> idx(w);
  std::vector<BitVector> prefix(w + 1);  // prefix[d] = xor of cols idx[0..d-1]
  prefix[0] = BitVector(m);
  for (size_t d = 0; d < w; ++d) {
    idx[d] = d;
    prefix[d + 1] = prefix[d] ^ col[d];
  }

  for (;;) {
    if (prefix[w] == inst.s) {
      BitVector e(n);
      for (size_t d = 0; d < w; ++d) e.set(idx[d], true);
      return e;
    }
    // Advance to the next combination in lexicographic order.
    size_t d = w;
    while (d > 0 && idx[d - 1] == n - w + (d - 1)) --d;
    if (d == 0) return std::nullopt;
    --d;
    ++idx[d];
    prefix[d + 1] = prefix[d] ^ col[idx[d]];
    for (size_t j = d + 1; j < w; ++j) {
      idx[j] = idx[j - 1] + 1;
      prefix[j + 1] = prefix[j] ^ col[idx[j]];
    }
  }
}

SdInstance gen_no_instance(size_t n, size_t k, size_t w, Rng& rng,
                           uint64_t max_candidates) {
  combination_count_capped(n, w, max_candidates);
  for (;;) {
    SdInstance inst;
    inst.n = n;
    inst.k = k;
    inst.w = w;
    inst.h = ParityCheckMatrix::random(n, k, rng);
    inst.s = BitVector::random(n - k, rng);
    if (!brute_force_solve(inst, max_candidates).has_value()) return inst;
  }
}

std::optional<BitVector> solve_linear(const ParityCheckMatrix& h,
                                      const BitVector& s) {
  if (s.size() != h.row_count())
    throw Error("solve_linear: syndrome length mismatch");
  const size_t m = h.row_count(), n = h.n();

  // Augmented rows [row | s bit], eliminated to row echelon form.
  std::vector<BitVector> rows(m);
  std::vector<bool> rhs(m);
  for (size_t i = 0; i < m; ++i) {
    rows[i] = h.row(i);
    rhs[i] = s.get(i);
  }

  std::vector<size_t> pivot_col;
  size_t r = 0;
  for (size_t c = 0; c < n && r < m; ++c) {
    size_t sel = r;
    while (sel < m && !rows[sel].get(c)) ++sel;
    if (sel == m) continue;
    std::swap(rows[sel], rows[r]);
    std::swap(rhs[sel], rhs[r]);
    for (size_t i = 0; i < m; ++i) {
      if (i != r && rows[i].get(c)) {
        rows[i] = rows[i] ^ rows[r];
        rhs[i] = rhs[i] ^ rhs[r];
      }
    }
    pivot_col.push_back(c);
    ++r;
  }
  for (size_t i = r; i < m; ++i) {
    if (rhs[i]) return std::nullopt;  // 0 == 1: inconsistent
  }

  // Free variables zero; pivot variables read off the reduced system.
  BitVector x(n);
  for (size_t i = 0; i < r; ++i) x.set(pivot_col[i], rhs[i]);
  return x;
}

}  // namespace rzkp::coding
