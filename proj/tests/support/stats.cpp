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

#include "support/stats.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace rzkp::stats {

double chi_square_quantile_99(double df) {
  if (df <= 0) throw std::invalid_argument("chi_square_quantile_99: df <= 0");
  constexpr double kZ99 = 2.3263478740408408;  // standard normal, p = 0.99
  const double t = 1.0 - 2.0 / (9.0 * df) + kZ99 * std::sqrt(2.0 / (9.0 * df));
  return df * t * t * t;
}

double chi_square_uniform(const std::vector<uint64_t>& counts,
                          uint64_t total) {
  const double expected = static_cast<double>(total) / counts.size();
  double stat = 0;
  for (uint64_t c : counts) {
    const double d = static_cast<double>(c) - expected;
    stat += d * d / expected;
  }
  return stat;
}

double chi_square_two_sample(const std::vector<uint64_t>& a,
                             const std::vector<uint64_t>& b, double* df_out) {
  if (a.size() != b.size())
    throw std::invalid_argument("chi_square_two_sample: cell count mismatch");
  double stat = 0;
  size_t occupied = 0;
  for (size_t i = 0; i < a.size(); ++i) {
    const double o1 = static_cast<double>(a[i]);
    const double o2 = static_cast<double>(b[i]);
    if (o1 + o2 == 0) continue;
    ++occupied;
    const double d = o1 - o2;
    stat += d * d / (o1 + o2);
  }
  if (df_out) *df_out = occupied > 1 ? static_cast<double>(occupied - 1) : 1.0;
  return stat;
}

double log2_mpq(const mpq_class& x) {
  if (x <= 0) throw std::invalid_argument("log2_mpq: nonpositive");
  signed long int exp_num = 0, exp_den = 0;
  const double d_num = mpz_get_d_2exp(&exp_num, x.get_num().get_mpz_t());
  const double d_den = mpz_get_d_2exp(&exp_den, x.get_den().get_mpz_t());
  return (std::log2(d_num) + static_cast<double>(exp_num)) -
         (std::log2(d_den) + static_cast<double>(exp_den));
}

namespace {

// Sum over j in [lo, hi] of C(n, j) p^j (1-p)^(n-j), exactly.
mpq_class binom_mass(unsigned n, unsigned lo, unsigned hi,
                     const mpq_class& p) {
  const mpq_class q = 1 - p;
  mpq_class total = 0;
  mpz_class coeff;
  for (unsigned j = lo; j <= hi && j <= n; ++j) {
    mpz_bin_uiui(coeff.get_mpz_t(), n, j);
    mpq_class term(coeff);
    mpq_class pj, qj;
    mpz_pow_ui(pj.get_num().get_mpz_t(), p.get_num().get_mpz_t(), j);
    mpz_pow_ui(pj.get_den().get_mpz_t(), p.get_den().get_mpz_t(), j);
    pj.canonicalize();
    mpz_pow_ui(qj.get_num().get_mpz_t(), q.get_num().get_mpz_t(), n - j);
    mpz_pow_ui(qj.get_den().get_mpz_t(), q.get_den().get_mpz_t(), n - j);
    qj.canonicalize();
    total += term * pj * qj;
  }
  return total;
}

}  // namespace

double log2_binom_tail_geq(unsigned n, unsigned k, const mpq_class& p) {
  if (k > n) return -std::numeric_limits<double>::infinity();
  const mpq_class t = binom_mass(n, k, n, p);
  if (t == 0) return -std::numeric_limits<double>::infinity();
  return log2_mpq(t);
}

double log2_binom_tail_leq(unsigned n, unsigned k, const mpq_class& p) {
  const mpq_class t = binom_mass(n, 0, k > n ? n : k, p);
  if (t == 0) return -std::numeric_limits<double>::infinity();
  return log2_mpq(t);
}

}  // namespace rzkp::stats
