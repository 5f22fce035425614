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

#ifndef RZKP_TESTS_STATS_HPP_
#define RZKP_TESTS_STATS_HPP_

#include <gmpxx.h>

#include <cstdint>
#include <vector>

namespace rzkp::stats {

// 99th-percentile chi-square quantile (Wilson–Hilferty approximation;
// relative error well under 1% for df >= 5).
double chi_square_quantile_99(double df);

// One-sample statistic against uniform expectation over k cells.
double chi_square_uniform(const std::vector<uint64_t>& counts, uint64_t total);

// Two-sample statistic: sum (o1 - o2)^2 / (o1 + o2) over cells with mass,
// approximately chi-square with (#occupied cells - 1) df for equal sample
// sizes. Returns the statistic; *df_out gets the degrees of freedom.
double chi_square_two_sample(const std::vector<uint64_t>& a,
                             const std::vector<uint64_t>& b, double* df_out);

// Exact binomial tails in rational arithmetic. p must be given as a rational.
// Both return the log2 of the probability (or -inf when the tail is empty).
double log2_binom_tail_geq(unsigned n, unsigned k, const mpq_class& p);
double log2_binom_tail_leq(unsigned n, unsigned k, const mpq_class& p);

double log2_mpq(const mpq_class& x);  // x > 0

}  // namespace rzkp::stats

#endif  // RZKP_TESTS_STATS_HPP_
