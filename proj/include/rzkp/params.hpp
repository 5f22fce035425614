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

#ifndef RZKP_PARAMS_HPP_
#define RZKP_PARAMS_HPP_

#include <optional>
#include <string>

// Security-parameter arithmetic, all in the log2 domain: the interesting
// quantities (n!, success probabilities near 2^-100) have no business in
// fixed-width arithmetic, and every published figure is a log anyway.
// Exact big-rational cross-checks live in the tests, at small n.
namespace rzkp::params {

// log2(n!) via log-gamma.
double log2_factorial(unsigned n);

// The per-round advantage a witness-less prover can add on top of 2/3 by
// attacking the field commitments instead of the challenge. Two shapes of
// the same bound are available; they differ by a constant 2^(1 - log2 9)^(1/4)
// because the derivation's 9/2 factor is usually dropped when quoted.
enum class SoundnessForm {
  kQuoted,      // (n! * 2^(4n) / Q)^(1/4) -- the looser, headline shape
  kDerivation,  // ((2/9) * n! * 2^(4n) / Q)^(1/4)
};

// log2 of the advantage; nullopt when log2_Q <= log2(n!) + 4n, where the
// bound exceeds 1 and says nothing.
std::optional<double> soundness_bound_log2(
    unsigned n, double log2_Q, SoundnessForm form = SoundnessForm::kQuoted);

// Smallest log2(Q) keeping the quoted advantage at or below epsilon:
// log2(n!) + 4n + 4*log2(1/epsilon).
double min_log2_Q(unsigned n, double epsilon);

// log2 of the Chernoff bound on a cheating prover's success over R rounds
// when up to F may go unanswered. Per round the cheater answers with
// probability at most w_star = 2/3 + 2^log2_soundness_gap and its best play
// is to drop exactly the rounds it cannot answer, so it wins when a
// Bin(R, 1 - w_star) count stays at or below F. nullopt when
// F/R >= 1 - w_star (the bound does not apply; the cheater simply wins).
std::optional<double> cheat_prob_log2(unsigned R, unsigned F,
                                      double log2_soundness_gap);

// log2 of the Chernoff bound on an honest run being rejected: more than F
// of R rounds lost, each round lost independently with probability p_loss.
// nullopt when p_loss >= F/R (an honest prover would usually be rejected;
// the parameters are broken, not the bound).
std::optional<double> completeness_error_log2(unsigned R, unsigned F,
                                              double p_loss);

// Quantum attack-cost estimate for syndrome decoding at length n, with the
// code rate and weight that maximize it.
struct SdHardness {
  double bits = 0;  // 0.05869 * n
  unsigned k = 0;   // round(0.4514 * n)
  unsigned w = 0;   // round(0.1268 * n)
};
SdHardness sd_hardness(unsigned n);

// A complete, self-consistent parameter set: the code, the field, the round
// schedule, and what all the bounds come out to.
struct SecurityPlan {
  unsigned n = 0, k = 0, w = 0;
  unsigned q_exponent = 0;  // field is 2^q_exponent - 1
  double log2_Q = 0;
  unsigned rounds = 0;             // R
  unsigned allowed_failures = 0;   // F
  double lambda = 0;               // F / R
  double p_loss = 0;
  double log2_soundness_gap = 0;   // per-round advantage over 2/3
  double log2_cheat_success = 0;   // over the whole session
  double log2_completeness_error = 0;
  double comm_bits_per_round = 0;  // 6 * log2_Q
  double sd_hardness_bits = 0;
};

// Searches for the cheapest plan meeting target_security_bits against an
// expected per-round loss rate. Policy (none of this is canonical, all of
// it is deterministic): smallest n whose decoding hardness reaches the
// target; smallest accepted Mersenne exponent giving the commitments a
// 2^-target advantage budget; R swept upward in steps of 10 and F upward
// from loss_margin * p_loss * R, first (R, F) with both session bounds at
// or below -target wins. Throws ConfigError when no plan exists.
SecurityPlan plan(double target_security_bits, double p_loss,
                  double loss_margin = 10.0);

std::string to_json(const SecurityPlan& p);
std::string to_table(const SecurityPlan& p);

}  // namespace rzkp::params

#endif  // RZKP_PARAMS_HPP_
