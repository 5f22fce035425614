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

#include "rzkp/params.hpp"

#include <cmath>
#include <sstream>

#include <json.hpp>

#include "rzkp/errors.hpp"
#include "rzkp/fq.hpp"

namespace rzkp::params {

namespace {

constexpr double kLog2E = 1.4426950408889634;  // 1 / ln 2

// Decoding-hardness and code-shape coefficients for the best known quantum
// information-set decoding attack at the hardest rate/weight point.
constexpr double kHardnessPerBit = 0.05869;
constexpr double kRateCoeff = 0.4514;
constexpr double kWeightCoeff = 0.1268;

}  // namespace

double log2_factorial(unsigned n) { return std::lgamma(n + 1.0) * kLog2E; }

std::optional<double> soundness_bound_log2(unsigned n, double log2_Q,
                                           SoundnessForm form) {
  double numerator = log2_factorial(n) + 4.0 * n;
  if (form == SoundnessForm::kDerivation)
    numerator += 1.0 - std::log2(9.0);  // the 2/9 kept by the derivation
  if (log2_Q < numerator) return std::nullopt;  // bound >= 1: vacuous
  return (numerator - log2_Q) / 4.0;
}

double min_log2_Q(unsigned n, double epsilon) {
  return log2_factorial(n) + 4.0 * n + 4.0 * std::log2(1.0 / epsilon);
}

std::optional<double> cheat_prob_log2(unsigned R, unsigned F,
                                      double log2_soundness_gap) {
  if (R == 0 || F >= R) return std::nullopt;
  double w_star = 2.0 / 3.0 + std::exp2(log2_soundness_gap);
  double lambda_star = 1.0 - w_star;
  double lambda = double(F) / R;
  // lambda >= lambda_star, tested without the rounding of 1 - 2/3:
  // F/R >= 1/3 - 2^gap  <=>  3F >= R(1 - 3 * 2^gap).
  if (3.0 * F >= R * (1.0 - 3.0 * std::exp2(log2_soundness_gap)))
    return std::nullopt;
  double t = (1.0 - lambda) * std::log2(w_star / (1.0 - lambda));
  if (F > 0) t += lambda * std::log2(lambda_star / lambda);
  return R * t;
}

std::optional<double> completeness_error_log2(unsigned R, unsigned F,
                                              double p_loss) {
  if (R == 0 || F >= R) return std::nullopt;
  double lambda = double(F) / R;
  if (p_loss >= lambda) return std::nullopt;
  double t = (1.0 - lambda) * std::log2((1.0 - p_loss) / (1.0 - lambda));
  // p_loss = 0 degenerates cleanly: losing more than F >= 0 rounds is
  // impossible, and lambda * log2(0) carries the bound to -infinity.
  t += lambda * std::log2(p_loss / lambda);
  return R * t;
}

SdHardness sd_hardness(unsigned n) {
  SdHardness h;
  h.bits = kHardnessPerBit * n;
  h.k = static_cast<unsigned>(std::lround(kRateCoeff * n));
  h.w = static_cast<unsigned>(std::lround(kWeightCoeff * n));
  return h;
}

SecurityPlan plan(double target_security_bits, double p_loss,
                  double loss_margin) {
  if (target_security_bits <= 0)
    throw ConfigError("plan: target must be positive");
  if (p_loss < 0 || p_loss >= 1) throw ConfigError("plan: p_loss out of range");

  SecurityPlan out;
  out.p_loss = p_loss;

  // Code length first: the decoding hardness must carry the target on its
  // own, everything else is sized to not weaken it.
  out.n = static_cast<unsigned>(
      std::ceil(target_security_bits / kHardnessPerBit));
  SdHardness h = sd_hardness(out.n);
  out.k = h.k;
  out.w = h.w;
  out.sd_hardness_bits = h.bits;

  // Field next: the smallest accepted Mersenne exponent that keeps the
  // per-round commitment advantage within a 2^-target budget.
  double need = min_log2_Q(out.n, std::exp2(-target_security_bits));
  for (unsigned e : fq::FieldParams::accepted_exponents()) {
    if (e >= need) {
      out.q_exponent = e;
      break;
    }
  }
  if (out.q_exponent == 0)
    throw ConfigError("plan: no accepted field exponent reaches " +
                      std::to_string(need));
  out.log2_Q = out.q_exponent;
  out.log2_soundness_gap = *soundness_bound_log2(out.n, out.log2_Q);
  out.comm_bits_per_round = 6.0 * out.log2_Q;

  // Round schedule last. F must leave the honest prover room above the loss
  // rate (loss_margin controls how much) while staying under the 1/3 of
  // rounds a cheater can always drop.
  double lambda_lo = loss_margin * p_loss;
  if (lambda_lo >= 1.0 / 3.0)
    throw ConfigError("plan: loss rate too close to the 1/3 cheating slack");
  constexpr unsigned kMaxRounds = 1000000;
  for (unsigned R = 10; R <= kMaxRounds; R += 10) {
    unsigned f_lo = static_cast<unsigned>(std::ceil(lambda_lo * R));
    for (unsigned F = f_lo; 3 * F < R; ++F) {
      auto cheat = cheat_prob_log2(R, F, out.log2_soundness_gap);
      auto ce = completeness_error_log2(R, F, p_loss);
      if (!cheat || !ce) continue;
      if (*cheat <= -target_security_bits && *ce <= -target_security_bits) {
        out.rounds = R;
        out.allowed_failures = F;
        out.lambda = double(F) / R;
        out.log2_cheat_success = *cheat;
        out.log2_completeness_error = *ce;
        return out;
      }
    }
  }
  throw ConfigError("plan: no (R, F) pair meets the target");
}

std::string to_json(const SecurityPlan& p) {
  nlohmann::json j{
      {"n", p.n},
      {"k", p.k},
      {"w", p.w},
      {"q_exponent", p.q_exponent},
      {"log2_Q", p.log2_Q},
      {"rounds", p.rounds},
      {"allowed_failures", p.allowed_failures},
      {"lambda", p.lambda},
      {"p_loss", p.p_loss},
      {"log2_soundness_gap", p.log2_soundness_gap},
      {"log2_cheat_success", p.log2_cheat_success},
      {"log2_completeness_error", p.log2_completeness_error},
      {"comm_bits_per_round", p.comm_bits_per_round},
      {"sd_hardness_bits", p.sd_hardness_bits},
  };
  return j.dump(2);
}

std::string to_table(const SecurityPlan& p) {
  std::ostringstream os;
  os << "code                 [n, k, w] = [" << p.n << ", " << p.k << ", "
     << p.w << "]\n"
     << "field                Q = 2^" << p.q_exponent << " - 1\n"
     << "rounds               R = " << p.rounds << ", F = "
     << p.allowed_failures << "  (lambda = " << p.lambda << ")\n"
     << "loss rate            p_loss = " << p.p_loss << "\n"
     << "per-round advantage  2/3 + 2^" << p.log2_soundness_gap << "\n"
     << "cheating success     <= 2^" << p.log2_cheat_success << "\n"
     << "completeness error   <= 2^" << p.log2_completeness_error << "\n"
     << "communication/round  " << p.comm_bits_per_round << " bits\n"
     << "decoding hardness    2^" << p.sd_hardness_bits << "\n";
  return os.str();
}

}  // namespace rzkp::params
