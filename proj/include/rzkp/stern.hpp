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

#ifndef RZKP_STERN_HPP_
#define RZKP_STERN_HPP_

#include <array>
#include <cstdint>
#include <optional>
#include <utility>

#include "rzkp/bitvec.hpp"
#include "rzkp/coding.hpp"
#include "rzkp/fq.hpp"
#include "rzkp/rng.hpp"

// One round of the code-based identification game, split across two prover
// agents. The provers pre-agree (from shared randomness) on a permutation
// sigma, a mask t, and three field blinds. The round commits to three
// strings:
//
//   #1  (sigma, s') where s' = H*t       -- the masked syndrome
//   #2  sigma(t)                         -- the permuted mask
//   #3  sigma(t ^ e)                     -- the permuted masked witness
//
// each as a timed field commitment y_j = a_j + z_j * b_j against verifier
// challenges b_j, where z_j is the string folded into F_Q. The second
// verifier then asks one of three questions, answered by opening two of the
// commitments:
//
//   challenge 1 -> open #2, #3; check the openings differ in exactly w bits
//   challenge 2 -> open #1, #3; check H*sigma^-1(v3) == s ^ s'
//   challenge 3 -> open #1, #2; check H*sigma^-1(v2) == s'
//
// Any prover able to answer all three questions on one committed round
// either owns a weight-w preimage of s or has double-opened a commitment
// (extract_from_answers below makes that constructive).
namespace rzkp::stern {

// A revealed opening of commitment `index` (1-based): the committed field
// value and its blind.
struct Reveal {
  unsigned index = 0;
  fq::FieldElement z;
  fq::FieldElement a;
};

// Commitment indices opened for a challenge, ascending. Challenge must be
// 1, 2 or 3.
std::pair<unsigned, unsigned> reveal_indices(unsigned challenge);

// Everything both prover agents know about one round before any message is
// exchanged. Derived deterministically from the shared seed, so P1 and P2
// materialize identical copies without communicating.
struct ProverRoundState {
  Permutation sigma;
  BitVector t;       // length n
  BitVector sprime;  // length n: the committed syndrome, zero-padded
  std::array<fq::FieldElement, 3> z;
  std::array<fq::FieldElement, 3> a;
  // 0 for an honest state; otherwise the one challenge this state is built
  // to fail (it answers the other two perfectly).
  unsigned planned_fail = 0;
};

// Honest preprocessing for round `round_index`. Requires a valid witness.
ProverRoundState prover_preprocess(const coding::SdInstance& inst,
                                   const BitVector& witness_e,
                                   const fq::FieldParamsPtr& field,
                                   const Rng& shared, uint64_t round_index);

// A witness-less prover can always prepare answers for two of the three
// challenges; the target picks which one to sacrifice.
enum class CheatTarget : unsigned {
  kFailChallenge1 = 1,  // commit to a linear-algebra preimage, wrong weight
  kFailChallenge2 = 2,  // commit to a random weight-w vector, wrong syndrome
  kFailChallenge3 = 3,  // lie about s' so the weight and sum checks pass
};

// Preprocessing without a witness. The returned state's planned_fail is the
// challenge it cannot answer -- normally the target, except that target 1
// needs some preimage of s to exist and falls back to failing challenge 2
// when there is none.
ProverRoundState cheating_preprocess(const coding::SdInstance& inst,
                                     const fq::FieldParamsPtr& field,
                                     const Rng& shared, uint64_t round_index,
                                     CheatTarget target);

// First prover agent: the three commitments for challenges b.
std::array<fq::FieldElement, 3> p1_respond(
    const ProverRoundState& st, const std::array<fq::FieldElement, 3>& b);

// Second prover agent: openings for the asked challenge, ascending index.
std::array<Reveal, 2> p2_respond(const ProverRoundState& st,
                                 unsigned challenge);

// Why a round was rejected. TimingViolation is produced by the session
// layer, never by verifier_check.
enum class Verdict {
  kOk,
  kBadCommitment,         // an opening does not match its commitment
  kMappingFailure,        // a revealed field value decodes to no string
  kWeightCheckFailed,     // challenge 1 predicate
  kSyndromeCheck2Failed,  // challenge 2 predicate
  kSyndromeCheck3Failed,  // challenge 3 predicate
  kTimingViolation,
};

const char* verdict_token(Verdict v);

struct CheckResult {
  Verdict verdict = Verdict::kOk;
  // Offending commitment index for kBadCommitment / kMappingFailure; 0
  // otherwise.
  unsigned index = 0;
  bool ok() const { return verdict == Verdict::kOk; }
};

// Full verifier-side evaluation of one answered round. Openings are checked
// against their commitments first (ascending index), then decoded (ascending
// index), then the challenge predicate runs. Reveals must carry exactly
// reveal_indices(challenge), in order; anything else is a caller bug.
CheckResult verifier_check(const coding::SdInstance& inst, unsigned challenge,
                           const std::array<fq::FieldElement, 3>& b,
                           const std::array<fq::FieldElement, 3>& y,
                           const std::array<Reveal, 2>& reveals);

// A verifier view of one round: all three commitments plus the two openings
// for the challenge that was asked.
struct SimulatedRound {
  std::array<fq::FieldElement, 3> y;
  std::array<Reveal, 2> reveals;
};

// Samples the honest verifier view for (challenge, b) from the public data
// alone -- no witness. The output distribution is exactly the honest one:
// revealed strings are resampled from their marginal, the unopened
// commitment is uniform (its blind is never seen).
SimulatedRound simulate_round(const coding::SdInstance& inst,
                              const fq::FieldParamsPtr& field,
                              unsigned challenge,
                              const std::array<fq::FieldElement, 3>& b,
                              Rng& rng);

// What full answering power yields: either consistent openings, and then a
// weight-w witness read off the decoded strings, or two different openings
// of one commitment, and then the challenge value b that double opening
// presupposes.
struct ExtractionResult {
  std::optional<BitVector> witness;
  unsigned conflict_index = 0;  // 1..3 when a double opening was found
  std::optional<fq::FieldElement> predicted_b;
};

// answers[c-1] holds the two reveals for challenge c, each of which must
// already pass verifier_check against the same (b, y). Not meaningful on
// unverified data.
ExtractionResult extract_from_answers(
    const coding::SdInstance& inst,
    const std::array<std::array<Reveal, 2>, 3>& answers);

}  // namespace rzkp::stern

#endif  // RZKP_STERN_HPP_
