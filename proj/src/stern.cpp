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

#include "rzkp/stern.hpp"

#include <stdexcept>

#include "rzkp/commit.hpp"
#include "rzkp/errors.hpp"

namespace rzkp::stern {

namespace {

// Blinds are drawn from one derived stream, in commitment-index order.
std::array<fq::FieldElement, 3> draw_blinds(const fq::FieldParamsPtr& field,
                                            const Rng& shared,
                                            uint64_t round_index) {
  Rng blind = shared.derive("blind", round_index);
  std::array<fq::FieldElement, 3> a;
  for (auto& x : a) x = fq::fe_random(field, blind);
  return a;
}

// Encodes the three strings of a fully determined round state.
void encode_state(const fq::FieldParamsPtr& field, const BitVector& masked,
                  const BitVector& shifted, ProverRoundState* st) {
  st->z[0] = fq::encode_perm_syndrome(st->sigma, st->sprime, field);
  st->z[1] = fq::encode_bitvec(st->sigma.apply(masked), field);
  st->z[2] = fq::encode_bitvec(st->sigma.apply(shifted), field);
}

}  // namespace

std::pair<unsigned, unsigned> reveal_indices(unsigned challenge) {
  switch (challenge) {
    case 1:
      return {2, 3};
    case 2:
      return {1, 3};
    case 3:
      return {1, 2};
    default:
      throw std::invalid_argument("challenge must be 1, 2 or 3");
  }
}

ProverRoundState prover_preprocess(const coding::SdInstance& inst,
                                   const BitVector& witness_e,
                                   const fq::FieldParamsPtr& field,
                                   const Rng& shared, uint64_t round_index) {
  if (!coding::check_witness(inst, witness_e))
    throw WitnessError("prover_preprocess: witness does not solve instance");

  ProverRoundState st;
  Rng perm = shared.derive("perm", round_index);
  Rng mask = shared.derive("mask", round_index);
  st.sigma = Permutation::random(inst.n, perm);
  st.t = BitVector::random(inst.n, mask);
  st.sprime = inst.h.mul(st.t).padded(inst.n);
  st.a = draw_blinds(field, shared, round_index);
  encode_state(field, st.t, st.t ^ witness_e, &st);
  return st;
}

ProverRoundState cheating_preprocess(const coding::SdInstance& inst,
                                     const fq::FieldParamsPtr& field,
                                     const Rng& shared, uint64_t round_index,
                                     CheatTarget target) {
  ProverRoundState st;
  Rng perm = shared.derive("perm", round_index);
  Rng mask = shared.derive("mask", round_index);
  Rng cheat = shared.derive("cheat", round_index);
  st.sigma = Permutation::random(inst.n, perm);
  st.t = BitVector::random(inst.n, mask);
  st.a = draw_blinds(field, shared, round_index);

  // The commitment to e is replaced by one to a decoy e'. Challenge 1 only
  // sees |e'|, challenge 2 only sees H*e' (given an honest s'), challenge 3
  // never sees e'; so two of the three predicates can always be arranged.
  BitVector eprime;
  unsigned fail = static_cast<unsigned>(target);
  if (target == CheatTarget::kFailChallenge1) {
    // Right syndrome, whatever weight the linear algebra yields. On an
    // instance whose syndrome has no preimage at all, settle for failing
    // challenge 2 instead.
    auto x = coding::solve_linear(inst.h, inst.s);
    if (x.has_value()) {
      eprime = *x;
    } else {
      fail = 2;
    }
  }
  if (fail != 1) eprime = BitVector::random_weight(inst.n, inst.w, cheat);

  if (fail == 3) {
    // s' is chosen so that challenge 2's sum works out; the honest-s'
    // relation H*t == s' is what breaks.
    st.sprime = (inst.h.mul(st.t) ^ inst.h.mul(eprime) ^ inst.s)
                    .padded(inst.n);
  } else {
    st.sprime = inst.h.mul(st.t).padded(inst.n);
  }
  st.planned_fail = fail;
  encode_state(field, st.t, st.t ^ eprime, &st);
  return st;
}

std::array<fq::FieldElement, 3> p1_respond(
    const ProverRoundState& st, const std::array<fq::FieldElement, 3>& b) {
  std::array<fq::FieldElement, 3> y;
  for (size_t j = 0; j < 3; ++j) y[j] = commit::commit(st.z[j], st.a[j], b[j]);
  return y;
}

std::array<Reveal, 2> p2_respond(const ProverRoundState& st,
                                 unsigned challenge) {
  auto [i1, i2] = reveal_indices(challenge);
  return {Reveal{i1, st.z[i1 - 1], st.a[i1 - 1]},
          Reveal{i2, st.z[i2 - 1], st.a[i2 - 1]}};
}

const char* verdict_token(Verdict v) {
  switch (v) {
    case Verdict::kOk:
      return "ok";
    case Verdict::kBadCommitment:
      return "bad_commitment";
    case Verdict::kMappingFailure:
      return "mapping_failure";
    case Verdict::kWeightCheckFailed:
      return "weight_check_failed";
    case Verdict::kSyndromeCheck2Failed:
      return "syndrome_check_2_failed";
    case Verdict::kSyndromeCheck3Failed:
      return "syndrome_check_3_failed";
    case Verdict::kTimingViolation:
      return "timing_violation";
  }
  return "unknown";
}

CheckResult verifier_check(const coding::SdInstance& inst, unsigned challenge,
                           const std::array<fq::FieldElement, 3>& b,
                           const std::array<fq::FieldElement, 3>& y,
                           const std::array<Reveal, 2>& reveals) {
  auto [i1, i2] = reveal_indices(challenge);
  if (reveals[0].index != i1 || reveals[1].index != i2)
    throw std::invalid_argument("verifier_check: reveal indices mismatch");
  const size_t n = inst.n;

  for (const Reveal& r : reveals) {
    if (!commit::verify_reveal(y[r.index - 1], b[r.index - 1], r.z, r.a))
      return {Verdict::kBadCommitment, r.index};
  }

  // Decode ascending, so a bad #1 is reported before a bad #3.
  std::optional<fq::PermSyndrome> ps;
  std::optional<BitVector> v2, v3;
  for (const Reveal& r : reveals) {
    if (r.index == 1) {
      ps = fq::decode_perm_syndrome(r.z, n);
      if (!ps) return {Verdict::kMappingFailure, 1};
    } else {
      auto v = fq::decode_bitvec(r.z, n);
      if (!v) return {Verdict::kMappingFailure, r.index};
      (r.index == 2 ? v2 : v3) = std::move(v);
    }
  }

  // Predicates compare whole padded-length strings, so garbage smuggled
  // into the padding of a committed syndrome shows up as a plain mismatch.
  switch (challenge) {
    case 1:
      if ((*v2 ^ *v3).weight() != inst.w)
        return {Verdict::kWeightCheckFailed, 0};
      break;
    case 2: {
      BitVector lhs = inst.h.mul(ps->sigma.inverse().apply(*v3)).padded(n);
      if (lhs != (ps->bits ^ inst.s.padded(n)))
        return {Verdict::kSyndromeCheck2Failed, 0};
      break;
    }
    case 3: {
      BitVector lhs = inst.h.mul(ps->sigma.inverse().apply(*v2)).padded(n);
      if (lhs != ps->bits) return {Verdict::kSyndromeCheck3Failed, 0};
      break;
    }
  }
  return {Verdict::kOk, 0};
}

SimulatedRound simulate_round(const coding::SdInstance& inst,
                              const fq::FieldParamsPtr& field,
                              unsigned challenge,
                              const std::array<fq::FieldElement, 3>& b,
                              Rng& rng) {
  const size_t n = inst.n;
  SimulatedRound out;
  auto commit_at = [&](unsigned index, const fq::FieldElement& z) {
    fq::FieldElement a = fq::fe_random(field, rng);
    out.y[index - 1] = commit::commit(z, a, b[index - 1]);
    return Reveal{index, z, a};
  };

  switch (challenge) {
    case 1: {
      // Marginal of (sigma(t), sigma(t^e)): a uniform string and a uniform
      // weight-w displacement of it.
      BitVector v2 = BitVector::random(n, rng);
      BitVector v3 = v2 ^ BitVector::random_weight(n, inst.w, rng);
      out.reveals[0] = commit_at(2, fq::encode_bitvec(v2, field));
      out.reveals[1] = commit_at(3, fq::encode_bitvec(v3, field));
      out.y[0] = fq::fe_random(field, rng);
      break;
    }
    case 2: {
      // Marginal of ((sigma, s'), sigma(t^e)): substituting u = t^e makes
      // u uniform, v3 = sigma(u) and s' = H*u ^ s.
      Permutation sigma = Permutation::random(n, rng);
      BitVector u = BitVector::random(n, rng);
      BitVector sp = (inst.h.mul(u) ^ inst.s).padded(n);
      out.reveals[0] =
          commit_at(1, fq::encode_perm_syndrome(sigma, sp, field));
      out.reveals[1] = commit_at(3, fq::encode_bitvec(sigma.apply(u), field));
      out.y[1] = fq::fe_random(field, rng);
      break;
    }
    case 3: {
      // Marginal of ((sigma, s'), sigma(t)): v2 uniform, s' tied to it by
      // the challenge-3 predicate itself.
      Permutation sigma = Permutation::random(n, rng);
      BitVector v2 = BitVector::random(n, rng);
      BitVector sp = inst.h.mul(sigma.inverse().apply(v2)).padded(n);
      out.reveals[0] =
          commit_at(1, fq::encode_perm_syndrome(sigma, sp, field));
      out.reveals[1] = commit_at(2, fq::encode_bitvec(v2, field));
      out.y[2] = fq::fe_random(field, rng);
      break;
    }
    default:
      throw std::invalid_argument("challenge must be 1, 2 or 3");
  }
  return out;
}

ExtractionResult extract_from_answers(
    const coding::SdInstance& inst,
    const std::array<std::array<Reveal, 2>, 3>& answers) {
  // Each commitment index is opened by exactly two challenges.
  struct Pair {
    const Reveal* first;
    const Reveal* second;
  };
  std::array<Pair, 3> openings{};
  for (unsigned c = 1; c <= 3; ++c) {
    for (const Reveal& r : answers[c - 1]) {
      auto [i1, i2] = reveal_indices(c);
      if (r.index != i1 && r.index != i2)
        throw std::invalid_argument("extract_from_answers: stray index");
      Pair& p = openings[r.index - 1];
      (p.first == nullptr ? p.first : p.second) = &r;
    }
  }

  ExtractionResult res;
  for (unsigned j = 1; j <= 3; ++j) {
    const Pair& p = openings[j - 1];
    if (p.first == nullptr || p.second == nullptr)
      throw std::invalid_argument("extract_from_answers: missing opening");
    if (!(p.first->z == p.second->z)) {
      // Two valid openings of one commitment pin down its challenge.
      res.conflict_index = j;
      res.predicted_b = commit::extract_b(p.first->z, p.first->a,
                                          p.second->z, p.second->a);
      return res;
    }
  }

  // All openings agree, so the three predicates hold on one common string
  // assignment; unmasking yields a weight-w preimage of s.
  auto ps = fq::decode_perm_syndrome(openings[0].first->z, inst.n);
  auto v2 = fq::decode_bitvec(openings[1].first->z, inst.n);
  auto v3 = fq::decode_bitvec(openings[2].first->z, inst.n);
  if (!ps || !v2 || !v3)
    throw Error("extract_from_answers: answers were not verified");
  res.witness = ps->sigma.inverse().apply(*v2 ^ *v3);
  return res;
}

}  // namespace rzkp::stern
