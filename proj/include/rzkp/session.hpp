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

#ifndef RZKP_SESSION_HPP_
#define RZKP_SESSION_HPP_

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rzkp/coding.hpp"
#include "rzkp/fq.hpp"
#include "rzkp/net.hpp"
#include "rzkp/rng.hpp"
#include "rzkp/simnet.hpp"
#include "rzkp/stern.hpp"
#include "rzkp/wire.hpp"

// Four agents, two sites, one light cone.
//
// V1 and P1 sit at one site, V2 and P2 at another, D kilometers away. Round
// i opens when V1 sends the three commitment challenges b at
//
//   tau1_i = T1 + (i-1) * delta_T,
//
// and V2 sends the opening challenge c at tau2_i = tau1_i + T_shift. With
// theta1 the arrival of P1's commitments at V1 and theta2 the arrival of
// P2's openings at V2, the round's answers are causally independent iff
//
//   theta1 < tau2 + D/c   and   theta2 < tau1 + D/c :
//
// each answer was fixed before news of the other site's challenge could have
// arrived. Rounds that miss the window (or never complete) count as losses;
// the session accepts when every timely round checks out and losses stay
// within the configured allowance.
namespace rzkp::session {

inline constexpr double kSpeedOfLightKmPerS = 299792.458;

// Light travel time for d_km, in nanoseconds.
double d_over_c_ns(double d_km);

// The causality window above. Thetas are -1 when nothing arrived, which
// fails the check. Differences, not absolutes, are compared against D/c so
// the arithmetic stays exact for wall-clock-sized timestamps.
bool check_timing(int64_t theta1_ns, int64_t tau2_ns, int64_t theta2_ns,
                  int64_t tau1_ns, double d_km);

struct RoundSchedule {
  int64_t tau1_ns = 0;
  int64_t tau2_ns = 0;
};

struct ProtocolConfig {
  unsigned n = 0, k = 0, w = 0;
  unsigned q_exponent = 0;
  unsigned rounds = 0;
  double lambda = 0.0;  // tolerated loss fraction
  double d_km = 0.0;
  int64_t delta_t_ns = 0;  // round period
  int64_t t_shift_ns = 0;  // phase-2 challenge offset within the round
  // Session epoch. 0 means V1 picks now + sync_margin_ns at startup and
  // distributes it in SYNC frames; any other value is used as-is by every
  // role (single-process runs).
  int64_t t1_ns = 0;
  int64_t sync_margin_ns = 50'000'000;

  // Throws ConfigError when a field is out of range.
  void validate() const;
  // ceil(lambda * rounds), computed away from the float boundary: a lambda
  // given as F/R must yield exactly F.
  unsigned allowed_failures() const;
  fq::FieldParamsPtr make_field() const;
};

// 400 km apart, 2 ms round period, 0.5 ms challenge offset.
ProtocolConfig preset_scenario1();
// 9000 km apart, 40 ms round period, 2.5 ms challenge offset.
ProtocolConfig preset_scenario2();
// nullopt for an unknown name ("scenario1" / "scenario2").
std::optional<ProtocolConfig> preset_by_name(const std::string& name);

// Absolute send times for round `round` (1-based) given the resolved epoch.
RoundSchedule schedule_round(const ProtocolConfig& cfg, int64_t t1_ns,
                             unsigned round);

// Challenge streams shared by both verifiers (and by offline re-checks).
std::array<fq::FieldElement, 3> derive_b(const Rng& verifier_seed,
                                         const fq::FieldParamsPtr& field,
                                         unsigned round);
unsigned derive_challenge(const Rng& verifier_seed, unsigned round);

// --- Adversaries -----------------------------------------------------------

struct AdversaryConfig {
  enum class Mode {
    kHonest,
    kCheatFixed,     // witness-less, sacrifices the same challenge each round
    kCheatRotating,  // witness-less, sacrifices challenge 1+(i-1)%3 in round i
    kAbortRate,      // honest but silent on a coin flip, shared by P1 and P2
    kSpookyRelay,    // P2 answers only after hearing b from P1 over a channel
  };
  Mode mode = Mode::kHonest;
  unsigned fixed_target = 1;  // kCheatFixed: the sacrificed challenge
  double abort_rate = 0.0;    // kAbortRate: per-round silence probability
};

// Tokens: "honest", "cheat:1", "cheat:2", "cheat:3", "rotate",
// "abort:<rate>", "spooky". Throws ConfigError on anything else.
AdversaryConfig parse_adversary(const std::string& token);
std::string adversary_token(const AdversaryConfig& adv);

// --- Session outcome -------------------------------------------------------

struct RoundRecord {
  uint32_t round = 0;
  std::array<fq::FieldElement, 3> b;
  unsigned challenge = 0;
  int64_t tau1_ns = -1, theta1_ns = -1;
  int64_t tau2_ns = -1, theta2_ns = -1;
  uint8_t y_status = wire::kStatusMissing;
  uint8_t az_status = wire::kStatusMissing;
  std::array<fq::FieldElement, 3> y;        // meaningful iff y_status == Ok
  std::array<stern::Reveal, 2> reveals;     // meaningful iff az_status == Ok
  bool timing_ok = false;
  stern::Verdict verdict = stern::Verdict::kTimingViolation;
  unsigned verdict_index = 0;
};

struct SessionReport {
  ProtocolConfig config;  // t1_ns holds the resolved epoch
  coding::SdInstance instance;
  std::vector<RoundRecord> rounds;
  unsigned f_observed = 0;  // rounds that failed the causality window
  bool accepted = false;
};

// Recomputes one record's timing bit and verdict from its observation
// fields alone (timestamps, statuses, challenge, b, y, reveals). The
// decision ladder, in order: causality window, then frame well-formedness
// (a timely but unreadable frame is cheating evidence, charged to the
// smallest affected commitment), then the full commitment-and-predicate
// check.
void grade_round(const ProtocolConfig& cfg, const coding::SdInstance& inst,
                 RoundRecord& r);

// Grades every round, then recomputes the totals:
//
//   accepted  <=>  every timing-ok round's verdict is Ok
//                  and f_observed <= allowed_failures().
void regrade(SessionReport& rep);

// Deterministic merge of the two verifiers' halves into the final report.
// Both verifiers call this after swapping; the offline report checker
// regrades the saved file and must land on identical output.
SessionReport merge_transcripts(const ProtocolConfig& cfg, int64_t t1_ns,
                                const coding::SdInstance& inst,
                                const Rng& verifier_seed,
                                const std::vector<wire::RoundSeenByV1>& v1,
                                const std::vector<wire::RoundSeenByV2>& v2);

// --- Role loops -----------------------------------------------------------

struct ProverContext {
  ProtocolConfig cfg;
  coding::SdInstance inst;
  std::optional<BitVector> witness;  // required unless the mode cheats
  Rng pair_seed;                     // shared between P1 and P2 only
  AdversaryConfig adversary;
};

struct VerifierContext {
  ProtocolConfig cfg;
  coding::SdInstance inst;
  Rng pair_seed;  // shared between V1 and V2 only
};

// Prover agents: answer whatever arrives until the session window closes.
// `relay` is the P1<->P2 channel, used only by the spooky-relay mode.
void run_p1(const ProverContext& ctx, net::Clock& clock, net::Channel& to_v1,
            net::Channel* relay);
void run_p2(const ProverContext& ctx, net::Clock& clock, net::Channel& to_v2,
            net::Channel* relay);

// Verifier agents: drive the schedule, swap halves, return the merged
// report. Both return byte-identical reports for one session.
SessionReport run_v1(const VerifierContext& ctx, net::Clock& clock,
                     net::Channel& to_p1, net::Channel& to_v2);
SessionReport run_v2(const VerifierContext& ctx, net::Clock& clock,
                     net::Channel& to_p2, net::Channel& to_v1);

// --- Single-process simulation --------------------------------------------

// Symmetric latency profiles for the four connections.
struct SimNetProfile {
  sim::LinkConfig v1p1;  // co-located pair: near-zero latency
  sim::LinkConfig v2p2;
  sim::LinkConfig v1v2;  // cross-site: typically ~D/c
  sim::LinkConfig p1p2;
};

// Runs all four roles on a virtual clock in one process. Deterministic in
// (seeds, config, profile). Returns V1's report; v2_report_out (optional)
// receives V2's, which tests assert equal.
SessionReport run_simulated_session(const ProtocolConfig& cfg,
                                    const coding::SdInstance& inst,
                                    const std::optional<BitVector>& witness,
                                    const AdversaryConfig& adversary,
                                    const Rng& prover_seed,
                                    const Rng& verifier_seed,
                                    const SimNetProfile& profile,
                                    const Rng& net_seed,
                                    SessionReport* v2_report_out = nullptr);

}  // namespace rzkp::session

#endif  // RZKP_SESSION_HPP_
