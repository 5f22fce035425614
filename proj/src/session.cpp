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

#include "rzkp/session.hpp"

#include <cmath>
#include <exception>
#include <set>
#include <thread>
#include <utility>

#include "rzkp/errors.hpp"

namespace rzkp::session {

namespace {

// How long a role keeps listening past the nominal end of the schedule, and
// how long the verifiers wait for each other's transcript half. Generous on
// purpose: timeouts here mean a dead peer, not a timing violation.
constexpr int64_t kSyncWaitNs = 120'000'000'000;
constexpr int64_t kMergeWaitNs = 120'000'000'000;
constexpr unsigned kGraceRounds = 2;

int64_t session_end_ns(const ProtocolConfig& cfg, int64_t t1_ns) {
  return t1_ns +
         static_cast<int64_t>(cfg.rounds + kGraceRounds) * cfg.delta_t_ns;
}

}  // namespace

double d_over_c_ns(double d_km) {
  return d_km * 1e9 / kSpeedOfLightKmPerS;
}

bool check_timing(int64_t theta1_ns, int64_t tau2_ns, int64_t theta2_ns,
                  int64_t tau1_ns, double d_km) {
  if (theta1_ns < 0 || theta2_ns < 0) return false;
  const double limit_ns = d_over_c_ns(d_km);
  return static_cast<double>(theta1_ns - tau2_ns) < limit_ns &&
         static_cast<double>(theta2_ns - tau1_ns) < limit_ns;
}

void ProtocolConfig::validate() const {
  if (n == 0 || k == 0 || k >= n || w == 0 || w > n) {
    throw ConfigError("config: need 0 < k < n and 0 < w <= n");
  }
  if (rounds == 0) throw ConfigError("config: rounds must be positive");
  if (!(lambda >= 0.0 && lambda < 1.0)) {
    throw ConfigError("config: lambda must lie in [0, 1)");
  }
  if (!(d_km > 0.0)) throw ConfigError("config: distance must be positive");
  if (t_shift_ns < 0) throw ConfigError("config: T_shift must be >= 0");
  if (delta_t_ns <= t_shift_ns) {
    throw ConfigError("config: delta_T must exceed T_shift");
  }
  if (t1_ns < 0) throw ConfigError("config: session epoch must be >= 0");
}

unsigned ProtocolConfig::allowed_failures() const {
  // lambda arrives as a double; lambda * rounds for lambda = F/R can land a
  // few ulps above F, which ceil would push to F+1. Nudge below first.
  return static_cast<unsigned>(std::ceil(lambda * rounds - 1e-9));
}

fq::FieldParamsPtr ProtocolConfig::make_field() const {
  return fq::FieldParams::mersenne(q_exponent, n);
}

ProtocolConfig preset_scenario1() {
  ProtocolConfig cfg;
  cfg.d_km = 400.0;
  cfg.delta_t_ns = 2'000'000;
  cfg.t_shift_ns = 500'000;
  return cfg;
}

ProtocolConfig preset_scenario2() {
  ProtocolConfig cfg;
  cfg.d_km = 9000.0;
  cfg.delta_t_ns = 40'000'000;
  cfg.t_shift_ns = 2'500'000;
  return cfg;
}

std::optional<ProtocolConfig> preset_by_name(const std::string& name) {
  if (name == "scenario1") return preset_scenario1();
  if (name == "scenario2") return preset_scenario2();
  return std::nullopt;
}

RoundSchedule schedule_round(const ProtocolConfig& cfg, int64_t t1_ns,
                             unsigned round) {
  if (round < 1 || round > cfg.rounds) {
    throw ConfigError("schedule: round index out of range");
  }
  RoundSchedule s;
  s.tau1_ns = t1_ns + static_cast<int64_t>(round - 1) * cfg.delta_t_ns;
  s.tau2_ns = s.tau1_ns + cfg.t_shift_ns;
  return s;
}

std::array<fq::FieldElement, 3> derive_b(const Rng& verifier_seed,
                                         const fq::FieldParamsPtr& field,
                                         unsigned round) {
  Rng r = verifier_seed.derive("challenge-b", round);
  std::array<fq::FieldElement, 3> b{fq::fe_random(field, r),
                                    fq::fe_random(field, r),
                                    fq::fe_random(field, r)};
  return b;
}

unsigned derive_challenge(const Rng& verifier_seed, unsigned round) {
  Rng r = verifier_seed.derive("challenge-c", round);
  return static_cast<unsigned>(r.below(3)) + 1;
}

AdversaryConfig parse_adversary(const std::string& token) {
  AdversaryConfig adv;
  if (token.empty() || token == "honest") return adv;
  if (token == "rotate" || token == "cheat_rotating") {
    adv.mode = AdversaryConfig::Mode::kCheatRotating;
    return adv;
  }
  if (token == "spooky" || token == "spooky_relay") {
    adv.mode = AdversaryConfig::Mode::kSpookyRelay;
    return adv;
  }
  if (token.rfind("cheat:", 0) == 0 || token.rfind("cheat_fixed:", 0) == 0) {
    adv.mode = AdversaryConfig::Mode::kCheatFixed;
    const std::string num = token.substr(token.find(':') + 1);
    if (num != "1" && num != "2" && num != "3") {
      throw ConfigError("adversary: cheat target must be 1, 2, or 3");
    }
    adv.fixed_target = static_cast<unsigned>(num[0] - '0');
    return adv;
  }
  if (token.rfind("abort:", 0) == 0 || token.rfind("abort_rate:", 0) == 0) {
    adv.mode = AdversaryConfig::Mode::kAbortRate;
    const size_t body = token.find(':') + 1;
    size_t used = 0;
    double rate = -1.0;
    try {
      rate = std::stod(token.substr(body), &used);
    } catch (const std::exception&) {
      throw ConfigError("adversary: bad abort rate");
    }
    if (used != token.size() - body || !(rate >= 0.0 && rate <= 1.0)) {
      throw ConfigError("adversary: abort rate must lie in [0, 1]");
    }
    adv.abort_rate = rate;
    return adv;
  }
  throw ConfigError("adversary: unknown mode token '" + token + "'");
}

std::string adversary_token(const AdversaryConfig& adv) {
  switch (adv.mode) {
    case AdversaryConfig::Mode::kHonest:
      return "honest";
    case AdversaryConfig::Mode::kCheatFixed:
      return "cheat:" + std::to_string(adv.fixed_target);
    case AdversaryConfig::Mode::kCheatRotating:
      return "rotate";
    case AdversaryConfig::Mode::kAbortRate:
      return "abort:" + std::to_string(adv.abort_rate);
    case AdversaryConfig::Mode::kSpookyRelay:
      return "spooky";
  }
  throw Error("adversary: unreachable mode");
}

// --- Shared prover-side material -------------------------------------------

namespace {

struct ProverPlan {
  std::vector<stern::ProverRoundState> states;
  std::vector<bool> abort;  // kAbortRate: rounds answered with silence
};

ProverPlan build_prover_plan(const ProverContext& ctx,
                             const fq::FieldParamsPtr& field) {
  using Mode = AdversaryConfig::Mode;
  const Mode mode = ctx.adversary.mode;
  const bool needs_witness = mode == Mode::kHonest ||
                             mode == Mode::kAbortRate ||
                             mode == Mode::kSpookyRelay;
  if (needs_witness && !ctx.witness) {
    throw ConfigError("prover: this adversary mode requires a witness");
  }
  ProverPlan plan;
  plan.states.reserve(ctx.cfg.rounds);
  plan.abort.assign(ctx.cfg.rounds + 1, false);
  for (unsigned i = 1; i <= ctx.cfg.rounds; ++i) {
    switch (mode) {
      case Mode::kHonest:
      case Mode::kAbortRate:
      case Mode::kSpookyRelay:
        plan.states.push_back(stern::prover_preprocess(
            ctx.inst, *ctx.witness, field, ctx.pair_seed, i));
        break;
      case Mode::kCheatFixed:
        plan.states.push_back(stern::cheating_preprocess(
            ctx.inst, field, ctx.pair_seed, i,
            static_cast<stern::CheatTarget>(ctx.adversary.fixed_target)));
        break;
      case Mode::kCheatRotating:
        plan.states.push_back(stern::cheating_preprocess(
            ctx.inst, field, ctx.pair_seed, i,
            static_cast<stern::CheatTarget>(1 + (i - 1) % 3)));
        break;
    }
    if (mode == Mode::kAbortRate) {
      Rng r = ctx.pair_seed.derive("abort", i);
      plan.abort[i] = r.next_double() < ctx.adversary.abort_rate;
    }
  }
  return plan;
}

// Resolve the session epoch: from the config if pinned, otherwise from the
// first SYNC frame on `ch`. Returns nullopt if the peer never says hello.
std::optional<int64_t> resolve_t1(const ProtocolConfig& cfg, net::Clock& clock,
                                  net::Channel& ch) {
  if (cfg.t1_ns != 0) return cfg.t1_ns;
  const int64_t deadline = clock.now_ns() + kSyncWaitNs;
  while (auto f = ch.recv(deadline)) {
    if (f->type != wire::Type::kSync) continue;
    auto s = wire::unpack_sync(f->payload);
    if (s && s->t1_ns > 0) return s->t1_ns;
  }
  return std::nullopt;
}

}  // namespace

void run_p1(const ProverContext& ctx, net::Clock& clock, net::Channel& to_v1,
            net::Channel* relay) {
  ctx.cfg.validate();
  const auto field = ctx.cfg.make_field();
  const ProverPlan plan = build_prover_plan(ctx, field);
  const bool spooky = ctx.adversary.mode == AdversaryConfig::Mode::kSpookyRelay;
  if (spooky && relay == nullptr) {
    throw ConfigError("prover: spooky mode needs the P1<->P2 channel");
  }

  const auto t1 = resolve_t1(ctx.cfg, clock, to_v1);
  if (!t1) return;  // nobody started the session
  const int64_t end = session_end_ns(ctx.cfg, *t1);

  while (auto f = to_v1.recv(end)) {
    if (f->type != wire::Type::kPhase1Challenge) continue;
    if (f->round < 1 || f->round > ctx.cfg.rounds) continue;
    if (plan.abort[f->round]) continue;
    auto b = wire::unpack_elements(f->payload, field);
    if (!b) continue;  // a challenge we cannot read is a challenge unheard
    auto y = stern::p1_respond(plan.states[f->round - 1], *b);
    to_v1.send({wire::Type::kPhase1Response, f->round,
                wire::pack_elements(y)});
    if (spooky) {
      // Leak the phase-1 challenge toward P2. Arrives one light-cone later.
      relay->send({wire::Type::kPhase1Challenge, f->round, f->payload});
    }
  }
}

void run_p2(const ProverContext& ctx, net::Clock& clock, net::Channel& to_v2,
            net::Channel* relay) {
  ctx.cfg.validate();
  const auto field = ctx.cfg.make_field();
  const ProverPlan plan = build_prover_plan(ctx, field);
  const bool spooky = ctx.adversary.mode == AdversaryConfig::Mode::kSpookyRelay;
  if (spooky && relay == nullptr) {
    throw ConfigError("prover: spooky mode needs the P1<->P2 channel");
  }

  const auto t1 = resolve_t1(ctx.cfg, clock, to_v2);
  if (!t1) return;
  const int64_t end = session_end_ns(ctx.cfg, *t1);

  std::set<uint32_t> relayed;  // rounds whose b already leaked through
  while (auto f = to_v2.recv(end)) {
    if (f->type != wire::Type::kPhase2Challenge) continue;
    if (f->round < 1 || f->round > ctx.cfg.rounds) continue;
    if (plan.abort[f->round]) continue;
    auto c = wire::unpack_phase2_challenge(f->payload);
    if (!c) continue;
    if (spooky) {
      // The whole point of this adversary: refuse to answer until b is
      // known here too. The wait shows up as theta2 >= tau1 + relay delay.
      while (relayed.find(f->round) == relayed.end()) {
        auto rf = relay->recv(end);
        if (!rf) break;
        if (rf->type == wire::Type::kPhase1Challenge) relayed.insert(rf->round);
      }
      if (relayed.find(f->round) == relayed.end()) continue;
    }
    auto reveals = stern::p2_respond(plan.states[f->round - 1], *c);
    to_v2.send({wire::Type::kPhase2Response, f->round,
                wire::pack_reveals(reveals)});
  }
}

// --- Verifier loops ---------------------------------------------------------

namespace {

// One verifier's measurement loop. Sends `make_challenge(i)` at its
// scheduled instant, stamps the send, then waits for the matching response
// until the round window closes.
struct Observation {
  int64_t tau_ns = -1;
  int64_t theta_ns = -1;
  uint8_t status = wire::kStatusMissing;
  std::vector<uint8_t> payload;
};

Observation observe_round(net::Clock& clock, net::Channel& ch,
                          wire::Type challenge_type, wire::Type response_type,
                          uint32_t round, int64_t send_at_ns,
                          int64_t deadline_ns,
                          const std::vector<uint8_t>& challenge_payload) {
  Observation obs;
  clock.sleep_until(send_at_ns);
  ch.send({challenge_type, round, challenge_payload});
  obs.tau_ns = clock.now_ns();
  while (auto f = ch.recv(deadline_ns)) {
    if (f->type != response_type || f->round != round) continue;  // stale
    obs.theta_ns = clock.now_ns();
    obs.status = wire::kStatusOk;  // provisional; caller parses the payload
    obs.payload = std::move(f->payload);
    break;
  }
  return obs;
}

}  // namespace

SessionReport run_v1(const VerifierContext& ctx, net::Clock& clock,
                     net::Channel& to_p1, net::Channel& to_v2) {
  ctx.cfg.validate();
  const auto field = ctx.cfg.make_field();

  int64_t t1 = ctx.cfg.t1_ns;
  if (t1 == 0) t1 = clock.now_ns() + ctx.cfg.sync_margin_ns;
  // Distribute the epoch. P1 hears it directly; V2 passes it on to P2.
  const wire::Sync sync{3, t1};
  to_p1.send({wire::Type::kSync, 0, wire::pack_sync(sync)});
  to_v2.send({wire::Type::kSync, 0, wire::pack_sync(sync)});

  std::vector<wire::RoundSeenByV1> seen(ctx.cfg.rounds);
  for (unsigned i = 1; i <= ctx.cfg.rounds; ++i) {
    const auto sched = schedule_round(ctx.cfg, t1, i);
    const auto b = derive_b(ctx.pair_seed, field, i);
    Observation obs = observe_round(
        clock, to_p1, wire::Type::kPhase1Challenge,
        wire::Type::kPhase1Response, i, sched.tau1_ns,
        sched.tau1_ns + ctx.cfg.delta_t_ns, wire::pack_elements(b));
    auto& e = seen[i - 1];
    e.round = i;
    e.tau1_ns = obs.tau_ns;
    e.theta1_ns = obs.theta_ns;
    if (obs.status == wire::kStatusOk) {
      auto y = wire::unpack_elements(obs.payload, field);
      if (y) {
        e.y_status = wire::kStatusOk;
        e.y = *y;
      } else {
        e.y_status = wire::kStatusMalformed;
      }
    }
  }

  // Swap transcript halves: V1 talks first, V2 answers.
  to_v2.send({wire::Type::kReport, 0, wire::pack_report_v1(seen)});
  const int64_t merge_deadline = clock.now_ns() + kMergeWaitNs;
  std::optional<std::vector<wire::RoundSeenByV2>> other;
  while (auto f = to_v2.recv(merge_deadline)) {
    if (f->type != wire::Type::kReport) continue;
    other = wire::unpack_report_v2(f->payload, field);
    break;
  }
  if (!other) throw NetError("v1: never received the other verifier's half");
  return merge_transcripts(ctx.cfg, t1, ctx.inst, ctx.pair_seed, seen, *other);
}

SessionReport run_v2(const VerifierContext& ctx, net::Clock& clock,
                     net::Channel& to_p2, net::Channel& to_v1) {
  ctx.cfg.validate();
  const auto field = ctx.cfg.make_field();

  int64_t t1 = ctx.cfg.t1_ns;
  if (t1 == 0) {
    const auto got = resolve_t1(ctx.cfg, clock, to_v1);
    if (!got) throw NetError("v2: no session epoch from v1");
    t1 = *got;
    // Pass it on so P2 can time its exit too.
    to_p2.send({wire::Type::kSync, 0, wire::pack_sync({4, t1})});
  }

  std::vector<wire::RoundSeenByV2> seen(ctx.cfg.rounds);
  for (unsigned i = 1; i <= ctx.cfg.rounds; ++i) {
    const auto sched = schedule_round(ctx.cfg, t1, i);
    const unsigned c = derive_challenge(ctx.pair_seed, i);
    Observation obs = observe_round(
        clock, to_p2, wire::Type::kPhase2Challenge,
        wire::Type::kPhase2Response, i, sched.tau2_ns,
        sched.tau2_ns + ctx.cfg.delta_t_ns, wire::pack_phase2_challenge(c));
    auto& e = seen[i - 1];
    e.round = i;
    e.challenge = static_cast<uint8_t>(c);
    e.tau2_ns = obs.tau_ns;
    e.theta2_ns = obs.theta_ns;
    if (obs.status == wire::kStatusOk) {
      auto r = wire::unpack_reveals(obs.payload, field);
      const auto want = stern::reveal_indices(c);
      if (r && (*r)[0].index == want.first && (*r)[1].index == want.second) {
        e.az_status = wire::kStatusOk;
        e.reveals = *r;
      } else {
        e.az_status = wire::kStatusMalformed;
      }
    }
  }

  // V1 talks first.
  const int64_t merge_deadline = clock.now_ns() + kMergeWaitNs;
  std::optional<std::vector<wire::RoundSeenByV1>> other;
  while (auto f = to_v1.recv(merge_deadline)) {
    if (f->type != wire::Type::kReport) continue;
    other = wire::unpack_report_v1(f->payload, field);
    break;
  }
  if (!other) throw NetError("v2: never received the other verifier's half");
  to_v1.send({wire::Type::kReport, 0, wire::pack_report_v2(seen)});
  return merge_transcripts(ctx.cfg, t1, ctx.inst, ctx.pair_seed, *other, seen);
}

void grade_round(const ProtocolConfig& cfg, const coding::SdInstance& inst,
                 RoundRecord& r) {
  r.timing_ok = check_timing(r.theta1_ns, r.tau2_ns, r.theta2_ns, r.tau1_ns,
                             cfg.d_km);
  if (!r.timing_ok) {
    r.verdict = stern::Verdict::kTimingViolation;
    r.verdict_index = 0;
    return;
  }
  if (r.y_status != wire::kStatusOk) {
    // Both frames were timely, so a malformed commitment frame is cheating
    // evidence, not loss.
    r.verdict = stern::Verdict::kBadCommitment;
    r.verdict_index = 1;
    return;
  }
  if (r.az_status != wire::kStatusOk) {
    r.verdict = stern::Verdict::kBadCommitment;
    r.verdict_index = stern::reveal_indices(r.challenge).first;
    return;
  }
  const auto res =
      stern::verifier_check(inst, r.challenge, r.b, r.y, r.reveals);
  r.verdict = res.verdict;
  r.verdict_index = res.index;
}

void regrade(SessionReport& rep) {
  rep.f_observed = 0;
  bool all_checked_ok = true;
  for (auto& r : rep.rounds) {
    grade_round(rep.config, rep.instance, r);
    if (!r.timing_ok) {
      ++rep.f_observed;
    } else if (r.verdict != stern::Verdict::kOk) {
      all_checked_ok = false;
    }
  }
  rep.accepted =
      all_checked_ok && rep.f_observed <= rep.config.allowed_failures();
}

SessionReport merge_transcripts(const ProtocolConfig& cfg, int64_t t1_ns,
                                const coding::SdInstance& inst,
                                const Rng& verifier_seed,
                                const std::vector<wire::RoundSeenByV1>& v1,
                                const std::vector<wire::RoundSeenByV2>& v2) {
  cfg.validate();
  const auto field = cfg.make_field();
  if (v1.size() != cfg.rounds || v2.size() != cfg.rounds) {
    throw NetError("merge: transcript halves do not cover every round");
  }

  SessionReport rep;
  rep.config = cfg;
  rep.config.t1_ns = t1_ns;
  rep.instance = inst;
  rep.rounds.resize(cfg.rounds);

  for (unsigned i = 1; i <= cfg.rounds; ++i) {
    const auto& e1 = v1[i - 1];
    const auto& e2 = v2[i - 1];
    if (e1.round != i || e2.round != i) {
      throw NetError("merge: transcript halves are out of order");
    }
    RoundRecord& r = rep.rounds[i - 1];
    r.round = i;
    r.b = derive_b(verifier_seed, field, i);
    r.challenge = derive_challenge(verifier_seed, i);
    if (e2.challenge != r.challenge) {
      throw ConfigError("merge: verifier seeds disagree on the challenge");
    }
    r.tau1_ns = e1.tau1_ns;
    r.theta1_ns = e1.theta1_ns;
    r.tau2_ns = e2.tau2_ns;
    r.theta2_ns = e2.theta2_ns;
    r.y_status = e1.y_status;
    r.az_status = e2.az_status;
    if (e1.y_status == wire::kStatusOk) r.y = e1.y;
    if (e2.az_status == wire::kStatusOk) r.reveals = e2.reveals;
  }

  regrade(rep);
  return rep;
}

// --- Single-process simulation ----------------------------------------------

SessionReport run_simulated_session(const ProtocolConfig& cfg,
                                    const coding::SdInstance& inst,
                                    const std::optional<BitVector>& witness,
                                    const AdversaryConfig& adversary,
                                    const Rng& prover_seed,
                                    const Rng& verifier_seed,
                                    const SimNetProfile& profile,
                                    const Rng& net_seed,
                                    SessionReport* v2_report_out) {
  cfg.validate();
  sim::SimNetwork net(net_seed);
  net::Clock* cv1 = net.add_participant();
  net::Clock* cv2 = net.add_participant();
  net::Clock* cp1 = net.add_participant();
  net::Clock* cp2 = net.add_participant();
  auto [v1p1_v, v1p1_p] = net.make_link("v1p1", profile.v1p1, profile.v1p1);
  auto [v2p2_v, v2p2_p] = net.make_link("v2p2", profile.v2p2, profile.v2p2);
  auto [v1v2_1, v1v2_2] = net.make_link("v1v2", profile.v1v2, profile.v1v2);
  auto [p1p2_1, p1p2_2] = net.make_link("p1p2", profile.p1p2, profile.p1p2);

  ProverContext pctx{cfg, inst, witness, prover_seed, adversary};
  VerifierContext vctx{cfg, inst, verifier_seed};

  SessionReport rep1, rep2;
  std::array<std::exception_ptr, 4> errors{};

  std::thread tv1([&] {
    try {
      rep1 = run_v1(vctx, *cv1, *v1p1_v, *v1v2_1);
    } catch (...) {
      errors[0] = std::current_exception();
    }
    net.leave();
  });
  std::thread tv2([&] {
    try {
      rep2 = run_v2(vctx, *cv2, *v2p2_v, *v1v2_2);
    } catch (...) {
      errors[1] = std::current_exception();
    }
    net.leave();
  });
  std::thread tp1([&] {
    try {
      run_p1(pctx, *cp1, *v1p1_p, p1p2_1.get());
    } catch (...) {
      errors[2] = std::current_exception();
    }
    net.leave();
  });
  std::thread tp2([&] {
    try {
      run_p2(pctx, *cp2, *v2p2_p, p1p2_2.get());
    } catch (...) {
      errors[3] = std::current_exception();
    }
    net.leave();
  });
  tv1.join();
  tv2.join();
  tp1.join();
  tp2.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  if (v2_report_out) *v2_report_out = rep2;
  return rep1;
}

}  // namespace rzkp::session
