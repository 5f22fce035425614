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

#include <cmath>
#include <cstdint>
#include <vector>

#include "doctest.h"
#include "rzkp/errors.hpp"
#include "rzkp/session.hpp"

using namespace rzkp;
using session::AdversaryConfig;
using session::ProtocolConfig;
using session::SessionReport;

namespace {

ProtocolConfig toy_config(unsigned rounds, double lambda = 0.0) {
  ProtocolConfig cfg = session::preset_scenario1();
  cfg.n = 12;
  cfg.k = 5;
  cfg.w = 3;
  cfg.q_exponent = 61;
  cfg.rounds = rounds;
  cfg.lambda = lambda;
  cfg.t1_ns = 1'000'000'000;
  return cfg;
}

struct Fixture {
  coding::SdInstance inst;
  std::optional<BitVector> witness;
};

Fixture yes_fixture(const char* seed) {
  Rng rng = Rng::from_string(seed);
  coding::SdWitness wit;
  Fixture f;
  f.inst = coding::gen_yes_instance(12, 5, 3, rng, &wit);
  f.witness = wit.e;
  return f;
}

coding::SdInstance no_instance(const char* seed) {
  Rng rng = Rng::from_string(seed);
  return coding::gen_no_instance(10, 4, 2, rng);
}

void require_reports_equal(const SessionReport& a, const SessionReport& b) {
  REQUIRE(a.rounds.size() == b.rounds.size());
  CHECK(a.accepted == b.accepted);
  CHECK(a.f_observed == b.f_observed);
  CHECK(a.config.t1_ns == b.config.t1_ns);
  for (size_t i = 0; i < a.rounds.size(); ++i) {
    const auto& x = a.rounds[i];
    const auto& y = b.rounds[i];
    CHECK(x.round == y.round);
    CHECK(x.challenge == y.challenge);
    CHECK(x.tau1_ns == y.tau1_ns);
    CHECK(x.theta1_ns == y.theta1_ns);
    CHECK(x.tau2_ns == y.tau2_ns);
    CHECK(x.theta2_ns == y.theta2_ns);
    CHECK(x.y_status == y.y_status);
    CHECK(x.az_status == y.az_status);
    CHECK(x.timing_ok == y.timing_ok);
    CHECK(x.verdict == y.verdict);
    CHECK(x.verdict_index == y.verdict_index);
    for (int j = 0; j < 3; ++j) CHECK(x.b[j] == y.b[j]);
    if (x.y_status == wire::kStatusOk) {
      for (int j = 0; j < 3; ++j) CHECK(x.y[j] == y.y[j]);
    }
    if (x.az_status == wire::kStatusOk) {
      for (int j = 0; j < 2; ++j) {
        CHECK(x.reveals[j].index == y.reveals[j].index);
        CHECK(x.reveals[j].z == y.reveals[j].z);
        CHECK(x.reveals[j].a == y.reveals[j].a);
      }
    }
  }
}

SessionReport run(const ProtocolConfig& cfg, const Fixture& f,
                  const AdversaryConfig& adv, const session::SimNetProfile& net,
                  const char* tag, SessionReport* v2_out = nullptr) {
  return session::run_simulated_session(
      cfg, f.inst, f.witness, adv, Rng::from_string(std::string("prover-") + tag),
      Rng::from_string(std::string("verifier-") + tag), net,
      Rng::from_string(std::string("net-") + tag), v2_out);
}

}  // namespace

TEST_CASE("honest session: clockwork timestamps, everything accepted") {
  const auto fx = yes_fixture("session-honest");
  const auto cfg = toy_config(20);
  session::SimNetProfile net;  // all links ideal

  SessionReport v2rep;
  const SessionReport rep = run(cfg, fx, {}, net, "honest", &v2rep);

  CHECK(rep.accepted);
  CHECK(rep.f_observed == 0);
  REQUIRE(rep.rounds.size() == 20);
  for (const auto& r : rep.rounds) {
    const auto sched = session::schedule_round(cfg, cfg.t1_ns, r.round);
    // Ideal links on a virtual clock: the schedule is hit to the nanosecond
    // and responses arrive in the same instant they are asked for.
    CHECK(r.tau1_ns == sched.tau1_ns);
    CHECK(r.tau2_ns == sched.tau2_ns);
    CHECK(r.theta1_ns == r.tau1_ns);
    CHECK(r.theta2_ns == r.tau2_ns);
    CHECK(r.timing_ok);
    CHECK(r.verdict == stern::Verdict::kOk);
    CHECK(r.y_status == wire::kStatusOk);
    CHECK(r.az_status == wire::kStatusOk);
    CHECK(r.challenge >= 1);
    CHECK(r.challenge <= 3);
    const auto want = stern::reveal_indices(r.challenge);
    CHECK(r.reveals[0].index == want.first);
    CHECK(r.reveals[1].index == want.second);
  }

  SUBCASE("both verifiers compute the identical report") {
    require_reports_equal(rep, v2rep);
  }

  SUBCASE("the whole session replays bit-identically") {
    const SessionReport again = run(cfg, fx, {}, net, "honest");
    require_reports_equal(rep, again);
  }

  SUBCASE("negotiated epoch works too") {
    auto cfg2 = cfg;
    cfg2.t1_ns = 0;  // V1 picks now + margin and distributes SYNC frames
    const SessionReport rep2 = run(cfg2, fx, {}, net, "honest-sync");
    CHECK(rep2.accepted);
    CHECK(rep2.config.t1_ns == cfg.sync_margin_ns);  // virtual clock starts at 0
    CHECK(rep2.rounds[0].tau1_ns == rep2.config.t1_ns);
  }
}

TEST_CASE("injected latency trips the causality window bit-exactly") {
  const auto fx = yes_fixture("session-latency");
  const auto cfg = toy_config(30);

  // One-way 0.95 ms on the V1<->P1 link: phase 1 takes exactly 1.9 ms, so
  // theta1 - tau2 = 1.4 ms exceeds the 400 km light cone (~1.3343 ms).
  session::SimNetProfile slow;
  slow.v1p1.delay_ns = 950'000;
  const SessionReport flagged = run(cfg, fx, {}, slow, "latency-slow");
  CHECK(!flagged.accepted);
  CHECK(flagged.f_observed == 30);
  for (const auto& r : flagged.rounds) {
    CHECK(r.theta1_ns - r.tau1_ns == 1'900'000);
    CHECK(!r.timing_ok);
    CHECK(r.verdict == stern::Verdict::kTimingViolation);
    CHECK(r.y_status == wire::kStatusOk);  // the answer arrived, just late
  }

  // One-way 0.6 ms: phase 1 takes 1.2 ms, theta1 - tau2 = 0.7 ms. Fine.
  session::SimNetProfile fine;
  fine.v1p1.delay_ns = 600'000;
  const SessionReport passed = run(cfg, fx, {}, fine, "latency-fine");
  CHECK(passed.accepted);
  CHECK(passed.f_observed == 0);
  for (const auto& r : passed.rounds) {
    CHECK(r.theta1_ns - r.tau1_ns == 1'200'000);
    CHECK(r.timing_ok);
  }
}

TEST_CASE("wide-area geometry absorbs 20 ms round trips") {
  const auto fx = yes_fixture("session-wide");
  ProtocolConfig cfg = session::preset_scenario2();
  cfg.n = 12;
  cfg.k = 5;
  cfg.w = 3;
  cfg.q_exponent = 61;
  cfg.rounds = 10;
  cfg.t1_ns = 1'000'000'000;

  session::SimNetProfile net;
  net.v1p1.delay_ns = 10'000'000;  // 20 ms phase-1 turnaround
  net.v2p2.delay_ns = 10'000'000;  // 20 ms phase-2 turnaround
  const SessionReport rep = run(cfg, fx, {}, net, "wide");
  CHECK(rep.accepted);
  CHECK(rep.f_observed == 0);
  for (const auto& r : rep.rounds) {
    CHECK(r.theta1_ns - r.tau1_ns == 20'000'000);
    CHECK(r.theta2_ns - r.tau2_ns == 20'000'000);
    CHECK(r.timing_ok);  // 22.5 ms < 30.02 ms light cone both ways
  }
}

TEST_CASE("frame loss burns the allowance, not the session") {
  const auto fx = yes_fixture("session-loss");
  auto cfg = toy_config(200, 0.15);

  session::SimNetProfile lossy;
  lossy.v1p1.drop_prob = 0.02;
  lossy.v2p2.drop_prob = 0.02;
  SessionReport v2rep;
  const SessionReport rep = run(cfg, fx, {}, lossy, "loss", &v2rep);

  unsigned lost = 0;
  for (const auto& r : rep.rounds) {
    if (!r.timing_ok) {
      ++lost;
      CHECK(r.verdict == stern::Verdict::kTimingViolation);
    } else {
      CHECK(r.verdict == stern::Verdict::kOk);
    }
  }
  CHECK(lost == rep.f_observed);
  // Per-round loss is 1-0.98^4 ~ 7.8%; the expectation is ~15.5 of 200 and
  // the allowance is 30. 4 sigma keeps this deterministic seed comfortable.
  CHECK(rep.f_observed > 0);
  CHECK(rep.f_observed < 32);
  CHECK(rep.accepted == (rep.f_observed <= cfg.allowed_failures()));
  CHECK(rep.accepted);
  require_reports_equal(rep, v2rep);

  SUBCASE("heavy loss rejects") {
    auto cfg2 = toy_config(50, 0.1);
    session::SimNetProfile storm;
    storm.v1p1.drop_prob = 0.5;
    storm.v2p2.drop_prob = 0.5;
    const SessionReport rejected = run(cfg2, fx, {}, storm, "loss-storm");
    CHECK(!rejected.accepted);
    CHECK(rejected.f_observed > 5);  // allowance also 5
  }
}

TEST_CASE("fixed-target cheating fails exactly its chosen challenge") {
  Fixture fx;
  fx.inst = no_instance("session-cheat-no");
  auto cfg = toy_config(60);
  cfg.n = 10;
  cfg.k = 4;
  cfg.w = 2;

  AdversaryConfig adv;
  adv.mode = AdversaryConfig::Mode::kCheatFixed;
  adv.fixed_target = 2;

  session::SimNetProfile net;
  const SessionReport rep = run(cfg, fx, adv, net, "cheat-fixed");
  CHECK(!rep.accepted);
  CHECK(rep.f_observed == 0);
  unsigned hits = 0;
  for (const auto& r : rep.rounds) {
    CHECK(r.timing_ok);
    if (r.challenge == 2) {
      ++hits;
      CHECK(r.verdict == stern::Verdict::kSyndromeCheck2Failed);
    } else {
      CHECK(r.verdict == stern::Verdict::kOk);
    }
  }
  CHECK(hits > 8);  // 60 rounds, each challenge ~uniform
}

TEST_CASE("rotating cheat survives two thirds of the rounds") {
  Fixture fx;
  fx.inst = no_instance("session-rotate-no");
  auto cfg = toy_config(2000);
  cfg.n = 10;
  cfg.k = 4;
  cfg.w = 2;

  AdversaryConfig adv;
  adv.mode = AdversaryConfig::Mode::kCheatRotating;

  session::SimNetProfile net;
  SessionReport v2rep;
  const SessionReport rep = run(cfg, fx, adv, net, "rotate", &v2rep);
  CHECK(!rep.accepted);
  CHECK(rep.f_observed == 0);

  unsigned ok = 0;
  for (const auto& r : rep.rounds) {
    if (r.verdict == stern::Verdict::kOk) ++ok;
  }
  // Per round: the sacrificed challenge rotates, the verifier's draw is
  // uniform, so Pr[survive] = 2/3. Four sigma at R = 2000 is +-84.3.
  const double mean = 2000.0 * 2.0 / 3.0;
  const double sigma = std::sqrt(2000.0 * (2.0 / 3.0) * (1.0 / 3.0));
  CHECK(ok > mean - 4 * sigma);
  CHECK(ok < mean + 4 * sigma);
  require_reports_equal(rep, v2rep);
}

TEST_CASE("abort-rate adversary trips the loss allowance") {
  const auto fx = yes_fixture("session-abort");
  auto cfg = toy_config(340, 22.0 / 340.0);

  AdversaryConfig adv;
  adv.mode = AdversaryConfig::Mode::kAbortRate;
  adv.abort_rate = 1.0 / 3.0;

  session::SimNetProfile net;
  const SessionReport rep = run(cfg, fx, adv, net, "abort");
  CHECK(!rep.accepted);
  // Bin(340, 1/3): mean ~113.3, sigma ~8.7. Far beyond the allowance of 22.
  CHECK(rep.f_observed > 78);
  CHECK(rep.f_observed < 148);
  for (const auto& r : rep.rounds) {
    if (r.timing_ok) CHECK(r.verdict == stern::Verdict::kOk);
    else CHECK(r.theta1_ns == -1);  // silence, not lateness
  }

  SUBCASE("a mild abort rate inside the allowance still passes") {
    auto cfg2 = toy_config(100, 0.2);
    AdversaryConfig mild;
    mild.mode = AdversaryConfig::Mode::kAbortRate;
    mild.abort_rate = 0.05;
    const SessionReport ok = run(cfg2, fx, mild, net, "abort-mild");
    CHECK(ok.accepted);
    CHECK(ok.f_observed > 0);
    CHECK(ok.f_observed <= 20);
  }
}

TEST_CASE("relaying the challenge across sites always lands outside the cone") {
  const auto fx = yes_fixture("session-spooky");
  auto cfg = toy_config(25);

  AdversaryConfig adv;
  adv.mode = AdversaryConfig::Mode::kSpookyRelay;

  // P2 refuses to answer before P1's relayed copy of b arrives; the relay
  // link cannot beat light, so give it exactly the light-cone delay plus a
  // safety margin (integer truncation must not hand it a head start).
  session::SimNetProfile net;
  const int64_t relay_ns =
      static_cast<int64_t>(std::ceil(session::d_over_c_ns(cfg.d_km))) + 1000;
  net.p1p2.delay_ns = relay_ns;

  const SessionReport rep = run(cfg, fx, adv, net, "spooky");
  CHECK(!rep.accepted);
  CHECK(rep.f_observed == 25);
  for (const auto& r : rep.rounds) {
    CHECK(!r.timing_ok);
    CHECK(r.verdict == stern::Verdict::kTimingViolation);
    // The answer did arrive -- correct, even -- but provably after news of
    // the other site's challenge could have reached P2.
    CHECK(r.az_status == wire::kStatusOk);
    CHECK(r.theta2_ns - r.tau1_ns == relay_ns);
    CHECK(static_cast<double>(r.theta2_ns - r.tau1_ns) >
          session::d_over_c_ns(cfg.d_km));
    // Phase 1 stays honest and timely.
    CHECK(r.theta1_ns == r.tau1_ns);
  }
}

TEST_CASE("merging rejects inconsistent halves and grades malformed frames") {
  const auto fx = yes_fixture("session-merge");
  auto cfg = toy_config(3);
  const auto field = cfg.make_field();
  const Rng vseed = Rng::from_string("verifier-merge");
  const Rng pseed = Rng::from_string("prover-merge");

  // Construct the halves an ideal zero-latency session would produce.
  std::vector<wire::RoundSeenByV1> v1(3);
  std::vector<wire::RoundSeenByV2> v2(3);
  for (unsigned i = 1; i <= 3; ++i) {
    const auto st = stern::prover_preprocess(fx.inst, *fx.witness, field,
                                             pseed, i);
    const auto b = session::derive_b(vseed, field, i);
    const unsigned c = session::derive_challenge(vseed, i);
    const auto sched = session::schedule_round(cfg, cfg.t1_ns, i);
    v1[i - 1] = {i, sched.tau1_ns, sched.tau1_ns, wire::kStatusOk,
                 stern::p1_respond(st, b)};
    v2[i - 1] = {i, sched.tau2_ns, sched.tau2_ns, static_cast<uint8_t>(c),
                 wire::kStatusOk, stern::p2_respond(st, c)};
  }

  const auto clean = session::merge_transcripts(cfg, cfg.t1_ns, fx.inst,
                                                vseed, v1, v2);
  CHECK(clean.accepted);
  CHECK(clean.f_observed == 0);

  SUBCASE("a malformed commitment frame is cheating, not loss") {
    auto bad = v1;
    bad[1].y_status = wire::kStatusMalformed;
    const auto rep = session::merge_transcripts(cfg, cfg.t1_ns, fx.inst,
                                                vseed, bad, v2);
    CHECK(!rep.accepted);
    CHECK(rep.f_observed == 0);
    CHECK(rep.rounds[1].verdict == stern::Verdict::kBadCommitment);
    CHECK(rep.rounds[1].verdict_index == 1);
  }

  SUBCASE("a malformed opening frame blames the first revealed index") {
    auto bad = v2;
    bad[2].az_status = wire::kStatusMalformed;
    const auto rep = session::merge_transcripts(cfg, cfg.t1_ns, fx.inst,
                                                vseed, v1, bad);
    CHECK(!rep.accepted);
    CHECK(rep.rounds[2].verdict == stern::Verdict::kBadCommitment);
    CHECK(rep.rounds[2].verdict_index ==
          stern::reveal_indices(rep.rounds[2].challenge).first);
  }

  SUBCASE("a missing response is loss") {
    auto bad = v1;
    bad[0].theta1_ns = -1;
    bad[0].y_status = wire::kStatusMissing;
    const auto rep = session::merge_transcripts(cfg, cfg.t1_ns, fx.inst,
                                                vseed, bad, v2);
    CHECK(rep.f_observed == 1);
    CHECK(rep.rounds[0].verdict == stern::Verdict::kTimingViolation);
    CHECK(rep.accepted == (rep.f_observed <= cfg.allowed_failures()));
    CHECK(!rep.accepted);  // lambda = 0 tolerates nothing
  }

  SUBCASE("verifier seed disagreement is a configuration error") {
    auto bad = v2;
    bad[0].challenge = static_cast<uint8_t>(1 + (bad[0].challenge % 3));
    CHECK_THROWS_AS(session::merge_transcripts(cfg, cfg.t1_ns, fx.inst, vseed,
                                               v1, bad),
                    ConfigError);
  }

  SUBCASE("short or misnumbered halves are transport errors") {
    auto shortv = v1;
    shortv.pop_back();
    CHECK_THROWS_AS(session::merge_transcripts(cfg, cfg.t1_ns, fx.inst, vseed,
                                               shortv, v2),
                    NetError);
    auto renum = v1;
    renum[0].round = 9;
    CHECK_THROWS_AS(session::merge_transcripts(cfg, cfg.t1_ns, fx.inst, vseed,
                                               renum, v2),
                    NetError);
  }
}

TEST_CASE("adversary tokens parse both ways") {
  CHECK(session::parse_adversary("honest").mode ==
        AdversaryConfig::Mode::kHonest);
  CHECK(session::parse_adversary("").mode == AdversaryConfig::Mode::kHonest);
  auto c3 = session::parse_adversary("cheat:3");
  CHECK(c3.mode == AdversaryConfig::Mode::kCheatFixed);
  CHECK(c3.fixed_target == 3);
  CHECK(session::parse_adversary("rotate").mode ==
        AdversaryConfig::Mode::kCheatRotating);
  auto ab = session::parse_adversary("abort:0.25");
  CHECK(ab.mode == AdversaryConfig::Mode::kAbortRate);
  CHECK(ab.abort_rate == 0.25);
  CHECK(session::parse_adversary("spooky").mode ==
        AdversaryConfig::Mode::kSpookyRelay);

  CHECK_THROWS_AS(session::parse_adversary("cheat:4"), ConfigError);
  CHECK_THROWS_AS(session::parse_adversary("abort:1.5"), ConfigError);
  CHECK_THROWS_AS(session::parse_adversary("abort:x"), ConfigError);
  CHECK_THROWS_AS(session::parse_adversary("sneaky"), ConfigError);

  for (const char* tok :
       {"honest", "cheat:1", "cheat:2", "cheat:3", "rotate", "spooky"}) {
    CHECK(session::adversary_token(session::parse_adversary(tok)) == tok);
  }
}
