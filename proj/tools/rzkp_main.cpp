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

#include <CLI11.hpp>
#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rzkp/errors.hpp"
#include "rzkp/instance_io.hpp"
#include "rzkp/params.hpp"
#include "rzkp/report.hpp"
#include "rzkp/session.hpp"
#include "rzkp/stern.hpp"
#include "rzkp/tcpnet.hpp"

namespace {

using namespace rzkp;
using nlohmann::json;

constexpr int kExitAccepted = 0;
constexpr int kExitRejected = 1;
constexpr int kExitConfig = 2;
constexpr int kExitNetwork = 3;

// --- run ---------------------------------------------------------------

// Everything `run` accepts, from flags and/or a JSON config file. Flags win
// over the file, the file wins over preset defaults.
struct RunSettings {
  std::string config_file;
  std::string role = "all";
  std::string preset;
  std::string adversary;
  std::string seed;
  std::string instance_file, witness_file;
  std::string out_dir;
  std::string ep_p1, ep_p2, ep_v2;
  std::optional<unsigned> n, k, w, q_exponent, rounds;
  std::optional<double> lambda, d_km, drop_prob;
  std::optional<int64_t> delta_t_ns, t_shift_ns, t1_ns, sync_margin_ns;
  std::optional<int64_t> link_delay_ns, link_jitter_ns;
  int64_t clock_offset_ns = 0;
  unsigned timeout_s = 30;
  bool sim = false;
  bool quiet = false;

  // Resolved state, filled by resolve():
  session::ProtocolConfig cfg;
  session::AdversaryConfig adv;
  session::SimNetProfile profile;
  coding::SdInstance inst;
  std::optional<BitVector> witness;
  std::string root_seed = "rzkp";
};

sim::LinkConfig link_from_json(const json& j) {
  sim::LinkConfig l;
  l.delay_ns = j.value("delay_ns", int64_t{0});
  l.jitter_ns = j.value("jitter_ns", int64_t{0});
  l.drop_prob = j.value("drop_prob", 0.0);
  return l;
}

// Merges file entries into any setting the command line left untouched.
void apply_config_file(RunSettings& s) {
  const json j = instance_io::load_json(s.config_file);
  if (!j.is_object()) throw ConfigError("config: top level must be an object");

  auto str = [&](const char* key, std::string& out) {
    if (out.empty() && j.contains(key)) out = j.at(key).get<std::string>();
  };
  // "all" is the flag default, so a config file may override it; any other
  // value was requested explicitly on the command line and wins.
  if (j.contains("role") && s.role == "all") {
    s.role = j.at("role").get<std::string>();
  }
  str("preset", s.preset);
  str("adversary", s.adversary);
  str("seed", s.seed);
  str("instance_file", s.instance_file);
  str("witness_file", s.witness_file);
  str("out_dir", s.out_dir);

  auto num_u = [&](const char* key, std::optional<unsigned>& out) {
    if (!out && j.contains(key)) out = j.at(key).get<unsigned>();
  };
  auto num_i = [&](const char* key, std::optional<int64_t>& out) {
    if (!out && j.contains(key)) out = j.at(key).get<int64_t>();
  };
  auto num_d = [&](const char* key, std::optional<double>& out) {
    if (!out && j.contains(key)) out = j.at(key).get<double>();
  };
  num_u("n", s.n);
  num_u("k", s.k);
  num_u("w", s.w);
  num_u("q_exponent", s.q_exponent);
  num_u("rounds", s.rounds);
  num_d("lambda", s.lambda);
  num_d("d_km", s.d_km);
  num_i("delta_t_ns", s.delta_t_ns);
  num_i("t_shift_ns", s.t_shift_ns);
  num_i("t1_ns", s.t1_ns);
  num_i("sync_margin_ns", s.sync_margin_ns);

  if (j.contains("endpoints")) {
    const json& e = j.at("endpoints");
    if (s.ep_p1.empty() && e.contains("p1"))
      s.ep_p1 = e.at("p1").get<std::string>();
    if (s.ep_p2.empty() && e.contains("p2"))
      s.ep_p2 = e.at("p2").get<std::string>();
    if (s.ep_v2.empty() && e.contains("v2"))
      s.ep_v2 = e.at("v2").get<std::string>();
  }
  if (j.contains("links")) {
    const json& l = j.at("links");
    if (l.contains("v1p1")) s.profile.v1p1 = link_from_json(l.at("v1p1"));
    if (l.contains("v2p2")) s.profile.v2p2 = link_from_json(l.at("v2p2"));
    if (l.contains("v1v2")) s.profile.v1v2 = link_from_json(l.at("v1v2"));
    if (l.contains("p1p2")) s.profile.p1p2 = link_from_json(l.at("p1p2"));
  }
}

void resolve(RunSettings& s) {
  if (!s.config_file.empty()) apply_config_file(s);

  if (!s.preset.empty()) {
    auto base = session::preset_by_name(s.preset);
    if (!base) throw ConfigError("unknown preset '" + s.preset + "'");
    s.cfg = *base;
  } else {
    s.cfg = session::preset_scenario1();
  }
  // Presets fix only the space-time geometry; the code, field and schedule
  // default to the published full-scale parameter set. An instance file
  // supplies the code shape instead, so toy instances run without repeating
  // --n/--k/--w (explicit flags still win, and still must match the file).
  s.cfg.n = 1704;
  s.cfg.k = 769;
  s.cfg.w = 216;
  s.cfg.q_exponent = 23209;
  s.cfg.rounds = 340;
  s.cfg.lambda = 22.0 / 340.0;
  if (!s.instance_file.empty()) {
    s.inst = instance_io::instance_from_json(
        instance_io::load_json(s.instance_file));
    s.cfg.n = s.inst.n;
    s.cfg.k = s.inst.k;
    s.cfg.w = s.inst.w;
  }
  if (s.n) s.cfg.n = *s.n;
  if (s.k) s.cfg.k = *s.k;
  if (s.w) s.cfg.w = *s.w;
  if (s.q_exponent) s.cfg.q_exponent = *s.q_exponent;
  if (s.rounds) s.cfg.rounds = *s.rounds;
  if (s.lambda) s.cfg.lambda = *s.lambda;
  if (s.d_km) s.cfg.d_km = *s.d_km;
  if (s.delta_t_ns) s.cfg.delta_t_ns = *s.delta_t_ns;
  if (s.t_shift_ns) s.cfg.t_shift_ns = *s.t_shift_ns;
  if (s.t1_ns) s.cfg.t1_ns = *s.t1_ns;
  if (s.sync_margin_ns) s.cfg.sync_margin_ns = *s.sync_margin_ns;
  s.cfg.validate();

  s.adv = session::parse_adversary(s.adversary.empty() ? "honest"
                                                       : s.adversary);
  if (!s.seed.empty()) s.root_seed = s.seed;

  // Quick link shaping for simulated runs: applies to both
  // verifier-to-prover links, which is where loss and latency matter.
  if (s.drop_prob) {
    s.profile.v1p1.drop_prob = *s.drop_prob;
    s.profile.v2p2.drop_prob = *s.drop_prob;
  }
  if (s.link_delay_ns) {
    s.profile.v1p1.delay_ns = *s.link_delay_ns;
    s.profile.v2p2.delay_ns = *s.link_delay_ns;
  }
  if (s.link_jitter_ns) {
    s.profile.v1p1.jitter_ns = *s.link_jitter_ns;
    s.profile.v2p2.jitter_ns = *s.link_jitter_ns;
  }

  const bool is_prover = s.role == "all" || s.role == "p1" || s.role == "p2";
  const bool needs_witness =
      is_prover && (s.adv.mode == session::AdversaryConfig::Mode::kHonest ||
                    s.adv.mode == session::AdversaryConfig::Mode::kAbortRate ||
                    s.adv.mode == session::AdversaryConfig::Mode::kSpookyRelay);

  if (!s.instance_file.empty()) {
    if (s.inst.n != s.cfg.n || s.inst.k != s.cfg.k || s.inst.w != s.cfg.w) {
      throw ConfigError("instance file geometry does not match the config");
    }
    if (!s.witness_file.empty()) {
      s.witness = instance_io::witness_from_json(
          instance_io::load_json(s.witness_file), s.inst.n);
    } else if (needs_witness) {
      throw ConfigError("adversary '" + session::adversary_token(s.adv) +
                        "' needs --witness with an external instance");
    }
  } else {
    // No file: every role derives the same instance from the shared seed.
    Rng gen = Rng::from_string(s.root_seed).derive("instance", 0);
    coding::SdWitness wit;
    s.inst = coding::gen_yes_instance(s.cfg.n, s.cfg.k, s.cfg.w, gen, &wit);
    if (needs_witness) s.witness = wit.e;
  }
}

void print_report_summary(const session::SessionReport& rep) {
  const auto& c = rep.config;
  std::printf("code: n=%u k=%u w=%u   field: 2^%u-1   rounds=%u lambda=%.6g\n",
              c.n, c.k, c.w, c.q_exponent, c.rounds, c.lambda);
  std::printf("epoch t1_ns=%lld   d_km=%.1f   delta_t_ns=%lld\n",
              static_cast<long long>(c.t1_ns), c.d_km,
              static_cast<long long>(c.delta_t_ns));

  std::map<std::string, unsigned> verdicts;
  for (const auto& r : rep.rounds) ++verdicts[stern::verdict_token(r.verdict)];
  std::printf("rounds: %zu total", rep.rounds.size());
  for (const auto& [token, count] : verdicts) {
    std::printf("  %s=%u", token.c_str(), count);
  }
  std::printf("\nunanswered in time: %u (allowed %u)\n", rep.f_observed,
              c.allowed_failures());
  std::printf("session: %s\n", rep.accepted ? "ACCEPTED" : "REJECTED");
}

int finish_verifier(const RunSettings& s, const session::SessionReport& rep) {
  if (!s.quiet) print_report_summary(rep);
  if (!s.out_dir.empty()) {
    report::write_report_files(rep, s.out_dir);
    if (!s.quiet) std::printf("report written to %s\n", s.out_dir.c_str());
  }
  return rep.accepted ? kExitAccepted : kExitRejected;
}

int run_all_simulated(const RunSettings& s) {
  const Rng root = Rng::from_string(s.root_seed);
  session::SessionReport v2rep;
  const session::SessionReport rep = session::run_simulated_session(
      s.cfg, s.inst, s.witness, s.adv, root.derive("prover-pair", 0),
      root.derive("verifier-pair", 0), s.profile, root.derive("network", 0),
      &v2rep);
  if (rep.accepted != v2rep.accepted) {
    // Both verifiers grade the same merged transcript; disagreement means
    // a bug, not a protocol outcome.
    throw Error("internal: verifier reports disagree");
  }
  return finish_verifier(s, rep);
}

int run_tcp_role(const RunSettings& s) {
  if (s.ep_p1.empty() || s.ep_p2.empty() || s.ep_v2.empty()) {
    throw ConfigError("networked roles need --p1, --p2 and --v2 endpoints");
  }
  tcpnet::Endpoints eps;
  eps.p1 = tcpnet::parse_host_port(s.ep_p1);
  eps.p2 = tcpnet::parse_host_port(s.ep_p2);
  eps.v2 = tcpnet::parse_host_port(s.ep_v2);

  uint8_t role = 0;
  if (s.role == "p1") role = tcpnet::kRoleP1;
  if (s.role == "p2") role = tcpnet::kRoleP2;
  if (s.role == "v1") role = tcpnet::kRoleV1;
  if (s.role == "v2") role = tcpnet::kRoleV2;
  if (role == 0) throw ConfigError("role must be all, p1, p2, v1 or v2");

  net::SystemClock clock(s.clock_offset_ns);
  const int64_t deadline =
      clock.now_ns() + int64_t{s.timeout_s} * 1'000'000'000;
  if (!s.quiet) {
    std::printf("[%s] connecting...\n", tcpnet::role_name(role));
  }
  tcpnet::RoleLinks links = tcpnet::connect_role(role, eps, clock, deadline);
  if (!s.quiet) std::printf("[%s] connected\n", tcpnet::role_name(role));

  const Rng root = Rng::from_string(s.root_seed);
  switch (role) {
    case tcpnet::kRoleP1: {
      session::ProverContext ctx{s.cfg, s.inst, s.witness,
                                 root.derive("prover-pair", 0), s.adv};
      session::run_p1(ctx, clock, *links.a, links.b.get());
      return kExitAccepted;
    }
    case tcpnet::kRoleP2: {
      session::ProverContext ctx{s.cfg, s.inst, s.witness,
                                 root.derive("prover-pair", 0), s.adv};
      session::run_p2(ctx, clock, *links.a, links.b.get());
      return kExitAccepted;
    }
    case tcpnet::kRoleV1: {
      session::VerifierContext ctx{s.cfg, s.inst,
                                   root.derive("verifier-pair", 0)};
      return finish_verifier(s,
                             session::run_v1(ctx, clock, *links.a, *links.b));
    }
    default: {
      session::VerifierContext ctx{s.cfg, s.inst,
                                   root.derive("verifier-pair", 0)};
      return finish_verifier(s,
                             session::run_v2(ctx, clock, *links.a, *links.b));
    }
  }
}

int cmd_run(RunSettings& s) {
  resolve(s);
  if (s.sim && s.role != "all") {
    throw ConfigError("--sim runs every role in one process; use --role all");
  }
  if (s.role == "all") return run_all_simulated(s);
  return run_tcp_role(s);
}

// --- plan ----------------------------------------------------------------

int cmd_plan(double target_bits, double p_loss, double loss_margin,
             bool as_json) {
  const params::SecurityPlan p = params::plan(target_bits, p_loss, loss_margin);
  std::fputs((as_json ? params::to_json(p) : params::to_table(p)).c_str(),
             stdout);
  return kExitAccepted;
}

// --- bench -----------------------------------------------------------------

struct StageStats {
  std::vector<double> us;

  void add(double v) { us.push_back(v); }
  double percentile(double q) {
    std::sort(us.begin(), us.end());
    const size_t idx = static_cast<size_t>(q * (us.size() - 1) + 0.5);
    return us[std::min(idx, us.size() - 1)];
  }
};

void print_stage(const char* name, StageStats& st) {
  std::printf("%-12s  min %9.1f us   median %9.1f us   p90 %9.1f us   max %9.1f us\n",
              name, st.percentile(0.0), st.percentile(0.5),
              st.percentile(0.9), st.percentile(1.0));
}

void print_histogram(const char* name, const StageStats& st) {
  std::map<int64_t, unsigned> buckets;  // 10 us wide
  for (double v : st.us) ++buckets[static_cast<int64_t>(v / 10.0)];
  std::printf("%s histogram (bucket_start_us,count)\n", name);
  for (const auto& [b, c] : buckets) {
    std::printf("  %lld,%u\n", static_cast<long long>(b * 10), c);
  }
}

int cmd_bench(unsigned n, unsigned k, unsigned w, unsigned q_exponent,
              unsigned rounds, const std::string& seed, bool hist, bool csv) {
  const auto field = fq::FieldParams::mersenne(q_exponent, n);
  Rng root = Rng::from_string(seed);
  Rng gen = root.derive("instance", 0);
  coding::SdWitness wit;
  const auto inst = coding::gen_yes_instance(n, k, w, gen, &wit);
  const Rng shared = root.derive("shared", 0);
  Rng challenge_rng = root.derive("challenges", 0);

  StageStats prep, phase1, phase2, verify;
  using clk = std::chrono::steady_clock;
  auto us_between = [](clk::time_point a, clk::time_point b) {
    return std::chrono::duration<double, std::micro>(b - a).count();
  };

  for (unsigned i = 1; i <= rounds; ++i) {
    Rng round_rng = root.derive("b", i);
    std::array<fq::FieldElement, 3> b = {fq::fe_random(field, round_rng),
                                         fq::fe_random(field, round_rng),
                                         fq::fe_random(field, round_rng)};
    const unsigned c = 1 + static_cast<unsigned>(challenge_rng.below(3));

    const auto t0 = clk::now();
    const auto st = stern::prover_preprocess(inst, wit.e, field, shared, i);
    const auto t1 = clk::now();
    const auto y = stern::p1_respond(st, b);
    const auto t2 = clk::now();
    const auto reveals = stern::p2_respond(st, c);
    const auto t3 = clk::now();
    const auto check = stern::verifier_check(inst, c, b, y, reveals);
    const auto t4 = clk::now();
    if (!check.ok()) throw Error("bench: honest round failed verification");

    prep.add(us_between(t0, t1));
    phase1.add(us_between(t1, t2));
    phase2.add(us_between(t2, t3));
    verify.add(us_between(t3, t4));
  }

  if (csv) {
    std::printf("round,preprocess_us,phase1_us,phase2_us,verify_us\n");
    for (unsigned i = 0; i < rounds; ++i) {
      std::printf("%u,%.3f,%.3f,%.3f,%.3f\n", i + 1, prep.us[i], phase1.us[i],
                  phase2.us[i], verify.us[i]);
    }
    return kExitAccepted;
  }

  std::printf("n=%u k=%u w=%u field=2^%u-1, %u rounds\n", n, k, w, q_exponent,
              rounds);
  print_stage("preprocess", prep);
  print_stage("phase1", phase1);
  print_stage("phase2", phase2);
  print_stage("verify", verify);
  if (hist) {
    print_histogram("phase1", phase1);
    print_histogram("phase2", phase2);
  }
  return kExitAccepted;
}

// --- verify-report -----------------------------------------------------------

int cmd_verify_report(const std::string& path, bool quiet) {
  const auto rep = report::report_from_json(instance_io::load_json(path));
  const auto res = report::recheck(rep);
  if (!res.consistent) {
    for (const auto& m : res.mismatches) {
      std::fprintf(stderr, "mismatch: %s\n", m.c_str());
    }
    if (!quiet) std::printf("report is INCONSISTENT with its transcript\n");
    return kExitConfig;
  }
  if (!quiet) {
    std::printf("report is consistent; session %s\n",
                res.accepted ? "ACCEPTED" : "REJECTED");
  }
  return res.accepted ? kExitAccepted : kExitRejected;
}

// --- gen-instance -------------------------------------------------------------

int cmd_gen_instance(unsigned n, unsigned k, unsigned w,
                     const std::string& type, const std::string& seed,
                     const std::string& out, const std::string& witness_out) {
  Rng rng = Rng::from_string(seed).derive("instance", 0);
  if (type == "yes") {
    coding::SdWitness wit;
    const auto inst = coding::gen_yes_instance(n, k, w, rng, &wit);
    instance_io::save_json(instance_io::instance_to_json(inst), out);
    if (!witness_out.empty()) {
      instance_io::save_json(instance_io::witness_to_json(wit.e), witness_out);
    }
  } else if (type == "no") {
    if (!witness_out.empty()) {
      throw ConfigError("a no-instance has no witness to write");
    }
    const auto inst = coding::gen_no_instance(n, k, w, rng);
    instance_io::save_json(instance_io::instance_to_json(inst), out);
  } else {
    throw ConfigError("--type must be yes or no");
  }
  std::printf("wrote %s\n", out.c_str());
  return kExitAccepted;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Relativistic two-prover commitment protocol: simulator, network "
      "agents, parameter planner"};
  app.require_subcommand(1);

  // run
  RunSettings rs;
  auto* run = app.add_subcommand(
      "run", "Run a session (single-process simulation or one TCP role)");
  run->add_option("--config", rs.config_file, "JSON config file");
  run->add_option("--role", rs.role, "all (simulated) or p1/p2/v1/v2 (TCP)");
  run->add_option("--preset", rs.preset, "scenario1 or scenario2");
  run->add_option("--adversary", rs.adversary,
                  "honest, cheat:1..3, rotate, abort:RATE, spooky");
  run->add_option("--seed", rs.seed, "root seed for all derived randomness");
  run->add_option("--instance", rs.instance_file, "instance JSON file");
  run->add_option("--witness", rs.witness_file, "witness JSON file");
  run->add_option("--out-dir", rs.out_dir, "write report files here");
  run->add_option("--n", rs.n, "code length");
  run->add_option("--k", rs.k, "code dimension");
  run->add_option("--w", rs.w, "error weight");
  run->add_option("--q-exponent", rs.q_exponent, "field is 2^e - 1");
  run->add_option("--rounds", rs.rounds, "number of rounds R");
  run->add_option("--lambda", rs.lambda, "tolerated loss fraction");
  run->add_option("--d-km", rs.d_km, "verifier separation in km");
  run->add_option("--delta-t-ns", rs.delta_t_ns, "round period");
  run->add_option("--t-shift-ns", rs.t_shift_ns, "phase-2 offset");
  run->add_option("--t1-ns", rs.t1_ns, "session epoch (0 = negotiate)");
  run->add_option("--sync-margin-ns", rs.sync_margin_ns,
                  "headroom before the negotiated epoch");
  run->add_option("--drop-prob", rs.drop_prob,
                  "simulated loss on both prover links");
  run->add_option("--link-delay-ns", rs.link_delay_ns,
                  "simulated one-way latency on both prover links");
  run->add_option("--link-jitter-ns", rs.link_jitter_ns,
                  "simulated jitter bound on both prover links");
  run->add_option("--p1", rs.ep_p1, "P1 listen endpoint host:port");
  run->add_option("--p2", rs.ep_p2, "P2 listen endpoint host:port");
  run->add_option("--v2", rs.ep_v2, "V2 listen endpoint host:port");
  run->add_option("--timeout-s", rs.timeout_s, "TCP setup deadline");
  run->add_option("--clock-offset-ns", rs.clock_offset_ns,
                  "skew this role's clock");
  run->add_flag("--sim", rs.sim,
                "single-process virtual-clock simulation (default for "
                "--role all)");
  run->add_flag("--quiet", rs.quiet, "suppress the summary");

  // plan
  double target_bits = 100.0, p_loss = 0.001, loss_margin = 10.0;
  bool plan_json = false;
  auto* plan = app.add_subcommand(
      "plan", "Pick code, field and schedule for a security target");
  plan->add_option("--target", target_bits, "security level in bits")
      ->required();
  plan->add_option("--p-loss", p_loss, "expected per-round loss probability");
  plan->add_option("--loss-margin", loss_margin,
                   "allowance headroom over the expected loss");
  plan->add_flag("--json", plan_json, "machine-readable output");

  // bench
  unsigned bn = 1704, bk = 769, bw = 216, bq = 23209, brounds = 25;
  std::string bseed = "bench";
  bool bhist = false, bcsv = false;
  auto* bench = app.add_subcommand(
      "bench", "Measure per-round prover and verifier computation");
  bench->add_option("--n", bn, "code length");
  bench->add_option("--k", bk, "code dimension");
  bench->add_option("--w", bw, "error weight");
  bench->add_option("--q-exponent", bq, "field is 2^e - 1");
  bench->add_option("--rounds", brounds, "rounds to measure");
  bench->add_option("--seed", bseed, "instance/randomness seed");
  bench->add_flag("--hist", bhist, "print 10 us histograms");
  bench->add_flag("--csv", bcsv, "per-round CSV instead of the summary");

  // verify-report
  std::string report_path;
  bool vr_quiet = false;
  auto* vr = app.add_subcommand(
      "verify-report", "Regrade a stored report and compare verdicts");
  vr->add_option("file", report_path, "report.json produced by run")
      ->required();
  vr->add_flag("--quiet", vr_quiet, "exit code only");

  // gen-instance
  unsigned gn = 24, gk = 10, gw = 4;
  std::string gtype = "yes", gseed = "rzkp", gout, gwout;
  auto* gen = app.add_subcommand(
      "gen-instance", "Generate a decoding instance (and witness) as JSON");
  gen->add_option("--n", gn, "code length");
  gen->add_option("--k", gk, "code dimension");
  gen->add_option("--w", gw, "error weight");
  gen->add_option("--type", gtype, "yes (solvable) or no (certified empty)");
  gen->add_option("--seed", gseed, "generator seed");
  gen->add_option("--out", gout, "instance output path")->required();
  gen->add_option("--witness-out", gwout, "witness output path (yes only)");

  // A flag given twice means "override": the last value wins, so wrapper
  // scripts can append to a base argument list.
  for (auto* sub : app.get_subcommands({})) {
    for (auto* opt : sub->get_options()) {
      opt->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    }
  }

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return cmd_run(rs);
    if (plan->parsed())
      return cmd_plan(target_bits, p_loss, loss_margin, plan_json);
    if (bench->parsed())
      return cmd_bench(bn, bk, bw, bq, brounds, bseed, bhist, bcsv);
    if (vr->parsed()) return cmd_verify_report(report_path, vr_quiet);
    if (gen->parsed())
      return cmd_gen_instance(gn, gk, gw, gtype, gseed, gout, gwout);
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitConfig;
  } catch (const NetError& e) {
    std::fprintf(stderr, "network error: %s\n", e.what());
    return kExitNetwork;
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitConfig;
  }
  return kExitConfig;
}
