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

#include "rzkp/report.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>

#include "rzkp/errors.hpp"
#include "rzkp/instance_io.hpp"

namespace rzkp::report {

using nlohmann::json;
using session::SessionReport;

namespace {

std::string bytes_to_hex(const std::vector<uint8_t>& b) {
  static const char* kDigits = "0123456789abcdef";
  std::string out;
  out.reserve(b.size() * 2);
  for (uint8_t byte : b) {
    out.push_back(kDigits[byte >> 4]);
    out.push_back(kDigits[byte & 0xF]);
  }
  return out;
}

int hex_nibble(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

std::string fe_to_hex(const fq::FieldElement& x) {
  return bytes_to_hex(fq::to_bytes(x));
}

fq::FieldElement fe_from_hex(const std::string& hex,
                             const fq::FieldParamsPtr& params) {
  if (hex.size() != 2 * params->byte_width()) {
    throw ConfigError("report: field element hex has the wrong width");
  }
  std::vector<uint8_t> bytes(params->byte_width());
  for (size_t i = 0; i < bytes.size(); ++i) {
    const int hi = hex_nibble(hex[2 * i]);
    const int lo = hex_nibble(hex[2 * i + 1]);
    if (hi < 0 || lo < 0) throw ConfigError("report: bad hex digit");
    bytes[i] = static_cast<uint8_t>((hi << 4) | lo);
  }
  auto v = fq::from_bytes(bytes.data(), bytes.size(), params);
  if (!v) throw ConfigError("report: field element out of range");
  return *v;
}

const char* status_token(uint8_t s) {
  switch (s) {
    case wire::kStatusMissing:
      return "missing";
    case wire::kStatusOk:
      return "ok";
    case wire::kStatusMalformed:
      return "malformed";
  }
  throw Error("report: unknown frame status");
}

uint8_t status_from_token(const std::string& t) {
  if (t == "missing") return wire::kStatusMissing;
  if (t == "ok") return wire::kStatusOk;
  if (t == "malformed") return wire::kStatusMalformed;
  throw ConfigError("report: unknown frame status token '" + t + "'");
}

stern::Verdict verdict_from_token(const std::string& t) {
  static const stern::Verdict kAll[] = {
      stern::Verdict::kOk,
      stern::Verdict::kBadCommitment,
      stern::Verdict::kMappingFailure,
      stern::Verdict::kWeightCheckFailed,
      stern::Verdict::kSyndromeCheck2Failed,
      stern::Verdict::kSyndromeCheck3Failed,
      stern::Verdict::kTimingViolation,
  };
  for (auto v : kAll) {
    if (t == stern::verdict_token(v)) return v;
  }
  throw ConfigError("report: unknown verdict token '" + t + "'");
}

std::string phase_us_or_empty(int64_t theta_ns, int64_t tau_ns) {
  if (theta_ns < 0) return "";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.3f",
                static_cast<double>(theta_ns - tau_ns) / 1000.0);
  return buf;
}

}  // namespace

nlohmann::json report_to_json(const SessionReport& rep) {
  json j;
  j["format"] = "rzkp-session-report";
  j["version"] = 1;

  const auto& cfg = rep.config;
  j["config"] = {
      {"n", cfg.n},
      {"k", cfg.k},
      {"w", cfg.w},
      {"q_exponent", cfg.q_exponent},
      {"rounds", cfg.rounds},
      {"lambda", cfg.lambda},
      {"d_km", cfg.d_km},
      {"delta_t_ns", cfg.delta_t_ns},
      {"t_shift_ns", cfg.t_shift_ns},
      {"t1_ns", cfg.t1_ns},
  };
  j["instance"] = instance_io::instance_to_json(rep.instance);

  json rounds = json::array();
  for (const auto& r : rep.rounds) {
    json e;
    e["round"] = r.round;
    e["challenge"] = r.challenge;
    e["tau1_ns"] = r.tau1_ns;
    e["theta1_ns"] = r.theta1_ns;
    e["tau2_ns"] = r.tau2_ns;
    e["theta2_ns"] = r.theta2_ns;
    e["b"] = {fe_to_hex(r.b[0]), fe_to_hex(r.b[1]), fe_to_hex(r.b[2])};
    e["y_status"] = status_token(r.y_status);
    if (r.y_status == wire::kStatusOk) {
      e["y"] = {fe_to_hex(r.y[0]), fe_to_hex(r.y[1]), fe_to_hex(r.y[2])};
    }
    e["az_status"] = status_token(r.az_status);
    if (r.az_status == wire::kStatusOk) {
      json reveals = json::array();
      for (const auto& rv : r.reveals) {
        reveals.push_back({{"index", rv.index},
                           {"z", fe_to_hex(rv.z)},
                           {"a", fe_to_hex(rv.a)}});
      }
      e["reveals"] = reveals;
    }
    e["timing_ok"] = r.timing_ok;
    e["verdict"] = stern::verdict_token(r.verdict);
    e["verdict_index"] = r.verdict_index;
    rounds.push_back(std::move(e));
  }
  j["rounds"] = std::move(rounds);
  j["f_observed"] = rep.f_observed;
  j["accepted"] = rep.accepted;
  j["rounds_csv"] = rounds_csv(rep);
  return j;
}

session::SessionReport report_from_json(const nlohmann::json& j) {
  try {
    if (j.at("format").get<std::string>() != "rzkp-session-report" ||
        j.at("version").get<int>() != 1) {
      throw ConfigError("report: unrecognized format header");
    }
    SessionReport rep;
    const auto& c = j.at("config");
    rep.config.n = c.at("n").get<unsigned>();
    rep.config.k = c.at("k").get<unsigned>();
    rep.config.w = c.at("w").get<unsigned>();
    rep.config.q_exponent = c.at("q_exponent").get<unsigned>();
    rep.config.rounds = c.at("rounds").get<unsigned>();
    rep.config.lambda = c.at("lambda").get<double>();
    rep.config.d_km = c.at("d_km").get<double>();
    rep.config.delta_t_ns = c.at("delta_t_ns").get<int64_t>();
    rep.config.t_shift_ns = c.at("t_shift_ns").get<int64_t>();
    rep.config.t1_ns = c.at("t1_ns").get<int64_t>();
    rep.config.validate();

    rep.instance = instance_io::instance_from_json(j.at("instance"));
    if (rep.instance.n != rep.config.n || rep.instance.k != rep.config.k ||
        rep.instance.w != rep.config.w) {
      throw ConfigError("report: instance dimensions disagree with config");
    }
    const auto field = rep.config.make_field();

    const auto& rounds = j.at("rounds");
    if (!rounds.is_array() || rounds.size() != rep.config.rounds) {
      throw ConfigError("report: expected one transcript entry per round");
    }
    rep.rounds.resize(rounds.size());
    for (size_t i = 0; i < rounds.size(); ++i) {
      const auto& e = rounds[i];
      auto& r = rep.rounds[i];
      r.round = e.at("round").get<uint32_t>();
      if (r.round != i + 1) throw ConfigError("report: rounds out of order");
      r.challenge = e.at("challenge").get<unsigned>();
      if (r.challenge < 1 || r.challenge > 3) {
        throw ConfigError("report: challenge out of range");
      }
      r.tau1_ns = e.at("tau1_ns").get<int64_t>();
      r.theta1_ns = e.at("theta1_ns").get<int64_t>();
      r.tau2_ns = e.at("tau2_ns").get<int64_t>();
      r.theta2_ns = e.at("theta2_ns").get<int64_t>();
      const auto& b = e.at("b");
      if (!b.is_array() || b.size() != 3) {
        throw ConfigError("report: expected three challenge elements");
      }
      for (int t = 0; t < 3; ++t) {
        r.b[t] = fe_from_hex(b[t].get<std::string>(), field);
      }
      r.y_status = status_from_token(e.at("y_status").get<std::string>());
      if (r.y_status == wire::kStatusOk) {
        const auto& y = e.at("y");
        if (!y.is_array() || y.size() != 3) {
          throw ConfigError("report: expected three commitments");
        }
        for (int t = 0; t < 3; ++t) {
          r.y[t] = fe_from_hex(y[t].get<std::string>(), field);
        }
      }
      r.az_status = status_from_token(e.at("az_status").get<std::string>());
      if (r.az_status == wire::kStatusOk) {
        const auto& reveals = e.at("reveals");
        if (!reveals.is_array() || reveals.size() != 2) {
          throw ConfigError("report: expected two openings");
        }
        const auto want = stern::reveal_indices(r.challenge);
        for (int t = 0; t < 2; ++t) {
          auto& rv = r.reveals[t];
          rv.index = reveals[t].at("index").get<unsigned>();
          rv.z = fe_from_hex(reveals[t].at("z").get<std::string>(), field);
          rv.a = fe_from_hex(reveals[t].at("a").get<std::string>(), field);
        }
        if (r.reveals[0].index != want.first ||
            r.reveals[1].index != want.second) {
          throw ConfigError("report: openings do not match the challenge");
        }
      }
      r.timing_ok = e.at("timing_ok").get<bool>();
      r.verdict = verdict_from_token(e.at("verdict").get<std::string>());
      r.verdict_index = e.at("verdict_index").get<unsigned>();
    }
    rep.f_observed = j.at("f_observed").get<unsigned>();
    rep.accepted = j.at("accepted").get<bool>();
    return rep;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("report: malformed JSON: ") + e.what());
  }
}

std::string rounds_csv(const SessionReport& rep) {
  std::string out =
      "round,tau1_ns,theta1_ns,tau2_ns,theta2_ns,phase1_us,phase2_us,"
      "timing_ok,challenge,verdict_reason\n";
  for (const auto& r : rep.rounds) {
    out += std::to_string(r.round);
    out += ',';
    out += std::to_string(r.tau1_ns);
    out += ',';
    out += std::to_string(r.theta1_ns);
    out += ',';
    out += std::to_string(r.tau2_ns);
    out += ',';
    out += std::to_string(r.theta2_ns);
    out += ',';
    out += phase_us_or_empty(r.theta1_ns, r.tau1_ns);
    out += ',';
    out += phase_us_or_empty(r.theta2_ns, r.tau2_ns);
    out += ',';
    out += r.timing_ok ? '1' : '0';
    out += ',';
    out += std::to_string(r.challenge);
    out += ',';
    out += stern::verdict_token(r.verdict);
    out += '\n';
  }
  return out;
}

std::string phase_histogram_csv(const SessionReport& rep, int phase) {
  if (phase != 1 && phase != 2) {
    throw Error("report: phase must be 1 or 2");
  }
  constexpr int64_t kBucketNs = 10'000;  // 10 microseconds
  std::map<int64_t, uint64_t> buckets;
  for (const auto& r : rep.rounds) {
    const int64_t tau = phase == 1 ? r.tau1_ns : r.tau2_ns;
    const int64_t theta = phase == 1 ? r.theta1_ns : r.theta2_ns;
    if (theta < 0 || theta < tau) continue;
    ++buckets[(theta - tau) / kBucketNs];
  }
  std::string out = "bucket_start_us,count\n";
  for (const auto& [bucket, count] : buckets) {
    out += std::to_string(bucket * 10);
    out += ',';
    out += std::to_string(count);
    out += '\n';
  }
  return out;
}

RecheckResult recheck(const SessionReport& stored) {
  SessionReport redo = stored;
  session::regrade(redo);

  RecheckResult res;
  res.accepted = redo.accepted;
  for (size_t i = 0; i < stored.rounds.size(); ++i) {
    const auto& a = stored.rounds[i];
    const auto& b = redo.rounds[i];
    if (a.timing_ok != b.timing_ok) {
      res.mismatches.push_back("round " + std::to_string(a.round) +
                               ": stored timing_ok=" +
                               (a.timing_ok ? "1" : "0") + ", recomputed " +
                               (b.timing_ok ? "1" : "0"));
    }
    if (a.verdict != b.verdict || a.verdict_index != b.verdict_index) {
      res.mismatches.push_back(
          "round " + std::to_string(a.round) + ": stored verdict " +
          stern::verdict_token(a.verdict) + "/" +
          std::to_string(a.verdict_index) + ", recomputed " +
          stern::verdict_token(b.verdict) + "/" +
          std::to_string(b.verdict_index));
    }
  }
  if (stored.f_observed != redo.f_observed) {
    res.mismatches.push_back(
        "f_observed: stored " + std::to_string(stored.f_observed) +
        ", recomputed " + std::to_string(redo.f_observed));
  }
  if (stored.accepted != redo.accepted) {
    res.mismatches.push_back(std::string("accepted: stored ") +
                             (stored.accepted ? "true" : "false") +
                             ", recomputed " +
                             (redo.accepted ? "true" : "false"));
  }
  res.consistent = res.mismatches.empty();
  return res;
}

void write_report_files(const SessionReport& rep, const std::string& out_dir) {
  std::filesystem::create_directories(out_dir);
  const auto dir = std::filesystem::path(out_dir);
  instance_io::save_json(report_to_json(rep), (dir / "report.json").string());

  auto write_text = [](const std::filesystem::path& p, const std::string& s) {
    std::ofstream out(p);
    if (!out) throw Error("io: cannot open '" + p.string() + "' for writing");
    out << s;
    if (!out) throw Error("io: short write to '" + p.string() + "'");
  };
  write_text(dir / "rounds.csv", rounds_csv(rep));
  write_text(dir / "phase1_hist.csv", phase_histogram_csv(rep, 1));
  write_text(dir / "phase2_hist.csv", phase_histogram_csv(rep, 2));
}

}  // namespace rzkp::report
