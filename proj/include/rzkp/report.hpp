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

#ifndef RZKP_REPORT_HPP_
#define RZKP_REPORT_HPP_

#include <json.hpp>
#include <string>
#include <vector>

#include "rzkp/session.hpp"

// Session reports on disk: a self-contained JSON envelope (config echo,
// instance, per-round transcript, CSV block) plus standalone CSV exports.
// Self-contained means the acceptance bit is a pure function of the file:
// anyone can regrade it offline and must land on the same verdict.
namespace rzkp::report {

nlohmann::json report_to_json(const session::SessionReport& rep);
// Throws ConfigError on anything malformed.
session::SessionReport report_from_json(const nlohmann::json& j);

// One line per round:
//   round,tau1_ns,theta1_ns,tau2_ns,theta2_ns,phase1_us,phase2_us,
//   timing_ok,challenge,verdict_reason
// Phase columns are empty when the response never arrived.
std::string rounds_csv(const session::SessionReport& rep);

// Latency histogram of the given phase (1 or 2) in 10 microsecond buckets:
//   bucket_start_us,count
// Rounds whose response never arrived are excluded.
std::string phase_histogram_csv(const session::SessionReport& rep, int phase);

struct RecheckResult {
  bool consistent = false;  // stored grading equals the recomputation
  bool accepted = false;    // the recomputed acceptance bit
  std::vector<std::string> mismatches;
};

// Regrades every round from the stored observations and diffs the result
// against the stored grading.
RecheckResult recheck(const session::SessionReport& stored);

// Writes report.json, rounds.csv, phase1_hist.csv, phase2_hist.csv under
// `out_dir` (created if needed).
void write_report_files(const session::SessionReport& rep,
                        const std::string& out_dir);

}  // namespace rzkp::report

#endif  // RZKP_REPORT_HPP_
