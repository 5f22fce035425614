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

#ifndef RZKP_WIRE_HPP_
#define RZKP_WIRE_HPP_

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "rzkp/fq.hpp"
#include "rzkp/stern.hpp"

// Everything that crosses a connection, bit-exactly.
//
// Frame layout: 4-byte magic "RZKP", 1-byte version (1), 1-byte type,
// 4-byte big-endian round index, 4-byte big-endian payload length, payload.
// Field elements inside payloads are fixed-width big-endian at the field's
// byte width, so serialization stays off the latency budget: no varints,
// no length scans.
namespace rzkp::wire {

inline constexpr std::array<uint8_t, 4> kMagic = {'R', 'Z', 'K', 'P'};
inline constexpr uint8_t kVersion = 1;
inline constexpr size_t kHeaderBytes = 14;
inline constexpr uint32_t kMaxPayload = 64u << 20;

enum class Type : uint8_t {
  kPhase1Challenge = 1,  // V1 -> P1: three field elements b
  kPhase1Response = 2,   // P1 -> V1: three field elements y
  kPhase2Challenge = 3,  // V2 -> P2: one byte, the challenge 1..3
  kPhase2Response = 4,   // P2 -> V2: two openings (index, z, a)
  kSync = 5,             // role hello and session-epoch distribution
  kReport = 6,           // verifier transcript halves, after the last round
};

struct Frame {
  Type type = Type::kSync;
  uint32_t round = 0;
  std::vector<uint8_t> payload;

  bool operator==(const Frame&) const = default;
};

std::vector<uint8_t> serialize(const Frame& f);

// Incremental stream parser: feed bytes as they arrive, pop frames as they
// complete. Throws NetError on malformed headers (bad magic, version, type,
// or an oversized length); payload contents are not interpreted here.
class FrameParser {
 public:
  void feed(const uint8_t* data, size_t len);
  std::optional<Frame> next();

 private:
  std::vector<uint8_t> buf_;
  size_t pos_ = 0;  // parse cursor into buf_
};

// --- Payload packers ---------------------------------------------------
//
// Unpackers return nullopt on any malformation (wrong size, out-of-range
// field value, bad index): a malformed payload is a protocol outcome that
// the verifier classifies, not an exception.

std::vector<uint8_t> pack_elements(const std::array<fq::FieldElement, 3>& v);
std::optional<std::array<fq::FieldElement, 3>> unpack_elements(
    const std::vector<uint8_t>& p, const fq::FieldParamsPtr& params);

std::vector<uint8_t> pack_phase2_challenge(unsigned c);
std::optional<unsigned> unpack_phase2_challenge(const std::vector<uint8_t>& p);

std::vector<uint8_t> pack_reveals(const std::array<stern::Reveal, 2>& r);
std::optional<std::array<stern::Reveal, 2>> unpack_reveals(
    const std::vector<uint8_t>& p, const fq::FieldParamsPtr& params);

// Sync: 1-byte role id (1=P1, 2=P2, 3=V1, 4=V2), 8-byte big-endian session
// epoch in ns (0 = hello only, epoch not yet known).
struct Sync {
  uint8_t role = 0;
  int64_t t1_ns = 0;
};
std::vector<uint8_t> pack_sync(const Sync& s);
std::optional<Sync> unpack_sync(const std::vector<uint8_t>& p);

// --- Verifier transcript halves ------------------------------------------
//
// After the last round V1 and V2 swap what each one measured; challenges are
// re-derived from the shared verifier seed, so only observations travel.
// status: 0 = nothing arrived, 1 = arrived and parsed, 2 = arrived malformed.

inline constexpr uint8_t kStatusMissing = 0;
inline constexpr uint8_t kStatusOk = 1;
inline constexpr uint8_t kStatusMalformed = 2;

struct RoundSeenByV1 {
  uint32_t round = 0;
  int64_t tau1_ns = -1;   // when the phase-1 challenge left
  int64_t theta1_ns = -1;  // when the response finished arriving (-1: never)
  uint8_t y_status = kStatusMissing;
  std::array<fq::FieldElement, 3> y;
};

struct RoundSeenByV2 {
  uint32_t round = 0;
  int64_t tau2_ns = -1;
  int64_t theta2_ns = -1;
  uint8_t challenge = 0;
  uint8_t az_status = kStatusMissing;
  std::array<stern::Reveal, 2> reveals;
};

std::vector<uint8_t> pack_report_v1(const std::vector<RoundSeenByV1>& v);
std::optional<std::vector<RoundSeenByV1>> unpack_report_v1(
    const std::vector<uint8_t>& p, const fq::FieldParamsPtr& params);

std::vector<uint8_t> pack_report_v2(const std::vector<RoundSeenByV2>& v);
std::optional<std::vector<RoundSeenByV2>> unpack_report_v2(
    const std::vector<uint8_t>& p, const fq::FieldParamsPtr& params);

// --- Byte-order helpers (exposed for tests) -------------------------------
void put_u32(std::vector<uint8_t>& out, uint32_t v);
void put_i64(std::vector<uint8_t>& out, int64_t v);
uint32_t get_u32(const uint8_t* p);
int64_t get_i64(const uint8_t* p);

}  // namespace rzkp::wire

#endif  // RZKP_WIRE_HPP_
