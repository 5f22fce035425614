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

#include "rzkp/wire.hpp"

#include <cstring>

#include "rzkp/errors.hpp"

namespace rzkp::wire {

void put_u32(std::vector<uint8_t>& out, uint32_t v) {
  out.push_back(static_cast<uint8_t>(v >> 24));
  out.push_back(static_cast<uint8_t>(v >> 16));
  out.push_back(static_cast<uint8_t>(v >> 8));
  out.push_back(static_cast<uint8_t>(v));
}

void put_i64(std::vector<uint8_t>& out, int64_t v) {
  auto u = static_cast<uint64_t>(v);
  for (int shift = 56; shift >= 0; shift -= 8) {
    out.push_back(static_cast<uint8_t>(u >> shift));
  }
}

uint32_t get_u32(const uint8_t* p) {
  return (static_cast<uint32_t>(p[0]) << 24) |
         (static_cast<uint32_t>(p[1]) << 16) |
         (static_cast<uint32_t>(p[2]) << 8) | static_cast<uint32_t>(p[3]);
}

int64_t get_i64(const uint8_t* p) {
  uint64_t u = 0;
  for (int i = 0; i < 8; ++i) u = (u << 8) | p[i];
  return static_cast<int64_t>(u);
}

namespace {

bool valid_type(uint8_t t) { return t >= 1 && t <= 6; }

// Cursor over a payload; all readers return false when the payload is too
// short or holds an out-of-range value.
struct Reader {
  const std::vector<uint8_t>& p;
  size_t pos = 0;

  bool u8(uint8_t& out) {
    if (pos + 1 > p.size()) return false;
    out = p[pos++];
    return true;
  }
  bool u32(uint32_t& out) {
    if (pos + 4 > p.size()) return false;
    out = get_u32(p.data() + pos);
    pos += 4;
    return true;
  }
  bool i64(int64_t& out) {
    if (pos + 8 > p.size()) return false;
    out = get_i64(p.data() + pos);
    pos += 8;
    return true;
  }
  bool fe(fq::FieldElement& out, const fq::FieldParamsPtr& params) {
    const size_t w = params->byte_width();
    if (pos + w > p.size()) return false;
    auto v = fq::from_bytes(p.data() + pos, w, params);
    if (!v) return false;
    pos += w;
    out = *v;
    return true;
  }
  bool done() const { return pos == p.size(); }
};

void append_fe(std::vector<uint8_t>& out, const fq::FieldElement& v) {
  auto bytes = fq::to_bytes(v);
  out.insert(out.end(), bytes.begin(), bytes.end());
}

}  // namespace

std::vector<uint8_t> serialize(const Frame& f) {
  if (f.payload.size() > kMaxPayload) {
    throw Error("wire: payload exceeds the frame size cap");
  }
  std::vector<uint8_t> out;
  out.reserve(kHeaderBytes + f.payload.size());
  for (uint8_t m : kMagic) out.push_back(m);
  out.push_back(kVersion);
  out.push_back(static_cast<uint8_t>(f.type));
  put_u32(out, f.round);
  put_u32(out, static_cast<uint32_t>(f.payload.size()));
  out.insert(out.end(), f.payload.begin(), f.payload.end());
  return out;
}

void FrameParser::feed(const uint8_t* data, size_t len) {
  buf_.insert(buf_.end(), data, data + len);
}

std::optional<Frame> FrameParser::next() {
  if (buf_.size() - pos_ < kHeaderBytes) {
    // Reclaim consumed space once nothing is in flight.
    if (pos_ > 0 && pos_ == buf_.size()) {
      buf_.clear();
      pos_ = 0;
    }
    return std::nullopt;
  }
  const uint8_t* h = buf_.data() + pos_;
  if (std::memcmp(h, kMagic.data(), kMagic.size()) != 0) {
    throw NetError("wire: bad frame magic");
  }
  if (h[4] != kVersion) throw NetError("wire: unsupported frame version");
  if (!valid_type(h[5])) throw NetError("wire: unknown frame type");
  const uint32_t len = get_u32(h + 10);
  if (len > kMaxPayload) throw NetError("wire: frame length exceeds cap");
  if (buf_.size() - pos_ < kHeaderBytes + len) return std::nullopt;

  Frame f;
  f.type = static_cast<Type>(h[5]);
  f.round = get_u32(h + 6);
  f.payload.assign(h + kHeaderBytes, h + kHeaderBytes + len);
  pos_ += kHeaderBytes + len;
  if (pos_ == buf_.size()) {
    buf_.clear();
    pos_ = 0;
  }
  return f;
}

std::vector<uint8_t> pack_elements(const std::array<fq::FieldElement, 3>& v) {
  std::vector<uint8_t> out;
  for (const auto& x : v) append_fe(out, x);
  return out;
}

std::optional<std::array<fq::FieldElement, 3>> unpack_elements(
    const std::vector<uint8_t>& p, const fq::FieldParamsPtr& params) {
  Reader r{p};
  std::array<fq::FieldElement, 3> out;
  for (auto& x : out) {
    if (!r.fe(x, params)) return std::nullopt;
  }
  if (!r.done()) return std::nullopt;
  return out;
}

std::vector<uint8_t> pack_phase2_challenge(unsigned c) {
  if (c < 1 || c > 3) throw Error("wire: challenge must be 1, 2, or 3");
  return {static_cast<uint8_t>(c)};
}

std::optional<unsigned> unpack_phase2_challenge(
    const std::vector<uint8_t>& p) {
  if (p.size() != 1 || p[0] < 1 || p[0] > 3) return std::nullopt;
  return p[0];
}

std::vector<uint8_t> pack_reveals(const std::array<stern::Reveal, 2>& r) {
  std::vector<uint8_t> out;
  for (const auto& rv : r) {
    if (rv.index < 1 || rv.index > 3) {
      throw Error("wire: reveal index must be 1, 2, or 3");
    }
    out.push_back(static_cast<uint8_t>(rv.index));
    append_fe(out, rv.z);
    append_fe(out, rv.a);
  }
  return out;
}

std::optional<std::array<stern::Reveal, 2>> unpack_reveals(
    const std::vector<uint8_t>& p, const fq::FieldParamsPtr& params) {
  Reader r{p};
  std::array<stern::Reveal, 2> out;
  for (auto& rv : out) {
    uint8_t idx = 0;
    if (!r.u8(idx) || idx < 1 || idx > 3) return std::nullopt;
    rv.index = idx;
    if (!r.fe(rv.z, params)) return std::nullopt;
    if (!r.fe(rv.a, params)) return std::nullopt;
  }
  if (!r.done()) return std::nullopt;
  return out;
}

std::vector<uint8_t> pack_sync(const Sync& s) {
  std::vector<uint8_t> out;
  out.push_back(s.role);
  put_i64(out, s.t1_ns);
  return out;
}

std::optional<Sync> unpack_sync(const std::vector<uint8_t>& p) {
  Reader r{p};
  Sync s;
  if (!r.u8(s.role) || s.role < 1 || s.role > 4) return std::nullopt;
  if (!r.i64(s.t1_ns) || !r.done()) return std::nullopt;
  return s;
}

std::vector<uint8_t> pack_report_v1(const std::vector<RoundSeenByV1>& v) {
  std::vector<uint8_t> out;
  put_u32(out, static_cast<uint32_t>(v.size()));
  for (const auto& e : v) {
    put_u32(out, e.round);
    put_i64(out, e.tau1_ns);
    put_i64(out, e.theta1_ns);
    out.push_back(e.y_status);
    if (e.y_status == kStatusOk) {
      for (const auto& x : e.y) append_fe(out, x);
    }
  }
  return out;
}

std::optional<std::vector<RoundSeenByV1>> unpack_report_v1(
    const std::vector<uint8_t>& p, const fq::FieldParamsPtr& params) {
  Reader r{p};
  uint32_t count = 0;
  if (!r.u32(count) || count > kMaxPayload) return std::nullopt;
  std::vector<RoundSeenByV1> out(count);
  for (auto& e : out) {
    if (!r.u32(e.round) || !r.i64(e.tau1_ns) || !r.i64(e.theta1_ns) ||
        !r.u8(e.y_status) || e.y_status > kStatusMalformed) {
      return std::nullopt;
    }
    if (e.y_status == kStatusOk) {
      for (auto& x : e.y) {
        if (!r.fe(x, params)) return std::nullopt;
      }
    }
  }
  if (!r.done()) return std::nullopt;
  return out;
}

std::vector<uint8_t> pack_report_v2(const std::vector<RoundSeenByV2>& v) {
  std::vector<uint8_t> out;
  put_u32(out, static_cast<uint32_t>(v.size()));
  for (const auto& e : v) {
    put_u32(out, e.round);
    put_i64(out, e.tau2_ns);
    put_i64(out, e.theta2_ns);
    out.push_back(e.challenge);
    out.push_back(e.az_status);
    if (e.az_status == kStatusOk) {
      for (const auto& rv : e.reveals) {
        out.push_back(static_cast<uint8_t>(rv.index));
        append_fe(out, rv.z);
        append_fe(out, rv.a);
      }
    }
  }
  return out;
}

std::optional<std::vector<RoundSeenByV2>> unpack_report_v2(
    const std::vector<uint8_t>& p, const fq::FieldParamsPtr& params) {
  Reader r{p};
  uint32_t count = 0;
  if (!r.u32(count) || count > kMaxPayload) return std::nullopt;
  std::vector<RoundSeenByV2> out(count);
  for (auto& e : out) {
    if (!r.u32(e.round) || !r.i64(e.tau2_ns) || !r.i64(e.theta2_ns) ||
        !r.u8(e.challenge) || !r.u8(e.az_status) ||
        e.az_status > kStatusMalformed) {
      return std::nullopt;
    }
    if (e.az_status == kStatusOk) {
      for (auto& rv : e.reveals) {
        uint8_t idx = 0;
        if (!r.u8(idx) || idx < 1 || idx > 3) return std::nullopt;
        rv.index = idx;
        if (!r.fe(rv.z, params)) return std::nullopt;
        if (!r.fe(rv.a, params)) return std::nullopt;
      }
    }
  }
  if (!r.done()) return std::nullopt;
  return out;
}

}  // namespace rzkp::wire
