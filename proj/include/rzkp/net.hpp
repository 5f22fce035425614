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

#ifndef RZKP_NET_HPP_
#define RZKP_NET_HPP_

#include <cstdint>
#include <memory>
#include <optional>

#include "rzkp/wire.hpp"

// Role code shared by every transport: a nanosecond clock plus ordered,
// lossy, framed point-to-point channels. The simulated backend runs on a
// deterministic virtual clock; the TCP backend runs on the system clock.
namespace rzkp::net {

class Clock {
 public:
  virtual ~Clock() = default;
  // Nanoseconds since the backend's epoch (Unix epoch for the system
  // clock, 0 for a virtual clock). Monotonic within a session.
  virtual int64_t now_ns() = 0;
  virtual void sleep_until(int64_t t_ns) = 0;
};

// Wall-clock backend: a monotonic counter anchored to the wall clock once at
// construction, so timestamps are comparable across processes on one host
// (plus an adjustable per-role offset for skew experiments).
class SystemClock : public Clock {
 public:
  explicit SystemClock(int64_t offset_ns = 0);
  int64_t now_ns() override;
  void sleep_until(int64_t t_ns) override;

 private:
  int64_t anchor_wall_ns_;
  int64_t anchor_steady_ns_;
  int64_t offset_ns_;
};

class Channel {
 public:
  virtual ~Channel() = default;
  // Queues a frame; never blocks the caller for transmission delay. A send
  // into a dead connection is a silent no-op: loss is a protocol outcome.
  virtual void send(const wire::Frame& f) = 0;
  // Next frame that has fully arrived by the deadline, in arrival order;
  // nullopt once the clock passes deadline_ns with nothing deliverable.
  virtual std::optional<wire::Frame> recv(int64_t deadline_ns) = 0;
};

using ChannelPtr = std::shared_ptr<Channel>;

}  // namespace rzkp::net

#endif  // RZKP_NET_HPP_
