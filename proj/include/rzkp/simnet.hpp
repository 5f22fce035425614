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

#ifndef RZKP_SIMNET_HPP_
#define RZKP_SIMNET_HPP_

#include <condition_variable>
#include <cstdint>
#include <deque>
#include <memory>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "rzkp/net.hpp"
#include "rzkp/rng.hpp"

// Deterministic in-process network on a virtual clock.
//
// Each registered participant runs on its own OS thread but computation
// consumes no virtual time: the clock only moves when every participant is
// blocked (sleeping or waiting to receive), and then it jumps straight to the
// earliest wake-up time. Link latency, jitter, and loss are driven by
// per-direction seeded generators, so a session replays bit-identically.
namespace rzkp::sim {

struct LinkConfig {
  int64_t delay_ns = 0;       // fixed one-way latency
  int64_t jitter_ns = 0;      // extra uniform delay in [0, jitter_ns]
  double drop_prob = 0.0;     // per-frame loss probability
};

class SimEndpoint;

class SimNetwork {
 public:
  // `seed` drives every link's jitter and loss; links derive their own
  // independent streams from it and the link name.
  explicit SimNetwork(const Rng& seed);
  ~SimNetwork();

  SimNetwork(const SimNetwork&) = delete;
  SimNetwork& operator=(const SimNetwork&) = delete;

  // Call once per participant thread, before any of them starts running.
  // Returns the participant's clock handle (owned by the network).
  net::Clock* add_participant();
  // A participant that is done must leave, or the clock stalls forever.
  void leave();

  // Creates a bidirectional connection; first endpoint sends over `ab`,
  // second over `ba`. The name seeds the per-direction randomness.
  std::pair<net::ChannelPtr, net::ChannelPtr> make_link(
      const std::string& name, const LinkConfig& ab, const LinkConfig& ba);

  int64_t current_time_ns();

 private:
  friend class SimEndpoint;
  friend class SimClockHandle;

  struct Waiter {
    int64_t wake_at = 0;
    bool ready = false;
    std::condition_variable cv;
  };

  struct Direction {
    Direction(const LinkConfig& c, Rng r) : cfg(c), rng(std::move(r)) {}

    LinkConfig cfg;
    Rng rng;
    std::deque<std::pair<int64_t, wire::Frame>> queue;  // (arrival, frame)
    int64_t last_arrival = 0;  // per-direction FIFO: arrivals never reorder
    Waiter* reader = nullptr;  // participant currently blocked on recv
  };

  void block(std::unique_lock<std::mutex>& lk, Waiter& w, int64_t wake_at);
  void wake_locked(Waiter* w);
  void maybe_advance_locked();

  std::mutex mu_;
  int64_t now_ = 0;
  size_t active_ = 0;
  std::vector<Waiter*> blocked_;
  Rng seed_;
  std::vector<std::unique_ptr<net::Clock>> clocks_;
  std::vector<std::shared_ptr<Direction>> directions_;
};

}  // namespace rzkp::sim

#endif  // RZKP_SIMNET_HPP_
