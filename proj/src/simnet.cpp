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

#include "rzkp/simnet.hpp"

#include <algorithm>
#include <limits>
#include <utility>

#include "rzkp/errors.hpp"

namespace rzkp::sim {

namespace {
constexpr int64_t kNever = std::numeric_limits<int64_t>::max();
}

// Per-participant clock view. All state lives in the network; the handle
// only carries identity.
class SimClockHandle : public net::Clock {
 public:
  explicit SimClockHandle(SimNetwork& net) : net_(net) {}

  int64_t now_ns() override {
    std::unique_lock<std::mutex> lk(net_.mu_);
    return net_.now_;
  }

  void sleep_until(int64_t t_ns) override {
    std::unique_lock<std::mutex> lk(net_.mu_);
    while (net_.now_ < t_ns) {
      SimNetwork::Waiter w;
      net_.block(lk, w, t_ns);
    }
  }

 private:
  SimNetwork& net_;
};

class SimEndpoint : public net::Channel {
 public:
  SimEndpoint(SimNetwork& net, std::shared_ptr<SimNetwork::Direction> out,
              std::shared_ptr<SimNetwork::Direction> in)
      : net_(net), out_(std::move(out)), in_(std::move(in)) {}

  void send(const wire::Frame& f) override {
    std::unique_lock<std::mutex> lk(net_.mu_);
    auto& d = *out_;
    if (d.cfg.drop_prob > 0.0 && d.rng.next_double() < d.cfg.drop_prob) {
      return;
    }
    int64_t extra = 0;
    if (d.cfg.jitter_ns > 0) {
      extra = static_cast<int64_t>(
          d.rng.below(static_cast<uint64_t>(d.cfg.jitter_ns) + 1));
    }
    int64_t arrival = net_.now_ + d.cfg.delay_ns + extra;
    // Frames on one direction never overtake each other.
    arrival = std::max(arrival, d.last_arrival);
    d.last_arrival = arrival;
    d.queue.emplace_back(arrival, f);
    if (d.reader != nullptr) {
      if (arrival <= net_.now_) {
        net_.wake_locked(d.reader);
      } else {
        d.reader->wake_at = std::min(d.reader->wake_at, arrival);
      }
    }
  }

  std::optional<wire::Frame> recv(int64_t deadline_ns) override {
    std::unique_lock<std::mutex> lk(net_.mu_);
    auto& d = *in_;
    for (;;) {
      if (!d.queue.empty() && d.queue.front().first <= net_.now_) {
        wire::Frame f = std::move(d.queue.front().second);
        d.queue.pop_front();
        return f;
      }
      const bool has_pending = !d.queue.empty();
      if (net_.now_ >= deadline_ns) return std::nullopt;
      int64_t wake = deadline_ns;
      if (has_pending) wake = std::min(wake, d.queue.front().first);
      SimNetwork::Waiter w;
      d.reader = &w;
      net_.block(lk, w, wake);
      d.reader = nullptr;
    }
  }

 private:
  SimNetwork& net_;
  std::shared_ptr<SimNetwork::Direction> out_;
  std::shared_ptr<SimNetwork::Direction> in_;
};

SimNetwork::SimNetwork(const Rng& seed) : seed_(seed) {}

SimNetwork::~SimNetwork() = default;

net::Clock* SimNetwork::add_participant() {
  std::unique_lock<std::mutex> lk(mu_);
  ++active_;
  clocks_.push_back(std::make_unique<SimClockHandle>(*this));
  return clocks_.back().get();
}

void SimNetwork::leave() {
  std::unique_lock<std::mutex> lk(mu_);
  if (active_ == 0) throw Error("simnet: leave without a participant");
  --active_;
  maybe_advance_locked();
}

std::pair<net::ChannelPtr, net::ChannelPtr> SimNetwork::make_link(
    const std::string& name, const LinkConfig& ab, const LinkConfig& ba) {
  std::unique_lock<std::mutex> lk(mu_);
  auto fwd = std::make_shared<Direction>(ab, seed_.derive(name, 0));
  auto rev = std::make_shared<Direction>(ba, seed_.derive(name, 1));
  directions_.push_back(fwd);
  directions_.push_back(rev);
  auto a = std::make_shared<SimEndpoint>(*this, fwd, rev);
  auto b = std::make_shared<SimEndpoint>(*this, rev, fwd);
  return {a, b};
}

int64_t SimNetwork::current_time_ns() {
  std::unique_lock<std::mutex> lk(mu_);
  return now_;
}

void SimNetwork::wake_locked(Waiter* w) {
  auto it = std::find(blocked_.begin(), blocked_.end(), w);
  if (it != blocked_.end()) blocked_.erase(it);
  w->ready = true;
  w->cv.notify_one();
}

void SimNetwork::block(std::unique_lock<std::mutex>& lk, Waiter& w,
                       int64_t wake_at) {
  w.wake_at = wake_at;
  w.ready = false;
  blocked_.push_back(&w);
  maybe_advance_locked();
  while (!w.ready) w.cv.wait(lk);
}

void SimNetwork::maybe_advance_locked() {
  if (active_ == 0 || blocked_.size() < active_) return;
  if (blocked_.size() > active_) {
    throw Error("simnet: more blocked threads than participants");
  }
  int64_t next = kNever;
  for (const Waiter* w : blocked_) next = std::min(next, w->wake_at);
  if (next == kNever) {
    throw Error("simnet: every participant is blocked without a deadline");
  }
  now_ = std::max(now_, next);
  for (size_t i = 0; i < blocked_.size();) {
    if (blocked_[i]->wake_at <= now_) {
      Waiter* w = blocked_[i];
      blocked_.erase(blocked_.begin() + static_cast<ptrdiff_t>(i));
      w->ready = true;
      w->cv.notify_one();
    } else {
      ++i;
    }
  }
}

}  // namespace rzkp::sim
