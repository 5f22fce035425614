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

#include "rzkp/net.hpp"

#include <chrono>
#include <thread>

namespace rzkp::net {

namespace {

int64_t steady_now_ns() {
  return std::chrono::duration_cast<std::chrono::nanoseconds>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

int64_t wall_now_ns() {
  return std::chrono::duration_cast<std::chrono::nanoseconds>(
             std::chrono::system_clock::now().time_since_epoch())
      .count();
}

}  // namespace

SystemClock::SystemClock(int64_t offset_ns)
    : anchor_wall_ns_(wall_now_ns()),
      anchor_steady_ns_(steady_now_ns()),
      offset_ns_(offset_ns) {}

int64_t SystemClock::now_ns() {
  return anchor_wall_ns_ + (steady_now_ns() - anchor_steady_ns_) + offset_ns_;
}

void SystemClock::sleep_until(int64_t t_ns) {
  const int64_t target_steady = anchor_steady_ns_ + (t_ns - anchor_wall_ns_) -
                                offset_ns_;
  for (;;) {
    const int64_t gap = target_steady - steady_now_ns();
    if (gap <= 0) return;
    // Coarse sleep, then a short timed wait to land near the target without
    // burning the core.
    if (gap > 200'000) {
      std::this_thread::sleep_for(std::chrono::nanoseconds(gap - 100'000));
    } else {
      std::this_thread::sleep_for(std::chrono::nanoseconds(gap));
    }
  }
}

}  // namespace rzkp::net
