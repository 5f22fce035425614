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

#include "rzkp/tcpnet.hpp"

#include <arpa/inet.h>
#include <netdb.h>
#include <netinet/in.h>
#include <netinet/tcp.h>
#include <poll.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <memory>

#include "rzkp/errors.hpp"

namespace rzkp::tcpnet {

namespace {

constexpr int64_t kDialRetryNs = 50'000'000;  // 50 ms between attempts

std::string errno_text(const char* what) {
  return std::string(what) + ": " + std::strerror(errno);
}

void set_nodelay(int fd) {
  int one = 1;
  ::setsockopt(fd, IPPROTO_TCP, TCP_NODELAY, &one, sizeof one);
}

// Remaining wait in whole milliseconds, rounded up so a sub-millisecond
// budget still polls once instead of busy-spinning.
int poll_timeout_ms(int64_t deadline_ns, int64_t now_ns) {
  const int64_t remaining = deadline_ns - now_ns;
  if (remaining <= 0) return 0;
  const int64_t ms = (remaining + 999'999) / 1'000'000;
  return ms > 60'000 ? 60'000 : static_cast<int>(ms);
}

}  // namespace

const char* role_name(uint8_t role) {
  switch (role) {
    case kRoleP1:
      return "p1";
    case kRoleP2:
      return "p2";
    case kRoleV1:
      return "v1";
    case kRoleV2:
      return "v2";
    default:
      return "unknown";
  }
}

TcpChannel::TcpChannel(int fd, net::Clock* clock) : fd_(fd), clock_(clock) {
  set_nodelay(fd_);
}

TcpChannel::~TcpChannel() {
  if (fd_ >= 0) ::close(fd_);
}

void TcpChannel::send(const wire::Frame& f) {
  if (dead_) return;
  const std::vector<uint8_t> bytes = wire::serialize(f);
  size_t off = 0;
  while (off < bytes.size()) {
    const ssize_t n =
        ::send(fd_, bytes.data() + off, bytes.size() - off, MSG_NOSIGNAL);
    if (n >= 0) {
      off += static_cast<size_t>(n);
      continue;
    }
    if (errno == EINTR) continue;
    dead_ = true;  // peer gone: the frame is simply lost
    return;
  }
}

std::optional<wire::Frame> TcpChannel::recv(int64_t deadline_ns) {
  for (;;) {
    if (auto f = parser_.next()) return f;
    if (dead_) return std::nullopt;  // EOF and the buffer is drained

    const int timeout = poll_timeout_ms(deadline_ns, clock_->now_ns());
    if (timeout == 0) return std::nullopt;

    struct pollfd p = {};
    p.fd = fd_;
    p.events = POLLIN;
    const int rc = ::poll(&p, 1, timeout);
    if (rc < 0) {
      if (errno == EINTR) continue;
      dead_ = true;
      continue;
    }
    if (rc == 0) continue;  // re-check the deadline against the clock

    uint8_t buf[64 * 1024];
    const ssize_t n = ::read(fd_, buf, sizeof buf);
    if (n > 0) {
      parser_.feed(buf, static_cast<size_t>(n));
    } else if (n == 0) {
      dead_ = true;  // orderly shutdown; deliver what already arrived
    } else if (errno != EINTR) {
      dead_ = true;
    }
  }
}

Listener::Listener(uint16_t port) : fd_(::socket(AF_INET, SOCK_STREAM, 0)) {
  if (fd_ < 0) throw NetError(errno_text("listen: socket"));
  int one = 1;
  ::setsockopt(fd_, SOL_SOCKET, SO_REUSEADDR, &one, sizeof one);

  sockaddr_in addr = {};
  addr.sin_family = AF_INET;
  addr.sin_addr.s_addr = htonl(INADDR_ANY);
  addr.sin_port = htons(port);
  if (::bind(fd_, reinterpret_cast<sockaddr*>(&addr), sizeof addr) < 0) {
    const std::string msg = errno_text("listen: bind");
    ::close(fd_);
    throw NetError(msg);
  }
  if (::listen(fd_, 8) < 0) {
    const std::string msg = errno_text("listen");
    ::close(fd_);
    throw NetError(msg);
  }
  socklen_t len = sizeof addr;
  if (::getsockname(fd_, reinterpret_cast<sockaddr*>(&addr), &len) < 0) {
    const std::string msg = errno_text("listen: getsockname");
    ::close(fd_);
    throw NetError(msg);
  }
  port_ = ntohs(addr.sin_port);
}

Listener::~Listener() {
  if (fd_ >= 0) ::close(fd_);
}

net::ChannelPtr Listener::accept(net::Clock& clock, int64_t deadline_ns) {
  for (;;) {
    const int timeout = poll_timeout_ms(deadline_ns, clock.now_ns());
    if (timeout == 0) return nullptr;

    struct pollfd p = {};
    p.fd = fd_;
    p.events = POLLIN;
    const int rc = ::poll(&p, 1, timeout);
    if (rc < 0 && errno != EINTR) throw NetError(errno_text("accept: poll"));
    if (rc <= 0) continue;

    const int conn = ::accept(fd_, nullptr, nullptr);
    if (conn < 0) {
      if (errno == EINTR || errno == ECONNABORTED) continue;
      throw NetError(errno_text("accept"));
    }
    return std::make_shared<TcpChannel>(conn, &clock);
  }
}

net::ChannelPtr dial(const std::string& host, uint16_t port, net::Clock& clock,
                     int64_t deadline_ns) {
  addrinfo hints = {};
  hints.ai_family = AF_INET;
  hints.ai_socktype = SOCK_STREAM;
  addrinfo* res = nullptr;
  const std::string service = std::to_string(port);
  const int gai = ::getaddrinfo(host.c_str(), service.c_str(), &hints, &res);
  if (gai != 0) {
    throw NetError("dial " + host + ":" + service + ": " +
                   ::gai_strerror(gai));
  }
  const std::unique_ptr<addrinfo, void (*)(addrinfo*)> guard(res,
                                                             ::freeaddrinfo);

  std::string last_error = "no addresses";
  for (;;) {
    for (const addrinfo* ai = res; ai != nullptr; ai = ai->ai_next) {
      const int fd = ::socket(ai->ai_family, ai->ai_socktype, ai->ai_protocol);
      if (fd < 0) {
        last_error = errno_text("socket");
        continue;
      }
      if (::connect(fd, ai->ai_addr, ai->ai_addrlen) == 0) {
        return std::make_shared<TcpChannel>(fd, &clock);
      }
      last_error = errno_text("connect");
      ::close(fd);
    }
    const int64_t now = clock.now_ns();
    if (now + kDialRetryNs >= deadline_ns) {
      throw NetError("dial " + host + ":" + service + ": " + last_error);
    }
    clock.sleep_until(now + kDialRetryNs);  // peer may still be starting up
  }
}

void send_hello(net::Channel& ch, uint8_t role) {
  ch.send({wire::Type::kSync, 0, wire::pack_sync({role, 0})});
}

uint8_t recv_hello(net::Channel& ch, int64_t deadline_ns) {
  while (auto f = ch.recv(deadline_ns)) {
    if (f->type != wire::Type::kSync) continue;
    if (auto s = wire::unpack_sync(f->payload)) return s->role;
  }
  return 0;
}

HostPort parse_host_port(const std::string& s) {
  const size_t colon = s.rfind(':');
  if (colon == std::string::npos || colon == 0 || colon + 1 == s.size()) {
    throw ConfigError("endpoint '" + s + "' is not host:port");
  }
  HostPort hp;
  hp.host = s.substr(0, colon);
  unsigned long port = 0;
  try {
    size_t used = 0;
    port = std::stoul(s.substr(colon + 1), &used);
    if (used != s.size() - colon - 1) throw std::invalid_argument("");
  } catch (const std::exception&) {
    throw ConfigError("endpoint '" + s + "' has a malformed port");
  }
  if (port == 0 || port > 65535) {
    throw ConfigError("endpoint '" + s + "' port out of range");
  }
  hp.port = static_cast<uint16_t>(port);
  return hp;
}

namespace {

net::ChannelPtr dial_with_hello(const HostPort& to, uint8_t my_role,
                                net::Clock& clock, int64_t deadline_ns) {
  net::ChannelPtr ch = dial(to.host, to.port, clock, deadline_ns);
  send_hello(*ch, my_role);
  return ch;
}

net::ChannelPtr accept_role(Listener& l, uint8_t expected, net::Clock& clock,
                            int64_t deadline_ns) {
  net::ChannelPtr ch = l.accept(clock, deadline_ns);
  if (!ch) {
    throw NetError(std::string("setup: ") + role_name(expected) +
                   " never connected");
  }
  const uint8_t got = recv_hello(*ch, deadline_ns);
  if (got != expected) {
    throw NetError(std::string("setup: expected hello from ") +
                   role_name(expected) + ", got " + role_name(got));
  }
  return ch;
}

}  // namespace

RoleLinks connect_role(uint8_t role, const Endpoints& eps, net::Clock& clock,
                       int64_t deadline_ns) {
  RoleLinks links;
  switch (role) {
    case kRoleP1: {
      Listener l(eps.p1.port);
      links.b = dial_with_hello(eps.p2, kRoleP1, clock, deadline_ns);
      links.a = accept_role(l, kRoleV1, clock, deadline_ns);
      return links;
    }
    case kRoleP2: {
      Listener l(eps.p2.port);
      // V2 and P1 dial in whichever order they come up.
      net::ChannelPtr first = l.accept(clock, deadline_ns);
      if (!first) throw NetError("setup: nobody dialed p2");
      const uint8_t who = recv_hello(*first, deadline_ns);
      if (who == kRoleV2) {
        links.a = first;
        links.b = accept_role(l, kRoleP1, clock, deadline_ns);
      } else if (who == kRoleP1) {
        links.b = first;
        links.a = accept_role(l, kRoleV2, clock, deadline_ns);
      } else {
        throw NetError(std::string("setup: unexpected hello from ") +
                       role_name(who));
      }
      return links;
    }
    case kRoleV1: {
      links.a = dial_with_hello(eps.p1, kRoleV1, clock, deadline_ns);
      links.b = dial_with_hello(eps.v2, kRoleV1, clock, deadline_ns);
      return links;
    }
    case kRoleV2: {
      Listener l(eps.v2.port);
      links.a = dial_with_hello(eps.p2, kRoleV2, clock, deadline_ns);
      links.b = accept_role(l, kRoleV1, clock, deadline_ns);
      return links;
    }
    default:
      throw ConfigError("connect_role: role id must be 1..4");
  }
}

}  // namespace rzkp::tcpnet
