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

#ifndef RZKP_TCPNET_HPP_
#define RZKP_TCPNET_HPP_

#include <cstdint>
#include <optional>
#include <string>

#include "rzkp/net.hpp"
#include "rzkp/wire.hpp"

// Real-network backend: framed channels over TCP (one connection per link,
// TCP_NODELAY so challenge/response latency is wire latency). All deadlines
// are in the caller's clock domain; remaining time is recomputed against the
// clock on every wait, so per-role clock offsets behave the same way they do
// on the virtual backend.
namespace rzkp::tcpnet {

// Role ids reused from the SYNC wire format.
inline constexpr uint8_t kRoleP1 = 1;
inline constexpr uint8_t kRoleP2 = 2;
inline constexpr uint8_t kRoleV1 = 3;
inline constexpr uint8_t kRoleV2 = 4;

const char* role_name(uint8_t role);

// A connected stream socket speaking the frame format. Owns the descriptor.
// A send into a broken connection is a silent no-op (loss is a protocol
// outcome, not a transport error); a corrupted byte stream throws NetError.
class TcpChannel : public net::Channel {
 public:
  TcpChannel(int fd, net::Clock* clock);
  ~TcpChannel() override;
  TcpChannel(const TcpChannel&) = delete;
  TcpChannel& operator=(const TcpChannel&) = delete;

  void send(const wire::Frame& f) override;
  std::optional<wire::Frame> recv(int64_t deadline_ns) override;

 private:
  int fd_;
  net::Clock* clock_;
  wire::FrameParser parser_;
  bool dead_ = false;
};

class Listener {
 public:
  // Binds and listens on the port (0 picks a free one, see port()).
  explicit Listener(uint16_t port);
  ~Listener();
  Listener(const Listener&) = delete;
  Listener& operator=(const Listener&) = delete;

  uint16_t port() const { return port_; }
  // Next inbound connection, or nullptr if none arrives by the deadline.
  net::ChannelPtr accept(net::Clock& clock, int64_t deadline_ns);

 private:
  int fd_;
  uint16_t port_ = 0;
};

// Dials host:port, retrying while the peer is still coming up. Throws
// NetError once the deadline passes without a connection.
net::ChannelPtr dial(const std::string& host, uint16_t port, net::Clock& clock,
                     int64_t deadline_ns);

// Connection handshake: every dialer introduces itself with an epoch-free
// SYNC so an acceptor with several inbound links can tell them apart.
void send_hello(net::Channel& ch, uint8_t role);
// Role id from the peer's hello; 0 if none arrives by the deadline.
uint8_t recv_hello(net::Channel& ch, int64_t deadline_ns);

struct HostPort {
  std::string host;
  uint16_t port = 0;
};
// "host:port" -> parts; throws ConfigError on anything else.
HostPort parse_host_port(const std::string& s);

// Listen addresses for the three accepting roles (V1 only dials).
struct Endpoints {
  HostPort p1, p2, v2;
};

// The two links a role needs, in a fixed order:
//   P1: {to V1,   to P2 (relay)}     P2: {to V2,   to P1 (relay)}
//   V1: {to P1,   to V2}             V2: {to P2,   to V1}
// The relay link is always established; honest provers simply never use it.
struct RoleLinks {
  net::ChannelPtr a, b;
};

// Brings up this role's side of the session topology: listeners first (so
// early dialers queue in the backlog), then outbound dials, then inbound
// accepts matched by hello. Throws NetError if the topology is not complete
// by the deadline.
RoleLinks connect_role(uint8_t role, const Endpoints& eps, net::Clock& clock,
                       int64_t deadline_ns);

}  // namespace rzkp::tcpnet

#endif  // RZKP_TCPNET_HPP_
