// Copyright 2026 The PhantomNet Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PHANTOMNET_ADVERSARY_H_
#define PHANTOMNET_ADVERSARY_H_

#include <cstddef>
#include <optional>
#include <string_view>

#include "phantomnet/baselines.h"
#include "phantomnet/network.h"
#include "phantomnet/psspr.h"
#include "phantomnet/trace.h"

namespace phantomnet {

// The patient hunter: starts at the sink and steps back to the sender of
// each packet it overhears.
struct AdversaryState {
  NodeId at{};
  std::size_t moves = 0;
  bool captured = false;

  static AdversaryState AtSink(const Network& network) {
    return {network.sink(), 0, false};
  }
};

// Replays one packet in transmission order. The adversary relocates to the
// sender of the first transmission whose sender lies within r of its
// perch; later transmissions of the same packet are downstream of that
// sender and are ignored. Capture means sitting on the source or within r0
// of it, and is sticky.
AdversaryState ObservePacket(const Network& network, AdversaryState state,
                             const RouteTrace& trace);

bool IsCaptured(const Network& network, NodeId at, NodeId source);

enum class Protocol { kPsspr, kHbdrw, kPusbrf, kShortestPath };

std::string_view ProtocolName(Protocol p);
// Accepts the names ProtocolName produces, case-insensitively. Throws
// ValidationError.
Protocol ParseProtocol(std::string_view name);

// Everything needed to route packets for one protocol at one sweep point.
struct ProtocolSpec {
  Protocol protocol = Protocol::kPsspr;
  int h = 5;  // walk hops for the baselines
  SectorParams sector{4, 6, 6};
  PssprOptions psspr;
};

// Stateful per-session router; builds per-source caches once.
class PacketRouter {
 public:
  PacketRouter(const Network& network, NodeId source, const ProtocolSpec& spec);
  RouteTrace Route(Rng& rng) const;

 private:
  const Network* network_;
  NodeId source_;
  ProtocolSpec spec_;
  std::optional<PssprRouter> psspr_;
  std::optional<SourceHopField> field_;
};

struct RunMetrics {
  std::size_t safety_time = 0;  // packets sent up to and including capture
  std::size_t packets = 0;
  std::size_t total_hops = 0;
  std::size_t delivered = 0;
  std::size_t failure_paths = 0;
  bool captured = false;

  double mean_hops_per_packet() const {
    return packets == 0 ? 0.0 : static_cast<double>(total_hops) / packets;
  }
};

// Sends packets from `source` until capture or max_packets. Throws
// InvalidParameter when max_packets is 0.
RunMetrics RunSession(const Network& network, const ProtocolSpec& spec,
                      NodeId source, std::size_t max_packets, Rng& rng);

}  // namespace phantomnet

#endif  // PHANTOMNET_ADVERSARY_H_
