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

#include "phantomnet/adversary.h"

#include <algorithm>
#include <cctype>
#include <string>

#include <fmt/format.h>

#include "phantomnet/error.h"

namespace phantomnet {

bool IsCaptured(const Network& network, NodeId at, NodeId source) {
  if (at == source) return true;
  const double r0 = network.visible_radius();
  return SquaredDistance(network.position(at), network.position(source)) <=
         r0 * r0;
}

AdversaryState ObservePacket(const Network& network, AdversaryState state,
                             const RouteTrace& trace) {
  if (state.captured) return state;
  const double r2 = network.radius() * network.radius();
  const Point perch = network.position(state.at);
  for (std::size_t i = 0; i + 1 < trace.hops.size(); ++i) {
    const NodeId sender = trace.hops[i];
    if (SquaredDistance(network.position(sender), perch) <= r2) {
      state.at = sender;
      ++state.moves;
      break;
    }
  }
  state.captured = IsCaptured(network, state.at, trace.source());
  return state;
}

std::string_view ProtocolName(Protocol p) {
  switch (p) {
    case Protocol::kPsspr:
      return "psspr";
    case Protocol::kHbdrw:
      return "hbdrw";
    case Protocol::kPusbrf:
      return "pusbrf";
    case Protocol::kShortestPath:
      return "shortest";
  }
  return "unknown";
}

Protocol ParseProtocol(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  for (Protocol p : {Protocol::kPsspr, Protocol::kHbdrw, Protocol::kPusbrf,
                     Protocol::kShortestPath}) {
    if (lower == ProtocolName(p)) return p;
  }
  if (lower == "shortest-path" || lower == "shortest_path") {
    return Protocol::kShortestPath;
  }
  throw ValidationError(fmt::format("unknown protocol '{}'", name));
}

PacketRouter::PacketRouter(const Network& network, NodeId source,
                           const ProtocolSpec& spec)
    : network_(&network), source_(source), spec_(spec) {
  switch (spec.protocol) {
    case Protocol::kPsspr:
      psspr_.emplace(network, source, spec.sector, spec.psspr);
      break;
    case Protocol::kPusbrf:
      field_.emplace(network, source);
      break;
    case Protocol::kHbdrw:
    case Protocol::kShortestPath:
      BaselineParams{spec.h}.Validate();
      break;
  }
}

RouteTrace PacketRouter::Route(Rng& rng) const {
  switch (spec_.protocol) {
    case Protocol::kPsspr:
      return psspr_->Route(rng);
    case Protocol::kHbdrw:
      return HbdrwRoute(*network_, source_, {spec_.h}, rng);
    case Protocol::kPusbrf:
      return PusbrfRoute(*network_, *field_, {spec_.h}, rng);
    case Protocol::kShortestPath:
      return ShortestPathRoute(*network_, source_);
  }
  throw RuntimeError("unhandled protocol");
}

RunMetrics RunSession(const Network& network, const ProtocolSpec& spec,
                      NodeId source, std::size_t max_packets, Rng& rng) {
  if (max_packets == 0) throw InvalidParameter("max_packets must be >= 1");
  const PacketRouter router(network, source, spec);
  AdversaryState adversary = AdversaryState::AtSink(network);
  RunMetrics m;
  while (m.packets < max_packets && !adversary.captured) {
    const RouteTrace trace = router.Route(rng);
    ++m.packets;
    m.total_hops += trace.transmissions();
    if (trace.delivered) ++m.delivered;
    if (IsFailurePath(network, trace)) ++m.failure_paths;
    adversary = ObservePacket(network, adversary, trace);
  }
  m.captured = adversary.captured;
  m.safety_time = m.packets;
  return m;
}

}  // namespace phantomnet
