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

#include "phantomnet/baselines.h"

#include <algorithm>
#include <limits>

#include <fmt/format.h>

#include "phantomnet/error.h"

namespace phantomnet {
namespace {

void RequireReachable(const Network& network, NodeId source) {
  if (!network.node(source).reachable()) {
    throw RuntimeError(
        fmt::format("source {} cannot reach the sink", Index(source)));
  }
}

// Appends the min-hop descent from the trace's current node to the sink.
void AppendShortestPath(const Network& network, RouteTrace& trace) {
  trace.BeginPhase(Phase::kShortestPath);
  const Point sink_pos = network.position(network.sink());
  while (trace.current() != network.sink()) {
    const SensorNode& cur = network.node(trace.current());
    std::optional<NodeId> best;
    double best_d2 = std::numeric_limits<double>::infinity();
    for (const NeighborEntry& e : cur.neighbor_table) {
      if (e.hop_count != cur.hop_to_sink - 1) continue;
      const double d2 = SquaredDistance(e.pos, sink_pos);
      if (d2 < best_d2) {
        best_d2 = d2;
        best = e.id;
      }
    }
    if (!best) return;  // only for unreachable nodes
    trace.Append(*best);
  }
  trace.delivered = true;
}

}  // namespace

void BaselineParams::Validate() const {
  if (walk_hops < 1) {
    throw InvalidParameter(
        fmt::format("walk_hops must be >= 1, got {}", walk_hops));
  }
}

RouteTrace ShortestPathRoute(const Network& network, NodeId source) {
  RequireReachable(network, source);
  RouteTrace trace = RouteTrace::StartAt(source);
  AppendShortestPath(network, trace);
  return trace;
}

RouteTrace HbdrwRoute(const Network& network, NodeId source,
                      const BaselineParams& params, Rng& rng) {
  params.Validate();
  RequireReachable(network, source);
  RouteTrace trace = RouteTrace::StartAt(source);
  trace.BeginPhase(Phase::kRandomWalk);

  const int committed = std::bernoulli_distribution(0.5)(rng) ? -1 : +1;
  std::vector<NodeId> set;
  for (int step = 0; step < params.walk_hops; ++step) {
    const SensorNode& cur = network.node(trace.current());
    if (cur.id == network.sink()) break;
    auto collect = [&](int direction) {
      set.clear();
      for (const NeighborEntry& e : cur.neighbor_table) {
        if (e.hop_count == cur.hop_to_sink + direction) set.push_back(e.id);
      }
    };
    collect(committed);
    bool fell_back = false;
    if (set.empty()) {
      collect(-committed);
      if (set.empty()) break;
      fell_back = true;
    }
    trace.Append(set[std::uniform_int_distribution<std::size_t>(
        0, set.size() - 1)(rng)]);
    if (fell_back) trace.MarkLastRelaxed();
  }
  trace.MarkPhantomHere();
  AppendShortestPath(network, trace);
  return trace;
}

RouteTrace PusbrfRoute(const Network& network, const SourceHopField& field,
                       const BaselineParams& params, Rng& rng) {
  params.Validate();
  const std::vector<NodeId>& ring = field.ring(params.walk_hops);
  if (ring.empty()) {
    throw EmptyRing(fmt::format("no node is exactly {} hops from source {}",
                                params.walk_hops, Index(field.source())));
  }
  const NodeId phantom =
      ring[std::uniform_int_distribution<std::size_t>(0, ring.size() - 1)(rng)];

  const std::vector<NodeId> path = field.PathFromSource(network, phantom);
  RouteTrace trace = RouteTrace::StartAt(field.source());
  trace.BeginPhase(Phase::kDirected);
  for (auto it = path.begin() + 1; it != path.end(); ++it) trace.Append(*it);
  trace.MarkPhantomHere();
  AppendShortestPath(network, trace);
  return trace;
}

RouteTrace PusbrfRoute(const Network& network, NodeId source,
                       const BaselineParams& params, Rng& rng) {
  return PusbrfRoute(network, SourceHopField(network, source), params, rng);
}

}  // namespace phantomnet
