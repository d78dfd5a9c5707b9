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

#include "phantomnet/trace.h"

#include <ostream>

#include "phantomnet/error.h"

namespace phantomnet {

std::string_view PhaseName(Phase phase) {
  switch (phase) {
    case Phase::kDirectToSink:
      return "direct-to-sink";
    case Phase::kDirected:
      return "directed";
    case Phase::kSameHop:
      return "same-hop";
    case Phase::kVariableAngle:
      return "variable-angle";
    case Phase::kRandomWalk:
      return "random-walk";
    case Phase::kShortestPath:
      return "shortest-path";
  }
  return "unknown";
}

RouteTrace RouteTrace::StartAt(NodeId source) {
  RouteTrace t;
  t.hops.push_back(source);
  return t;
}

void RouteTrace::BeginPhase(Phase phase) {
  const std::size_t here = hops.size() - 1;
  spans.push_back({phase, here, here, false});
}

void RouteTrace::Append(NodeId next) {
  if (spans.empty()) throw RuntimeError("RouteTrace::Append before BeginPhase");
  hops.push_back(next);
  phases.push_back(spans.back().phase);
  spans.back().last_node = hops.size() - 1;
}

void RouteTrace::MarkLastRelaxed() {
  if (phases.empty()) return;
  relaxed_transmissions.push_back(phases.size() - 1);
  spans.back().relaxed = true;
}

void RouteTrace::Splice(const RouteTrace& partial) {
  if (partial.hops.empty() || partial.hops.front() != current()) {
    throw RuntimeError("spliced trace does not start at the current node");
  }
  const std::size_t offset = hops.size() - 1;
  hops.insert(hops.end(), partial.hops.begin() + 1, partial.hops.end());
  phases.insert(phases.end(), partial.phases.begin(), partial.phases.end());
  for (PhaseSpan s : partial.spans) {
    s.first_node += offset;
    s.last_node += offset;
    spans.push_back(s);
  }
  for (std::size_t t : partial.relaxed_transmissions) {
    relaxed_transmissions.push_back(t + offset);
  }
  if (partial.phantom_index && !phantom_index) {
    phantom_index = *partial.phantom_index + offset;
  }
  delivered = partial.delivered;
}

bool IsFailurePath(const Network& network, const RouteTrace& trace) {
  if (!trace.phantom_index) return false;
  const Point source = network.position(trace.source());
  const double r0_sq = network.visible_radius() * network.visible_radius();
  for (std::size_t i = *trace.phantom_index; i < trace.hops.size(); ++i) {
    if (SquaredDistance(network.position(trace.hops[i]), source) <= r0_sq) {
      return true;
    }
  }
  return false;
}

void WriteTraceCsvHeader(std::ostream& out) {
  out << "packet_id,hop_index,node_id,phase\n";
}

void WriteTraceCsv(std::ostream& out, std::size_t packet_id,
                   const RouteTrace& trace) {
  for (std::size_t i = 0; i < trace.hops.size(); ++i) {
    out << packet_id << ',' << i << ',' << Index(trace.hops[i]) << ','
        << (i == 0 ? std::string_view("source") : PhaseName(trace.phases[i - 1]))
        << '\n';
  }
}

}  // namespace phantomnet
