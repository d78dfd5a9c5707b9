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

#ifndef PHANTOMNET_TRACE_H_
#define PHANTOMNET_TRACE_H_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string_view>
#include <vector>

#include "phantomnet/network.h"

namespace phantomnet {

enum class Phase : std::uint8_t {
  kDirectToSink,
  kDirected,
  kSameHop,
  kVariableAngle,
  kRandomWalk,
  kShortestPath,
};

std::string_view PhaseName(Phase phase);

// A contiguous run of hops produced by one routing phase. Node indices are
// inclusive, so a span covers transmissions first_node .. last_node - 1.
struct PhaseSpan {
  Phase phase;
  std::size_t first_node;
  std::size_t last_node;
  bool relaxed = false;
};

// The node sequence one packet took. phases[i] tags transmission
// hops[i] -> hops[i + 1].
struct RouteTrace {
  std::vector<NodeId> hops;
  std::vector<Phase> phases;
  std::vector<PhaseSpan> spans;
  std::vector<std::size_t> relaxed_transmissions;
  std::optional<std::size_t> phantom_index;
  bool delivered = false;

  static RouteTrace StartAt(NodeId source);

  NodeId source() const { return hops.front(); }
  NodeId current() const { return hops.back(); }
  std::optional<NodeId> previous() const {
    if (hops.size() < 2) return std::nullopt;
    return hops[hops.size() - 2];
  }
  std::size_t transmissions() const { return hops.size() - 1; }

  void BeginPhase(Phase phase);
  void Append(NodeId next);
  void MarkLastRelaxed();
  void MarkPhantomHere() { phantom_index = hops.size() - 1; }

  // Appends a partial trace whose first node is this trace's current node.
  void Splice(const RouteTrace& partial);
};

// True when some node from the phantom onward lies within the visible
// radius r0 of the source. Traces without a phantom never fail.
bool IsFailurePath(const Network& network, const RouteTrace& trace);

// Rows packet_id,hop_index,node_id,phase; the source row is tagged
// "source", later rows by the phase of the transmission that reached them.
void WriteTraceCsvHeader(std::ostream& out);
void WriteTraceCsv(std::ostream& out, std::size_t packet_id,
                   const RouteTrace& trace);

}  // namespace phantomnet

#endif  // PHANTOMNET_TRACE_H_
