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

#ifndef PHANTOMNET_BASELINES_H_
#define PHANTOMNET_BASELINES_H_

#include <vector>

#include "phantomnet/network.h"
#include "phantomnet/trace.h"

namespace phantomnet {

struct BaselineParams {
  int walk_hops = 1;  // h

  // Throws InvalidParameter when walk_hops < 1.
  void Validate() const;
};

// Min-hop route: each relay forwards to a neighbor one hop closer to the
// sink, ties going to the neighbor nearest the sink. The trace has exactly
// hop_to_sink(source) transmissions.
RouteTrace ShortestPathRoute(const Network& network, NodeId source);

// Hop-based directed random walk. The walk commits to the parent set
// (neighbors one hop closer to the sink) or the child set (one hop farther)
// with equal probability, takes walk_hops uniform steps inside that set and
// then follows the shortest path. A relay whose committed set is empty uses
// the other set for that one step (annotated as relaxed); a relay with both
// sets empty ends the walk early.
RouteTrace HbdrwRoute(const Network& network, NodeId source,
                      const BaselineParams& params, Rng& rng);

// Source-based restricted flooding: the phantom is uniform over the nodes
// exactly walk_hops source-hops away, reached along a min-hop path in the
// source-rooted field, then the shortest path to the sink. Throws EmptyRing.
RouteTrace PusbrfRoute(const Network& network, const SourceHopField& field,
                       const BaselineParams& params, Rng& rng);
RouteTrace PusbrfRoute(const Network& network, NodeId source,
                       const BaselineParams& params, Rng& rng);

}  // namespace phantomnet

#endif  // PHANTOMNET_BASELINES_H_
