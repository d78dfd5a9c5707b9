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

#ifndef PHANTOMNET_PSSPR_H_
#define PHANTOMNET_PSSPR_H_

#include <optional>
#include <vector>

#include "phantomnet/geometry.h"
#include "phantomnet/network.h"
#include "phantomnet/trace.h"

namespace phantomnet {

// Sector-domain geometry: phantoms are drawn from the half annulus
// [r_min, r_max] hops around the source, split into omega sectors of
// angle theta = pi / omega.
class SectorParams {
 public:
  // Throws InvalidParameter unless 0 <= r_min < r_max and omega is even
  // and at least 2.
  SectorParams(int r_min, int r_max, int omega);

  int r_min() const { return r_min_; }
  int r_max() const { return r_max_; }
  int omega() const { return omega_; }
  double theta() const;

 private:
  int r_min_;
  int r_max_;
  int omega_;
};

// Coordinates anchored at the sink with the x axis pointing at the source.
struct SourceFrame {
  NodeId source{};
  Point source_pos;
  Point sink_pos;
  Point center_v;  // midpoint of source and sink
  Point x_axis;    // unit, sink -> source
  Point y_axis;    // unit, x_axis turned a quarter counter-clockwise
  int h_distance = 0;          // hop_to_sink(source)
  double sink_distance = 0.0;  // meters

  // (along x_axis, along y_axis) relative to the sink.
  Point ToFrame(Point p) const {
    const Point d = p - sink_pos;
    return {Dot(d, x_axis), Dot(d, y_axis)};
  }
  // True when p is no closer to the sink than V along the axis.
  bool OnSourceSide(Point p) const {
    return ToFrame(p).x >= 0.5 * sink_distance;
  }
};

// Throws SourceIsSink, UnknownNode, or RuntimeError for an unreachable
// source.
SourceFrame BuildFrame(const Network& network, NodeId source);

// Nodes of the phantom half annulus, bucketed by sector. sectors[k] holds
// sector k + 1.
struct SectorDomain {
  std::vector<std::vector<NodeId>> sectors;

  std::size_t total() const;
  bool empty() const { return total() == 0; }
};

// Sector number in [1, omega] for a position, or nullopt outside the half
// annulus. The half annulus is the part of the [r_min*r, r_max*r] ring
// around the source that faces the sink; sector angles are measured about
// the source from the frame's +y direction, through the sink direction, to
// -y.
std::optional<int> SectorOf(const SourceFrame& frame, const SectorParams& params,
                            double r, Point p);

// Throws EmptyDomain when no reachable node falls in any sector.
SectorDomain CandidateDomain(const Network& network, const SourceFrame& frame,
                             const SectorParams& params);

struct PhantomChoice {
  int domain_index = 0;  // lambda_i in [1, omega]
  NodeId p1{};
  Point mirror_point;          // 2V - pos(p1)
  std::optional<NodeId> p2;    // nearest node to mirror_point; none if > r away
  NodeId chosen{};
  bool source_side = true;  // chosen lies on the source side of V
  double beta_deg = 0.0;
  int same_hops = 0;  // h_m
};

// Picks a non-empty sector uniformly, a node in it uniformly, its mirror
// through V, then one of the pair uniformly. The mirror falls back to p1
// when no node lies within r of the reflected point or the one found sits
// inside the router's keepout disc around the source.
PhantomChoice SelectPhantom(const Network& network, const SourceFrame& frame,
                            const SectorParams& params,
                            const SectorDomain& domain, Rng& rng);
PhantomChoice SelectPhantom(const Network& network, const SourceFrame& frame,
                            const SectorParams& params, Rng& rng);

// Angle at the anchor between the phantom and the intermediate point A
// (source side) or A'' (sink side), in degrees. A sits on the source-sink
// segment r_max hops from the source; A'' is its reflection through V.
double PhantomBeta(const SourceFrame& frame, const SectorParams& params,
                   double r, Point phantom);

// h_m = round(beta / 180 * r_max), halves away from zero.
int SameHopCount(double beta_deg, const SectorParams& params);

// Disc around the source that relays after the phantom stay out of.
struct Keepout {
  Point center;
  double radius = 0.0;
  bool Blocks(Point p) const { return Distance(p, center) < radius; }
};

// Extra rules for the phases that run after the phantom. A blocked relay is
// used only when nothing else is left. With hand_over_same_hop the phase
// does not finish on a relay that has no neighbor on its own hop ring.
struct PhaseGuard {
  std::optional<Keepout> keepout;
  bool hand_over_same_hop = false;
};

// A neighbor other than the sink with the same hop_to_sink exists.
bool HasSameHopNeighbor(const Network& network, NodeId id);

// Outcome of one routing phase. `completed` is false when the phase gave up
// (hop budget, local minimum, dead end) before meeting its goal.
struct PhaseResult {
  RouteTrace trace;
  bool completed = false;
};

// Greedy geographic forwarding: each hop goes to the neighbor closest to
// `target` among relays this phase has not used yet (the previous node
// counts as used). Stops once the current node is within r of target. When
// every neighbor is used the packet backs up along its own path; max_hops
// bounds the detour.
PhaseResult DirectedRoute(const Network& network, NodeId from, Point target,
                          int max_hops,
                          std::optional<NodeId> previous = std::nullopt);

// As DirectedRoute, but the goal is arriving at a specific node.
PhaseResult DirectedRouteToNode(const Network& network, NodeId from,
                                NodeId target, int max_hops,
                                std::optional<NodeId> previous = std::nullopt);

// Directed routing away from `anchor` toward `exit_point`; stops when the
// current node is at least min_distance from anchor, within r of
// exit_point, or has no neighbor farther from anchor than itself.
PhaseResult DirectedRouteAway(const Network& network, NodeId from, Point anchor,
                              Point exit_point, double min_distance,
                              int max_hops,
                              std::optional<NodeId> previous = std::nullopt,
                              const PhaseGuard& guard = {});

enum class Lateral {
  kTowardAxis,    // minimize |frame y|
  kAwayPositive,  // maximize frame y
  kAwayNegative,  // minimize frame y
};

// h_m hops through neighbors that share the current hop_to_sink. At the
// first dead end one neighbor at hop_to_sink +/- 1 is allowed and the hop is
// annotated as relaxed; a second dead end ends the phase early.
// Going straight back is allowed only when the previous relay is the sole
// candidate. A keepout stops the walk quietly at its edge.
PhaseResult SameHopRoute(const Network& network, const SourceFrame& frame,
                         NodeId from, int hops, Lateral direction,
                         std::optional<NodeId> previous = std::nullopt,
                         std::optional<Keepout> keepout = std::nullopt);

enum class AngleReference {
  kSourceToSink,   // fixed source -> sink vector
  kCurrentToSink,  // re-aimed at the sink from every relay
};

struct VariableAngleOptions {
  AngleReference reference = AngleReference::kCurrentToSink;
  int hop_budget = 0;  // 0 means 4 * H
  // Stop early once a relay's frame x drops to this value or below.
  std::optional<double> stop_at_frame_x;
  PhaseGuard guard;
};

// Forwards to the neighbor whose step makes the smallest angle with the
// reference direction; a relay adjacent to the sink hands over directly.
// Only neighbors no farther from the sink in hops are considered, unless a
// keepout leaves nothing else.
PhaseResult VariableAngleRoute(const Network& network, const SourceFrame& frame,
                               NodeId from, const VariableAngleOptions& options,
                               std::optional<NodeId> previous = std::nullopt);

struct PssprOptions {
  AngleReference reference = AngleReference::kCurrentToSink;
};

// Full per-packet pipeline for one source. Holds the frame and candidate
// domain so repeated packets skip the geometry scan.
class PssprRouter {
 public:
  // Throws SourceIsSink, EmptyDomain.
  PssprRouter(const Network& network, NodeId source, SectorParams params,
              PssprOptions options = {});

  RouteTrace Route(Rng& rng) const;
  // Routes a packet through an already selected phantom.
  RouteTrace RouteVia(const PhantomChoice& choice) const;

  const SourceFrame& frame() const { return frame_; }
  const SectorDomain& domain() const { return domain_; }
  const SectorParams& params() const { return params_; }
  // Disc around the source of radius r_min * r, capped at half the
  // source-sink distance so the sink stays outside.
  Keepout keepout() const;

 private:
  RouteTrace RouteSourceSide(const PhantomChoice& choice) const;
  RouteTrace RouteSinkSide(const PhantomChoice& choice) const;

  const Network* network_;
  SectorParams params_;
  PssprOptions options_;
  SourceFrame frame_;
  SectorDomain domain_;
  std::optional<SourceHopField> field_;  // what the source's beacon learned
  bool adjacent_to_sink_ = false;
};

// One-shot convenience over PssprRouter.
RouteTrace RoutePacket(const Network& network, const SourceFrame& frame,
                       const SectorParams& params, Rng& rng);

}  // namespace phantomnet

#endif  // PHANTOMNET_PSSPR_H_
