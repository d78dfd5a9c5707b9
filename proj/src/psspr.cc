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

#include "phantomnet/psspr.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <unordered_set>

#include <fmt/format.h>

#include "phantomnet/error.h"

namespace phantomnet {
namespace {

bool IsNeighborOfSink(const Network& network, NodeId id) {
  const auto& nbs = network.node(id).neighbors;
  return !nbs.empty() && nbs.front() == network.sink();
}

// Shared greedy loop behind the directed phases. `metric` is minimized and
// `done` ends the phase successfully. Relays already used by this phase are
// skipped; when none is left the packet retraces its own path one hop, so
// voids are escaped depth first. Keepout relays are searched only once
// everything outside has been tried. The hop budget bounds the detour.
template <typename Metric, typename Done>
PhaseResult Greedy(const Network& network, NodeId from,
                   std::optional<NodeId> previous, int max_hops,
                   Metric&& metric, Done&& done, const PhaseGuard& guard = {}) {
  PhaseResult result{RouteTrace::StartAt(from), false};
  RouteTrace& trace = result.trace;
  trace.BeginPhase(Phase::kDirected);
  std::unordered_set<NodeId> visited{from};
  std::vector<NodeId> path{from};
  bool allow_blocked = false;
  for (int step = 0;; ++step) {
    const NodeId cur = trace.current();
    if (done(cur) &&
        (!guard.hand_over_same_hop || HasSameHopNeighbor(network, cur))) {
      result.completed = true;
      return result;
    }
    if (step == max_hops) return result;

    std::optional<NodeId> best;
    double best_metric = std::numeric_limits<double>::infinity();
    for (NodeId nb : network.node(cur).neighbors) {
      if (visited.contains(nb) || (step == 0 && nb == previous)) continue;
      if (!allow_blocked && guard.keepout &&
          guard.keepout->Blocks(network.position(nb))) {
        continue;
      }
      const double m = metric(nb);
      if (m < best_metric) {
        best_metric = m;
        best = nb;
      }
    }
    if (!best && step == 0) best = previous;
    if (best) {
      path.push_back(*best);
      visited.insert(*best);
      trace.Append(*best);
    } else if (path.size() > 1) {
      path.pop_back();
      trace.Append(path.back());
    } else if (guard.keepout && !allow_blocked) {
      // Everything outside the keepout is used up: search again through it.
      allow_blocked = true;
      visited = {cur};
    } else {
      return result;
    }
  }
}

// Follows the sink's hop gradient: each relay hands the packet to the
// neighbor one hop closer to the sink, nearest the sink on ties.
PhaseResult DescendToSink(const Network& network, NodeId from, Phase phase) {
  PhaseResult result{RouteTrace::StartAt(from), false};
  RouteTrace& trace = result.trace;
  trace.BeginPhase(phase);
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
    if (!best) return result;
    trace.Append(*best);
  }
  trace.delivered = true;
  result.completed = true;
  return result;
}

}  // namespace

bool HasSameHopNeighbor(const Network& network, NodeId id) {
  const SensorNode& n = network.node(id);
  return std::ranges::any_of(n.neighbor_table, [&](const NeighborEntry& e) {
    return e.id != network.sink() && e.hop_count == n.hop_to_sink;
  });
}

SectorParams::SectorParams(int r_min, int r_max, int omega)
    : r_min_(r_min), r_max_(r_max), omega_(omega) {
  if (r_min < 0 || r_min >= r_max) {
    throw InvalidParameter(
        fmt::format("need 0 <= r_min < r_max, got r_min={} r_max={}", r_min,
                    r_max));
  }
  if (omega < 2 || omega % 2 != 0) {
    throw InvalidParameter(
        fmt::format("omega must be an even number >= 2, got {}", omega));
  }
}

double SectorParams::theta() const { return std::numbers::pi / omega_; }

SourceFrame BuildFrame(const Network& network, NodeId source) {
  const SensorNode& s = network.node(source);
  if (source == network.sink()) throw SourceIsSink("the source is the sink");
  if (!s.reachable()) {
    throw RuntimeError(
        fmt::format("source {} cannot reach the sink", Index(source)));
  }
  SourceFrame f;
  f.source = source;
  f.source_pos = s.pos;
  f.sink_pos = network.position(network.sink());
  f.center_v = Midpoint(f.source_pos, f.sink_pos);
  f.x_axis = Normalized(f.source_pos - f.sink_pos);
  f.y_axis = Perpendicular(f.x_axis);
  f.h_distance = s.hop_to_sink;
  f.sink_distance = Distance(f.source_pos, f.sink_pos);
  return f;
}

std::size_t SectorDomain::total() const {
  std::size_t n = 0;
  for (const auto& s : sectors) n += s.size();
  return n;
}

std::optional<int> SectorOf(const SourceFrame& frame, const SectorParams& params,
                            double r, Point p) {
  const Point d = p - frame.source_pos;
  const double dist = Norm(d);
  if (dist < params.r_min() * r || dist > params.r_max() * r) return std::nullopt;
  const double toward_sink = -Dot(d, frame.x_axis);
  if (toward_sink < 0.0) return std::nullopt;
  const double psi = std::atan2(toward_sink, Dot(d, frame.y_axis));  // [0, pi]
  const int k = static_cast<int>(std::floor(psi / params.theta()));
  return std::clamp(k, 0, params.omega() - 1) + 1;
}

SectorDomain CandidateDomain(const Network& network, const SourceFrame& frame,
                             const SectorParams& params) {
  SectorDomain domain;
  domain.sectors.resize(static_cast<std::size_t>(params.omega()));
  const double r = network.radius();
  for (NodeId id : network.NodesWithin(frame.source_pos, params.r_max() * r)) {
    if (id == network.sink() || id == frame.source) continue;
    const SensorNode& n = network.node(id);
    if (!n.reachable()) continue;
    if (auto sector = SectorOf(frame, params, r, n.pos)) {
      domain.sectors[static_cast<std::size_t>(*sector - 1)].push_back(id);
    }
  }
  if (domain.empty()) {
    throw EmptyDomain(fmt::format(
        "no node in the [{}, {}] hop half annulus of source {}", params.r_min(),
        params.r_max(), Index(frame.source)));
  }
  return domain;
}

double PhantomBeta(const SourceFrame& frame, const SectorParams& params,
                   double r, Point phantom) {
  const Point a = frame.source_pos - (params.r_max() * r) * frame.x_axis;
  if (frame.OnSourceSide(phantom)) {
    return RadToDeg(LawOfCosinesAngle(Distance(frame.source_pos, a),
                                      Distance(frame.source_pos, phantom),
                                      Distance(a, phantom)));
  }
  const Point a_mirror = Reflect(a, frame.center_v);
  return RadToDeg(LawOfCosinesAngle(Distance(frame.sink_pos, a_mirror),
                                    Distance(frame.sink_pos, phantom),
                                    Distance(a_mirror, phantom)));
}

int SameHopCount(double beta_deg, const SectorParams& params) {
  const long h = std::lround(beta_deg / 180.0 * params.r_max());
  return static_cast<int>(std::max(0L, h));
}

PhantomChoice SelectPhantom(const Network& network, const SourceFrame& frame,
                            const SectorParams& params,
                            const SectorDomain& domain, Rng& rng) {
  // Empty sectors are skipped; the draw is uniform over the others.
  std::vector<int> live;
  for (std::size_t k = 0; k < domain.sectors.size(); ++k) {
    if (!domain.sectors[k].empty()) live.push_back(static_cast<int>(k));
  }
  if (live.empty()) throw EmptyDomain("candidate domain is empty");

  PhantomChoice c;
  const int sector =
      live[std::uniform_int_distribution<std::size_t>(0, live.size() - 1)(rng)];
  const auto& members = domain.sectors[static_cast<std::size_t>(sector)];
  c.domain_index = sector + 1;
  c.p1 = members[std::uniform_int_distribution<std::size_t>(
      0, members.size() - 1)(rng)];
  c.mirror_point = Reflect(network.position(c.p1), frame.center_v);

  const double r = network.radius();
  if (auto near = network.NearestNode(c.mirror_point, r)) {
    const Keepout inner{frame.source_pos, std::min(params.r_min() * r,
                                                   0.5 * frame.sink_distance)};
    if (*near != network.sink() && *near != frame.source &&
        network.node(*near).reachable() &&
        !inner.Blocks(network.position(*near))) {
      c.p2 = near;
    }
  }
  const bool take_mirror = std::bernoulli_distribution(0.5)(rng);
  c.chosen = (take_mirror && c.p2) ? *c.p2 : c.p1;

  const Point chosen_pos = network.position(c.chosen);
  c.source_side = frame.OnSourceSide(chosen_pos);
  c.beta_deg = PhantomBeta(frame, params, r, chosen_pos);
  c.same_hops = SameHopCount(c.beta_deg, params);
  return c;
}

PhantomChoice SelectPhantom(const Network& network, const SourceFrame& frame,
                            const SectorParams& params, Rng& rng) {
  return SelectPhantom(network, frame, params,
                       CandidateDomain(network, frame, params), rng);
}

PhaseResult DirectedRoute(const Network& network, NodeId from, Point target,
                          int max_hops, std::optional<NodeId> previous) {
  const double r = network.radius();
  return Greedy(
      network, from, previous, max_hops,
      [&](NodeId n) { return Distance(network.position(n), target); },
      [&](NodeId n) { return Distance(network.position(n), target) <= r; });
}

PhaseResult DirectedRouteToNode(const Network& network, NodeId from,
                                NodeId target, int max_hops,
                                std::optional<NodeId> previous) {
  const Point goal = network.position(target);
  return Greedy(
      network, from, previous, max_hops,
      [&](NodeId n) { return Distance(network.position(n), goal); },
      [&](NodeId n) { return n == target; });
}

PhaseResult DirectedRouteAway(const Network& network, NodeId from, Point anchor,
                              Point exit_point, double min_distance,
                              int max_hops, std::optional<NodeId> previous,
                              const PhaseGuard& guard) {
  const double r = network.radius();
  return Greedy(
      network, from, previous, max_hops,
      [&](NodeId n) { return Distance(network.position(n), exit_point); },
      [&](NodeId n) {
        const Point p = network.position(n);
        const double d = Distance(p, anchor);
        if (d >= min_distance || Distance(p, exit_point) <= r) return true;
        // Edge of the field: nothing lies farther out.
        return std::ranges::none_of(
            network.node(n).neighbor_table,
            [&](const NeighborEntry& e) { return Distance(e.pos, anchor) > d; });
      },
      guard);
}

PhaseResult SameHopRoute(const Network& network, const SourceFrame& frame,
                         NodeId from, int hops, Lateral direction,
                         std::optional<NodeId> previous,
                         std::optional<Keepout> keepout) {
  PhaseResult result{RouteTrace::StartAt(from), true};
  RouteTrace& trace = result.trace;
  trace.BeginPhase(Phase::kSameHop);
  bool relaxation_used = false;

  // Toward the axis means heading to the opposite side of the axis from
  // the start, so the walk keeps one direction once it crosses.
  double sign = 1.0;
  switch (direction) {
    case Lateral::kTowardAxis:
      sign = frame.ToFrame(network.position(from)).y >= 0.0 ? 1.0 : -1.0;
      break;
    case Lateral::kAwayPositive:
      sign = -1.0;
      break;
    case Lateral::kAwayNegative:
      sign = 1.0;
      break;
  }
  auto score = [&](NodeId n) {
    return sign * frame.ToFrame(network.position(n)).y;
  };

  for (int i = 0; i < hops; ++i) {
    const NodeId cur = trace.current();
    const int level = network.hop_to_sink(cur);
    const std::optional<NodeId> prev =
        trace.previous() ? trace.previous() : previous;

    bool blocked = false;
    auto pick = [&](auto&& accept) {
      std::optional<NodeId> best;
      double best_score = std::numeric_limits<double>::infinity();
      bool only_prev = false;
      for (const NeighborEntry& e : network.node(cur).neighbor_table) {
        if (e.id == network.sink() || !accept(e.hop_count)) continue;
        if (keepout && keepout->Blocks(e.pos)) {
          blocked = true;
          continue;
        }
        if (prev && e.id == *prev) {
          only_prev = !best;
          continue;
        }
        const double s = score(e.id);
        if (s < best_score) {
          best_score = s;
          best = e.id;
        }
      }
      if (!best && only_prev) best = prev;  // bounce back, nothing else
      return best;
    };

    std::optional<NodeId> next = pick([&](int h) { return h == level; });
    if (!next && blocked) return result;  // reached the keepout edge
    bool relaxed = false;
    if (!next) {
      if (relaxation_used) {
        result.completed = false;
        return result;
      }
      next = pick([&](int h) { return h == level - 1 || h == level + 1; });
      if (!next) {
        result.completed = false;
        return result;
      }
      relaxation_used = true;
      relaxed = true;
    }
    trace.Append(*next);
    if (relaxed) trace.MarkLastRelaxed();
  }
  return result;
}

PhaseResult VariableAngleRoute(const Network& network, const SourceFrame& frame,
                               NodeId from, const VariableAngleOptions& options,
                               std::optional<NodeId> previous) {
  PhaseResult result{RouteTrace::StartAt(from), false};
  RouteTrace& trace = result.trace;
  trace.BeginPhase(Phase::kVariableAngle);
  const NodeId sink = network.sink();
  const int budget = options.hop_budget > 0
                         ? options.hop_budget
                         : 4 * std::max(1, frame.h_distance);
  std::unordered_set<NodeId> visited{from};

  for (int step = 0;; ++step) {
    const NodeId cur = trace.current();
    if (cur == sink) {
      trace.delivered = true;
      result.completed = true;
      return result;
    }
    const Point here = network.position(cur);
    if (options.stop_at_frame_x &&
        frame.ToFrame(here).x <= *options.stop_at_frame_x &&
        (!options.guard.hand_over_same_hop || HasSameHopNeighbor(network, cur))) {
      result.completed = true;
      return result;
    }
    if (step == budget) return result;
    if (IsNeighborOfSink(network, cur)) {
      trace.Append(sink);
      continue;
    }

    const Point reference =
        options.reference == AngleReference::kSourceToSink
            ? frame.sink_pos - frame.source_pos
            : frame.sink_pos - here;
    const std::optional<NodeId> prev =
        trace.previous() ? trace.previous() : previous;
    const std::optional<Keepout>& keepout = options.guard.keepout;
    auto blocked = [&](const NeighborEntry& e) {
      return keepout && keepout->Blocks(e.pos);
    };
    const int level = network.hop_to_sink(cur);
    auto pick = [&](bool allow_climb) {
      std::optional<NodeId> best;
      double best_angle = std::numeric_limits<double>::infinity();
      for (const NeighborEntry& e : network.node(cur).neighbor_table) {
        if ((prev && e.id == *prev) || visited.contains(e.id) || blocked(e) ||
            (!allow_climb && e.hop_count > level)) {
          continue;
        }
        const double phi = AngleBetween(e.pos - here, reference);
        if (phi < best_angle) {
          best_angle = phi;
          best = e.id;
        }
      }
      return best;
    };
    std::optional<NodeId> best = pick(false);
    // Hemmed in by the keepout: climb around it.
    if (!best && keepout) best = pick(true);
    if (!best) {
      // Boxed in: one step down the hop gradient, outside the keepout if
      // that is possible.
      for (const NeighborEntry& e : network.node(cur).neighbor_table) {
        if (e.hop_count != level - 1) continue;
        if (!best || !blocked(e)) best = e.id;
        if (!blocked(e)) break;
      }
      if (!best) return result;
    }
    trace.Append(*best);
    visited.insert(*best);
  }
}

PssprRouter::PssprRouter(const Network& network, NodeId source,
                         SectorParams params, PssprOptions options)
    : network_(&network),
      params_(params),
      options_(options),
      frame_(BuildFrame(network, source)) {
  adjacent_to_sink_ = frame_.sink_distance <= network.radius();
  if (!adjacent_to_sink_) {
    domain_ = CandidateDomain(network, frame_, params_);
    field_.emplace(network, source);
  }
}

RouteTrace PssprRouter::Route(Rng& rng) const {
  if (adjacent_to_sink_) {
    RouteTrace t = RouteTrace::StartAt(frame_.source);
    t.BeginPhase(Phase::kDirectToSink);
    t.Append(network_->sink());
    t.delivered = true;
    return t;
  }
  return RouteVia(SelectPhantom(*network_, frame_, params_, domain_, rng));
}

Keepout PssprRouter::keepout() const {
  return Keepout{frame_.source_pos, std::min(params_.r_min() * network_->radius(),
                                            0.5 * frame_.sink_distance)};
}

RouteTrace PssprRouter::RouteVia(const PhantomChoice& choice) const {
  RouteTrace t =
      choice.source_side ? RouteSourceSide(choice) : RouteSinkSide(choice);
  t.delivered = t.current() == network_->sink();
  return t;
}

// Source-side phantom: min-hop path to P inside the source's beacon field,
// onward to r_max hops from the source,
// h_m same-hop relays toward the axis, then variable-angle to the sink.
RouteTrace PssprRouter::RouteSourceSide(const PhantomChoice& choice) const {
  const Network& net = *network_;
  const double r = net.radius();
  const int out_budget = 4 * params_.r_max() + 8;
  RouteTrace trace = RouteTrace::StartAt(frame_.source);

  trace.BeginPhase(Phase::kDirected);
  const std::vector<NodeId> path = field_->PathFromSource(net, choice.chosen);
  for (auto it = path.begin() + 1; it != path.end(); ++it) trace.Append(*it);
  trace.MarkPhantomHere();

  const Point exit_point =
      frame_.source_pos +
      (params_.r_max() * r) *
          Normalized(net.position(choice.chosen) - frame_.source_pos);
  PhaseGuard guard;
  guard.keepout = keepout();
  guard.hand_over_same_hop = choice.same_hops > 0;
  PhaseResult outward =
      DirectedRouteAway(net, trace.current(), frame_.source_pos, exit_point,
                        params_.r_max() * r, out_budget, trace.previous(), guard);
  trace.Splice(outward.trace);
  if (!outward.completed) return trace;

  PhaseResult same =
      SameHopRoute(net, frame_, trace.current(), choice.same_hops,
                   Lateral::kTowardAxis, trace.previous(), guard.keepout);
  trace.Splice(same.trace);

  VariableAngleOptions va;
  va.reference = options_.reference;
  va.guard.keepout = guard.keepout;
  va.hop_budget = 4 * (std::max(1, frame_.h_distance) + params_.r_max());
  trace.Splice(VariableAngleRoute(net, frame_, trace.current(), va,
                                  trace.previous())
                   .trace);
  return trace;
}

// Sink-side phantom, the mirror image: variable-angle until V, h_m same-hop
// relays away from the axis toward the phantom's side, directed through the
// phantom, then directed to the sink.
RouteTrace PssprRouter::RouteSinkSide(const PhantomChoice& choice) const {
  const Network& net = *network_;
  const int budget = 8 * std::max(1, frame_.h_distance);
  RouteTrace trace = RouteTrace::StartAt(frame_.source);

  VariableAngleOptions va;
  va.reference = options_.reference;
  va.stop_at_frame_x = 0.5 * frame_.sink_distance;
  va.guard.hand_over_same_hop = choice.same_hops > 0;
  PhaseResult approach = VariableAngleRoute(net, frame_, frame_.source, va);
  trace.Splice(approach.trace);
  if (!approach.completed || trace.current() == net.sink()) return trace;

  const Point phantom_pos = net.position(choice.chosen);
  const Lateral side = frame_.ToFrame(phantom_pos).y >= 0.0
                           ? Lateral::kAwayPositive
                           : Lateral::kAwayNegative;
  trace.Splice(SameHopRoute(net, frame_, trace.current(), choice.same_hops, side,
                            trace.previous())
                   .trace);

  PhaseResult to_phantom = DirectedRouteToNode(net, trace.current(),
                                               choice.chosen, budget,
                                               trace.previous());
  trace.Splice(to_phantom.trace);
  // An unreachable phantom is given up on; the packet still descends.
  if (to_phantom.completed) trace.MarkPhantomHere();

  trace.Splice(DescendToSink(net, trace.current(), Phase::kDirected).trace);
  return trace;
}

RouteTrace RoutePacket(const Network& network, const SourceFrame& frame,
                       const SectorParams& params, Rng& rng) {
  return PssprRouter(network, frame.source, params).Route(rng);
}

}  // namespace phantomnet
