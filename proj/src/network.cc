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

#include "phantomnet/network.h"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <ostream>
#include <random>
#include <string>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "phantomnet/error.h"

namespace phantomnet {

Network Network::Deploy(const DeployParams& params) {
  if (params.n_nodes < 2) throw InvalidParameter("n_nodes must be at least 2");
  if (!(params.field_side > 0.0)) {
    throw InvalidParameter("field_side must be positive");
  }
  if (!(params.r > 0.0)) throw InvalidParameter("r must be positive");

  std::mt19937_64 rng(params.seed);
  std::uniform_real_distribution<double> coord(0.0, params.field_side);
  std::vector<Point> positions;
  positions.reserve(params.n_nodes + 1);
  const double center = params.field_side / 2.0;
  positions.push_back({center, center});
  for (std::size_t i = 0; i < params.n_nodes; ++i) {
    const double x = coord(rng);
    const double y = coord(rng);
    positions.push_back({x, y});
  }
  Network net = FromPositions(std::move(positions), params.field_side,
                              params.r, params.r0);
  net.seed_ = params.seed;
  return net;
}

Network Network::FromPositions(std::vector<Point> positions, double field_side,
                               double r, double r0,
                               double max_unreachable_fraction) {
  if (positions.size() < 2) {
    throw InvalidParameter("a network needs the sink and at least one sensor");
  }
  if (!(field_side > 0.0)) throw InvalidParameter("field_side must be positive");
  if (!(r > 0.0)) throw InvalidParameter("r must be positive");
  if (!(r0 >= r)) throw InvalidParameter("r0 must be at least r");
  for (const Point& p : positions) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y) || p.x < 0.0 ||
        p.y < 0.0 || p.x > field_side || p.y > field_side) {
      throw InvalidParameter(
          fmt::format("position ({}, {}) outside the field", p.x, p.y));
    }
  }

  Network net;
  net.field_side_ = field_side;
  net.r_ = r;
  net.r0_ = r0;
  net.nodes_.resize(positions.size());
  for (std::size_t i = 0; i < positions.size(); ++i) {
    net.nodes_[i].id = MakeNodeId(i);
    net.nodes_[i].pos = positions[i];
  }
  net.BuildIndex();
  net.BuildAdjacency();

  const std::vector<int> hops = Flood(net.nodes_, net.sink());
  for (std::size_t i = 0; i < hops.size(); ++i) {
    net.nodes_[i].hop_to_sink = hops[i];
    if (hops[i] == kUnreachable) ++net.unreachable_;
  }
  for (SensorNode& n : net.nodes_) {
    n.neighbor_table.reserve(n.neighbors.size());
    for (NodeId nb : n.neighbors) {
      const SensorNode& other = net.nodes_[Index(nb)];
      n.neighbor_table.push_back({nb, other.pos, other.hop_to_sink});
    }
  }

  const double sensors = static_cast<double>(net.nodes_.size() - 1);
  if (static_cast<double>(net.unreachable_) >
      max_unreachable_fraction * sensors) {
    throw ConnectivityError(fmt::format(
        "{} of {} sensors cannot reach the sink; the field is too sparse for "
        "r={}",
        net.unreachable_, net.nodes_.size() - 1, r));
  }
  return net;
}

const SensorNode& Network::node(NodeId id) const {
  if (!contains(id)) {
    throw UnknownNode(fmt::format("node {} does not exist", Index(id)));
  }
  return nodes_[Index(id)];
}

void Network::BuildIndex() {
  cell_size_ = r_;
  cells_per_side_ =
      std::max<std::size_t>(1, static_cast<std::size_t>(
                                   std::ceil(field_side_ / cell_size_)));
  const std::size_t cells = cells_per_side_ * cells_per_side_;
  auto cell_of = [&](Point p) {
    auto clampi = [&](double v) {
      const auto c = static_cast<std::ptrdiff_t>(std::floor(v / cell_size_));
      return static_cast<std::size_t>(std::clamp<std::ptrdiff_t>(
          c, 0, static_cast<std::ptrdiff_t>(cells_per_side_) - 1));
    };
    return clampi(p.y) * cells_per_side_ + clampi(p.x);
  };
  cell_start_.assign(cells + 1, 0);
  for (const SensorNode& n : nodes_) ++cell_start_[cell_of(n.pos) + 1];
  for (std::size_t c = 0; c < cells; ++c) cell_start_[c + 1] += cell_start_[c];
  cell_nodes_.resize(nodes_.size());
  std::vector<std::size_t> fill(cell_start_.begin(), cell_start_.end() - 1);
  for (const SensorNode& n : nodes_) cell_nodes_[fill[cell_of(n.pos)]++] = n.id;
}

template <typename Fn>
void Network::ForEachCandidate(Point center, double radius, Fn&& fn) const {
  const auto span = static_cast<std::ptrdiff_t>(cells_per_side_) - 1;
  auto cell = [&](double v) {
    return std::clamp<std::ptrdiff_t>(
        static_cast<std::ptrdiff_t>(std::floor(v / cell_size_)), 0, span);
  };
  const std::ptrdiff_t x0 = cell(center.x - radius);
  const std::ptrdiff_t x1 = cell(center.x + radius);
  const std::ptrdiff_t y0 = cell(center.y - radius);
  const std::ptrdiff_t y1 = cell(center.y + radius);
  for (std::ptrdiff_t cy = y0; cy <= y1; ++cy) {
    for (std::ptrdiff_t cx = x0; cx <= x1; ++cx) {
      const std::size_t c =
          static_cast<std::size_t>(cy) * cells_per_side_ +
          static_cast<std::size_t>(cx);
      for (std::size_t k = cell_start_[c]; k < cell_start_[c + 1]; ++k) {
        fn(cell_nodes_[k]);
      }
    }
  }
}

void Network::BuildAdjacency() {
  const double r2 = r_ * r_;
  for (SensorNode& n : nodes_) {
    ForEachCandidate(n.pos, r_, [&](NodeId other) {
      if (other != n.id && SquaredDistance(n.pos, nodes_[Index(other)].pos) <= r2) {
        n.neighbors.push_back(other);
      }
    });
    std::sort(n.neighbors.begin(), n.neighbors.end());
  }
}

std::vector<NodeId> Network::NodesWithin(Point center, double radius) const {
  std::vector<NodeId> out;
  const double r2 = radius * radius;
  ForEachCandidate(center, radius, [&](NodeId id) {
    if (SquaredDistance(center, nodes_[Index(id)].pos) <= r2) out.push_back(id);
  });
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<NodeId> Network::NearestNode(Point p, double max_distance) const {
  std::optional<NodeId> best;
  const double limit = max_distance * max_distance;
  double best_d2 = std::numeric_limits<double>::infinity();
  ForEachCandidate(p, max_distance, [&](NodeId id) {
    const double d2 = SquaredDistance(p, nodes_[Index(id)].pos);
    if (d2 > limit) return;
    if (!best || d2 < best_d2 || (d2 == best_d2 && id < *best)) {
      best_d2 = d2;
      best = id;
    }
  });
  return best;
}

std::vector<int> Flood(std::span<const SensorNode> nodes, NodeId root) {
  std::vector<int> hops(nodes.size(), kUnreachable);
  if (Index(root) >= nodes.size()) {
    throw UnknownNode(fmt::format("flood root {} does not exist", Index(root)));
  }
  struct Broadcast {
    NodeId sender;
    int hop_count;
  };
  std::deque<Broadcast> pending;
  hops[Index(root)] = 0;
  pending.push_back({root, 0});
  while (!pending.empty()) {
    const Broadcast msg = pending.front();
    pending.pop_front();
    if (msg.hop_count != hops[Index(msg.sender)]) continue;  // superseded
    const int offered = msg.hop_count + 1;
    for (NodeId receiver : nodes[Index(msg.sender)].neighbors) {
      int& known = hops[Index(receiver)];
      if (known == kUnreachable || offered < known) {
        known = offered;
        pending.push_back({receiver, offered});
      }
    }
  }
  return hops;
}

std::vector<int> Flood(const Network& network) {
  return Flood(network.nodes(), network.sink());
}

std::vector<NodeId> NeighborsAtHop(const Network& network, NodeId node,
                                   int target_hop) {
  std::vector<NodeId> out;
  for (const NeighborEntry& e : network.node(node).neighbor_table) {
    if (e.hop_count == target_hop) out.push_back(e.id);
  }
  return out;
}

double EuclideanHops(const Network& network, NodeId a, NodeId b) {
  return Distance(network.position(a), network.position(b)) / network.radius();
}

void WriteNetworkCsv(const Network& network, std::ostream& out) {
  out << "id,x,y,hop_to_sink,neighbor_count\n";
  for (const SensorNode& n : network.nodes()) {
    fmt::print(out, "{},{:.6f},{:.6f},{},{}\n", Index(n.id), n.pos.x, n.pos.y,
               n.hop_to_sink, n.neighbors.size());
  }
}

SourceHopField::SourceHopField(const Network& network, NodeId source)
    : source_(source), hops_(Flood(network.nodes(), source)) {
  if (!network.node(source).reachable()) {
    throw RuntimeError(
        fmt::format("source {} cannot reach the sink", Index(source)));
  }
  for (std::size_t i = 0; i < hops_.size(); ++i) {
    const int h = hops_[i];
    if (h == kUnreachable || MakeNodeId(i) == network.sink() ||
        !network.nodes()[i].reachable()) {
      continue;
    }
    if (static_cast<std::size_t>(h) >= rings_.size()) rings_.resize(h + 1);
    rings_[h].push_back(MakeNodeId(i));
  }
}

const std::vector<NodeId>& SourceHopField::ring(int h) const {
  static const std::vector<NodeId> kEmpty;
  if (h < 0 || static_cast<std::size_t>(h) >= rings_.size()) return kEmpty;
  return rings_[h];
}

std::vector<NodeId> SourceHopField::PathFromSource(const Network& network,
                                                   NodeId target) const {
  if (!network.contains(target)) {
    throw UnknownNode(fmt::format("node {} is not in the network", Index(target)));
  }
  if (hops(target) == kUnreachable) {
    throw ConnectivityError(fmt::format("node {} cannot be reached from {}",
                                        Index(target), Index(source_)));
  }
  const Point source_pos = network.position(source_);
  std::vector<NodeId> back{target};
  while (back.back() != source_) {
    const SensorNode& cur = network.node(back.back());
    const int want = hops(cur.id) - 1;
    std::optional<NodeId> best;
    double best_d2 = std::numeric_limits<double>::infinity();
    for (const NeighborEntry& e : cur.neighbor_table) {
      if (hops(e.id) != want) continue;
      const double d2 = SquaredDistance(e.pos, source_pos);
      if (d2 < best_d2) {
        best_d2 = d2;
        best = e.id;
      }
    }
    back.push_back(*best);  // a BFS predecessor always exists
  }
  std::reverse(back.begin(), back.end());
  return back;
}

}  // namespace phantomnet
