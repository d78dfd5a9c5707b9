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

#ifndef PHANTOMNET_NETWORK_H_
#define PHANTOMNET_NETWORK_H_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "phantomnet/geometry.h"

namespace phantomnet {

// Dense node index. The sink is always NodeId{0}.
enum class NodeId : std::uint32_t {};

constexpr std::size_t Index(NodeId id) { return static_cast<std::size_t>(id); }
constexpr NodeId MakeNodeId(std::size_t index) {
  return static_cast<NodeId>(index);
}

inline constexpr int kUnreachable = -1;

// Per-run random stream. One per packet sequence; never shared across threads.
using Rng = std::mt19937_64;

// What a node learns about a neighbor from the sink's flooding message.
struct NeighborEntry {
  NodeId id;
  Point pos;
  int hop_count;
};

struct SensorNode {
  NodeId id{};
  Point pos;
  int hop_to_sink = kUnreachable;
  std::vector<NodeId> neighbors;  // ascending id, all within r
  std::vector<NeighborEntry> neighbor_table;

  bool reachable() const { return hop_to_sink != kUnreachable; }
};

struct DeployParams {
  std::size_t n_nodes = 2000;
  double field_side = 2700.0;
  double r = 100.0;
  double r0 = 300.0;
  std::uint64_t seed = 1;
};

// An immutable deployed sensor field with the sink at the center. Safe to
// share read-only between threads.
class Network {
 public:
  // Places `n_nodes` sensors uniformly over the square plus the sink at its
  // center, builds radius-r adjacency and floods hop counts from the sink.
  // Throws InvalidParameter or ConnectivityError (more than 1% of the
  // sensors cannot reach the sink).
  static Network Deploy(const DeployParams& params);

  // Same pipeline over explicit positions. positions[0] becomes the sink;
  // it does not have to be at the center.
  static Network FromPositions(std::vector<Point> positions, double field_side,
                               double r, double r0,
                               double max_unreachable_fraction = 0.01);

  std::size_t size() const { return nodes_.size(); }
  NodeId sink() const { return NodeId{0}; }
  std::span<const SensorNode> nodes() const { return nodes_; }

  // Throws UnknownNode.
  const SensorNode& node(NodeId id) const;
  Point position(NodeId id) const { return node(id).pos; }
  int hop_to_sink(NodeId id) const { return node(id).hop_to_sink; }
  bool contains(NodeId id) const { return Index(id) < nodes_.size(); }

  double radius() const { return r_; }
  double visible_radius() const { return r0_; }
  double field_side() const { return field_side_; }
  std::uint64_t seed() const { return seed_; }
  std::size_t unreachable_count() const { return unreachable_; }

  // All nodes whose distance to `center` is at most `radius`, ascending id.
  std::vector<NodeId> NodesWithin(Point center, double radius) const;

  // Closest node to p, ignoring anything farther than max_distance.
  std::optional<NodeId> NearestNode(Point p, double max_distance) const;

 private:
  Network() = default;
  void BuildIndex();
  void BuildAdjacency();
  template <typename Fn>
  void ForEachCandidate(Point center, double radius, Fn&& fn) const;

  std::vector<SensorNode> nodes_;
  double field_side_ = 0.0;
  double r_ = 0.0;
  double r0_ = 0.0;
  std::uint64_t seed_ = 0;
  std::size_t unreachable_ = 0;

  // Uniform grid, cell side = r, stored CSR style.
  std::size_t cells_per_side_ = 0;
  double cell_size_ = 0.0;
  std::vector<std::size_t> cell_start_;
  std::vector<NodeId> cell_nodes_;
};

// Replays the sink's Sink-Msg flood: every node keeps the minimum HopCount
// it hears and rebroadcasts on improvement. Returns per-node hop counts
// with kUnreachable for nodes the flood never reaches. Works from any root,
// which the source-rooted restricted flood of PUSBRF reuses.
std::vector<int> Flood(std::span<const SensorNode> nodes, NodeId root);

// Flood from the network's sink; equals the stored hop_to_sink values.
std::vector<int> Flood(const Network& network);

// Neighbors of `node` whose hop_to_sink equals target_hop. Throws
// UnknownNode.
std::vector<NodeId> NeighborsAtHop(const Network& network, NodeId node,
                                   int target_hop);

// Euclidean distance between two nodes in units of r.
double EuclideanHops(const Network& network, NodeId a, NodeId b);

// One row per node: id,x,y,hop_to_sink,neighbor_count.
void WriteNetworkCsv(const Network& network, std::ostream& out);

// Hop distances from one source, as learned by its restricted flood.
class SourceHopField {
 public:
  SourceHopField(const Network& network, NodeId source);

  NodeId source() const { return source_; }
  int hops(NodeId id) const { return hops_[Index(id)]; }
  // Reachable non-sink nodes exactly h source-hops away, ascending id.
  const std::vector<NodeId>& ring(int h) const;
  // Min-hop path source .. target down the field, each step taking the
  // predecessor nearest the source. Throws UnknownNode or ConnectivityError.
  std::vector<NodeId> PathFromSource(const Network& network,
                                     NodeId target) const;

 private:
  NodeId source_;
  std::vector<int> hops_;
  std::vector<std::vector<NodeId>> rings_;
};

}  // namespace phantomnet

#endif  // PHANTOMNET_NETWORK_H_
