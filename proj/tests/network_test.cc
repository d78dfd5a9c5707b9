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
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "phantomnet/error.h"

namespace phantomnet {
namespace {

std::vector<Point> RandomPositions(std::size_t n, double side,
                                   std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, side);
  std::vector<Point> out{{side / 2, side / 2}};
  for (std::size_t i = 0; i < n; ++i) out.push_back({u(rng), u(rng)});
  return out;
}

// Hop counts by repeated relaxation over the all-pairs distance test; shares
// nothing with the spatial index or the flood queue.
std::vector<int> RelaxationHops(const std::vector<Point>& pos, double r) {
  const std::size_t n = pos.size();
  std::vector<int> hops(n, -1);
  hops[0] = 0;
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t i = 0; i < n; ++i) {
      if (hops[i] < 0) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (i == j) continue;
        const double dx = pos[i].x - pos[j].x;
        const double dy = pos[i].y - pos[j].y;
        if (dx * dx + dy * dy > r * r) continue;
        if (hops[j] < 0 || hops[i] + 1 < hops[j]) {
          hops[j] = hops[i] + 1;
          changed = true;
        }
      }
    }
  }
  return hops;
}

TEST(NetworkTest, FloodMatchesRelaxationOracleOnRandomFields) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto pos = RandomPositions(500, 1350.0, seed);
    const Network net =
        Network::FromPositions(pos, 1350.0, 100.0, 300.0, 1.0);
    const std::vector<int> oracle = RelaxationHops(pos, 100.0);
    for (std::size_t i = 0; i < pos.size(); ++i) {
      ASSERT_EQ(net.nodes()[i].hop_to_sink, oracle[i])
          << "seed " << seed << " node " << i;
    }
  }
}

TEST(NetworkTest, AdjacencyMatchesBruteForce) {
  const auto pos = RandomPositions(800, 1500.0, 3);
  const Network net = Network::FromPositions(pos, 1500.0, 100.0, 300.0, 1.0);
  for (std::size_t i = 0; i < pos.size(); ++i) {
    std::vector<NodeId> expected;
    for (std::size_t j = 0; j < pos.size(); ++j) {
      if (i != j && Distance(pos[i], pos[j]) <= 100.0) {
        expected.push_back(MakeNodeId(j));
      }
    }
    ASSERT_EQ(net.nodes()[i].neighbors, expected) << "node " << i;
    ASSERT_EQ(net.nodes()[i].neighbor_table.size(), expected.size());
    for (const NeighborEntry& e : net.nodes()[i].neighbor_table) {
      EXPECT_EQ(e.pos, pos[Index(e.id)]);
      EXPECT_EQ(e.hop_count, net.hop_to_sink(e.id));
    }
  }
}

TEST(NetworkTest, NeighborHopCountsDifferByAtMostOne) {
  const Network net = Network::Deploy({2000, 2700.0, 100.0, 300.0, 11});
  for (const SensorNode& n : net.nodes()) {
    if (!n.reachable()) continue;
    for (const NeighborEntry& e : n.neighbor_table) {
      EXPECT_LE(std::abs(e.hop_count - n.hop_to_sink), 1);
    }
  }
}

TEST(NetworkTest, NearestNodeAndNodesWithinMatchBruteForce) {
  const auto pos = RandomPositions(1000, 2000.0, 5);
  const Network net = Network::FromPositions(pos, 2000.0, 100.0, 300.0, 1.0);
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(-50.0, 2050.0);
  for (int q = 0; q < 300; ++q) {
    const Point p{u(rng), u(rng)};
    const double radius = 30.0 + 10.0 * (q % 30);

    std::optional<NodeId> best;
    double best_d = 0.0;
    std::vector<NodeId> within;
    for (std::size_t j = 0; j < pos.size(); ++j) {
      const double d = Distance(pos[j], p);
      if (d <= radius) within.push_back(MakeNodeId(j));
      if (d <= radius && (!best || d < best_d)) {
        best = MakeNodeId(j);
        best_d = d;
      }
    }
    EXPECT_EQ(net.NodesWithin(p, radius), within);
    const auto got = net.NearestNode(p, radius);
    ASSERT_EQ(got.has_value(), best.has_value());
    if (got) EXPECT_DOUBLE_EQ(Distance(pos[Index(*got)], p), best_d);
  }
}

TEST(NetworkTest, DeployIsDeterministicPerSeed) {
  const DeployParams params{2000, 2700.0, 100.0, 300.0, 42};
  const Network a = Network::Deploy(params);
  const Network b = Network::Deploy(params);
  ASSERT_EQ(a.size(), 2001u);
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a.nodes()[i].pos, b.nodes()[i].pos);
    EXPECT_EQ(a.nodes()[i].hop_to_sink, b.nodes()[i].hop_to_sink);
  }
  DeployParams other = params;
  other.seed = 43;
  const Network c = Network::Deploy(other);
  EXPECT_NE(a.nodes()[1].pos, c.nodes()[1].pos);
  EXPECT_EQ(a.position(a.sink()), (Point{1350.0, 1350.0}));
  EXPECT_EQ(a.seed(), 42u);
}

TEST(NetworkTest, DefaultDensityLeavesNearlyEveryoneConnected) {
  const Network net = Network::Deploy({2000, 2700.0, 100.0, 300.0, 8});
  EXPECT_LE(net.unreachable_count(), 20u);
  EXPECT_EQ(net.hop_to_sink(net.sink()), 0);
}

TEST(NetworkTest, RejectsBadParameters) {
  EXPECT_THROW(Network::Deploy({1, 100.0, 10.0, 30.0, 1}), InvalidParameter);
  EXPECT_THROW(Network::Deploy({10, 0.0, 10.0, 30.0, 1}), InvalidParameter);
  EXPECT_THROW(Network::Deploy({10, 100.0, -1.0, 30.0, 1}), InvalidParameter);
  EXPECT_THROW(Network::FromPositions({{0, 0}, {1, 1}}, 10.0, 2.0, 1.0),
               InvalidParameter);
  EXPECT_THROW(Network::FromPositions({{0, 0}, {11, 1}}, 10.0, 2.0, 3.0),
               InvalidParameter);
  EXPECT_THROW(Network::FromPositions({{0, 0}}, 10.0, 2.0, 3.0),
               InvalidParameter);
}

TEST(NetworkTest, SparseFieldIsAConnectivityError) {
  EXPECT_THROW(Network::Deploy({200, 6000.0, 100.0, 300.0, 1}),
               ConnectivityError);
}

TEST(NetworkTest, UnknownNodeThrows) {
  const Network net =
      Network::FromPositions({{5, 5}, {6, 5}}, 10.0, 2.0, 3.0);
  EXPECT_THROW(net.node(MakeNodeId(2)), UnknownNode);
  EXPECT_THROW(Flood(net.nodes(), MakeNodeId(7)), UnknownNode);
}

TEST(NetworkTest, NeighborsAtHopAndEuclideanHops) {
  // A line 0 - 1 - 2 with spacing 1 and r = 1.5.
  const Network net = Network::FromPositions({{0, 0}, {1, 0}, {2, 0}}, 3.0,
                                             1.5, 1.5);
  EXPECT_EQ(net.hop_to_sink(MakeNodeId(2)), 2);
  EXPECT_EQ(NeighborsAtHop(net, MakeNodeId(1), 2),
            std::vector<NodeId>{MakeNodeId(2)});
  EXPECT_TRUE(NeighborsAtHop(net, MakeNodeId(1), 1).empty());
  EXPECT_DOUBLE_EQ(EuclideanHops(net, MakeNodeId(0), MakeNodeId(2)),
                   2.0 / 1.5);
}

TEST(NetworkTest, CsvDump) {
  const Network net =
      Network::FromPositions({{0, 0}, {1, 0}, {9, 9}}, 10.0, 1.5, 1.5, 1.0);
  std::ostringstream out;
  WriteNetworkCsv(net, out);
  EXPECT_EQ(out.str(),
            "id,x,y,hop_to_sink,neighbor_count\n"
            "0,0.000000,0.000000,0,1\n"
            "1,1.000000,0.000000,1,1\n"
            "2,9.000000,9.000000,-1,0\n");
}

TEST(SourceHopFieldTest, HopsMatchOracleAndPathsAreMinimal) {
  const auto pos = RandomPositions(2000, 2700.0, 21);
  const Network net = Network::FromPositions(pos, 2700.0, 100.0, 300.0, 1.0);
  NodeId source{};
  for (const SensorNode& n : net.nodes()) {
    if (n.hop_to_sink == 12) {
      source = n.id;
      break;
    }
  }
  ASSERT_NE(Index(source), 0u);
  const SourceHopField field(net, source);

  std::vector<Point> from_source = pos;
  std::swap(from_source[0], from_source[Index(source)]);
  std::vector<int> oracle = RelaxationHops(from_source, 100.0);
  std::swap(oracle[0], oracle[Index(source)]);
  for (std::size_t i = 0; i < pos.size(); ++i) {
    ASSERT_EQ(field.hops(MakeNodeId(i)), oracle[i]) << i;
  }

  for (int h = 1; h <= 8; ++h) {
    for (NodeId id : field.ring(h)) {
      EXPECT_EQ(field.hops(id), h);
      EXPECT_NE(id, net.sink());
    }
    ASSERT_FALSE(field.ring(h).empty());
    const NodeId target = field.ring(h)[field.ring(h).size() / 2];
    const auto path = field.PathFromSource(net, target);
    ASSERT_EQ(path.size(), static_cast<std::size_t>(h + 1));
    EXPECT_EQ(path.front(), source);
    EXPECT_EQ(path.back(), target);
    for (std::size_t k = 0; k + 1 < path.size(); ++k) {
      EXPECT_LE(Distance(pos[Index(path[k])], pos[Index(path[k + 1])]),
                100.0);
    }
  }
  EXPECT_TRUE(field.ring(-1).empty());
  EXPECT_TRUE(field.ring(10000).empty());
  EXPECT_THROW(field.PathFromSource(net, MakeNodeId(pos.size())), UnknownNode);
}

TEST(SourceHopFieldTest, UnreachableTargetIsAConnectivityError) {
  const Network net = Network::FromPositions({{0, 0}, {1, 0}, {9, 9}}, 10.0,
                                             1.5, 1.5, 1.0);
  const SourceHopField field(net, MakeNodeId(1));
  EXPECT_THROW(field.PathFromSource(net, MakeNodeId(2)), ConnectivityError);
  EXPECT_THROW(SourceHopField(net, MakeNodeId(2)), RuntimeError);
}

}  // namespace
}  // namespace phantomnet
