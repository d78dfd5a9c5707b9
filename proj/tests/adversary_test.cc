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

#include <map>

#include <gtest/gtest.h>

#include "phantomnet/error.h"

namespace phantomnet {
namespace {

// Sink at x = 0 and sensors at x = 1 .. 12, r = 1.5: a chain.
Network Chain(double r0) {
  std::vector<Point> pos;
  for (int i = 0; i <= 12; ++i) pos.push_back({static_cast<double>(i), 1.0});
  return Network::FromPositions(pos, 13.0, 1.5, r0);
}

TEST(AdversaryTest, MovesOneHopTowardTheSenderPerPacket) {
  const Network net = Chain(1.5);
  const RouteTrace t = ShortestPathRoute(net, MakeNodeId(10));
  AdversaryState st = AdversaryState::AtSink(net);
  for (int k = 1; k <= 8; ++k) {
    st = ObservePacket(net, st, t);
    EXPECT_EQ(st.at, MakeNodeId(k));
    EXPECT_EQ(st.moves, static_cast<std::size_t>(k));
    EXPECT_FALSE(st.captured);
  }
  st = ObservePacket(net, st, t);
  EXPECT_EQ(st.at, MakeNodeId(9));
  EXPECT_TRUE(st.captured);  // within r0 = 1.5 of node 10
  const AdversaryState frozen = ObservePacket(net, st, t);
  EXPECT_EQ(frozen.at, st.at);
  EXPECT_EQ(frozen.moves, st.moves);
}

TEST(AdversaryTest, StaysPutWhenNothingIsHeard) {
  const Network net = Chain(1.5);
  RouteTrace t = RouteTrace::StartAt(MakeNodeId(12));
  t.BeginPhase(Phase::kDirected);
  t.Append(MakeNodeId(11));
  const AdversaryState st = ObservePacket(net, AdversaryState::AtSink(net), t);
  EXPECT_EQ(st.at, net.sink());
  EXPECT_EQ(st.moves, 0u);
}

TEST(AdversaryTest, CaptureRadius) {
  const Network net = Chain(3.0);
  EXPECT_TRUE(IsCaptured(net, MakeNodeId(10), MakeNodeId(10)));
  EXPECT_TRUE(IsCaptured(net, MakeNodeId(7), MakeNodeId(10)));
  EXPECT_FALSE(IsCaptured(net, MakeNodeId(6), MakeNodeId(10)));
}

// Shortest path on a chain is caught after H - floor(r0 / spacing) packets.
TEST(AdversaryTest, ShortestPathSafetyTimeOnAChain) {
  for (const double r0 : {1.5, 2.0, 3.0, 4.5}) {
    const Network net = Chain(r0);
    ProtocolSpec spec;
    spec.protocol = Protocol::kShortestPath;
    Rng rng(1);
    const RunMetrics m = RunSession(net, spec, MakeNodeId(12), 100, rng);
    EXPECT_TRUE(m.captured);
    EXPECT_EQ(m.safety_time, 12u - static_cast<std::size_t>(r0));
    EXPECT_EQ(m.total_hops, 12u * m.packets);
    EXPECT_EQ(m.delivered, m.packets);
    EXPECT_EQ(m.failure_paths, 0u);
    EXPECT_DOUBLE_EQ(m.mean_hops_per_packet(), 12.0);
  }
}

TEST(AdversaryTest, SessionStopsAtThePacketLimit) {
  const Network net = Chain(1.5);
  ProtocolSpec spec;
  spec.protocol = Protocol::kShortestPath;
  Rng rng(1);
  const RunMetrics m = RunSession(net, spec, MakeNodeId(12), 4, rng);
  EXPECT_FALSE(m.captured);
  EXPECT_EQ(m.packets, 4u);
  EXPECT_EQ(m.safety_time, 4u);
  EXPECT_THROW(RunSession(net, spec, MakeNodeId(12), 0, rng), InvalidParameter);
}

TEST(AdversaryTest, ProtocolNames) {
  for (Protocol p : {Protocol::kPsspr, Protocol::kHbdrw, Protocol::kPusbrf,
                     Protocol::kShortestPath}) {
    EXPECT_EQ(ParseProtocol(ProtocolName(p)), p);
  }
  EXPECT_EQ(ParseProtocol("PSSPR"), Protocol::kPsspr);
  EXPECT_EQ(ParseProtocol("shortest-path"), Protocol::kShortestPath);
  EXPECT_THROW(ParseProtocol("flooding"), ValidationError);
}

TEST(AdversaryTest, PacketRouterValidatesWalkHops) {
  const Network net = Chain(1.5);
  ProtocolSpec spec;
  spec.protocol = Protocol::kHbdrw;
  spec.h = 0;
  EXPECT_THROW(PacketRouter(net, MakeNodeId(5), spec), InvalidParameter);
}

// Property: on a real field every protocol's session is captured within the
// limit and the shortest path is the quickest to fall.
TEST(AdversaryTest, ProtocolsOnARandomField) {
  const Network net = Network::Deploy({2000, 2700.0, 100.0, 300.0, 3});
  NodeId source{};
  for (const SensorNode& n : net.nodes()) {
    if (n.hop_to_sink == 15) {
      source = n.id;
      break;
    }
  }
  std::map<Protocol, std::size_t> safety;
  for (Protocol p : {Protocol::kPsspr, Protocol::kHbdrw, Protocol::kPusbrf,
                     Protocol::kShortestPath}) {
    ProtocolSpec spec;
    spec.protocol = p;
    spec.h = 5;
    spec.sector = SectorParams(4, 6, 6);
    Rng rng(11);
    const RunMetrics m = RunSession(net, spec, source, 5000, rng);
    EXPECT_TRUE(m.captured) << ProtocolName(p);
    EXPECT_EQ(m.delivered, m.packets) << ProtocolName(p);
    safety[p] = m.safety_time;
  }
  for (const auto& [p, s] : safety) {
    EXPECT_GE(s, safety[Protocol::kShortestPath]) << ProtocolName(p);
  }
}

}  // namespace
}  // namespace phantomnet
