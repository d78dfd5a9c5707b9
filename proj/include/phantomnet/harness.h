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

#ifndef PHANTOMNET_HARNESS_H_
#define PHANTOMNET_HARNESS_H_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "phantomnet/adversary.h"
#include "phantomnet/network.h"
#include "phantomnet/psspr.h"

namespace phantomnet {

// Which of h (walk hops) and H (source hops) the sweep varies.
enum class SweepAxis { kWalkHops, kSinkHops };

struct ExperimentConfig {
  std::size_t n_nodes = 10000;
  double field_side = 6000.0;
  double r = 100.0;
  double r0 = 300.0;
  int omega = 6;
  std::vector<Protocol> protocols = {Protocol::kPsspr, Protocol::kHbdrw,
                                     Protocol::kPusbrf, Protocol::kShortestPath};
  SweepAxis axis = SweepAxis::kWalkHops;
  int fixed_H = 20;  // used when sweeping h
  int fixed_h = 15;  // used when sweeping H
  std::vector<int> values = {5, 10, 15, 20};
  std::size_t packets_per_run = 2000;
  std::vector<std::uint64_t> seeds;  // 1..30 unless set
  std::string output_path = "results.csv";
  AngleReference reference = AngleReference::kCurrentToSink;

  ExperimentConfig();
  // Throws ValidationError naming the broken rule.
  void Validate() const;
};

// `key = value` lines, `#` comments, comma separated lists. Integer lists
// also take `a..b` ranges. Unknown keys and bad values throw ParseError.
// Validates the result.
ExperimentConfig ParseConfig(std::string_view text);
// Throws IoError when the file cannot be read.
ExperimentConfig LoadConfig(const std::string& path);

struct AggregateRow {
  Protocol protocol = Protocol::kPsspr;
  int h = 0;
  int H = 0;
  double mean_safety_time = 0.0;
  double mean_comm_overhead_hops = 0.0;
  double capture_rate = 0.0;
  double failure_path_rate = 0.0;  // failure paths per packet
  std::size_t n_runs = 0;          // runs that finished without error
};

// Uniform among reachable nodes with hop_to_sink in [H-1, H+1]. Throws
// RuntimeError when there is none.
NodeId PickSource(const Network& network, int H, Rng& rng);

// Routing parameters for one protocol at one (h, H) point.
ProtocolSpec SpecFor(const ExperimentConfig& config, Protocol protocol, int h);

// Seed for one run, a pure function of its coordinates.
std::uint64_t RunSeed(std::uint64_t seed, Protocol protocol, int h, int H);

// One network per seed, shared by every protocol and sweep point. The fold
// is ordered by (protocol, sweep point, seed) whatever the thread count
// (PHANTOMNET_THREADS caps it). A failed run is skipped; more than 10%
// failed runs throws RuntimeError.
std::vector<AggregateRow> RunExperiment(const ExperimentConfig& config);

void WriteCsv(const std::vector<AggregateRow>& rows, std::ostream& out);
// Throws IoError.
void EmitCsv(const std::vector<AggregateRow>& rows, const std::string& path);

}  // namespace phantomnet

#endif  // PHANTOMNET_HARNESS_H_
