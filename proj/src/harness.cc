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

#include "phantomnet/harness.h"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <thread>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "phantomnet/analysis.h"
#include "phantomnet/error.h"

namespace phantomnet {
namespace {

std::string_view Trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> SplitList(std::string_view s) {
  std::vector<std::string_view> out;
  while (true) {
    const auto comma = s.find(',');
    out.push_back(Trim(s.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    s.remove_prefix(comma + 1);
  }
  return out;
}

template <typename T>
T ParseNumber(std::string_view text, int line, std::string_view key) {
  T value{};
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (text.empty() || ec != std::errc() || ptr != end) {
    throw ParseError(line, fmt::format("{}: '{}' is not a valid number", key,
                                       text));
  }
  return value;
}

template <typename T>
std::vector<T> ParseIntList(std::string_view text, int line,
                            std::string_view key) {
  std::vector<T> out;
  for (std::string_view item : SplitList(text)) {
    const auto dots = item.find("..");
    if (dots == std::string_view::npos) {
      out.push_back(ParseNumber<T>(item, line, key));
      continue;
    }
    const T lo = ParseNumber<T>(Trim(item.substr(0, dots)), line, key);
    const T hi = ParseNumber<T>(Trim(item.substr(dots + 2)), line, key);
    if (hi < lo) {
      throw ParseError(line, fmt::format("{}: empty range '{}'", key, item));
    }
    for (T v = lo; v <= hi; ++v) out.push_back(v);
  }
  return out;
}

int ThreadCount(std::size_t jobs) {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("PHANTOMNET_THREADS")) {
    int cap = 0;
    const std::string_view s(env);
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), cap);
    if (ec == std::errc() && ptr == s.data() + s.size() && cap >= 1) {
      n = std::min(n, static_cast<unsigned>(cap));
    }
  }
  return static_cast<int>(std::min<std::size_t>(n, std::max<std::size_t>(jobs, 1)));
}

struct SweepPoint {
  int h;
  int H;
};

std::vector<SweepPoint> SweepPoints(const ExperimentConfig& c) {
  std::vector<SweepPoint> pts;
  for (int v : c.values) {
    pts.push_back(c.axis == SweepAxis::kWalkHops ? SweepPoint{v, c.fixed_H}
                                                 : SweepPoint{c.fixed_h, v});
  }
  return pts;
}

struct RunOutcome {
  std::optional<RunMetrics> metrics;  // empty when the run failed
};

}  // namespace

ExperimentConfig::ExperimentConfig() {
  for (std::uint64_t s = 1; s <= 30; ++s) seeds.push_back(s);
}

void ExperimentConfig::Validate() const {
  if (n_nodes < 2) throw ValidationError("n_nodes must be at least 2");
  if (!(field_side > 0.0)) throw ValidationError("field_side must be positive");
  if (!(r > 0.0)) throw ValidationError("r must be positive");
  if (r0 < r) throw ValidationError("r0 must be at least r");
  if (omega < 2 || omega % 2 != 0) {
    throw ValidationError("omega must be an even number >= 2");
  }
  if (protocols.empty()) throw ValidationError("protocols must not be empty");
  if (values.empty()) throw ValidationError("the sweep needs at least one value");
  if (packets_per_run < 1) throw ValidationError("packets_per_run must be >= 1");
  if (seeds.empty()) throw ValidationError("seeds must not be empty");
  for (int v : values) {
    if (v < 2) throw ValidationError("sweep values must be >= 2");
  }
  if (fixed_H < 2 || fixed_h < 2) throw ValidationError("h and H must be >= 2");
  if (output_path.empty()) throw ValidationError("output must not be empty");
}

ExperimentConfig ParseConfig(std::string_view text) {
  ExperimentConfig c;
  int line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = Trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ParseError(line_no, fmt::format("expected key = value, got '{}'", line));
    }
    const std::string_view key = Trim(line.substr(0, eq));
    const std::string_view value = Trim(line.substr(eq + 1));
    if (value.empty()) throw ParseError(line_no, fmt::format("{}: missing value", key));

    if (key == "n_nodes") {
      c.n_nodes = ParseNumber<std::size_t>(value, line_no, key);
    } else if (key == "field_side") {
      c.field_side = ParseNumber<double>(value, line_no, key);
    } else if (key == "r") {
      c.r = ParseNumber<double>(value, line_no, key);
    } else if (key == "r0") {
      c.r0 = ParseNumber<double>(value, line_no, key);
    } else if (key == "omega") {
      c.omega = ParseNumber<int>(value, line_no, key);
    } else if (key == "protocols") {
      c.protocols.clear();
      for (std::string_view name : SplitList(value)) {
        try {
          c.protocols.push_back(ParseProtocol(name));
        } catch (const ValidationError& e) {
          throw ParseError(line_no, e.what());
        }
      }
    } else if (key == "sweep") {
      if (value == "h") {
        c.axis = SweepAxis::kWalkHops;
      } else if (value == "H") {
        c.axis = SweepAxis::kSinkHops;
      } else {
        throw ParseError(line_no, fmt::format("sweep must be h or H, got '{}'", value));
      }
    } else if (key == "H") {
      c.fixed_H = ParseNumber<int>(value, line_no, key);
    } else if (key == "h") {
      c.fixed_h = ParseNumber<int>(value, line_no, key);
    } else if (key == "values") {
      c.values = ParseIntList<int>(value, line_no, key);
    } else if (key == "packets_per_run") {
      c.packets_per_run = ParseNumber<std::size_t>(value, line_no, key);
    } else if (key == "seeds") {
      c.seeds = ParseIntList<std::uint64_t>(value, line_no, key);
    } else if (key == "output") {
      c.output_path = std::string(value);
    } else if (key == "angle_reference") {
      if (value == "current") {
        c.reference = AngleReference::kCurrentToSink;
      } else if (value == "source") {
        c.reference = AngleReference::kSourceToSink;
      } else {
        throw ParseError(line_no, fmt::format(
            "angle_reference must be current or source, got '{}'", value));
      }
    } else {
      throw ParseError(line_no, fmt::format("unknown key '{}'", key));
    }
  }
  c.Validate();
  return c;
}

ExperimentConfig LoadConfig(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(fmt::format("cannot open config '{}'", path));
  std::ostringstream buf;
  buf << in.rdbuf();
  return ParseConfig(buf.str());
}

NodeId PickSource(const Network& network, int H, Rng& rng) {
  std::vector<NodeId> pool;
  for (const SensorNode& n : network.nodes()) {
    if (n.id != network.sink() && n.reachable() &&
        std::abs(n.hop_to_sink - H) <= 1) {
      pool.push_back(n.id);
    }
  }
  if (pool.empty()) {
    throw RuntimeError(fmt::format("no node is {} +/- 1 hops from the sink", H));
  }
  return pool[std::uniform_int_distribution<std::size_t>(0, pool.size() - 1)(rng)];
}

ProtocolSpec SpecFor(const ExperimentConfig& config, Protocol protocol, int h) {
  const SectorPreset preset = PresetFor(h);
  ProtocolSpec spec;
  spec.protocol = protocol;
  spec.h = h;
  spec.sector = SectorParams(preset.r_min, preset.r_max, config.omega);
  spec.psspr.reference = config.reference;
  return spec;
}

std::uint64_t RunSeed(std::uint64_t seed, Protocol protocol, int h, int H) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(protocol),
                    static_cast<std::uint32_t>(h), static_cast<std::uint32_t>(H)};
  std::uint32_t out[2];
  seq.generate(out, out + 2);
  return (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
}

std::vector<AggregateRow> RunExperiment(const ExperimentConfig& config) {
  config.Validate();
  const std::vector<SweepPoint> points = SweepPoints(config);
  const std::size_t n_proto = config.protocols.size();
  const std::size_t n_points = points.size();
  const std::size_t n_seeds = config.seeds.size();
  // outcome[(proto * n_points + point) * n_seeds + seed]
  std::vector<RunOutcome> outcome(n_proto * n_points * n_seeds);

  auto run_seed = [&](std::size_t si) {
    const std::uint64_t seed = config.seeds[si];
    std::optional<Network> net;
    try {
      net = Network::Deploy({config.n_nodes, config.field_side, config.r,
                             config.r0, seed});
    } catch (const RuntimeError&) {
      return;  // every run of this seed stays failed
    }
    for (std::size_t pi = 0; pi < n_points; ++pi) {
      const auto [h, H] = points[pi];
      std::optional<NodeId> source;
      try {
        Rng pick(RunSeed(seed, Protocol::kShortestPath, 0, H));
        source = PickSource(*net, H, pick);
      } catch (const RuntimeError&) {
        continue;
      }
      for (std::size_t k = 0; k < n_proto; ++k) {
        const Protocol proto = config.protocols[k];
        try {
          Rng rng(RunSeed(seed, proto, h, H));
          outcome[(k * n_points + pi) * n_seeds + si].metrics =
              RunSession(*net, SpecFor(config, proto, h), *source,
                         config.packets_per_run, rng);
        } catch (const RuntimeError&) {
          // left empty: counted as a failed run
        }
      }
    }
  };

  const int threads = ThreadCount(n_seeds);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t si = next++; si < n_seeds; si = next++) run_seed(si);
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
  }

  const auto failed = static_cast<std::size_t>(std::ranges::count_if(
      outcome, [](const RunOutcome& o) { return !o.metrics; }));
  if (failed * 10 > outcome.size()) {
    throw RuntimeError(fmt::format("{} of {} runs failed", failed, outcome.size()));
  }

  std::vector<AggregateRow> rows;
  for (std::size_t k = 0; k < n_proto; ++k) {
    for (std::size_t pi = 0; pi < n_points; ++pi) {
      AggregateRow row;
      row.protocol = config.protocols[k];
      row.h = points[pi].h;
      row.H = points[pi].H;
      std::size_t packets = 0, failures = 0, captured = 0;
      for (std::size_t si = 0; si < n_seeds; ++si) {
        const auto& m = outcome[(k * n_points + pi) * n_seeds + si].metrics;
        if (!m) continue;
        ++row.n_runs;
        row.mean_safety_time += static_cast<double>(m->safety_time);
        row.mean_comm_overhead_hops += m->mean_hops_per_packet();
        packets += m->packets;
        failures += m->failure_paths;
        if (m->captured) ++captured;
      }
      if (row.n_runs > 0) {
        const double n = static_cast<double>(row.n_runs);
        row.mean_safety_time /= n;
        row.mean_comm_overhead_hops /= n;
        row.capture_rate = captured / n;
      }
      if (packets > 0) {
        row.failure_path_rate = static_cast<double>(failures) / packets;
      }
      rows.push_back(row);
    }
  }
  return rows;
}

void WriteCsv(const std::vector<AggregateRow>& rows, std::ostream& out) {
  out << "protocol,h,H,mean_safety_time,mean_comm_overhead_hops,capture_rate,"
         "failure_path_rate,n_runs\n";
  for (const AggregateRow& r : rows) {
    fmt::print(out, "{},{},{},{:.6f},{:.6f},{:.6f},{:.6f},{}\n",
               ProtocolName(r.protocol), r.h, r.H, r.mean_safety_time,
               r.mean_comm_overhead_hops, r.capture_rate, r.failure_path_rate,
               r.n_runs);
  }
}

void EmitCsv(const std::vector<AggregateRow>& rows, const std::string& path) {
  if (rows.empty()) throw ValidationError("no rows to write");
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError(fmt::format("cannot open '{}' for writing", path));
  WriteCsv(rows, out);
  out.flush();
  if (!out) throw IoError(fmt::format("write to '{}' failed", path));
}

}  // namespace phantomnet
