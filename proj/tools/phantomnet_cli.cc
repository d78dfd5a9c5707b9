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

// Command-line front end: simulate, tables, analyze, trace.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include "phantomnet/adversary.h"
#include "phantomnet/analysis.h"
#include "phantomnet/error.h"
#include "phantomnet/harness.h"
#include "phantomnet/network.h"
#include "phantomnet/trace.h"

namespace pn = phantomnet;

namespace {

constexpr int kOk = 0;
constexpr int kValidation = 1;
constexpr int kRuntime = 2;

int Simulate(const std::string& config_path, const std::string& out) {
  pn::ExperimentConfig config = pn::LoadConfig(config_path);
  if (!out.empty()) config.output_path = out;
  const auto rows = pn::RunExperiment(config);
  pn::EmitCsv(rows, config.output_path);
  fmt::print(std::cerr, "wrote {} rows to {}\n", rows.size(), config.output_path);
  return kOk;
}

int Tables(bool csv, double H) {
  const pn::Tables t = pn::MakeTables(H);
  if (csv) {
    fmt::print("table,h,r_min,r_max,col1,col2,col3\n");
    for (const auto& r : t.table2) {
      fmt::print("2,{},{},{},{:.2f},{:.2f},\n", r.p.h, r.p.r_min, r.p.r_max,
                 r.hbdrw_over_pusbrf, r.pusbrf_over_psspr);
    }
    for (const auto& r : t.table3) {
      fmt::print("3,{},{},{},{:.2f},{:.2f},\n", r.p.h, r.p.r_min, r.p.r_max,
                 r.monte_carlo, r.printed);
    }
    for (const auto& r : t.table4) {
      fmt::print("4,{},{},{},{:.2f},{:.2f},{:.2f}\n", r.p.h, r.p.r_min,
                 r.p.r_max, r.n_hbdrw, r.n_pusbrf, r.n_psspr);
    }
    return kOk;
  }
  fmt::print("Random directed paths (%)\n");
  fmt::print("{:>4} {:>5} {:>5} {:>13} {:>13}\n", "h", "Rmin", "Rmax",
             "HBDRW/PUSBRF", "PUSBRF/PSSPR");
  for (const auto& r : t.table2) {
    fmt::print("{:>4} {:>5} {:>5} {:>13.2f} {:>13.2f}\n", r.p.h, r.p.r_min,
               r.p.r_max, r.hbdrw_over_pusbrf, r.pusbrf_over_psspr);
  }
  fmt::print("\nMean phantom distance from the source (hops)\n");
  fmt::print("{:>4} {:>5} {:>5} {:>12} {:>16}\n", "h", "Rmin", "Rmax",
             "monte-carlo", fmt::format("printed (H={})", H));
  for (const auto& r : t.table3) {
    fmt::print("{:>4} {:>5} {:>5} {:>12.2f} {:>16.2f}\n", r.p.h, r.p.r_min,
               r.p.r_max, r.monte_carlo, r.printed);
  }
  fmt::print("\nExpected phantom nodes\n");
  fmt::print("{:>4} {:>5} {:>5} {:>9} {:>9} {:>9}\n", "h", "Rmin", "Rmax",
             "HBDRW", "PUSBRF", "PSSPR");
  for (const auto& r : t.table4) {
    fmt::print("{:>4} {:>5} {:>5} {:>9.2f} {:>9.2f} {:>9.2f}\n", r.p.h,
               r.p.r_min, r.p.r_max, r.n_hbdrw, r.n_pusbrf, r.n_psspr);
  }
  return kOk;
}

int Analyze(int r_min, int r_max, int h, double H, double r0, int omega) {
  const pn::SectorParams params(r_min, r_max, omega);  // validates
  if (h < r_min || h > r_max) {
    throw pn::InvalidParameter(
        fmt::format("h={} must lie in [r_min, r_max] = [{}, {}]", h, r_min, r_max));
  }
  pn::Rng rng(20260101);
  const auto mc =
      pn::AvgPhantomDistanceMonteCarlo(r_min, r_max, omega, 1000000, rng);
  fmt::print("failure path probability      {:.4f}\n",
             pn::FailurePathProbability(r0, H, h));
  fmt::print("HBDRW/PUSBRF paths (%)        {:.2f}\n", pn::RatioHbdrwOverPusbrf(h));
  fmt::print("PUSBRF/PSSPR paths (%)        {:.2f}\n",
             pn::RatioPusbrfOverPsspr(h, r_min, r_max));
  fmt::print("phantom distance HBDRW/PUSBRF {:.2f}\n", pn::AvgPhantomDistanceRing(h));
  fmt::print("phantom distance PSSPR (mc)   {:.4f} +/- {:.4f}\n", mc.mean, mc.std_error);
  fmt::print("phantom distance PSSPR (printed) {:.2f}\n",
             pn::AvgPhantomDistancePrinted(r_min, r_max, H));
  fmt::print("phantoms HBDRW                {:.2f}\n", pn::PhantomCountHbdrw(h));
  fmt::print("phantoms PUSBRF               {:.2f}\n", pn::PhantomCountPusbrf(h));
  if (h > r_min) {
    fmt::print("phantoms PSSPR                {:.2f}\n",
               pn::PhantomCountPsspr(r_min, r_max, h - r_min));
  }
  fmt::print("overhead PUSBRF               {:.4f}\n", pn::OverheadPusbrf(h, H));
  fmt::print("overhead HBDRW                {:.4f}\n", pn::OverheadHbdrw(h, H));
  fmt::print("overhead PSSPR                {:.4f}\n",
             pn::OverheadPsspr(r_min, r_max, H, omega));
  return kOk;
}

int Trace(const std::string& protocol_name, std::uint64_t seed, int h, int H,
          const std::string& config_path, const std::string& network_out) {
  const pn::Protocol protocol = pn::ParseProtocol(protocol_name);
  pn::ExperimentConfig config;
  if (!config_path.empty()) config = pn::LoadConfig(config_path);
  const pn::Network net = pn::Network::Deploy(
      {config.n_nodes, config.field_side, config.r, config.r0, seed});
  pn::Rng pick(pn::RunSeed(seed, pn::Protocol::kShortestPath, 0, H));
  const pn::NodeId source = pn::PickSource(net, H, pick);
  pn::Rng rng(pn::RunSeed(seed, protocol, h, H));
  const pn::PacketRouter router(net, source, pn::SpecFor(config, protocol, h));
  const pn::RouteTrace trace = router.Route(rng);

  if (!network_out.empty()) {
    std::ofstream out(network_out, std::ios::binary | std::ios::trunc);
    if (!out) throw pn::IoError(fmt::format("cannot open '{}'", network_out));
    pn::WriteNetworkCsv(net, out);
  }
  pn::WriteTraceCsvHeader(std::cout);
  pn::WriteTraceCsv(std::cout, 0, trace);
  fmt::print(std::cerr, "source {} hop {} transmissions {} delivered {} failure path {}\n",
             pn::Index(source), net.hop_to_sink(source), trace.transmissions(),
             trace.delivered ? "yes" : "no",
             pn::IsFailurePath(net, trace) ? "yes" : "no");
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Source location privacy routing simulator"};
  app.require_subcommand(1);

  std::string config_path, out_path;
  auto* simulate = app.add_subcommand("simulate", "Run a seed sweep and write CSV");
  simulate->add_option("--config", config_path, "key = value config file")->required();
  simulate->add_option("--out", out_path, "CSV path, overrides the config");

  bool csv = false;
  double tables_H = 60.0;
  auto* tables = app.add_subcommand("tables", "Print the analytic tables");
  tables->add_flag("--csv", csv, "CSV instead of aligned text");
  tables->add_option("--H", tables_H, "H for the printed distance formula");

  int r_min = 12, r_max = 18, h = 15, omega = 6;
  double H = 60.0, r0 = 3.0;
  auto* analyze = app.add_subcommand("analyze", "Evaluate the closed forms");
  analyze->set_help_flag("--help", "Print this help message and exit");
  analyze->add_option("--rmin", r_min)->required();
  analyze->add_option("--rmax", r_max)->required();
  analyze->add_option("--h", h)->required();
  analyze->add_option("--H", H)->required();
  analyze->add_option("--r0", r0, "visible radius in hops")->required();
  analyze->add_option("--omega", omega)->capture_default_str();

  std::string protocol = "psspr", trace_config, network_out;
  std::uint64_t seed = 1;
  int trace_h = 15, trace_H = 20;
  auto* trace = app.add_subcommand("trace", "Route one packet and dump its path");
  trace->set_help_flag("--help", "Print this help message and exit");
  trace->add_option("--protocol", protocol)->capture_default_str();
  trace->add_option("--seed", seed)->capture_default_str();
  trace->add_option("--h", trace_h)->capture_default_str();
  trace->add_option("--H", trace_H)->capture_default_str();
  trace->add_option("--config", trace_config, "field settings");
  trace->add_option("--network-out", network_out, "also dump the network CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kValidation;
  }

  try {
    if (*simulate) return Simulate(config_path, out_path);
    if (*tables) return Tables(csv, tables_H);
    if (*analyze) return Analyze(r_min, r_max, h, H, r0, omega);
    if (*trace) {
      return Trace(protocol, seed, trace_h, trace_H, trace_config, network_out);
    }
  } catch (const pn::ValidationError& e) {
    fmt::print(std::cerr, "error: {}\n", e.what());
    return kValidation;
  } catch (const pn::RuntimeError& e) {
    fmt::print(std::cerr, "error: {}\n", e.what());
    return kRuntime;
  }
  return kValidation;
}
