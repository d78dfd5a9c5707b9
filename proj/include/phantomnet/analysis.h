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

#ifndef PHANTOMNET_ANALYSIS_H_
#define PHANTOMNET_ANALYSIS_H_

#include <cstddef>
#include <functional>
#include <vector>

#include "phantomnet/network.h"

// Closed-form security and overhead figures. Distances are in hops (r = 1)
// unless a function takes r explicitly.
namespace phantomnet {

// Percentage of HBDRW's random directed paths relative to PUSBRF's:
// 100 * (2/pi) * acos((h-1)/h). Throws InvalidParameter for h < 2.
double RatioHbdrwOverPusbrf(int h);

// 100 * h / (r_min + ... + r_max). Needs r_min <= h <= r_max.
double RatioPusbrfOverPsspr(int h, int r_min, int r_max);

// (asin(r0/H) + asin(r0/h)) / pi. DomainError when r0 > H or r0 > h.
double FailurePathProbability(double r0_hops, double H, double h);

// Expected distinct phantom nodes.
double PhantomCountHbdrw(int h);   // 4 * acos((h-1)/h) * h
double PhantomCountPusbrf(int h);  // 2 * pi * h
// 2*pi*h * (hx + ... + (r_max - r_min)) / hx with h = r_min + hx. Needs
// 1 <= hx <= r_max - r_min.
double PhantomCountPsspr(int r_min, int r_max, int hx);

// HBDRW and PUSBRF put the phantom h hops out: r * h.
double AvgPhantomDistanceRing(int h, double r = 1.0);

// The PSSPR mean phantom distance exactly as printed, with the missing
// d-alpha restored. Does not reproduce the tabulated values.
double AvgPhantomDistancePrinted(int r_min, int r_max, double H);

struct MonteCarloEstimate {
  double mean = 0.0;
  double std_error = 0.0;  // batch means
  std::size_t samples = 0;
};

// Uniform sector, then a uniform point of that sector of the half annulus;
// averages the distance to the source.
MonteCarloEstimate AvgPhantomDistanceMonteCarlo(int r_min, int r_max, int omega,
                                                std::size_t samples, Rng& rng);

// Adaptive Gauss-Kronrod on [a, b]. Throws QuadratureFailure when the error
// estimate stays above abs_tol.
double Integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol = 1e-6);

// h + (1/pi) * integral over [0, pi] of sqrt(H^2 + h^2 - 2 h H cos a).
double OverheadPusbrf(int h, double H, double abs_tol = 1e-6);
// As above but averaged over the two gamma-wide arcs [0, gamma] and
// [pi, pi + gamma], gamma = acos((h-1)/h).
double OverheadHbdrw(int h, double H, double abs_tol = 1e-6);
// r_max + r_max/2 + 2 (H - r_max + sum_{i=1}^{omega/2-1} d_i) / omega,
// d_i = sqrt(H^2 + r_max^2 - 2 r_max H cos(i pi / omega)).
double OverheadPsspr(int r_min, int r_max, double H, int omega);
// E[beta]/180 * r_max with beta uniform on [0, 180].
double MeanSameHops(int r_max);

struct SectorPreset {
  int h;
  int r_min;
  int r_max;
};

// The six tabulated rows, h = 5, 10, ..., 30.
const std::vector<SectorPreset>& TablePresets();
// Tabulated row when h is one of them, else (round(0.8 h), round(1.2 h)).
SectorPreset PresetFor(int h);

struct Table2Row {
  SectorPreset p;
  double hbdrw_over_pusbrf;
  double pusbrf_over_psspr;
};
struct Table3Row {
  SectorPreset p;
  double monte_carlo;  // hops
  double printed;      // hops, at the H given to MakeTables
};
struct Table4Row {
  SectorPreset p;
  double n_hbdrw;
  double n_pusbrf;
  double n_psspr;
};
struct Tables {
  std::vector<Table2Row> table2;
  std::vector<Table3Row> table3;
  std::vector<Table4Row> table4;
};

// Deterministic: the Monte-Carlo column uses a fixed seed.
Tables MakeTables(double H = 60.0, std::size_t mc_samples = 200000);

}  // namespace phantomnet

#endif  // PHANTOMNET_ANALYSIS_H_
