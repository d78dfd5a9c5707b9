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

#include "phantomnet/analysis.h"

#include <cmath>
#include <numbers>
#include <random>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <fmt/format.h>

#include "phantomnet/error.h"

namespace phantomnet {
namespace {

constexpr double kPi = std::numbers::pi;

double Gamma(int h) {
  if (h < 2) throw InvalidParameter(fmt::format("need h >= 2, got {}", h));
  return std::acos(static_cast<double>(h - 1) / h);
}

double HopSum(int from, int to) {
  double s = 0.0;
  for (int k = from; k <= to; ++k) s += k;
  return s;
}

// Shortest-path length from a point h hops from the source at bearing a to
// a sink H hops away.
double Leg(double h, double H, double a) {
  return std::sqrt(H * H + h * h - 2.0 * h * H * std::cos(a));
}

}  // namespace

double RatioHbdrwOverPusbrf(int h) { return 100.0 * 2.0 / kPi * Gamma(h); }

double RatioPusbrfOverPsspr(int h, int r_min, int r_max) {
  if (r_min < 1 || h < r_min || h > r_max) {
    throw InvalidParameter(fmt::format(
        "need 1 <= r_min <= h <= r_max, got h={} r_min={} r_max={}", h, r_min,
        r_max));
  }
  return 100.0 * h / HopSum(r_min, r_max);
}

double FailurePathProbability(double r0_hops, double H, double h) {
  if (r0_hops < 0.0 || H <= 0.0 || h <= 0.0) {
    throw DomainError(fmt::format(
        "need r0 >= 0 and H, h > 0, got r0={} H={} h={}", r0_hops, H, h));
  }
  if (r0_hops > H || r0_hops > h) {
    throw DomainError(fmt::format(
        "visible radius {} exceeds H={} or h={}; asin is undefined", r0_hops,
        H, h));
  }
  return (std::asin(r0_hops / H) + std::asin(r0_hops / h)) / kPi;
}

double PhantomCountHbdrw(int h) { return 4.0 * Gamma(h) * h; }

double PhantomCountPusbrf(int h) {
  if (h < 1) throw InvalidParameter(fmt::format("need h >= 1, got {}", h));
  return 2.0 * kPi * h;
}

double PhantomCountPsspr(int r_min, int r_max, int hx) {
  if (r_min < 0 || hx < 1 || hx > r_max - r_min) {
    throw InvalidParameter(fmt::format(
        "need 1 <= hx <= r_max - r_min, got r_min={} r_max={} hx={}", r_min,
        r_max, hx));
  }
  const int h = r_min + hx;
  return 2.0 * kPi * h * HopSum(hx, r_max - r_min) / hx;
}

double AvgPhantomDistanceRing(int h, double r) { return r * h; }

double AvgPhantomDistancePrinted(int r_min, int r_max, double H) {
  const double s = r_min + r_max;
  return s / 4.0 +
         Integrate([&](double a) { return Leg(s, H, a) / (kPi / 4.0); }, 0.0,
                   kPi / 2.0);
}

MonteCarloEstimate AvgPhantomDistanceMonteCarlo(int r_min, int r_max, int omega,
                                                std::size_t samples, Rng& rng) {
  if (r_min < 0 || r_min >= r_max || omega < 2 || samples == 0) {
    throw InvalidParameter(fmt::format(
        "bad Monte-Carlo setup r_min={} r_max={} omega={} samples={}", r_min,
        r_max, omega, samples));
  }
  const double theta = kPi / omega;
  std::uniform_int_distribution<int> sector(0, omega - 1);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double lo2 = static_cast<double>(r_min) * r_min;
  const double hi2 = static_cast<double>(r_max) * r_max;

  const std::size_t batches = std::min<std::size_t>(100, samples);
  std::vector<double> batch_sum(batches, 0.0);
  std::vector<std::size_t> batch_n(batches, 0);
  double total = 0.0;
  for (std::size_t i = 0; i < samples; ++i) {
    const double psi = (sector(rng) + unit(rng)) * theta;
    const double rad = std::sqrt(lo2 + (hi2 - lo2) * unit(rng));
    const double d = Norm(Point{rad * std::cos(psi), rad * std::sin(psi)});
    total += d;
    batch_sum[i % batches] += d;
    ++batch_n[i % batches];
  }
  MonteCarloEstimate est;
  est.samples = samples;
  est.mean = total / samples;
  if (batches > 1) {
    double ss = 0.0;
    for (std::size_t b = 0; b < batches; ++b) {
      const double m = batch_sum[b] / batch_n[b];
      ss += (m - est.mean) * (m - est.mean);
    }
    est.std_error = std::sqrt(ss / (batches - 1) / batches);
  }
  return est;
}

double Integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol) {
  double error = 0.0;
  const double value =
      boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
          f, a, b, 15, 1e-12, &error);
  if (!std::isfinite(value) || error > abs_tol) {
    throw QuadratureFailure(fmt::format(
        "quadrature on [{}, {}] reached error {:.3g} above {:.3g}", a, b, error,
        abs_tol));
  }
  return value;
}

double OverheadPusbrf(int h, double H, double abs_tol) {
  if (h < 0 || H <= 0.0) {
    throw InvalidParameter(fmt::format("need h >= 0, H > 0, got {} {}", h, H));
  }
  return h + Integrate([&](double a) { return Leg(h, H, a) / kPi; }, 0.0, kPi,
                       abs_tol);
}

double OverheadHbdrw(int h, double H, double abs_tol) {
  if (H <= 0.0) throw InvalidParameter(fmt::format("need H > 0, got {}", H));
  const double g = Gamma(h);
  auto f = [&](double a) { return Leg(h, H, a) / (2.0 * g); };
  return h + Integrate(f, 0.0, g, abs_tol) + Integrate(f, kPi, kPi + g, abs_tol);
}

double MeanSameHops(int r_max) { return 0.5 * r_max; }

double OverheadPsspr(int r_min, int r_max, double H, int omega) {
  if (r_min < 0 || r_min >= r_max || omega < 2 || omega % 2 != 0 || H <= 0.0) {
    throw InvalidParameter(fmt::format(
        "bad overhead input r_min={} r_max={} H={} omega={}", r_min, r_max, H,
        omega));
  }
  const double theta = kPi / omega;
  double legs = H - r_max;
  for (int i = 1; i <= omega / 2 - 1; ++i) legs += Leg(r_max, H, i * theta);
  return r_max + MeanSameHops(r_max) + 2.0 * legs / omega;
}

const std::vector<SectorPreset>& TablePresets() {
  static const std::vector<SectorPreset> kRows = {
      {5, 4, 6},    {10, 8, 12},  {15, 12, 18},
      {20, 16, 24}, {25, 22, 28}, {30, 26, 32},
  };
  return kRows;
}

SectorPreset PresetFor(int h) {
  if (h < 1) throw InvalidParameter(fmt::format("need h >= 1, got {}", h));
  for (const SectorPreset& p : TablePresets()) {
    if (p.h == h) return p;
  }
  const int lo = static_cast<int>(std::lround(0.8 * h));
  const int hi = std::max(lo + 1, static_cast<int>(std::lround(1.2 * h)));
  return {h, lo, hi};
}

Tables MakeTables(double H, std::size_t mc_samples) {
  Tables t;
  Rng rng(20260101);
  for (const SectorPreset& p : TablePresets()) {
    t.table2.push_back({p, RatioHbdrwOverPusbrf(p.h),
                        RatioPusbrfOverPsspr(p.h, p.r_min, p.r_max)});
    t.table3.push_back(
        {p,
         AvgPhantomDistanceMonteCarlo(p.r_min, p.r_max, 6, mc_samples, rng).mean,
         AvgPhantomDistancePrinted(p.r_min, p.r_max, H)});
    t.table4.push_back({p, PhantomCountHbdrw(p.h), PhantomCountPusbrf(p.h),
                        PhantomCountPsspr(p.r_min, p.r_max, p.h - p.r_min)});
  }
  return t;
}

}  // namespace phantomnet
