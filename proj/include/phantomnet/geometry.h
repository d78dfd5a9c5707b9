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

#ifndef PHANTOMNET_GEOMETRY_H_
#define PHANTOMNET_GEOMETRY_H_

#include <algorithm>
#include <cmath>
#include <numbers>

namespace phantomnet {

// Planar point or displacement, in meters.
struct Point {
  double x = 0.0;
  double y = 0.0;

  friend constexpr Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
  friend constexpr Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
  friend constexpr Point operator*(double s, Point p) { return {s * p.x, s * p.y}; }
  friend constexpr Point operator*(Point p, double s) { return s * p; }
  friend constexpr bool operator==(Point a, Point b) = default;
};

constexpr double Dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
inline double Norm(Point p) { return std::hypot(p.x, p.y); }
inline double Distance(Point a, Point b) { return Norm(a - b); }
constexpr double SquaredDistance(Point a, Point b) {
  return Dot(a - b, a - b);
}
constexpr Point Midpoint(Point a, Point b) { return 0.5 * (a + b); }

// Point reflection of p through center.
constexpr Point Reflect(Point p, Point center) { return 2.0 * center - p; }

// Counter-clockwise quarter turn.
constexpr Point Perpendicular(Point p) { return {-p.y, p.x}; }

inline Point Normalized(Point p) {
  const double n = Norm(p);
  return n > 0.0 ? (1.0 / n) * p : Point{};
}

// Angle between two displacements, radians in [0, pi]. Zero-length inputs
// give 0.
inline double AngleBetween(Point a, Point b) {
  const double na = Norm(a);
  const double nb = Norm(b);
  if (na == 0.0 || nb == 0.0) return 0.0;
  return std::acos(std::clamp(Dot(a, b) / (na * nb), -1.0, 1.0));
}

// Interior angle opposite `opposite`, from the three side lengths of a
// triangle. Degenerate triangles (a zero adjacent side) give 0.
inline double LawOfCosinesAngle(double adjacent_a, double adjacent_b,
                                double opposite) {
  if (adjacent_a == 0.0 || adjacent_b == 0.0) return 0.0;
  const double c = (adjacent_a * adjacent_a + adjacent_b * adjacent_b -
                    opposite * opposite) /
                   (2.0 * adjacent_a * adjacent_b);
  return std::acos(std::clamp(c, -1.0, 1.0));
}

constexpr double RadToDeg(double rad) { return rad * 180.0 / std::numbers::pi; }
constexpr double DegToRad(double deg) { return deg * std::numbers::pi / 180.0; }

}  // namespace phantomnet

#endif  // PHANTOMNET_GEOMETRY_H_
