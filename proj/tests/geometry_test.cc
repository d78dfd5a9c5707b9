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


#include "phantomnet/geometry.h"

#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

namespace phantomnet {
namespace {

constexpr double kPi = std::numbers::pi;

TEST(GeometryTest, BasicVectorOps) {
  const Point a{3.0, 4.0};
  const Point b{-1.0, 2.0};
  EXPECT_EQ(a + b, (Point{2.0, 6.0}));
  EXPECT_EQ(a - b, (Point{4.0, 2.0}));
  EXPECT_EQ(2.0 * a, (Point{6.0, 8.0}));
  EXPECT_DOUBLE_EQ(Dot(a, b), 5.0);
  EXPECT_DOUBLE_EQ(Norm(a), 5.0);
  EXPECT_DOUBLE_EQ(Distance(a, b), std::sqrt(20.0));
  EXPECT_DOUBLE_EQ(SquaredDistance(a, b), 20.0);
  EXPECT_EQ(Midpoint(a, b), (Point{1.0, 3.0}));
  EXPECT_EQ(Perpendicular(Point{1.0, 0.0}), (Point{0.0, 1.0}));
}

TEST(GeometryTest, ReflectThroughCenter) {
  EXPECT_EQ(Reflect(Point{1.0, 2.0}, Point{0.0, 0.0}), (Point{-1.0, -2.0}));
  EXPECT_EQ(Reflect(Point{5.0, 5.0}, Point{3.0, 1.0}), (Point{1.0, -3.0}));
}

TEST(GeometryTest, NormalizedZeroStaysZero) {
  EXPECT_EQ(Normalized(Point{}), (Point{}));
  const Point u = Normalized(Point{0.0, -7.0});
  EXPECT_DOUBLE_EQ(u.x, 0.0);
  EXPECT_DOUBLE_EQ(u.y, -1.0);
}

TEST(GeometryTest, AngleBetweenKnownCases) {
  EXPECT_NEAR(AngleBetween({1, 0}, {0, 1}), kPi / 2, 1e-15);
  EXPECT_NEAR(AngleBetween({1, 0}, {-1, 0}), kPi, 1e-15);
  EXPECT_NEAR(AngleBetween({1, 1}, {1, 0}), kPi / 4, 1e-15);
  EXPECT_EQ(AngleBetween({0, 0}, {1, 0}), 0.0);
}

TEST(GeometryTest, LawOfCosinesRightAndEquilateral) {
  // 3-4-5 triangle: the angle between the legs is a right angle.
  EXPECT_NEAR(LawOfCosinesAngle(3.0, 4.0, 5.0), kPi / 2, 1e-12);
  EXPECT_NEAR(LawOfCosinesAngle(2.0, 2.0, 2.0), kPi / 3, 1e-12);
  // Degenerate sides clamp instead of producing NaN.
  EXPECT_NEAR(LawOfCosinesAngle(1.0, 1.0, 2.0000001), kPi, 1e-3);
  EXPECT_EQ(LawOfCosinesAngle(0.0, 1.0, 1.0), 0.0);
}

TEST(GeometryTest, DegreeConversionsRoundTrip) {
  EXPECT_DOUBLE_EQ(RadToDeg(kPi), 180.0);
  EXPECT_DOUBLE_EQ(DegToRad(90.0), kPi / 2);
}

TEST(GeometryTest, RandomTrianglesAgreeWithVectorAngle) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-100.0, 100.0);
  for (int i = 0; i < 1000; ++i) {
    const Point a{u(rng), u(rng)};
    const Point b{u(rng), u(rng)};
    const Point c{u(rng), u(rng)};
    const double via_vectors = AngleBetween(b - a, c - a);
    const double via_sides =
        LawOfCosinesAngle(Distance(a, b), Distance(a, c), Distance(b, c));
    EXPECT_NEAR(via_vectors, via_sides, 1e-6);
    EXPECT_NEAR(Distance(Reflect(Reflect(a, b), b), a), 0.0, 1e-9);
  }
}

}  // namespace
}  // namespace phantomnet
