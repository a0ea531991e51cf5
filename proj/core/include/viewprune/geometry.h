/*
 * Copyright 2026 The Viewprune Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cmath>
#include <numbers>

namespace viewprune {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Wraps an angle to the half-open interval (-pi, pi].
inline double wrap_angle(double theta) {
  double a = std::fmod(theta, kTwoPi);
  if (a <= -kPi) {
    a += kTwoPi;
  } else if (a > kPi) {
    a -= kTwoPi;
  }
  return a;
}

/// Shortest angular separation between two angles, in [0, pi].
inline double angular_distance(double a, double b) {
  return std::abs(wrap_angle(a - b));
}

/// Planar pose. theta is always stored wrapped to (-pi, pi].
struct Pose2D {
  double x = 0.0;
  double y = 0.0;
  double theta = 0.0;

  Pose2D() = default;
  Pose2D(double x_, double y_, double theta_) : x(x_), y(y_), theta(wrap_angle(theta_)) {}

  bool operator==(const Pose2D&) const = default;
};

/// Rigid 2D transform: rotation by dtheta followed by translation (dx, dy).
struct Transform2D {
  double dx = 0.0;
  double dy = 0.0;
  double dtheta = 0.0;

  static Transform2D identity() { return {}; }

  Pose2D apply(const Pose2D& p) const {
    const double c = std::cos(dtheta);
    const double s = std::sin(dtheta);
    return Pose2D(dx + c * p.x - s * p.y, dy + s * p.x + c * p.y, p.theta + dtheta);
  }
};

inline double squared_distance(const Pose2D& a, const Pose2D& b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return dx * dx + dy * dy;
}

}  // namespace viewprune
