#pragma once

#include <Eigen/Dense>
#include <vector>

#include "centro/kinematics.hpp"

namespace centro {

/// Rectangular foot sole centered under the ankle.
struct FootGeometry {
  double half_length = 0.07;  // sagittal, m
  double half_width = 0.04;   // lateral, m
};

/// Convex support region of the feet in contact: one rectangle in single
/// support, the hull of both in (semi-)double support.
class SupportPolygon {
 public:
  static SupportPolygon from_foot(const FootFrame& foot, const FootGeometry& geometry);
  static SupportPolygon from_feet(const FootFrame& a, const FootFrame& b,
                                  const FootGeometry& geometry);

  bool contains(const Eigen::Vector2d& point) const;

  /// Closest point of the polygon; interior points are returned unchanged.
  Eigen::Vector2d clamp(const Eigen::Vector2d& point) const;

  const std::vector<Eigen::Vector2d>& vertices() const { return hull_; }

 private:
  std::vector<Eigen::Vector2d> hull_;  // counter-clockwise
};

}  // namespace centro
