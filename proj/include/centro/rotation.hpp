#pragma once

#include <Eigen/Dense>

namespace centro {

/// Rodrigues' axis-angle formula. The axis must have unit norm
/// (checked to 1e-9); throws std::invalid_argument otherwise.
Eigen::Matrix3d axis_angle_rotation(const Eigen::Vector3d& axis, double angle);

/// Minimal rotation taking the world z-axis onto `target` (unit vector).
/// The antipodal case (target ~ -z) rotates about the x-axis.
Eigen::Matrix3d rotation_to_axis(const Eigen::Vector3d& target);

/// Projected angles of a rotation: the tilt of the rotated z-axis seen in
/// the x-z plane (pitch) and y-z plane (roll), each measured independently.
/// Unlike Euler angles the two values do not depend on each other, which
/// keeps per-axis feedback well defined away from gimbal lock.
struct ProjectedAngles {
  double roll = 0.0;   // positive tilts the z-axis towards -y
  double pitch = 0.0;  // positive tilts the z-axis towards +x
};

ProjectedAngles projected_angles(const Eigen::Matrix3d& rotation);

/// Rotation whose projected roll/pitch equal the given angles and whose
/// yaw about the tilted axis is zero. Valid for |angle| < pi/2; this is the
/// complementary rotation composed onto a reference orientation.
Eigen::Matrix3d rotation_from_projected(double roll, double pitch);

/// Yaw of `rotation` about its own tilted z-axis: the z-rotation remaining
/// after removing the minimal tilt. Inverse of composing
/// rotation_to_axis(z') * Rz(yaw).
double yaw_about_tilt(const Eigen::Matrix3d& rotation);

/// Plain yaw rotation about the world z-axis.
Eigen::Matrix3d yaw_rotation(double yaw);

/// Wrap an angle to (-pi, pi].
double wrap_angle(double a);

/// Interpolate angles along the shortest arc: a + t * wrap(b - a).
double lerp_angle(double a, double b, double t);

}  // namespace centro
