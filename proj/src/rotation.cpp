#include "centro/rotation.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace centro {

Eigen::Matrix3d axis_angle_rotation(const Eigen::Vector3d& axis, double angle) {
  if (std::abs(axis.norm() - 1.0) > 1e-9) {
    throw std::invalid_argument("axis_angle_rotation: axis must be unit length");
  }
  Eigen::Matrix3d k;
  k << 0.0, -axis.z(), axis.y(),
       axis.z(), 0.0, -axis.x(),
       -axis.y(), axis.x(), 0.0;
  return Eigen::Matrix3d::Identity() + std::sin(angle) * k + (1.0 - std::cos(angle)) * k * k;
}

Eigen::Matrix3d rotation_to_axis(const Eigen::Vector3d& target) {
  const Eigen::Vector3d z = Eigen::Vector3d::UnitZ();
  Eigen::Vector3d axis = z.cross(target);
  const double s = axis.norm();
  const double c = z.dot(target);
  if (s < 1e-12) {
    if (c > 0.0) return Eigen::Matrix3d::Identity();
    // antipodal: half turn about x
    return axis_angle_rotation(Eigen::Vector3d::UnitX(), std::numbers::pi);
  }
  return axis_angle_rotation(axis / s, std::atan2(s, c));
}

ProjectedAngles projected_angles(const Eigen::Matrix3d& rotation) {
  const Eigen::Vector3d zb = rotation.col(2);
  ProjectedAngles out;
  out.pitch = std::atan2(zb.x(), zb.z());
  out.roll = std::atan2(-zb.y(), zb.z());
  return out;
}

Eigen::Matrix3d rotation_from_projected(double roll, double pitch) {
  Eigen::Vector3d zb(std::tan(pitch), -std::tan(roll), 1.0);
  zb.normalize();
  return rotation_to_axis(zb);
}

double yaw_about_tilt(const Eigen::Matrix3d& rotation) {
  const Eigen::Matrix3d tilt = rotation_to_axis(rotation.col(2));
  const Eigen::Matrix3d rz = tilt.transpose() * rotation;
  return std::atan2(rz(1, 0), rz(0, 0));
}

Eigen::Matrix3d yaw_rotation(double yaw) {
  Eigen::Matrix3d r = Eigen::Matrix3d::Identity();
  const double c = std::cos(yaw);
  const double s = std::sin(yaw);
  r(0, 0) = c;
  r(0, 1) = -s;
  r(1, 0) = s;
  r(1, 1) = c;
  return r;
}

double wrap_angle(double a) {
  const double two_pi = 2.0 * std::numbers::pi;
  double w = std::fmod(a, two_pi);
  if (w <= -std::numbers::pi) w += two_pi;
  if (w > std::numbers::pi) w -= two_pi;
  return w;
}

double lerp_angle(double a, double b, double t) {
  return a + t * wrap_angle(b - a);
}

}  // namespace centro
